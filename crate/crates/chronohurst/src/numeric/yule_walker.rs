//! Yule-Walker AR fitting via Levinson-Durbin, with AIC order selection
//! matching the common convention: biased autocorrelations on the demeaned
//! series, AIC = n*log(v_k) + 2k, order searched up to
//! min(n - 1, floor(10*log10(n))).

use super::acf;

/// AR(p) fit: coefficients, relative prediction-variance ratio
/// (v_p = prod(1 - k_j^2)) and the series mean.
pub struct ArFit {
    pub order: usize,
    pub phi: Vec<f64>,
    pub var_ratio: f64,
    pub mean: f64,
}

/// Levinson-Durbin recursion on normalized autocorrelations `r` (r[0]=1),
/// returning coefficients and variance ratios for every order `0..=p_max`.
fn levinson(r: &[f64], p_max: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut phis: Vec<Vec<f64>> = vec![Vec::new()];
    let mut vars = vec![1.0];
    let mut phi: Vec<f64> = Vec::new();
    let mut v = 1.0;
    for k in 1..=p_max {
        let num = if k == 1 {
            r[1]
        } else {
            r[k] - phi
                .iter()
                .zip(r[1..k].iter().rev())
                .map(|(a, b)| a * b)
                .sum::<f64>()
        };
        let refl = num / v;
        let mut next = Vec::with_capacity(k);
        for j in 0..k - 1 {
            next.push(phi[j] - refl * phi[k - 2 - j]);
        }
        next.push(refl);
        v *= 1.0 - refl * refl;
        phi = next;
        phis.push(phi.clone());
        vars.push(v);
    }
    (phis, vars)
}

pub fn default_order_max(n: usize) -> usize {
    ((10.0 * (n as f64).log10()).floor() as usize).min(n - 1)
}

/// Fits an AR model with the order chosen by AIC over `0..=order_max`.
pub fn ar_aic(x: &[f64], order_max: Option<usize>) -> ArFit {
    let n = x.len();
    let p_max = order_max.unwrap_or_else(|| default_order_max(n));
    let r = acf(x, p_max);
    let (phis, vars) = levinson(&r, p_max);
    let nf = n as f64;
    let mut best = 0usize;
    let mut best_aic = nf * vars[0].ln();
    for k in 1..=p_max {
        if vars[k] <= 0.0 {
            break;
        }
        let aic = nf * vars[k].ln() + 2.0 * k as f64;
        if aic < best_aic {
            best_aic = aic;
            best = k;
        }
    }
    let mean = x.iter().sum::<f64>() / nf;
    ArFit {
        order: best,
        phi: phis[best].clone(),
        var_ratio: vars[best],
        mean,
    }
}

/// Fits AR(p) at a fixed order.
pub fn ar_fixed(x: &[f64], p: usize) -> ArFit {
    let n = x.len();
    let r = acf(x, p.max(1));
    let (phis, vars) = levinson(&r, p);
    ArFit {
        order: p,
        phi: phis[p].clone(),
        var_ratio: vars[p],
        mean: x.iter().sum::<f64>() / n as f64,
    }
}

/// One-step-ahead fitted values for t = p..n-1 (aligned with x[p..]).
pub fn fitted_values(x: &[f64], fit: &ArFit) -> Vec<f64> {
    let p = fit.order;
    let n = x.len();
    let mut out = Vec::with_capacity(n - p);
    for t in p..n {
        let mut v = fit.mean;
        for (i, &c) in fit.phi.iter().enumerate() {
            v += c * (x[t - 1 - i] - fit.mean);
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_ar1_coefficient() {
        // deterministic AR(1)-ish: x_t = 0.6 x_{t-1} + e_t with fixed noise
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut x = vec![0.0f64; 4000];
        for t in 1..4000 {
            x[t] = 0.6 * x[t - 1] + rnd();
        }
        let fit = ar_aic(&x, None);
        assert!(fit.order >= 1);
        assert!((fit.phi[0] - 0.6).abs() < 0.08, "phi1={}", fit.phi[0]);
    }

    #[test]
    fn white_noise_prefers_low_order() {
        let mut state = 123456789u64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) - 0.5
        };
        let x: Vec<f64> = (0..2000).map(|_| rnd()).collect();
        let fit = ar_aic(&x, None);
        assert!(fit.order <= 3, "order={}", fit.order);
    }
}
