//! Small numerical building blocks: least squares, Levinson-Durbin,
//! distribution tails, loess smoothing.

pub mod dist;
pub mod loess;
pub mod lstsq;
pub mod yule_walker;

/// Ordinary least-squares slope and intercept of `y` on `x`.
/// Returns `(slope, intercept, r2)`.
pub fn ols_line(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 {
        sxy * sxy / (sxx * syy)
    } else {
        1.0
    };
    (slope, my - slope * mx, r2)
}

/// Biased (1/n) autocorrelations of `x` at lags `0..=max_lag`, computed on
/// the mean-centered series. `acf[0]` is 1.
pub fn acf(x: &[f64], max_lag: usize) -> Vec<f64> {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let c: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let denom: f64 = c.iter().map(|v| v * v).sum();
    let mut out = Vec::with_capacity(max_lag + 1);
    out.push(1.0);
    for k in 1..=max_lag {
        let num: f64 = c[..n - k].iter().zip(&c[k..]).map(|(a, b)| a * b).sum();
        out.push(num / denom);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn line_fit_recovers_slope() {
        let x: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
        let (m, b, r2) = ols_line(&x, &y);
        assert_relative_eq!(m, 3.0, epsilon = 1e-12);
        assert_relative_eq!(b, -2.0, epsilon = 1e-10);
        assert_relative_eq!(r2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn acf_lag0_is_one() {
        let x = [1.0, 5.0, 2.0, 8.0, 3.0];
        let a = acf(&x, 2);
        assert_relative_eq!(a[0], 1.0);
        assert!(a[1].abs() <= 1.0);
    }
}
