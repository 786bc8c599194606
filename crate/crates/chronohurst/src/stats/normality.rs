//! Anderson-Darling and Cramer-von Mises normality tests against the normal
//! family with estimated mean and sd, using the case-3 (both parameters
//! estimated) p-value approximations of D'Agostino & Stephens.

use crate::error::{Error, Result};
use crate::numeric::dist::{norm_cdf, norm_log_cdf};
use crate::series::MonthlySeries;
use crate::stats::{PValue, TestReport};

const ALPHA: f64 = 0.05;

fn sorted_z(s: &MonthlySeries) -> Result<Vec<f64>> {
    let n = s.len();
    if n < 8 {
        return Err(Error::SeriesTooShort { needed: 8, got: n });
    }
    let mean = s.values.iter().sum::<f64>() / n as f64;
    let var = s
        .values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (n as f64 - 1.0);
    if var <= 0.0 {
        return Err(Error::ZeroVariance {
            context: "normality test".into(),
        });
    }
    let sd = var.sqrt();
    let mut z: Vec<f64> = s.values.iter().map(|v| (v - mean) / sd).collect();
    z.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(z)
}

/// Anderson-Darling A^2 with the (1 + 0.75/n + 2.25/n^2) small-sample factor.
pub fn anderson_darling(s: &MonthlySeries) -> Result<TestReport> {
    let z = sorted_z(s)?;
    let n = z.len();
    let nf = n as f64;
    let mut h = 0.0;
    for i in 0..n {
        let log_p = norm_log_cdf(z[i]);
        let log_q = norm_log_cdf(-z[n - 1 - i]);
        h += (2.0 * (i as f64 + 1.0) - 1.0) * (log_p + log_q);
    }
    let a = -nf - h / nf;
    let aa = (1.0 + 0.75 / nf + 2.25 / (nf * nf)) * a;
    let p = if aa < 0.2 {
        PValue::Exact(1.0 - (-13.436 + 101.14 * aa - 223.73 * aa * aa).exp())
    } else if aa < 0.34 {
        PValue::Exact(1.0 - (-8.318 + 42.796 * aa - 59.938 * aa * aa).exp())
    } else if aa < 0.6 {
        PValue::Exact((0.9177 - 4.279 * aa - 1.38 * aa * aa).exp())
    } else if aa < 10.0 {
        let p = (1.2937 - 5.709 * aa + 0.0186 * aa * aa).exp();
        if p < 2.2e-16 {
            PValue::AtMost(2.2e-16)
        } else {
            PValue::Exact(p)
        }
    } else {
        PValue::AtMost(2.2e-16)
    };
    Ok(TestReport::new("anderson_darling", a, p, ALPHA).with_param("n", n))
}

/// Cramer-von Mises W^2 with the (1 + 0.5/n) factor; the approximation
/// saturates below 7.37e-10.
pub fn cramer_von_mises(s: &MonthlySeries) -> Result<TestReport> {
    let z = sorted_z(s)?;
    let n = z.len();
    let nf = n as f64;
    let mut w = 1.0 / (12.0 * nf);
    for (i, zi) in z.iter().enumerate() {
        let d = norm_cdf(*zi) - (2.0 * (i as f64 + 1.0) - 1.0) / (2.0 * nf);
        w += d * d;
    }
    let ww = (1.0 + 0.5 / nf) * w;
    let p = if ww < 0.0275 {
        PValue::Exact(1.0 - (-13.953 + 775.5 * ww - 12542.61 * ww * ww).exp())
    } else if ww < 0.051 {
        PValue::Exact(1.0 - (-5.903 + 179.546 * ww - 1515.29 * ww * ww).exp())
    } else if ww < 0.092 {
        PValue::Exact((0.886 - 31.62 * ww + 10.897 * ww * ww).exp())
    } else if ww < 1.1 {
        PValue::Exact((1.111 - 34.242 * ww + 12.832 * ww * ww).exp())
    } else {
        PValue::AtMost(7.37e-10)
    };
    Ok(TestReport::new("cramer_von_mises", w, p, ALPHA).with_param("n", n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MonthYear;
    use crate::synth::{generate, GeneratorKind, GeneratorSpec};

    #[test]
    fn gaussian_size_controlled() {
        let mut rej = 0;
        for seed in 0..100 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::White, 1000, seed)).unwrap();
            if anderson_darling(&s).unwrap().rejects() {
                rej += 1;
            }
        }
        assert!(rej <= 12, "AD rejected {rej}/100 gaussian samples");
    }

    #[test]
    fn uniform_rejected() {
        // uniform(0,1) via a simple LCG so the test is deterministic
        let mut rej = 0;
        for seed in 0..20u64 {
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let vals: Vec<f64> = (0..1000)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (state >> 11) as f64 / (1u64 << 53) as f64
                })
                .collect();
            let s = MonthlySeries::new(MonthYear::new(2000, 1), vals, "u").unwrap();
            if anderson_darling(&s).unwrap().rejects() {
                rej += 1;
            }
        }
        assert!(rej >= 19, "AD rejected only {rej}/20 uniform samples");
    }

    #[test]
    fn cvm_gaussian_size_controlled() {
        let mut rej = 0;
        for seed in 0..100 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::White, 1000, seed)).unwrap();
            if cramer_von_mises(&s).unwrap().rejects() {
                rej += 1;
            }
        }
        assert!(rej <= 12, "CvM rejected {rej}/100");
    }

    #[test]
    fn constant_series_errors() {
        let s = MonthlySeries::new(MonthYear::new(2000, 1), vec![5.0; 50], "c").unwrap();
        assert!(matches!(
            cramer_von_mises(&s),
            Err(Error::ZeroVariance { .. })
        ));
        assert!(matches!(
            anderson_darling(&s),
            Err(Error::ZeroVariance { .. })
        ));
    }
}
