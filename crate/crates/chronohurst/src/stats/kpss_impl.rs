//! KPSS stationarity test in the aTSA formulation: the statistic is computed
//! on residuals of the regression of Δy on y_{t-1} plus the deterministic
//! terms of the chosen variant, with a Bartlett-window long-run variance at
//! truncation lag floor(4*(n/100)^0.25).
//!
//! Critical values: the drift and trend variants converge to the classical
//! KPSS tables; the level variant (no deterministics) follows the
//! integral-of-squared-Brownian-motion law, tabulated here from a 20k-rep
//! simulation at n = 972.

use crate::error::{Error, Result};
use crate::numeric::lstsq::{lstsq, Mat};
use crate::series::MonthlySeries;
use crate::stats::{PValue, TestReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KpssVariant {
    /// No drift, no trend.
    Level,
    /// Drift, no trend.
    Drift,
    /// Drift and trend.
    Trend,
}

impl KpssVariant {
    fn name(self) -> &'static str {
        match self {
            KpssVariant::Level => "kpss_level",
            KpssVariant::Drift => "kpss_drift",
            KpssVariant::Trend => "kpss_trend",
        }
    }

    /// Critical values at p = 0.01, 0.025, 0.05, 0.10 (descending stat).
    fn table(self) -> [f64; 4] {
        match self {
            KpssVariant::Level => [2.755, 2.099, 1.616, 1.189],
            KpssVariant::Drift => [0.739, 0.574, 0.463, 0.347],
            KpssVariant::Trend => [0.216, 0.176, 0.146, 0.119],
        }
    }
}

const PS: [f64; 4] = [0.01, 0.025, 0.05, 0.10];

/// Interpolated p-bucket, clamped to [0.01, 0.10].
fn p_bucket(stat: f64, table: [f64; 4]) -> PValue {
    if stat >= table[0] {
        return PValue::AtMost(0.01);
    }
    if stat <= table[3] {
        return PValue::AtLeast(0.10);
    }
    for i in 0..3 {
        if stat < table[i] && stat >= table[i + 1] {
            let f = (table[i] - stat) / (table[i] - table[i + 1]);
            return PValue::Exact(PS[i] + f * (PS[i + 1] - PS[i]));
        }
    }
    PValue::AtLeast(0.10)
}

pub(crate) fn bartlett_lag(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

fn bartlett_lrv(e: &[f64], lag: usize) -> f64 {
    let n = e.len() as f64;
    let mut s2 = e.iter().map(|v| v * v).sum::<f64>() / n;
    for i in 1..=lag {
        let w = 1.0 - i as f64 / (lag as f64 + 1.0);
        let g: f64 = e[..e.len() - i]
            .iter()
            .zip(&e[i..])
            .map(|(a, b)| a * b)
            .sum();
        s2 += 2.0 * w * g / n;
    }
    s2
}

/// Classic KPSS level statistic (demeaned residuals, Bartlett long-run
/// variance at the same lag rule). This is the construction integration-order
/// selection needs: unlike the regression-on-lagged-level form below, it
/// keeps full power against driftless random walks.
pub(crate) fn classic_level_stat(values: &[f64]) -> f64 {
    let n = values.len();
    let lag = bartlett_lag(n);
    let mean = values.iter().sum::<f64>() / n as f64;
    let e: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let nf = n as f64;
    let mut acc = 0.0;
    let mut eta = 0.0;
    for v in &e {
        acc += v;
        eta += acc * acc;
    }
    eta /= nf * nf;
    eta / bartlett_lrv(&e, lag)
}

/// Classic KPSS level 5% critical value (KPSS 1992 table).
pub(crate) const CLASSIC_LEVEL_CV05: f64 = 0.463;

/// KPSS test; rejects stationarity when the bucket p-value is <= 0.05.
pub fn kpss(s: &MonthlySeries, variant: KpssVariant) -> Result<TestReport> {
    let n = s.len();
    if n < 20 {
        return Err(Error::SeriesTooShort { needed: 20, got: n });
    }
    let lag = bartlett_lag(n);
    let dy: Vec<f64> = s.values.windows(2).map(|w| w[1] - w[0]).collect();
    let ylag: Vec<f64> = s.values[..n - 1].to_vec();
    let m = dy.len();
    let cols: Vec<Vec<f64>> = match variant {
        KpssVariant::Level => vec![ylag],
        KpssVariant::Drift => vec![vec![1.0; m], ylag],
        KpssVariant::Trend => vec![vec![1.0; m], (0..m).map(|i| (i + 2) as f64).collect(), ylag],
    };
    let x = Mat::from_columns(&cols);
    let fit = lstsq(&x, &dy);
    let e = fit.residuals;
    let mf = m as f64;
    let mut acc = 0.0;
    let mut eta = 0.0;
    for v in &e {
        acc += v;
        eta += acc * acc;
    }
    eta /= mf * mf;
    let lrv = bartlett_lrv(&e, lag);
    if lrv <= 0.0 {
        return Err(Error::ZeroVariance {
            context: "kpss long-run variance".into(),
        });
    }
    let stat = eta / lrv;
    let p = p_bucket(stat, variant.table());
    Ok(TestReport::new(variant.name(), stat, p, 0.05)
        .with_param("lag", lag)
        .with_param("variant", format!("{variant:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, GeneratorKind, GeneratorSpec};

    #[test]
    fn lag_rule_reproduces_7_at_972() {
        assert_eq!(bartlett_lag(972), 7);
        assert_eq!(bartlett_lag(971), 7);
    }

    #[test]
    fn gaussian_level_size_controlled() {
        let mut rej = 0;
        for seed in 0..100 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::White, 972, seed)).unwrap();
            if kpss(&s, KpssVariant::Level).unwrap().rejects() {
                rej += 1;
            }
        }
        assert!(rej <= 12, "KPSS level rejected {rej}/100 white-noise draws");
    }

    #[test]
    fn classic_level_rejects_random_walk() {
        let mut rej = 0;
        for seed in 0..20 {
            let s = generate(&GeneratorSpec::new(
                GeneratorKind::Fbm { h: 0.5 },
                972,
                seed,
            ))
            .unwrap();
            if classic_level_stat(&s.values) > CLASSIC_LEVEL_CV05 {
                rej += 1;
            }
        }
        assert!(rej >= 19, "classic KPSS missed the random walk: {rej}/20");
    }

    #[test]
    fn classic_level_accepts_gaussian() {
        let mut pass = 0;
        for seed in 0..20 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::White, 972, seed)).unwrap();
            if classic_level_stat(&s.values) <= CLASSIC_LEVEL_CV05 {
                pass += 1;
            }
        }
        assert!(
            pass >= 18,
            "classic KPSS rejected white noise: {}/20",
            20 - pass
        );
    }

    #[test]
    fn drift_variant_mean_shift_invariant() {
        let s = generate(&GeneratorSpec::new(GeneratorKind::White, 400, 3)).unwrap();
        let mut shifted = s.clone();
        for v in &mut shifted.values {
            *v += 1234.5;
        }
        let a = kpss(&s, KpssVariant::Drift).unwrap().statistic;
        let b = kpss(&shifted, KpssVariant::Drift).unwrap().statistic;
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn bucket_interpolation_clamps() {
        assert_eq!(
            p_bucket(10.0, KpssVariant::Level.table()),
            PValue::AtMost(0.01)
        );
        assert_eq!(
            p_bucket(0.01, KpssVariant::Level.table()),
            PValue::AtLeast(0.10)
        );
        match p_bucket(0.5, KpssVariant::Drift.table()) {
            PValue::Exact(p) => assert!(p > 0.025 && p < 0.05, "p={p}"),
            other => panic!("expected interpolated bucket, got {other:?}"),
        }
    }
}
