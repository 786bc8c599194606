//! Nonlinearity diagnostics against AR / ARIMA nulls: McLeod-Li, Keenan's
//! one-degree test and Tsay's quadratic-terms F test.
//!
//! Keenan uses Yule-Walker fitted values for the AR stage (the convention of
//! the reference toolchain); Tsay is all-OLS. Both default the AR order to
//! the AIC choice with order.max = floor(10*log10(n)), floored at 1.

use crate::error::{Error, Result};
use crate::numeric::acf;
use crate::numeric::dist::{chi2_sf, f_sf};
use crate::numeric::lstsq::{lstsq, Mat};
use crate::numeric::yule_walker::{ar_aic, ar_fixed, fitted_values};
use crate::series::MonthlySeries;
use crate::stats::{PValue, TestReport};

const ALPHA: f64 = 0.05;

/// Ljung-Box on the squared mean-centered series at lags 1..=max_lag;
/// reports the maximum p-value across lags and rejects when it is <= 0.05.
pub fn mcleod_li(s: &MonthlySeries, max_lag: usize) -> Result<TestReport> {
    let n = s.len();
    if max_lag == 0 || max_lag >= n {
        return Err(Error::InvalidParameter(format!(
            "max_lag {max_lag} out of range for n={n}"
        )));
    }
    let mean = s.values.iter().sum::<f64>() / n as f64;
    let z: Vec<f64> = s.values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let zm = z.iter().sum::<f64>() / n as f64;
    if z.iter().map(|v| (v - zm) * (v - zm)).sum::<f64>() <= 0.0 {
        return Err(Error::ZeroVariance {
            context: "mcleod-li squared series".into(),
        });
    }
    let r = acf(&z, max_lag);
    let nf = n as f64;
    let mut q = 0.0;
    let mut max_p: f64 = 0.0;
    let mut q_at_max = 0.0;
    for k in 1..=max_lag {
        q += r[k] * r[k] / (nf - k as f64);
        let stat = nf * (nf + 2.0) * q;
        let p = chi2_sf(stat, k as f64);
        if p >= max_p {
            max_p = p;
            q_at_max = stat;
        }
    }
    Ok(
        TestReport::new("mcleod_li", q_at_max, PValue::Exact(max_p), ALPHA)
            .with_param("max_lag", max_lag)
            .with_param("decision", "max p over lags"),
    )
}

fn default_order(s: &MonthlySeries) -> usize {
    ar_aic(&s.values, None).order.max(1)
}

fn lag_matrix(x: &[f64], m: usize, with_intercept: bool) -> (Vec<f64>, Mat) {
    let n = x.len();
    let rows = n - m;
    let y = x[m..].to_vec();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    if with_intercept {
        cols.push(vec![1.0; rows]);
    }
    for i in 1..=m {
        cols.push(x[m - i..n - i].to_vec());
    }
    (y, Mat::from_columns(&cols))
}

/// Keenan's one-degree F test against an AR(m) null. `order = None` selects
/// m by AIC.
pub fn keenan(s: &MonthlySeries, order: Option<usize>) -> Result<TestReport> {
    let m = order.unwrap_or_else(|| default_order(s));
    let n = s.len();
    if n < 4 * m + 10 {
        return Err(Error::SeriesTooShort {
            needed: 4 * m + 10,
            got: n,
        });
    }
    let x = &s.values;
    // stage 1: Yule-Walker AR(m) fitted values on t = m..n-1
    let fit = ar_fixed(x, m);
    let fit1 = fitted_values(x, &fit);
    let (y, design) = lag_matrix(x, m, true);
    let res1: Vec<f64> = y.iter().zip(&fit1).map(|(a, b)| a - b).collect();
    // stage 2: regress squared fitted values on the lag design
    let sq: Vec<f64> = fit1.iter().map(|v| v * v).collect();
    let stage2 = lstsq(&design, &sq);
    let res2 = stage2.residuals;
    // stage 3: no-intercept projection of res1 on res2
    let s22: f64 = res2.iter().map(|v| v * v).sum();
    if s22 <= 0.0 {
        return Err(Error::Degenerate("keenan: zero quadratic signal".into()));
    }
    let eta: f64 = res1.iter().zip(&res2).map(|(a, b)| a * b).sum::<f64>() / s22;
    let explained = eta * eta * s22;
    let rss: f64 = res1.iter().map(|v| v * v).sum::<f64>() - explained;
    let df2 = (n - 2 * m - 2) as f64;
    let stat = explained * df2 / rss;
    let p = f_sf(stat, 1.0, df2);
    Ok(TestReport::new("keenan", stat, PValue::Exact(p), ALPHA)
        .with_param("ar_order", m)
        .with_param("df2", df2))
}

/// Tsay's F test with all quadratic cross-terms of the lagged regressors.
pub fn tsay(s: &MonthlySeries, order: Option<usize>) -> Result<TestReport> {
    let m = order.unwrap_or_else(|| default_order(s));
    let n = s.len();
    let k = m * (m + 1) / 2;
    if n < 2 * m + k + 20 {
        return Err(Error::SeriesTooShort {
            needed: 2 * m + k + 20,
            got: n,
        });
    }
    let x = &s.values;
    let (y, design) = lag_matrix(x, m, true);
    let rows = y.len();
    let stage1 = lstsq(&design, &y);
    let res1 = stage1.residuals;
    // quadratic cross terms of the lagged columns
    let lag_col = |i: usize| -> Vec<f64> { x[m - i..n - i].to_vec() };
    let mut zres: Vec<Vec<f64>> = Vec::with_capacity(k);
    for i in 1..=m {
        let ci = lag_col(i);
        for j in i..=m {
            let cj = lag_col(j);
            let z: Vec<f64> = ci.iter().zip(&cj).map(|(a, b)| a * b).collect();
            let f = lstsq(&design, &z);
            zres.push(f.residuals);
        }
    }
    let mut cols = Vec::with_capacity(k + 1);
    cols.push(vec![1.0; rows]);
    cols.extend(zres);
    let xz = Mat::from_columns(&cols);
    let stage3 = lstsq(&xz, &res1);
    let ssr0: f64 = res1.iter().map(|v| v * v).sum();
    let ssr1: f64 = stage3.residuals.iter().map(|v| v * v).sum();
    let df2 = (n - 2 * m - k - 1) as f64;
    let stat = ((ssr0 - ssr1) / k as f64) / (ssr1 / df2);
    let p = f_sf(stat, k as f64, df2);
    Ok(TestReport::new("tsay", stat, PValue::Exact(p), ALPHA)
        .with_param("ar_order", m)
        .with_param("df1", k)
        .with_param("df2", df2))
}
