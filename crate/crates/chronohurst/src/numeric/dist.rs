//! Distribution tail helpers on top of statrs special functions.

use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma_ur;

/// Standard normal CDF.
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// log of the standard normal CDF (adequate for |z| up to ~30).
pub fn norm_log_cdf(z: f64) -> f64 {
    let p = norm_cdf(z);
    if p > 0.0 {
        p.ln()
    } else {
        // asymptotic tail: log phi(z) - log|z|
        -0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln() - (-z).ln()
    }
}

/// Chi-square upper tail P(X > x) with `df` degrees of freedom (df may be
/// non-integer, as needed for averaged wavelet spectra).
pub fn chi2_sf(x: f64, df: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_ur(df / 2.0, x / 2.0)
}

/// Chi-square quantile (upper point at probability `p` of the CDF), by
/// bisection on the survival function. Good to ~1e-10.
pub fn chi2_ppf(p: f64, df: f64) -> f64 {
    assert!((0.0..1.0).contains(&p));
    if p == 0.0 {
        return 0.0;
    }
    let target = 1.0 - p;
    let mut lo = 0.0;
    let mut hi = df.max(1.0);
    while chi2_sf(hi, df) > target {
        hi *= 2.0;
        if hi > 1e9 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chi2_sf(mid, df) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// F-distribution upper tail P(F > x).
pub fn f_sf(x: f64, df1: f64, df2: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    beta_reg(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * x))
}
