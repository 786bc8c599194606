//! Morlet continuous wavelet transform with red-noise significance, ridge
//! extraction, time-averaged (global) spectrum, dominant-period detection
//! and an AR-spectrum dominant-frequency estimator.
//!
//! Conventions follow Torrence & Compo: center frequency 6, frequency-domain
//! convolution with zero padding to the next power of two, scale grid
//! s0 * 2^(j*dj), cone of influence from the e-folding time sqrt(2)*s.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::acf;
use crate::numeric::dist::chi2_ppf;
use crate::numeric::loess::loess_fit;
use crate::numeric::yule_walker::{ar_aic, default_order_max};
use crate::par::{map_indices, Parallelism};
use crate::series::MonthlySeries;

const OMEGA0: f64 = 6.0;
/// Months per scale unit: 4*pi / (w0 + sqrt(2 + w0^2)).
pub fn fourier_factor() -> f64 {
    4.0 * std::f64::consts::PI / (OMEGA0 + (2.0 + OMEGA0 * OMEGA0).sqrt())
}

const S0_MONTHS: f64 = 2.0;
/// Decorrelation factor for time-averaged significance (Morlet).
const GAMMA_AVG: f64 = 2.32;

/// Input detrending applied before the transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detrend {
    #[default]
    None,
    Loess {
        span: f64,
    },
}

/// Morlet power spectrum over (period, time).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveletSpectrum {
    /// Periods in years, geometric with ratio 2^dj.
    pub periods: Vec<f64>,
    /// Month indices 0..n-1.
    pub times: Vec<usize>,
    /// `power[j][t]`, amplitude^2, row j at `periods[j]`.
    pub power: Vec<Vec<f64>>,
    /// Cone-of-influence period (years) per time; rows above it are edge-affected.
    pub coi: Vec<f64>,
    /// `significance_mask[j][t]`; empty (all false) until [`significance`] runs.
    pub significance_mask: Vec<Vec<bool>>,
    /// AR(1) coefficient fitted from the analyzed series' lag-1 autocorrelation.
    pub background_ar1: f64,
    /// Significance level of the current mask, if any.
    pub sig_level: Option<f64>,
    pub dj: f64,
    /// Variance of the analyzed (detrended, demeaned) series.
    pub variance: f64,
    /// Number of time points.
    pub n: usize,
}

impl WaveletSpectrum {
    pub fn inside_coi(&self, j: usize, t: usize) -> bool {
        self.periods[j] <= self.coi[t]
    }
}

/// Time-averaged spectrum with a per-period significance threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalSpectrum {
    /// Years; the parent spectrum's grid.
    pub periods: Vec<f64>,
    /// Mean power over inside-COI cells; NaN when a row has none.
    pub avg_power: Vec<f64>,
    /// Red-noise threshold at the declared level.
    pub significance_level: Vec<f64>,
    pub alpha: f64,
}

fn ar1_background(alpha: f64, period_months: f64) -> f64 {
    let f = 1.0 / period_months; // cycles per sample
    (1.0 - alpha * alpha)
        / (1.0 + alpha * alpha - 2.0 * alpha * (2.0 * std::f64::consts::PI * f).cos())
}

/// Morlet CWT of a monthly series.
pub fn morlet_cwt(
    s: &MonthlySeries,
    dj: f64,
    octaves: usize,
    detrend: Detrend,
) -> Result<WaveletSpectrum> {
    morlet_cwt_with(s, dj, octaves, detrend, Parallelism::default())
}

pub fn morlet_cwt_with(
    s: &MonthlySeries,
    dj: f64,
    octaves: usize,
    detrend: Detrend,
    mode: Parallelism,
) -> Result<WaveletSpectrum> {
    let n = s.len();
    if n < 64 {
        return Err(Error::SeriesTooShort { needed: 64, got: n });
    }
    if !(dj > 0.0 && dj <= 0.25) {
        return Err(Error::InvalidParameter(format!(
            "dj must lie in (0, 0.25], got {dj}"
        )));
    }
    if octaves == 0 {
        return Err(Error::InvalidParameter("octaves must be >= 1".into()));
    }
    let mut analyzed = s.values.clone();
    if let Detrend::Loess { span } = detrend {
        if !(span > 0.0 && span <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "loess span must lie in (0, 1], got {span}"
            )));
        }
        let fit = loess_fit(&analyzed, span);
        for (v, f) in analyzed.iter_mut().zip(&fit) {
            *v -= f;
        }
    }
    let mean = analyzed.iter().sum::<f64>() / n as f64;
    for v in &mut analyzed {
        *v -= mean;
    }
    let variance = analyzed.iter().map(|v| v * v).sum::<f64>() / n as f64;
    let r = acf(&analyzed, 1);
    let background_ar1 = r[1].clamp(0.0, 0.999_999);

    let npad = n.next_power_of_two();
    let mut spectrum_in: Vec<Complex64> = analyzed
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)).take(npad - n))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(npad).process(&mut spectrum_in);
    let inv = planner.plan_fft_inverse(npad);
    // angular frequencies of the padded grid (dt = 1 month)
    let omega: Vec<f64> = (0..npad)
        .map(|k| {
            let k = if k <= npad / 2 {
                k as f64
            } else {
                k as f64 - npad as f64
            };
            2.0 * std::f64::consts::PI * k / npad as f64
        })
        .collect();

    let j_count = (octaves as f64 / dj).round() as usize + 1;
    let scales: Vec<f64> = (0..j_count)
        .map(|j| S0_MONTHS * 2f64.powf(dj * j as f64))
        .collect();
    let norm_base = std::f64::consts::PI.powf(-0.25);

    let power = map_indices(j_count, mode, |j| {
        let sc = scales[j];
        let norm = norm_base * (2.0 * std::f64::consts::PI * sc).sqrt();
        let mut buf: Vec<Complex64> = spectrum_in
            .iter()
            .zip(&omega)
            .map(|(x, &w)| {
                if w > 0.0 {
                    let arg = sc * w - OMEGA0;
                    *x * (norm * (-0.5 * arg * arg).exp())
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        inv.process(&mut buf);
        let inv_n = 1.0 / npad as f64;
        buf[..n]
            .iter()
            .map(|c| (c * inv_n).norm_sqr())
            .collect::<Vec<f64>>()
    });

    let ff = fourier_factor();
    let periods: Vec<f64> = scales.iter().map(|s| s * ff / 12.0).collect();
    let coi: Vec<f64> = (0..n)
        .map(|t| {
            let dist = t.min(n - 1 - t) as f64 + 0.5;
            ff * dist / std::f64::consts::SQRT_2 / 12.0
        })
        .collect();
    Ok(WaveletSpectrum {
        periods,
        times: (0..n).collect(),
        power,
        coi,
        significance_mask: vec![vec![false; n]; j_count],
        background_ar1,
        sig_level: None,
        dj,
        variance,
        n,
    })
}

/// Pointwise chi-square(2) red-noise significance at level `alpha`; cells
/// outside the cone of influence are never significant.
pub fn significance(spec: &WaveletSpectrum, alpha: f64) -> Result<WaveletSpectrum> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1), got {alpha}"
        )));
    }
    let mut out = spec.clone();
    if alpha == 0.0 {
        for row in &mut out.significance_mask {
            row.iter_mut().for_each(|c| *c = false);
        }
        out.sig_level = Some(0.0);
        return Ok(out);
    }
    let q = chi2_ppf(alpha, 2.0) / 2.0;
    for (j, row) in out.significance_mask.iter_mut().enumerate() {
        let p_months = spec.periods[j] * 12.0;
        let thr = spec.variance * ar1_background(spec.background_ar1, p_months) * q;
        for (t, cell) in row.iter_mut().enumerate() {
            *cell = spec.periods[j] <= spec.coi[t] && spec.power[j][t] > thr;
        }
    }
    out.sig_level = Some(alpha);
    Ok(out)
}

/// A chain of per-column power maxima at adjacent periods.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ridge {
    /// (time index, period in years) points, consecutive in time.
    pub points: Vec<(usize, f64)>,
}

/// Per-column local maxima of power across periods, chained over adjacent
/// columns when within one dj bin. Maxima below 5% of their column's peak
/// (zero-padding sidelobes) and chains shorter than 3 columns are dropped.
pub fn ridges(spec: &WaveletSpectrum) -> Vec<Ridge> {
    let jn = spec.periods.len();
    let n = spec.n;
    let global_max = spec
        .power
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &b| a.max(b));
    if global_max <= 0.0 {
        return Vec::new();
    }
    // active chains: (last period index, points)
    let mut done: Vec<Ridge> = Vec::new();
    let mut active: Vec<(usize, Vec<(usize, f64)>)> = Vec::new();
    for t in 0..n {
        let col_max = (0..jn).map(|j| spec.power[j][t]).fold(0.0f64, f64::max);
        let floor = 0.05 * col_max;
        let mut maxima: Vec<usize> = Vec::new();
        for j in 1..jn.saturating_sub(1) {
            let p = spec.power[j][t];
            if p > floor && p > spec.power[j - 1][t] && p > spec.power[j + 1][t] {
                maxima.push(j);
            }
        }
        let mut next: Vec<(usize, Vec<(usize, f64)>)> = Vec::new();
        let mut used = vec![false; maxima.len()];
        for (last_j, mut pts) in active.drain(..) {
            let slot = maxima
                .iter()
                .enumerate()
                .find(|(mi, &j)| !used[*mi] && j.abs_diff(last_j) <= 1)
                .map(|(mi, &j)| (mi, j));
            match slot {
                Some((mi, j)) => {
                    pts.push((t, spec.periods[j]));
                    next.push((j, pts));
                    used[mi] = true;
                }
                None => {
                    if pts.len() >= 3 {
                        done.push(Ridge { points: pts });
                    }
                }
            }
        }
        for (mi, &j) in maxima.iter().enumerate() {
            if !used[mi] {
                next.push((j, vec![(t, spec.periods[j])]));
            }
        }
        active = next;
    }
    for (_, pts) in active {
        if pts.len() >= 3 {
            done.push(Ridge { points: pts });
        }
    }
    done
}

/// Time-mean power per period over inside-COI cells, with a red-noise
/// significance curve at level `alpha` (time-averaged chi-square with
/// scale-dependent degrees of freedom).
pub fn global_spectrum(spec: &WaveletSpectrum, alpha: f64) -> Result<GlobalSpectrum> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1), got {alpha}"
        )));
    }
    let jn = spec.periods.len();
    let mut avg = vec![f64::NAN; jn];
    let mut thr = vec![f64::INFINITY; jn];
    let ff = fourier_factor();
    for j in 0..jn {
        let inside: Vec<usize> = (0..spec.n).filter(|&t| spec.inside_coi(j, t)).collect();
        let na = inside.len();
        if na == 0 {
            continue;
        }
        avg[j] = inside.iter().map(|&t| spec.power[j][t]).sum::<f64>() / na as f64;
        if alpha > 0.0 {
            let p_months = spec.periods[j] * 12.0;
            let scale = p_months / ff;
            let dof = (2.0 * (1.0 + (na as f64 / (GAMMA_AVG * scale)).powi(2)).sqrt()).max(2.0);
            thr[j] = spec.variance
                * ar1_background(spec.background_ar1, p_months)
                * chi2_ppf(alpha, dof)
                / dof;
        }
    }
    Ok(GlobalSpectrum {
        periods: spec.periods.clone(),
        avg_power: avg,
        significance_level: thr,
        alpha,
    })
}

/// The k largest significant local maxima of the global spectrum,
/// descending by power; periods in years.
pub fn dominant_periods(gs: &GlobalSpectrum, k: usize) -> Vec<f64> {
    let jn = gs.periods.len();
    let mut cands: Vec<(f64, f64)> = Vec::new();
    for j in 0..jn {
        let v = gs.avg_power[j];
        if !v.is_finite() {
            continue;
        }
        let left = if j > 0 && gs.avg_power[j - 1].is_finite() {
            gs.avg_power[j - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = if j + 1 < jn && gs.avg_power[j + 1].is_finite() {
            gs.avg_power[j + 1]
        } else {
            f64::NEG_INFINITY
        };
        if v > left && v > right && v > gs.significance_level[j] {
            cands.push((v, gs.periods[j]));
        }
    }
    cands.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    cands.into_iter().take(k).map(|(_, p)| p).collect()
}

/// Dominant period (in samples) from the spectral density of an AIC-selected
/// AR fit to the linearly detrended series. Returns 1 when the spectrum is
/// flat, has no interior maximum, or implies a period beyond n/2.
pub fn find_frequency(s: &MonthlySeries) -> usize {
    let n = s.len();
    let t: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let (slope, intercept, _) = crate::numeric::ols_line(&t, &s.values);
    let z: Vec<f64> = s
        .values
        .iter()
        .zip(&t)
        .map(|(v, ti)| v - (intercept + slope * ti))
        .collect();
    let fit = ar_aic(&z, Some(default_order_max(n)));
    let mean = z.iter().sum::<f64>() / n as f64;
    let sample_var = z.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    let var_pred = sample_var * fit.var_ratio * n as f64 / (n as f64 - (fit.order as f64 + 1.0));
    const NFREQ: usize = 500;
    let freqs: Vec<f64> = (0..NFREQ)
        .map(|i| 0.5 * i as f64 / (NFREQ - 1) as f64)
        .collect();
    let spec: Vec<f64> = if fit.order == 0 {
        vec![var_pred; NFREQ]
    } else {
        freqs
            .iter()
            .map(|&f| {
                let mut cs = 0.0;
                let mut sn = 0.0;
                for (i, &phi) in fit.phi.iter().enumerate() {
                    let a = 2.0 * std::f64::consts::PI * f * (i as f64 + 1.0);
                    cs += phi * a.cos();
                    sn += phi * a.sin();
                }
                var_pred / ((1.0 - cs) * (1.0 - cs) + sn * sn)
            })
            .collect()
    };
    let max_spec = spec.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max_spec.is_nan() || max_spec <= 10.0 {
        return 1;
    }
    let imax = spec
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let period_at = |idx: usize| -> Option<usize> {
        if idx == 0 || idx + 1 >= NFREQ {
            return None; // boundary, not an interior maximum
        }
        let p = (1.0 / freqs[idx] + 0.5).floor();
        if p.is_finite() && p >= 1.0 && p <= (n / 2) as f64 {
            Some(p as usize)
        } else {
            None
        }
    };
    if imax == 0 {
        // descend from the zero-frequency peak, then take the next maximum
        let j0 = match spec.windows(2).position(|w| w[1] > w[0]) {
            Some(j) => j,
            None => return 1,
        };
        let next = spec[j0 + 1..]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| j0 + 1 + i)
            .unwrap();
        period_at(next).unwrap_or(1)
    } else {
        period_at(imax).unwrap_or(1)
    }
}
