//! Hurst estimation, the expanding-window (chronological) Hurst path and
//! three-regime segmentation of that path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::ols_line;
use crate::par::{map_indices, min_by_key, Parallelism};
use crate::series::{MonthYear, MonthlySeries};
use crate::stats::local_whittle_d;

/// Estimator used for a Hurst point estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum HurstMethod {
    #[default]
    RescaledRange,
    Whittle,
}

/// A Hurst point estimate. `h` is clamped to [0, 1.5]; `raw` is not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstEstimate {
    pub h: f64,
    pub raw: f64,
    pub method: HurstMethod,
    /// Block lengths used by the rescaled-range fit (empty for whittle).
    pub window_sizes: Vec<usize>,
    /// R^2 of the log-log regression (1.0 for whittle).
    pub fit_r2: f64,
}

const H_CLAMP_MAX: f64 = 1.5;
const MIN_BLOCK: usize = 8;
/// Log-spaced block-size candidates between MIN_BLOCK and n/2.
const GRID_POINTS: usize = 24;

fn clamp_h(raw: f64) -> f64 {
    raw.clamp(0.0, H_CLAMP_MAX)
}

/// Log-spaced block sizes in [MIN_BLOCK, n/2], deduplicated after rounding;
/// falls back to every integer in the range when it is narrow.
pub(crate) fn block_sizes(n: usize) -> Vec<usize> {
    let tmax = n / 2;
    if tmax < MIN_BLOCK {
        return Vec::new();
    }
    if tmax - MIN_BLOCK < GRID_POINTS {
        return (MIN_BLOCK..=tmax).collect();
    }
    let lo = (MIN_BLOCK as f64).ln();
    let hi = (tmax as f64).ln();
    let mut sizes: Vec<usize> = (0..GRID_POINTS)
        .map(|i| {
            (lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64)
                .exp()
                .round() as usize
        })
        .collect();
    sizes.dedup();
    sizes
}

/// Rescaled-range Hurst estimate: for each block size t, partition into
/// non-overlapping blocks, compute R (range of cumulative deviations from
/// the block mean) over S (block sd), average across blocks, and take the
/// slope of ln(mean R/S) on ln(t). Zero-variance blocks are dropped.
pub fn rs_hurst(s: &MonthlySeries) -> Result<HurstEstimate> {
    let n = s.len();
    if n < 16 {
        return Err(Error::SeriesTooShort { needed: 16, got: n });
    }
    let mut log_t = Vec::new();
    let mut log_rs = Vec::new();
    let mut used = Vec::new();
    for t in block_sizes(n) {
        let mut sum = 0.0;
        let mut count = 0usize;
        for b in 0..n / t {
            let blk = &s.values[b * t..(b + 1) * t];
            let mean = blk.iter().sum::<f64>() / t as f64;
            let mut acc = 0.0;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut ss = 0.0;
            for v in blk {
                let d = v - mean;
                acc += d;
                lo = lo.min(acc);
                hi = hi.max(acc);
                ss += d * d;
            }
            let sd = (ss / t as f64).sqrt();
            if sd > 0.0 {
                sum += (hi - lo) / sd;
                count += 1;
            }
        }
        if count > 0 {
            log_t.push((t as f64).ln());
            log_rs.push((sum / count as f64).ln());
            used.push(t);
        }
    }
    if used.is_empty() {
        return Err(Error::Degenerate(
            "rescaled range: all blocks constant".into(),
        ));
    }
    // the log-log fit needs at least four distinct block sizes to mean
    // anything; shorter series (n < 22) cannot provide them
    if used.len() < 4 {
        return Err(Error::Degenerate(format!(
            "rescaled range: only {} usable block size(s), need 4",
            used.len()
        )));
    }
    let (slope, _, r2) = ols_line(&log_t, &log_rs);
    Ok(HurstEstimate {
        h: clamp_h(slope),
        raw: slope,
        method: HurstMethod::RescaledRange,
        window_sizes: used,
        fit_r2: r2,
    })
}

/// Whittle-based Hurst: local Whittle d at bandwidth n^0.65, plus one half.
pub fn whittle_hurst(s: &MonthlySeries) -> Result<HurstEstimate> {
    let n = s.len();
    if n < 16 {
        return Err(Error::SeriesTooShort { needed: 16, got: n });
    }
    let m = ((n as f64).powf(0.65) as usize).clamp(2, n / 2 - 1);
    let rep = local_whittle_d(s, m)?;
    let raw = rep.d + 0.5;
    Ok(HurstEstimate {
        h: clamp_h(raw),
        raw,
        method: HurstMethod::Whittle,
        window_sizes: Vec::new(),
        fit_r2: 1.0,
    })
}

fn estimate(values: &[f64], start: MonthYear, method: HurstMethod) -> Option<f64> {
    let s = MonthlySeries::new(start, values.to_vec(), "prefix").ok()?;
    let est = match method {
        HurstMethod::RescaledRange => rs_hurst(&s),
        HurstMethod::Whittle => whittle_hurst(&s),
    };
    est.ok().map(|e| e.h)
}

/// Expanding-window Hurst path. Entry k holds the estimate on the prefix
/// s[0..=k]; entries before `min_window - 1` are NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChePath {
    pub start: MonthYear,
    pub min_window: usize,
    pub method: HurstMethod,
    /// One entry per month of the underlying series; NaN = undefined.
    pub values: Vec<f64>,
    pub undefined_prefix: usize,
}

impl ChePath {
    pub fn month_at(&self, i: usize) -> MonthYear {
        self.start.plus_months(i as i64)
    }

    /// Mean of defined entries whose calendar month lies in [from, to].
    pub fn mean_over(&self, from: MonthYear, to: MonthYear) -> Option<f64> {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (i, v) in self.values.iter().enumerate() {
            let m = self.month_at(i);
            if m >= from && m <= to && v.is_finite() {
                sum += v;
                count += 1;
            }
        }
        if count > 0 {
            Some(sum / count as f64)
        } else {
            None
        }
    }

    /// CSV serialization: `month,h`, empty h for undefined entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("month,h\n");
        for (i, v) in self.values.iter().enumerate() {
            if v.is_finite() {
                out.push_str(&format!("{},{:.6}\n", self.month_at(i), v));
            } else {
                out.push_str(&format!("{},\n", self.month_at(i)));
            }
        }
        out
    }
}

/// Computes the chronological Hurst path with the given minimum window.
/// The rescaled-range method yields defined entries only once a prefix
/// offers four usable block sizes (22 months); the default window of 24
/// clears that for any non-degenerate series.
pub fn che(s: &MonthlySeries, min_window: usize, method: HurstMethod) -> Result<ChePath> {
    che_with(s, min_window, method, Parallelism::default())
}

/// [`che`] with an explicit execution mode (used by the benches).
pub fn che_with(
    s: &MonthlySeries,
    min_window: usize,
    method: HurstMethod,
    mode: Parallelism,
) -> Result<ChePath> {
    let n = s.len();
    if min_window < 16 {
        return Err(Error::InvalidParameter(format!(
            "min_window must be >= 16, got {min_window}"
        )));
    }
    if n <= min_window {
        return Err(Error::SeriesTooShort {
            needed: min_window + 1,
            got: n,
        });
    }
    let values = map_indices(n, mode, |k| {
        if k + 1 < min_window {
            f64::NAN
        } else {
            estimate(&s.values[..=k], s.start, method).unwrap_or(f64::NAN)
        }
    });
    let undefined_prefix = values
        .iter()
        .position(|v| v.is_finite())
        .unwrap_or(values.len());
    Ok(ChePath {
        start: s.start,
        min_window,
        method,
        values,
        undefined_prefix,
    })
}

/// Three-regime segmentation of a Hurst path: constant level, linear rise,
/// constant level, continuous at both knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    /// Last month of the opening plateau.
    pub knot1: MonthYear,
    /// First month of the closing plateau.
    pub knot2: MonthYear,
    pub labels: [String; 3],
    pub level1: f64,
    /// Slope of the middle segment per month.
    pub slope2: f64,
    pub level3: f64,
    pub sse: f64,
}

impl Segmentation {
    /// Flat paths fit with near-equal plateaus; callers treat that as
    /// "no regime change".
    pub fn is_degenerate(&self, tol: f64) -> bool {
        (self.level3 - self.level1).abs() < tol
    }
}

const MIN_SEGMENT: usize = 36;

/// Exhaustive continuous constant-linear-constant fit over all knot pairs
/// (1-month grid, segments of at least 36 months), minimizing SSE.
pub fn segment_che(path: &ChePath) -> Result<Segmentation> {
    segment_che_with(path, Parallelism::default())
}

pub fn segment_che_with(path: &ChePath, mode: Parallelism) -> Result<Segmentation> {
    let first = path
        .values
        .iter()
        .position(|v| v.is_finite())
        .ok_or_else(|| Error::Degenerate("empty hurst path".into()))?;
    let y: Vec<f64> = path.values[first..]
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .collect();
    let t_len = y.len();
    if t_len != path.values.len() - first {
        return Err(Error::Degenerate(
            "hurst path has interior undefined entries".into(),
        ));
    }
    if t_len < 120 {
        return Err(Error::SeriesTooShort {
            needed: 120,
            got: t_len,
        });
    }
    // prefix sums for O(1) evaluation of each knot pair
    let mut py = vec![0.0; t_len + 1]; // sum y
    let mut pty = vec![0.0; t_len + 1]; // sum t*y
    let mut pyy = vec![0.0; t_len + 1]; // sum y^2
    for (i, &v) in y.iter().enumerate() {
        py[i + 1] = py[i] + v;
        pty[i + 1] = pty[i] + i as f64 * v;
        pyy[i + 1] = pyy[i] + v * v;
    }
    let syy = pyy[t_len];
    let k1_count = t_len.saturating_sub(2 * MIN_SEGMENT) - (MIN_SEGMENT - 1);

    let eval_k1 = |off: usize| -> Option<(f64, (usize, usize, f64, f64))> {
        let k1 = MIN_SEGMENT - 1 + off;
        let mut best: Option<(f64, (usize, usize, f64, f64))> = None;
        for k2 in k1 + MIN_SEGMENT..=t_len - MIN_SEGMENT {
            let l = (k2 - k1) as f64;
            // middle sums over t = k1+1 .. k2-1 with u = (k2 - t)/l
            let lm = l - 1.0;
            let su = lm / 2.0;
            let su2 = lm * l * (2.0 * l - 1.0) / (6.0 * l * l);
            let sy_mid = py[k2] - py[k1 + 1];
            let sty_mid = pty[k2] - pty[k1 + 1];
            let b1_mid = (k2 as f64 * sy_mid - sty_mid) / l;
            let a11 = (k1 + 1) as f64 + su2;
            let a12 = su - su2;
            let a22 = (t_len - k2) as f64 + (lm - 2.0 * su + su2);
            let b1 = py[k1 + 1] + b1_mid;
            let b2 = (py[t_len] - py[k2]) + (sy_mid - b1_mid);
            let det = a11 * a22 - a12 * a12;
            if det.abs() < 1e-12 {
                continue;
            }
            let l1 = (a22 * b1 - a12 * b2) / det;
            let l3 = (a11 * b2 - a12 * b1) / det;
            let sse = syy - l1 * b1 - l3 * b2;
            if best.is_none() || sse < best.as_ref().unwrap().0 {
                best = Some((sse, (k1, k2, l1, l3)));
            }
        }
        best
    };

    let (_, (sse, (k1, k2, l1, l3))) = min_by_key(k1_count, mode, |off| {
        eval_k1(off).map(|(sse, v)| (sse, (sse, v)))
    })
    .ok_or_else(|| Error::Degenerate("no admissible knot pair".into()))?;

    let anchor = path.start.plus_months(first as i64);
    Ok(Segmentation {
        knot1: anchor.plus_months(k1 as i64),
        knot2: anchor.plus_months(k2 as i64),
        labels: [
            "Stagnation".to_string(),
            "Emergent".to_string(),
            "Saturation".to_string(),
        ],
        level1: l1,
        slope2: (l3 - l1) / (k2 - k1) as f64,
        level3: l3,
        sse: sse.max(0.0),
    })
}
