//! Monthly time-series data model: ingestion, differencing, descriptive
//! moments and serial/partial correlation functions.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::acf;

/// A calendar month,`1939-01` style.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthYear {
    pub year: i32,
    /// 1-based month.
    pub month: u8,
}

impl MonthYear {
    pub fn new(year: i32, month: u8) -> Self {
        assert!((1..=12).contains(&month), "month must be 1..=12");
        MonthYear { year, month }
    }

    /// Months since year 0, for index arithmetic.
    pub fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    pub fn from_ordinal(ord: i64) -> Self {
        let year = ord.div_euclid(12);
        let month = ord.rem_euclid(12) + 1;
        MonthYear::new(year as i32, month as u8)
    }

    pub fn plus_months(self, k: i64) -> Self {
        Self::from_ordinal(self.ordinal() + k)
    }

    /// Parses `YYYY-MM`.
    pub fn parse(s: &str) -> Option<Self> {
        let (y, m) = s.split_once('-')?;
        let year: i32 = y.parse().ok()?;
        let month: u8 = m.parse().ok()?;
        if (1..=12).contains(&month) {
            Some(MonthYear { year, month })
        } else {
            None
        }
    }
}

impl fmt::Display for MonthYear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl Serialize for MonthYear {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MonthYear {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        MonthYear::parse(&s).ok_or_else(|| serde::de::Error::custom("expected YYYY-MM"))
    }
}

/// Regular monthly series with a calendar anchor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonthlySeries {
    pub start: MonthYear,
    /// Samples per year; 12 for everything in this crate.
    pub frequency: u32,
    pub values: Vec<f64>,
    pub label: String,
}

impl MonthlySeries {
    pub fn new(start: MonthYear, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite value {bad}")));
        }
        Ok(MonthlySeries {
            start,
            frequency: 12,
            values,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Calendar month of index `i`.
    pub fn month_at(&self, i: usize) -> MonthYear {
        self.start.plus_months(i as i64)
    }

    /// Index of a calendar month, if inside the series.
    pub fn index_of(&self, m: MonthYear) -> Option<usize> {
        let d = m.ordinal() - self.start.ordinal();
        if d >= 0 && (d as usize) < self.values.len() {
            Some(d as usize)
        } else {
            None
        }
    }

    /// Sub-series from calendar month `from` (inclusive) to the end.
    pub fn slice_from(&self, from: MonthYear) -> Result<MonthlySeries> {
        let i = self
            .index_of(from)
            .ok_or_else(|| Error::InvalidParameter(format!("{from} outside series")))?;
        MonthlySeries::new(from, self.values[i..].to_vec(), self.label.clone())
    }
}

/// Domain of the `count` column in a CSV file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ValueDomain {
    /// Nonnegative integers; negative or fractional values are rejected.
    #[default]
    Counts,
    /// Any finite real (generator output).
    Reals,
}

/// What to do when months are missing between consecutive rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum GapPolicy {
    /// Any gap aborts ingestion.
    #[default]
    Error,
    /// Absent months become 0.
    ZeroFill,
}

/// Loads a `month,count` CSV (header required, months strictly increasing).
pub fn load_monthly_csv(
    path: impl AsRef<Path>,
    gap_policy: GapPolicy,
    domain: ValueDomain,
) -> Result<MonthlySeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());
    parse_monthly_csv(&text, gap_policy, domain, label)
}

pub fn parse_monthly_csv(
    text: &str,
    gap_policy: GapPolicy,
    domain: ValueDomain,
    label: String,
) -> Result<MonthlySeries> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
    // a header whose second field parses as a number is data, i.e. the
    // header row is missing
    if let Some((_, second)) = header.split_once(',') {
        if second.trim().parse::<f64>().is_ok() {
            return Err(Error::MalformedRow {
                line: 1,
                reason: "expected header `month,count`".into(),
            });
        }
    } else {
        return Err(Error::MalformedRow {
            line: 1,
            reason: "expected header `month,count`".into(),
        });
    }

    let mut start: Option<MonthYear> = None;
    let mut prev: Option<MonthYear> = None;
    let mut values: Vec<f64> = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let (m, v) = row.split_once(',').ok_or_else(|| Error::MalformedRow {
            line: line_no,
            reason: "expected `YYYY-MM,count`".into(),
        })?;
        let month = MonthYear::parse(m.trim()).ok_or_else(|| Error::MalformedRow {
            line: line_no,
            reason: format!("bad month `{}`", m.trim()),
        })?;
        let value: f64 = v.trim().parse().map_err(|_| Error::MalformedRow {
            line: line_no,
            reason: format!("bad count `{}`", v.trim()),
        })?;
        if !value.is_finite() {
            return Err(Error::MalformedRow {
                line: line_no,
                reason: "non-finite count".into(),
            });
        }
        match domain {
            ValueDomain::Counts => {
                if value < 0.0 {
                    return Err(Error::NegativeCount {
                        line: line_no,
                        value,
                    });
                }
                if value.fract() != 0.0 {
                    return Err(Error::MalformedRow {
                        line: line_no,
                        reason: format!("expected integer count, got {value}"),
                    });
                }
            }
            ValueDomain::Reals => {}
        }
        if let Some(p) = prev {
            let step = month.ordinal() - p.ordinal();
            if step <= 0 {
                return Err(Error::MalformedRow {
                    line: line_no,
                    reason: format!("months not strictly increasing ({p} then {month})"),
                });
            }
            if step > 1 {
                match gap_policy {
                    GapPolicy::Error => {
                        return Err(Error::MonthGap {
                            line: line_no,
                            missing: (step - 1) as usize,
                        })
                    }
                    GapPolicy::ZeroFill => {
                        values.extend(std::iter::repeat(0.0).take(step as usize - 1));
                    }
                }
            }
        } else {
            start = Some(month);
        }
        values.push(value);
        prev = Some(month);
    }
    let start = start.ok_or(Error::EmptyInput)?;
    MonthlySeries::new(start, values, label)
}

/// A calendar day; only the month matters for aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalendarDate {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl CalendarDate {
    pub fn month_year(self) -> MonthYear {
        MonthYear::new(self.year, self.month)
    }
}

/// Counts events per month over `[range_start, range_end]` (inclusive).
pub fn aggregate_events(
    dates: &[CalendarDate],
    range_start: MonthYear,
    range_end: MonthYear,
) -> Result<MonthlySeries> {
    let n = range_end.ordinal() - range_start.ordinal() + 1;
    if n <= 0 {
        return Err(Error::InvalidParameter(format!(
            "empty range {range_start}..{range_end}"
        )));
    }
    let mut values = vec![0.0; n as usize];
    for d in dates {
        let ord = d.month_year().ordinal() - range_start.ordinal();
        if ord < 0 || ord >= n {
            return Err(Error::DateOutOfRange {
                date: format!("{:04}-{:02}-{:02}", d.year, d.month, d.day),
            });
        }
        values[ord as usize] += 1.0;
    }
    MonthlySeries::new(range_start, values, "events")
}

/// d-fold first differences; order 0 is the identity.
pub fn difference(s: &MonthlySeries, order: usize) -> Result<MonthlySeries> {
    if s.len() <= order {
        return Err(Error::SeriesTooShort {
            needed: order + 1,
            got: s.len(),
        });
    }
    let mut v = s.values.clone();
    for _ in 0..order {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    MonthlySeries::new(s.start.plus_months(order as i64), v, s.label.clone())
}

/// Inverse of [`difference`] with order 1: cumulative sum anchored at `first`.
pub fn cumulative_sum(s: &MonthlySeries, first: f64, start: MonthYear) -> MonthlySeries {
    let mut v = Vec::with_capacity(s.len() + 1);
    v.push(first);
    let mut acc = first;
    for x in &s.values {
        acc += x;
        v.push(acc);
    }
    MonthlySeries::new(start, v, s.label.clone()).expect("non-empty")
}

/// Descriptive moments. Quartiles interpolate order statistics linearly;
/// sd uses the n-1 divisor while skewness/kurtosis use population moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub sd: f64,
    pub q3: f64,
    pub max: f64,
    /// m4/m2^2; `None` when the variance is zero.
    pub kurtosis: Option<f64>,
    /// m3/m2^1.5; `None` when the variance is zero.
    pub skewness: Option<f64>,
}

fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

pub fn descriptive_stats(s: &MonthlySeries) -> Result<DescriptiveStats> {
    let n = s.len();
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let mut sorted = s.values.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mean = s.values.iter().sum::<f64>() / n as f64;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for v in &s.values {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    let sd = (m2 / (n as f64 - 1.0)).sqrt();
    m2 /= n as f64;
    m3 /= n as f64;
    m4 /= n as f64;
    let (kurtosis, skewness) = if m2 > 0.0 {
        (Some(m4 / (m2 * m2)), Some(m3 / m2.powf(1.5)))
    } else {
        (None, None)
    };
    Ok(DescriptiveStats {
        n,
        min: sorted[0],
        q1: quantile_type7(&sorted, 0.25),
        median: quantile_type7(&sorted, 0.5),
        mean,
        sd,
        q3: quantile_type7(&sorted, 0.75),
        max: sorted[n - 1],
        kurtosis,
        skewness,
    })
}

/// Serial (ACF) or partial (PACF) correlation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    Serial,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFunction {
    pub kind: CorrelationKind,
    /// Lags in months; serial starts at 0, partial at 1.
    pub lags: Vec<usize>,
    pub coefficients: Vec<f64>,
    /// +-1.96/sqrt(n).
    pub confidence_band: f64,
}

pub fn correlation_function(
    s: &MonthlySeries,
    kind: CorrelationKind,
    max_lag: usize,
) -> Result<CorrelationFunction> {
    let n = s.len();
    if max_lag >= n {
        return Err(Error::InvalidParameter(format!(
            "max_lag {max_lag} must be < length {n}"
        )));
    }
    let band = 1.96 / (n as f64).sqrt();
    let r = acf(&s.values, max_lag);
    match kind {
        CorrelationKind::Serial => Ok(CorrelationFunction {
            kind,
            lags: (0..=max_lag).collect(),
            coefficients: r,
            confidence_band: band,
        }),
        CorrelationKind::Partial => {
            // Durbin-Levinson: pacf at lag k = k-th reflection coefficient
            let mut pacf = Vec::with_capacity(max_lag);
            let mut phi: Vec<f64> = Vec::new();
            let mut v = 1.0;
            for k in 1..=max_lag {
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
                pacf.push(refl);
            }
            Ok(CorrelationFunction {
                kind,
                lags: (1..=max_lag).collect(),
                coefficients: pacf,
                confidence_band: band,
            })
        }
    }
}

/// Smallest d in {0, 1, 2} whose d-th difference passes the classic KPSS
/// level-stationarity test at the 5% level.
pub fn ndiffs(s: &MonthlySeries) -> Result<usize> {
    if s.len() < 20 {
        return Err(Error::SeriesTooShort {
            needed: 20,
            got: s.len(),
        });
    }
    for d in 0..=2usize {
        let sd = difference(s, d)?;
        let stat = crate::stats::kpss_impl::classic_level_stat(&sd.values);
        if stat <= crate::stats::kpss_impl::CLASSIC_LEVEL_CV05 {
            return Ok(d);
        }
    }
    Ok(2)
}
