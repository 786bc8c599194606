//! Hypothesis-test battery: normality, stationarity, seasonality,
//! long memory and nonlinearity diagnostics for monthly series.

pub(crate) mod kpss_impl;
mod nonlinearity;
mod normality;
mod seasonality;
mod whittle;

pub use kpss_impl::{kpss, KpssVariant};
pub use nonlinearity::{keenan, mcleod_li, tsay};
pub use normality::{anderson_darling, cramer_von_mises};
pub use seasonality::{
    seasonality_combined, seasonality_friedman, seasonality_qs, seasonality_welch,
};
pub use whittle::{local_whittle_d, reference_bandwidth, LongMemoryReport};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A p-value, possibly only known as a bound (critical-value tables).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PValue {
    Exact(f64),
    AtMost(f64),
    AtLeast(f64),
}

impl PValue {
    /// The bound or point value carried by the report.
    pub fn value(self) -> f64 {
        match self {
            PValue::Exact(p) | PValue::AtMost(p) | PValue::AtLeast(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reject,
    FailToReject,
}

/// Outcome of one hypothesis test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test_name: String,
    pub statistic: f64,
    pub p_value: PValue,
    pub verdict: Verdict,
    pub params: BTreeMap<String, String>,
}

impl TestReport {
    pub fn new(name: impl Into<String>, statistic: f64, p_value: PValue, alpha: f64) -> TestReport {
        let verdict = match p_value {
            PValue::Exact(p) | PValue::AtMost(p) if p <= alpha => Verdict::Reject,
            PValue::AtLeast(p) if p <= alpha => Verdict::Reject, // conservative, unreachable with our tables
            _ => Verdict::FailToReject,
        };
        TestReport {
            test_name: name.into(),
            statistic,
            p_value,
            verdict,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn rejects(&self) -> bool {
        self.verdict == Verdict::Reject
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_alpha() {
        let r = TestReport::new("t", 1.0, PValue::Exact(0.03), 0.05);
        assert!(r.rejects());
        let r = TestReport::new("t", 1.0, PValue::Exact(0.07), 0.05);
        assert!(!r.rejects());
        let r = TestReport::new("t", 1.0, PValue::AtMost(0.01), 0.05);
        assert!(r.rejects());
        let r = TestReport::new("t", 1.0, PValue::AtLeast(0.10), 0.05);
        assert!(!r.rejects());
    }
}
