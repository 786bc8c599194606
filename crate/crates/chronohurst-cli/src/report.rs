//! The machine-readable analysis report and its pretty-printer.

use serde::{Deserialize, Serialize};

use chronohurst::hurst::Segmentation;
use chronohurst::series::{DescriptiveStats, MonthYear};
use chronohurst::stats::{LongMemoryReport, TestReport};

use crate::config::PipelineConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub input_path: String,
    pub input_sha256: String,
    pub config: PipelineConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationSummary {
    pub max_lag: usize,
    pub acf: Vec<f64>,
    pub pacf: Vec<f64>,
    pub confidence_band: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheSection {
    pub method: String,
    pub min_window: usize,
    pub path_csv: String,
    pub segmentation: Option<Segmentation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaveletFiles {
    pub start_month: MonthYear,
    pub n: usize,
    pub power_csv: String,
    pub mask_csv: String,
    pub header_json: String,
    pub background_ar1: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaveletSection {
    pub full: WaveletFiles,
    /// Analysis of the series from the saturation knot onward; absent when
    /// segmentation is disabled and no override is given.
    pub subset: Option<WaveletFiles>,
    pub subset_start: Option<MonthYear>,
    pub dominant_periods_years: Vec<f64>,
    pub find_frequency: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub provenance: Provenance,
    pub n_observations: usize,
    pub start: MonthYear,
    pub descriptive: DescriptiveStats,
    pub correlation: CorrelationSummary,
    pub ndiffs: usize,
    pub tests: Vec<TestReport>,
    pub long_memory_differenced: LongMemoryReport,
    pub che: CheSection,
    pub wavelet: WaveletSection,
    pub plots: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable digest of the report.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let d = &self.descriptive;
        out.push_str(&format!(
            "series: {} observations from {} ({})\n",
            self.n_observations, self.start, self.provenance.input_path
        ));
        out.push_str(&format!(
            "descriptive: min={} q1={} median={} mean={:.1} sd={:.1} q3={} max={}\n",
            d.min, d.q1, d.median, d.mean, d.sd, d.q3, d.max
        ));
        if let (Some(k), Some(sk)) = (d.kurtosis, d.skewness) {
            out.push_str(&format!("             kurtosis={k:.3} skewness={sk:.3}\n"));
        }
        out.push_str(&format!("order of integration (ndiffs): {}\n", self.ndiffs));
        out.push_str("tests:\n");
        for t in &self.tests {
            out.push_str(&format!(
                "  {:<24} stat={:<12.5} p={:<12} verdict={:?}\n",
                t.test_name,
                t.statistic,
                match t.p_value {
                    chronohurst::stats::PValue::Exact(p) if p >= 1e-3 => format!("{p:.4}"),
                    chronohurst::stats::PValue::Exact(p) => format!("{p:.2e}"),
                    chronohurst::stats::PValue::AtMost(p) => format!("<={p:.2e}"),
                    chronohurst::stats::PValue::AtLeast(p) => format!(">={p:.2}"),
                },
                t.verdict
            ));
        }
        let lm = &self.long_memory_differenced;
        out.push_str(&format!(
            "long memory (differenced): d={:.4} (se {:.4}, m={}), implied H={:.4}, long_memory={}\n",
            lm.d, lm.std_error, lm.bandwidth_m, lm.implied_h, lm.long_memory
        ));
        out.push_str(&format!(
            "che: method={} min_window={}\n",
            self.che.method, self.che.min_window
        ));
        if let Some(seg) = &self.che.segmentation {
            out.push_str(&format!(
                "  regimes: {} until {}, rising to {}, then {} (levels {:.3} -> {:.3}, sse {:.4})\n",
                seg.labels[0], seg.knot1, seg.knot2, seg.labels[2], seg.level1, seg.level3, seg.sse
            ));
        }
        out.push_str(&format!(
            "dominant periods (years): {:?}\n",
            self.wavelet
                .dominant_periods_years
                .iter()
                .map(|p| (p * 100.0).round() / 100.0)
                .collect::<Vec<_>>()
        ));
        out.push_str(&format!(
            "ar-spectrum dominant period (samples): {}\n",
            self.wavelet.find_frequency
        ));
        out
    }
}
