//! Pipeline configuration: JSON file plus command-line overrides.

use serde::{Deserialize, Serialize};

use chronohurst::hurst::HurstMethod;
use chronohurst::series::{GapPolicy, MonthYear, ValueDomain};
use chronohurst::wavelet::Detrend;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct CheConfig {
    pub min_window: usize,
    pub method: HurstMethod,
}

impl Default for CheConfig {
    fn default() -> Self {
        CheConfig {
            min_window: 24,
            method: HurstMethod::RescaledRange,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct WaveletConfig {
    pub dj: f64,
    pub octaves: usize,
    pub detrend: Detrend,
    /// Significance level for the power-map mask.
    pub alpha_map: f64,
    /// Significance level for the global spectrum.
    pub alpha_global: f64,
}

impl Default for WaveletConfig {
    fn default() -> Self {
        WaveletConfig {
            dj: 0.1,
            octaves: 8,
            detrend: Detrend::None,
            alpha_map: 0.99,
            alpha_global: 0.95,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub input: String,
    pub out_dir: String,
    pub gap_policy: GapPolicy,
    pub values: ValueDomain,
    pub che: CheConfig,
    pub wavelet: WaveletConfig,
    pub segmentation: bool,
    /// Pins the start of the cyclicity subset instead of the fitted knot2.
    pub knot2_override: Option<MonthYear>,
    /// Recorded in provenance; reserved for Monte Carlo extensions.
    pub seed: u64,
    pub emit_plots: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: String::new(),
            out_dir: String::new(),
            gap_policy: GapPolicy::Error,
            values: ValueDomain::Counts,
            che: CheConfig::default(),
            wavelet: WaveletConfig::default(),
            segmentation: true,
            knot2_override: None,
            seed: 42,
            emit_plots: false,
        }
    }
}
