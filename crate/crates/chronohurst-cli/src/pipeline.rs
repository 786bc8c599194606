//! Batch orchestration: load -> descriptive statistics and correlation ->
//! test battery (original and differenced where the tests need it) -> the
//! expanding-window Hurst path and its segmentation -> wavelet spectra
//! (full series and the post-saturation subset), dominant periods and the
//! AR-spectrum frequency check. Writes the JSON report, CSV sidecars and
//! optional SVG plots.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use sha2::{Digest, Sha256};

use chronohurst::hurst::{che, segment_che, ChePath, HurstMethod, Segmentation};
use chronohurst::series::{
    correlation_function, descriptive_stats, difference, load_monthly_csv, ndiffs, CorrelationKind,
    MonthYear, MonthlySeries,
};
use chronohurst::stats::{
    anderson_darling, cramer_von_mises, keenan, kpss, local_whittle_d, mcleod_li,
    reference_bandwidth, seasonality_combined, seasonality_friedman, seasonality_qs,
    seasonality_welch, tsay, KpssVariant, TestReport,
};
use chronohurst::wavelet::{
    dominant_periods, find_frequency, global_spectrum, morlet_cwt, significance, WaveletSpectrum,
};

use crate::config::PipelineConfig;
use crate::plots;
use crate::report::{
    AnalysisReport, CheSection, CorrelationSummary, Provenance, WaveletFiles, WaveletSection,
};

/// Pipeline failure categories, mapped to process exit codes by `main`.
#[derive(Debug)]
pub enum PipelineError {
    /// Unreadable or malformed input (exit 2).
    Input(String),
    /// A numeric/analysis step failed (exit 3).
    Numeric(String),
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PipelineError::Input(m) => write!(f, "{m}"),
            PipelineError::Numeric(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for PipelineError {}

fn input_err(step: &str, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Input(format!("{step}: {e}"))
}

fn numeric_err(step: &str, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Numeric(format!("{step}: {e}"))
}

fn classify(step: &str, e: chronohurst::Error) -> PipelineError {
    use chronohurst::Error::*;
    match e {
        Io { .. }
        | EmptyInput
        | MalformedRow { .. }
        | NegativeCount { .. }
        | MonthGap { .. }
        | DateOutOfRange { .. } => input_err(step, e),
        SeriesTooShort { .. } | ZeroVariance { .. } | InvalidParameter(_) | Degenerate(_) => {
            numeric_err(step, e)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), PipelineError> {
    fs::write(path, contents)
        .map_err(|e| PipelineError::Input(format!("output: cannot write {}: {e}", path.display())))
}

fn wavelet_sidecars(
    out_dir: &Path,
    tag: &str,
    w: &WaveletSpectrum,
    start: MonthYear,
) -> Result<WaveletFiles, PipelineError> {
    let power_csv = format!("wavelet_{tag}_power.csv");
    let mask_csv = format!("wavelet_{tag}_mask.csv");
    let header_json = format!("wavelet_{tag}_header.json");

    let mut pw = String::from("period_years");
    for t in 0..w.n {
        pw.push_str(&format!(",{}", start.plus_months(t as i64)));
    }
    pw.push('\n');
    let mut mk = pw.clone();
    for j in 0..w.periods.len() {
        pw.push_str(&format!("{:.6}", w.periods[j]));
        mk.push_str(&format!("{:.6}", w.periods[j]));
        for t in 0..w.n {
            pw.push_str(&format!(",{:.6e}", w.power[j][t]));
            mk.push(',');
            mk.push(if w.significance_mask[j][t] { '1' } else { '0' });
        }
        pw.push('\n');
        mk.push('\n');
    }
    write_file(&out_dir.join(&power_csv), &pw)?;
    write_file(&out_dir.join(&mask_csv), &mk)?;

    let header = serde_json::json!({
        "start_month": start.to_string(),
        "n": w.n,
        "dj": w.dj,
        "periods_years": w.periods,
        "coi_years": w.coi,
        "background_ar1": w.background_ar1,
        "sig_level": w.sig_level,
        "variance": w.variance,
    });
    write_file(
        &out_dir.join(&header_json),
        &serde_json::to_string_pretty(&header).unwrap(),
    )?;
    Ok(WaveletFiles {
        start_month: start,
        n: w.n,
        power_csv,
        mask_csv,
        header_json,
        background_ar1: w.background_ar1,
    })
}

/// Runs the full four-step analysis and writes all artifacts into
/// `config.out_dir`. Returns the report.
pub fn run(config: &PipelineConfig) -> Result<AnalysisReport, PipelineError> {
    let out_dir = PathBuf::from(&config.out_dir);
    fs::create_dir_all(&out_dir).map_err(|e| {
        PipelineError::Input(format!("output: cannot create {}: {e}", out_dir.display()))
    })?;

    // step I: ingestion, descriptive statistics, correlation functions
    let raw_bytes = fs::read(&config.input)
        .map_err(|e| input_err("ingestion", format!("cannot read {}: {e}", config.input)))?;
    let input_sha256 = hex::encode(Sha256::digest(&raw_bytes));
    let s: MonthlySeries = load_monthly_csv(&config.input, config.gap_policy, config.values)
        .map_err(|e| classify("ingestion", e))?;
    let desc = descriptive_stats(&s).map_err(|e| classify("descriptive", e))?;
    let max_lag = 48.min(s.len() - 1);
    let acf = correlation_function(&s, CorrelationKind::Serial, max_lag)
        .map_err(|e| classify("correlation", e))?;
    let pacf = correlation_function(&s, CorrelationKind::Partial, max_lag)
        .map_err(|e| classify("correlation", e))?;

    // step II: attribute battery on the original and differenced series
    let d = ndiffs(&s).map_err(|e| classify("ndiffs", e))?;
    let diffed = difference(&s, 1).map_err(|e| classify("difference", e))?;
    let mut tests: Vec<TestReport> = Vec::new();
    tests.push(anderson_darling(&s).map_err(|e| classify("normality", e))?);
    tests.push(cramer_von_mises(&s).map_err(|e| classify("normality", e))?);
    for variant in [KpssVariant::Level, KpssVariant::Drift, KpssVariant::Trend] {
        tests.push(kpss(&s, variant).map_err(|e| classify("stationarity", e))?);
    }
    for variant in [KpssVariant::Level, KpssVariant::Drift, KpssVariant::Trend] {
        let mut r = kpss(&diffed, variant).map_err(|e| classify("stationarity", e))?;
        r.test_name = format!("{}_differenced", r.test_name);
        tests.push(r);
    }
    tests.push(seasonality_qs(&s).map_err(|e| classify("seasonality", e))?);
    tests.push(seasonality_friedman(&s).map_err(|e| classify("seasonality", e))?);
    tests.push(seasonality_welch(&s).map_err(|e| classify("seasonality", e))?);
    tests.push(seasonality_combined(&s).map_err(|e| classify("seasonality", e))?);
    tests.push(mcleod_li(&s, 24).map_err(|e| classify("nonlinearity", e))?);
    tests.push(keenan(&s, None).map_err(|e| classify("nonlinearity", e))?);
    tests.push(tsay(&s, None).map_err(|e| classify("nonlinearity", e))?);
    let lm = local_whittle_d(&diffed, reference_bandwidth(diffed.len()))
        .map_err(|e| classify("long-memory", e))?;

    // step III: chronological Hurst path and segmentation
    let path: ChePath =
        che(&s, config.che.min_window, config.che.method).map_err(|e| classify("che", e))?;
    write_file(&out_dir.join("che_path.csv"), &path.to_csv())?;
    let seg: Option<Segmentation> = if config.segmentation {
        Some(segment_che(&path).map_err(|e| classify("segmentation", e))?)
    } else {
        None
    };

    // step IV: wavelet spectra, dominant periods, frequency cross-check
    let wc = &config.wavelet;
    let w_full =
        morlet_cwt(&s, wc.dj, wc.octaves, wc.detrend).map_err(|e| classify("wavelet", e))?;
    let w_full = significance(&w_full, wc.alpha_map).map_err(|e| classify("wavelet", e))?;
    let full_files = wavelet_sidecars(&out_dir, "full", &w_full, s.start)?;

    let subset_start: Option<MonthYear> = config
        .knot2_override
        .or_else(|| seg.as_ref().map(|g| g.knot2));
    let mut subset_files = None;
    let mut doms: Vec<f64> = Vec::new();
    let mut w_subset: Option<WaveletSpectrum> = None;
    let mut gs_subset = None;
    if let Some(k2) = subset_start {
        let sub = s
            .slice_from(k2)
            .map_err(|e| classify("wavelet-subset", e))?;
        if sub.len() >= 64 {
            let w = morlet_cwt(&sub, wc.dj, wc.octaves, wc.detrend)
                .map_err(|e| classify("wavelet-subset", e))?;
            let w = significance(&w, wc.alpha_map).map_err(|e| classify("wavelet-subset", e))?;
            let gs =
                global_spectrum(&w, wc.alpha_global).map_err(|e| classify("wavelet-subset", e))?;
            doms = dominant_periods(&gs, 3);
            subset_files = Some(wavelet_sidecars(&out_dir, "subset", &w, k2)?);
            w_subset = Some(w);
            gs_subset = Some(gs);
        }
    }
    let ff = find_frequency(&s);

    // plots
    let mut plot_files: Vec<String> = Vec::new();
    if config.emit_plots {
        let gs_full =
            global_spectrum(&w_full, wc.alpha_global).map_err(|e| classify("plots", e))?;
        let gs_for_plot = gs_subset.as_ref().unwrap_or(&gs_full);
        let w_for_plot = w_subset.as_ref().unwrap_or(&w_full);
        let files = [
            ("raw_series.svg", plots::raw_series_svg(&s)),
            (
                "correlation.svg",
                plots::correlation_svg(&acf.coefficients, &pacf.coefficients, acf.confidence_band),
            ),
            ("che_path.svg", plots::che_svg(&path, seg.as_ref())),
            ("wavelet_power.svg", plots::wavelet_svg(w_for_plot)),
            (
                "global_spectrum.svg",
                plots::global_spectrum_svg(gs_for_plot),
            ),
        ];
        for (name, contents) in files {
            write_file(&out_dir.join(name), &contents)?;
            plot_files.push(name.to_string());
        }
    }

    let report = AnalysisReport {
        provenance: Provenance {
            tool: "chronohurst".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_path: config.input.clone(),
            input_sha256,
            config: config.clone(),
        },
        n_observations: s.len(),
        start: s.start,
        descriptive: desc,
        correlation: CorrelationSummary {
            max_lag,
            acf: acf.coefficients.clone(),
            pacf: pacf.coefficients.clone(),
            confidence_band: acf.confidence_band,
        },
        ndiffs: d,
        tests,
        long_memory_differenced: lm,
        che: CheSection {
            method: match config.che.method {
                HurstMethod::RescaledRange => "rescaled-range".to_string(),
                HurstMethod::Whittle => "whittle".to_string(),
            },
            min_window: config.che.min_window,
            path_csv: "che_path.csv".to_string(),
            segmentation: seg,
        },
        wavelet: WaveletSection {
            full: full_files,
            subset: subset_files,
            subset_start,
            dominant_periods_years: doms,
            find_frequency: ff,
        },
        plots: plot_files,
    };
    write_file(&out_dir.join("report.json"), &report.to_json())?;
    Ok(report)
}

/// Loads a config file and applies it under the CLI defaults.
pub fn load_config_file(path: &str) -> anyhow::Result<PipelineConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read config {path}"))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("config {path}: {e}"))
}
