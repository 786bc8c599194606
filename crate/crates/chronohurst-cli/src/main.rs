//! Batch CLI: `analyze` runs the four-step pipeline on a monthly CSV,
//! `generate` emits synthetic series, `report` pretty-prints a report.
//!
//! Exit codes: 0 success, 2 input error, 3 numeric failure.

mod config;
mod pipeline;
mod plots;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chronohurst::hurst::HurstMethod;
use chronohurst::series::{GapPolicy, MonthYear, ValueDomain};
use chronohurst::synth::{generate, GeneratorKind, GeneratorSpec};
use chronohurst::wavelet::Detrend;

use config::PipelineConfig;
use pipeline::PipelineError;

#[derive(Parser)]
#[command(
    name = "chronohurst",
    version,
    about = "Long-memory evolution and cyclicity analysis for monthly count series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis pipeline on a monthly CSV.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic monthly series as CSV.
    Generate(GenerateArgs),
    /// Pretty-print a report produced by `analyze`.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GapPolicyArg {
    Error,
    ZeroFill,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValuesArg {
    Counts,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheMethodArg {
    Rs,
    Whittle,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CSV (`month,count` header, YYYY-MM rows).
    #[arg(long)]
    input: String,
    /// Output directory for the report and sidecar files.
    #[arg(long)]
    out: String,
    /// Optional JSON config; flags override its fields.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_enum)]
    gap_policy: Option<GapPolicyArg>,
    /// Value domain of the CSV counts column.
    #[arg(long, value_enum)]
    values: Option<ValuesArg>,
    #[arg(long)]
    che_min_window: Option<usize>,
    #[arg(long, value_enum)]
    che_method: Option<CheMethodArg>,
    #[arg(long)]
    dj: Option<f64>,
    #[arg(long)]
    octaves: Option<usize>,
    /// `none` or `loess:<span>` (e.g. loess:0.75).
    #[arg(long)]
    detrend: Option<String>,
    #[arg(long)]
    alpha_map: Option<f64>,
    #[arg(long)]
    alpha_global: Option<f64>,
    /// Disable the Hurst-path segmentation step.
    #[arg(long)]
    no_segmentation: bool,
    /// Pin the cyclicity subset start (YYYY-MM) instead of the fitted knot.
    #[arg(long)]
    knot2_override: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    emit_plots: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// fgn | fbm | ar1 | white
    #[arg(long)]
    kind: String,
    /// Hurst parameter for fgn/fbm.
    #[arg(long)]
    h: Option<f64>,
    /// AR(1) coefficient.
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Calendar anchor of the emitted series.
    #[arg(long, default_value = "2000-01")]
    start: String,
    /// Output CSV path.
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct ReportArgs {
    /// Path to a report.json.
    #[arg(long)]
    input: String,
}

fn parse_detrend(s: &str) -> Result<Detrend, String> {
    if s == "none" {
        return Ok(Detrend::None);
    }
    if s == "loess" {
        return Ok(Detrend::Loess { span: 0.75 });
    }
    if let Some(rest) = s.strip_prefix("loess:") {
        let span: f64 = rest
            .parse()
            .map_err(|_| format!("bad loess span `{rest}`"))?;
        return Ok(Detrend::Loess { span });
    }
    Err(format!("bad detrend `{s}`; expected none or loess:<span>"))
}

fn run_analyze(a: AnalyzeArgs) -> Result<(), PipelineError> {
    let mut cfg: PipelineConfig = match &a.config {
        Some(p) => {
            pipeline::load_config_file(p).map_err(|e| PipelineError::Input(e.to_string()))?
        }
        None => PipelineConfig::default(),
    };
    cfg.input = a.input;
    cfg.out_dir = a.out;
    if let Some(g) = a.gap_policy {
        cfg.gap_policy = match g {
            GapPolicyArg::Error => GapPolicy::Error,
            GapPolicyArg::ZeroFill => GapPolicy::ZeroFill,
        };
    }
    if let Some(v) = a.values {
        cfg.values = match v {
            ValuesArg::Counts => ValueDomain::Counts,
            ValuesArg::Real => ValueDomain::Reals,
        };
    }
    if let Some(w) = a.che_min_window {
        cfg.che.min_window = w;
    }
    if let Some(m) = a.che_method {
        cfg.che.method = match m {
            CheMethodArg::Rs => HurstMethod::RescaledRange,
            CheMethodArg::Whittle => HurstMethod::Whittle,
        };
    }
    if let Some(dj) = a.dj {
        cfg.wavelet.dj = dj;
    }
    if let Some(oc) = a.octaves {
        cfg.wavelet.octaves = oc;
    }
    if let Some(d) = &a.detrend {
        cfg.wavelet.detrend = parse_detrend(d).map_err(PipelineError::Input)?;
    }
    if let Some(x) = a.alpha_map {
        cfg.wavelet.alpha_map = x;
    }
    if let Some(x) = a.alpha_global {
        cfg.wavelet.alpha_global = x;
    }
    if a.no_segmentation {
        cfg.segmentation = false;
    }
    if let Some(k) = &a.knot2_override {
        let m = MonthYear::parse(k)
            .ok_or_else(|| PipelineError::Input(format!("bad knot2-override `{k}`")))?;
        cfg.knot2_override = Some(m);
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if a.emit_plots {
        cfg.emit_plots = true;
    }
    let report = pipeline::run(&cfg)?;
    println!(
        "wrote {}/report.json ({} tests, ndiffs={}, dominant periods {:?})",
        cfg.out_dir,
        report.tests.len(),
        report.ndiffs,
        report
            .wavelet
            .dominant_periods_years
            .iter()
            .map(|p| (p * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );
    Ok(())
}

fn run_generate(g: GenerateArgs) -> Result<(), PipelineError> {
    let kind = match g.kind.as_str() {
        "fgn" => GeneratorKind::Fgn {
            h: g.h
                .ok_or_else(|| PipelineError::Input("fgn requires --h".into()))?,
        },
        "fbm" => GeneratorKind::Fbm {
            h: g.h
                .ok_or_else(|| PipelineError::Input("fbm requires --h".into()))?,
        },
        "ar1" => GeneratorKind::Ar1 {
            phi: g
                .phi
                .ok_or_else(|| PipelineError::Input("ar1 requires --phi".into()))?,
        },
        "white" => GeneratorKind::White,
        other => return Err(PipelineError::Input(format!("unknown kind `{other}`"))),
    };
    let start = MonthYear::parse(&g.start)
        .ok_or_else(|| PipelineError::Input(format!("bad start `{}`", g.start)))?;
    let mut spec = GeneratorSpec::new(kind, g.n, g.seed);
    spec.sigma = g.sigma;
    let mut series =
        generate(&spec).map_err(|e| PipelineError::Numeric(format!("generate: {e}")))?;
    series.start = start;
    let mut csv = String::from("month,count\n");
    for (i, v) in series.values.iter().enumerate() {
        csv.push_str(&format!("{},{v}\n", series.month_at(i)));
    }
    std::fs::write(&g.out, csv)
        .map_err(|e| PipelineError::Input(format!("cannot write {}: {e}", g.out)))?;
    println!("wrote {} ({} rows)", g.out, series.len());
    Ok(())
}

fn run_report(r: ReportArgs) -> Result<(), PipelineError> {
    let text = std::fs::read_to_string(&r.input)
        .map_err(|e| PipelineError::Input(format!("cannot read {}: {e}", r.input)))?;
    let rep: report::AnalysisReport = serde_json::from_str(&text)
        .map_err(|e| PipelineError::Input(format!("{}: {e}", r.input)))?;
    print!("{}", rep.pretty());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Generate(g) => run_generate(g),
        Command::Report(r) => run_report(r),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                PipelineError::Input(_) => ExitCode::from(2),
                PipelineError::Numeric(_) => ExitCode::from(3),
            }
        }
    }
}
