//! Minimal library walkthrough on the bundled dataset:
//! `cargo run --release -p chronohurst --example analyze_bundled`

use chronohurst::bundled::bundled_approvals;
use chronohurst::hurst::{che, segment_che, HurstMethod};
use chronohurst::series::{descriptive_stats, ndiffs};
use chronohurst::stats::{anderson_darling, kpss, KpssVariant};
use chronohurst::wavelet::{
    dominant_periods, find_frequency, global_spectrum, morlet_cwt, Detrend,
};

fn main() -> chronohurst::Result<()> {
    let s = bundled_approvals();
    let d = descriptive_stats(&s)?;
    println!(
        "n={} mean={:.1} sd={:.1} skewness={:.3}",
        d.n,
        d.mean,
        d.sd,
        d.skewness.unwrap()
    );
    println!("ndiffs = {}", ndiffs(&s)?);
    println!(
        "anderson-darling A = {:.3}",
        anderson_darling(&s)?.statistic
    );
    println!(
        "kpss level = {:.3}",
        kpss(&s, KpssVariant::Level)?.statistic
    );

    let path = che(&s, 24, HurstMethod::RescaledRange)?;
    let seg = segment_che(&path)?;
    println!(
        "hurst path regimes: flat {:.2} until {}, rising to {}, flat {:.2} after",
        seg.level1, seg.knot1, seg.knot2, seg.level3
    );

    let sub = s.slice_from(seg.knot2)?;
    let w = morlet_cwt(&sub, 0.1, 8, Detrend::None)?;
    let gs = global_spectrum(&w, 0.95)?;
    println!(
        "dominant periods after {}: {:?} years",
        seg.knot2,
        dominant_periods(&gs, 3)
            .iter()
            .map(|p| (p * 10.0).round() / 10.0)
            .collect::<Vec<_>>()
    );
    println!(
        "ar-spectrum dominant period: {} samples",
        find_frequency(&s)
    );
    Ok(())
}
