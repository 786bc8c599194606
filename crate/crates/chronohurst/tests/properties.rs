//! Cross-module invariants: affine behavior of moments and test statistics,
//! reconstruction identities, causality of the expanding-window path.

use chronohurst::hurst::{che, rs_hurst, HurstMethod};
use chronohurst::series::{
    aggregate_events, correlation_function, cumulative_sum, descriptive_stats, difference,
    CalendarDate, CorrelationKind, MonthYear, MonthlySeries,
};
use chronohurst::stats::{
    anderson_darling, cramer_von_mises, keenan, local_whittle_d, seasonality_friedman,
    seasonality_qs, seasonality_welch, tsay,
};
use chronohurst::synth::{generate, GeneratorKind, GeneratorSpec};
use proptest::prelude::*;

fn series_from(values: Vec<f64>) -> MonthlySeries {
    MonthlySeries::new(MonthYear::new(1980, 1), values, "prop").unwrap()
}

fn affine(s: &MonthlySeries, a: f64, b: f64) -> MonthlySeries {
    let mut t = s.clone();
    for v in &mut t.values {
        *v = a * *v + b;
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn descriptive_stats_affine_maps(
        seed in 0u64..5000,
        a in 0.1f64..10.0,
        b in -100.0f64..100.0,
    ) {
        let s = generate(&GeneratorSpec::new(GeneratorKind::White, 200, seed)).unwrap();
        let t = affine(&s, a, b);
        let ds = descriptive_stats(&s).unwrap();
        let dt = descriptive_stats(&t).unwrap();
        prop_assert!((dt.mean - (a * ds.mean + b)).abs() < 1e-9 * (1.0 + dt.mean.abs()));
        prop_assert!((dt.median - (a * ds.median + b)).abs() < 1e-9 * (1.0 + dt.median.abs()));
        prop_assert!((dt.q1 - (a * ds.q1 + b)).abs() < 1e-9 * (1.0 + dt.q1.abs()));
        prop_assert!((dt.q3 - (a * ds.q3 + b)).abs() < 1e-9 * (1.0 + dt.q3.abs()));
        prop_assert!((dt.sd - a * ds.sd).abs() < 1e-9 * (1.0 + dt.sd.abs()));
        prop_assert!((dt.skewness.unwrap() - ds.skewness.unwrap()).abs() < 1e-9);
        prop_assert!((dt.kurtosis.unwrap() - ds.kurtosis.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn correlation_function_affine_invariant(
        seed in 0u64..5000,
        a in 0.1f64..10.0,
        b in -100.0f64..100.0,
    ) {
        let s = generate(&GeneratorSpec::new(GeneratorKind::Ar1 { phi: 0.4 }, 160, seed)).unwrap();
        let t = affine(&s, a, b);
        for kind in [CorrelationKind::Serial, CorrelationKind::Partial] {
            let cs = correlation_function(&s, kind, 20).unwrap();
            let ct = correlation_function(&t, kind, 20).unwrap();
            for (x, y) in cs.coefficients.iter().zip(&ct.coefficients) {
                prop_assert!((x - y).abs() < 1e-9, "{kind:?}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn difference_cumsum_roundtrip(counts in prop::collection::vec(0u32..1_000_000, 2..80)) {
        // integer-valued (count) data reconstructs bit-exactly
        let s = series_from(counts.into_iter().map(f64::from).collect());
        let d = difference(&s, 1).unwrap();
        let r = cumulative_sum(&d, s.values[0], s.start);
        prop_assert_eq!(r.values, s.values);
    }

    #[test]
    fn aggregate_sum_equals_event_count(
        months in prop::collection::vec(0i64..36, 0..120),
    ) {
        let start = MonthYear::new(1990, 1);
        let dates: Vec<CalendarDate> = months
            .iter()
            .map(|&m| {
                let my = start.plus_months(m);
                CalendarDate { year: my.year, month: my.month, day: 15 }
            })
            .collect();
        let s = aggregate_events(&dates, start, start.plus_months(35)).unwrap();
        prop_assert_eq!(s.values.iter().sum::<f64>() as usize, dates.len());
        prop_assert_eq!(s.len(), 36);
    }
}

// Statistic-level affine invariance for the scale-free battery members.
#[test]
fn scale_free_statistics_affine_invariant() {
    let s = generate(&GeneratorSpec::new(
        GeneratorKind::Ar1 { phi: 0.5 },
        480,
        17,
    ))
    .unwrap();
    let t = affine(&s, 3.7, 55.0);
    let rel = |x: f64, y: f64| (x - y).abs() / (1.0 + x.abs().max(y.abs()));
    assert!(
        rel(
            anderson_darling(&s).unwrap().statistic,
            anderson_darling(&t).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            cramer_von_mises(&s).unwrap().statistic,
            cramer_von_mises(&t).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            seasonality_qs(&s).unwrap().statistic,
            seasonality_qs(&t).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            seasonality_friedman(&s).unwrap().statistic,
            seasonality_friedman(&t).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            seasonality_welch(&s).unwrap().statistic,
            seasonality_welch(&t).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            keenan(&s, Some(4)).unwrap().statistic,
            keenan(&t, Some(4)).unwrap().statistic
        ) < 1e-6
    );
    assert!(
        rel(
            tsay(&s, Some(4)).unwrap().statistic,
            tsay(&t, Some(4)).unwrap().statistic
        ) < 1e-6
    );
    assert!((local_whittle_d(&s, 60).unwrap().d - local_whittle_d(&t, 60).unwrap().d).abs() < 1e-6);
    assert!((rs_hurst(&s).unwrap().raw - rs_hurst(&t).unwrap().raw).abs() < 1e-9);
}

// Extending the series never changes already-computed path entries.
#[test]
fn che_entries_causal_under_extension() {
    let long = generate(&GeneratorSpec::new(GeneratorKind::Fgn { h: 0.7 }, 972, 31)).unwrap();
    let full = che(&long, 24, HurstMethod::RescaledRange).unwrap();
    let short = MonthlySeries::new(long.start, long.values[..500].to_vec(), "s").unwrap();
    let part = che(&short, 24, HurstMethod::RescaledRange).unwrap();
    for k in 0..500 {
        let (a, b) = (full.values[k], part.values[k]);
        assert!(
            (a.is_nan() && b.is_nan()) || a == b,
            "entry {k}: {a} vs {b}"
        );
    }
}
