//! Acceptance suite: one test per numbered criterion, printing one
//! PASS/FAIL line each (visible with `-- --nocapture`). Criteria 1-12 live
//! here; report determinism (13) is exercised in the CLI crate's
//! integration tests.

use chronohurst::bundled::bundled_approvals;
use chronohurst::hurst::{che, rs_hurst, segment_che, whittle_hurst, HurstMethod};
use chronohurst::series::{descriptive_stats, difference, ndiffs, MonthYear};
use chronohurst::stats::{
    anderson_darling, cramer_von_mises, keenan, kpss, local_whittle_d, mcleod_li,
    seasonality_combined, seasonality_friedman, seasonality_qs, seasonality_welch, tsay,
    KpssVariant, PValue,
};
use chronohurst::synth::{generate, theoretical_fgn_acf, GeneratorKind, GeneratorSpec};
use chronohurst::wavelet::{
    dominant_periods, find_frequency, global_spectrum, morlet_cwt, ridges, significance, Detrend,
};

fn report(criterion: &str, pass: bool, detail: &str) -> bool {
    println!(
        "criterion {:<28} {}  ({})",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    pass
}

fn ym(y: i32, m: u8) -> MonthYear {
    MonthYear::new(y, m)
}

#[test]
fn criterion_01_descriptive_stats() {
    let s = bundled_approvals();
    let d = descriptive_stats(&s).unwrap();
    let checks = [
        ("mean", (d.mean - 186.4).abs() <= 0.05),
        ("sd", (d.sd - 190.93).abs() <= 0.01),
        ("median", d.median == 164.0),
        ("min", d.min == 0.0),
        ("max", d.max == 858.0),
        ("q1", (d.q1 - 5.0).abs() <= 0.5),
        ("q3", (d.q3 - 329.2).abs() <= 0.5),
        ("kurtosis", (d.kurtosis.unwrap() - 2.599).abs() <= 0.005),
        ("skewness", (d.skewness.unwrap() - 0.698).abs() <= 0.005),
    ];
    let bad: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    let pass = report(
        "01 descriptive stats",
        bad.is_empty(),
        &format!(
            "mean={:.4} sd={:.4} med={} q1={} q3={} kurt={:.6} skew={:.7}{}",
            d.mean,
            d.sd,
            d.median,
            d.q1,
            d.q3,
            d.kurtosis.unwrap(),
            d.skewness.unwrap(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; out of tolerance: {bad:?}")
            }
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_02_ndiffs() {
    let s = bundled_approvals();
    let d = ndiffs(&s).unwrap();
    assert!(report("02 ndiffs", d == 1, &format!("ndiffs={d}")));
}

#[test]
fn criterion_03_kpss() {
    let s = bundled_approvals();
    let level = kpss(&s, KpssVariant::Level).unwrap();
    let diff = difference(&s, 1).unwrap();
    let level_d = kpss(&diff, KpssVariant::Level).unwrap();
    let lag_ok = level.params.get("lag").map(String::as_str) == Some("7");
    let stat_ok = (level.statistic - 6.32).abs() / 6.32 <= 0.05;
    let p_ok = matches!(level.p_value, PValue::AtMost(p) if p <= 0.01);
    let dstat_ok = (level_d.statistic - 0.0776).abs() / 0.0776 <= 0.10;
    let dp_ok = matches!(level_d.p_value, PValue::AtLeast(p) if p >= 0.10);
    let pass = report(
        "03 kpss",
        lag_ok && stat_ok && p_ok && dstat_ok && dp_ok,
        &format!(
            "level: lag={} stat={:.4} p={:?}; differenced: stat={:.5} p={:?}",
            level.params["lag"], level.statistic, level.p_value, level_d.statistic, level_d.p_value
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_normality() {
    let s = bundled_approvals();
    let ad = anderson_darling(&s).unwrap();
    let cvm = cramer_von_mises(&s).unwrap();
    let ok = (ad.statistic - 48.166).abs() / 48.166 <= 0.01
        && (cvm.statistic - 7.5428).abs() / 7.5428 <= 0.02
        && ad.rejects()
        && cvm.rejects();
    let pass = report(
        "04 normality",
        ok,
        &format!(
            "AD={:.5} ({:?}), CvM={:.5} ({:?})",
            ad.statistic, ad.verdict, cvm.statistic, cvm.verdict
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_seasonality() {
    let s = bundled_approvals();
    let qs = seasonality_qs(&s).unwrap();
    let fr = seasonality_friedman(&s).unwrap();
    let we = seasonality_welch(&s).unwrap();
    let co = seasonality_combined(&s).unwrap();
    let ok = !qs.rejects() && !fr.rejects() && !we.rejects() && !co.rejects();
    let pass = report(
        "05 seasonality",
        ok,
        &format!(
            "qs p={:.4}, friedman p={:.4}, welch p={:.4}, combined seasonal={}",
            qs.p_value.value(),
            fr.p_value.value(),
            we.p_value.value(),
            co.rejects()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_nonlinearity() {
    let s = bundled_approvals();
    let ke = keenan(&s, None).unwrap();
    let ts = tsay(&s, None).unwrap();
    let ml = mcleod_li(&s, 24).unwrap();
    let ok = (ke.statistic - 17.087).abs() / 17.087 <= 0.05
        && ke.rejects()
        && (ts.statistic - 2.734).abs() / 2.734 <= 0.10
        && ts.rejects()
        && ml.p_value.value() <= 0.01;
    let pass = report(
        "06 nonlinearity",
        ok,
        &format!(
            "keenan F={:.5} (order {}), tsay F={:.6} (order {}), mcleod-li max p={:.2e}",
            ke.statistic,
            ke.params["ar_order"],
            ts.statistic,
            ts.params["ar_order"],
            ml.p_value.value()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_local_whittle_d() {
    let s = bundled_approvals();
    let diff = difference(&s, 1).unwrap();
    let r = local_whittle_d(&diff, 106).unwrap();
    // The published session value this targets (0.917) is not attainable
    // from the differenced data: its low-frequency periodogram slope gives
    // d near -0.39 under the local Whittle objective (cross-checked by
    // log-periodogram regression and tapered variants, all in [-0.43,-0.35]).
    let pass = report(
        "07 local whittle d",
        (r.d - 0.917).abs() <= 0.05,
        &format!("d={:.4} (m={}, se={:.4})", r.d, r.bandwidth_m, r.std_error),
    );
    assert!(pass, "measured d={:.4}; target 0.917 +/- 0.05", r.d);
}

#[test]
fn criterion_08_find_frequency() {
    let s = bundled_approvals();
    let f = find_frequency(&s);
    assert!(report("08 find_frequency", f == 17, &format!("period={f}")));
}

#[test]
fn criterion_09_che_regimes() {
    let s = bundled_approvals();
    let path = che(&s, 24, HurstMethod::RescaledRange).unwrap();
    let m1 = path.mean_over(ym(1941, 1), ym(1946, 12)).unwrap();
    let m3 = path.mean_over(ym(1975, 1), ym(2019, 12)).unwrap();
    let means_ok = (0.40..=0.65).contains(&m1) && m3 >= 0.85;
    println!(
        "criterion 09a: period means        {}  (1941-1946 mean={m1:.4}, 1975-2019 mean={m3:.4})",
        if means_ok { "PASS" } else { "FAIL" }
    );

    let seg = segment_che(&path).unwrap();
    let k1_off = (seg.knot1.ordinal() - ym(1947, 6).ordinal()).abs();
    let k2_off = (seg.knot2.ordinal() - ym(1974, 5).ordinal()).abs();
    let knots_ok = k1_off <= 24 && k2_off <= 24;
    println!(
        "criterion 09b: segmentation knots  {}  (knot1={} [{}mo from 1947-06], knot2={} [{}mo from 1974-05])",
        if knots_ok { "PASS" } else { "FAIL" },
        seg.knot1, k1_off, seg.knot2, k2_off
    );

    let wpath = che(&s, 24, HurstMethod::Whittle).unwrap();
    let w1 = wpath.mean_over(ym(1941, 1), ym(1946, 12)).unwrap();
    let w3 = wpath.mean_over(ym(1975, 1), ym(2019, 12)).unwrap();
    let order_ok = w3 - w1 >= 0.2;
    println!(
        "criterion 09c: whittle ordering    {}  (P1 mean={w1:.3}, P3 mean={w3:.3}, diff={:.3})",
        if order_ok { "PASS" } else { "FAIL" },
        w3 - w1
    );
    let pass = report(
        "09 che regimes",
        means_ok && knots_ok && order_ok,
        "see 09a/09b/09c lines",
    );
    // 09b: the rescaled-range path genuinely plateaus later than the
    // published figure (whose estimator saturates at its internal cap);
    // the fitted knots land near 1951 and 1984 for every R/S flavor tried.
    assert!(
        pass,
        "means_ok={means_ok} knots_ok={knots_ok} (knot1={} knot2={}) order_ok={order_ok}",
        seg.knot1, seg.knot2
    );
}

#[test]
fn criterion_10_dominant_periods() {
    let s = bundled_approvals();

    // 10a: 16-18 year ridge presence through the saturation period on the
    // full-series heatmap.
    let w = morlet_cwt(&s, 0.1, 8, Detrend::None).unwrap();
    let chains = ridges(&w);
    let start = s.index_of(ym(1974, 5)).unwrap();
    let band = |p: f64| (16.0..=18.0).contains(&p);
    let mut have_band_col = vec![false; s.len()];
    for c in &chains {
        for &(t, p) in &c.points {
            if band(p) && p <= w.coi[t] {
                have_band_col[t] = true;
            }
        }
    }
    let eligible: Vec<usize> = (start..s.len())
        .filter(|&t| w.periods.iter().any(|&p| band(p) && p <= w.coi[t]))
        .collect();
    let hit = eligible.iter().filter(|&&t| have_band_col[t]).count();
    let frac = hit as f64 / eligible.len().max(1) as f64;
    let ridge_ok = frac >= 0.7;
    println!(
        "criterion 10a: 16-18y ridge        {}  ({}/{} eligible columns, {:.0}%)",
        if ridge_ok { "PASS" } else { "FAIL" },
        hit,
        eligible.len(),
        100.0 * frac
    );

    // 10b: dominant periods of the post-knot2 subset (knot2 pinned to the
    // published May 1974 for strict reproduction).
    let sub = s.slice_from(ym(1974, 5)).unwrap();
    let wsub = morlet_cwt(&sub, 0.1, 8, Detrend::None).unwrap();
    let gs = global_spectrum(&wsub, 0.95).unwrap();
    let doms = dominant_periods(&gs, 3);
    let bands = [(15.0, 19.0), (6.0, 10.0), (3.0, 5.0)];
    let bands_ok = doms.len() == 3
        && bands
            .iter()
            .all(|&(lo, hi)| doms.iter().filter(|&&p| p >= lo && p <= hi).count() == 1);
    println!(
        "criterion 10b: dominant periods    {}  (significant maxima: {:?} years; need one in each of [15,19], [6,10], [3,5])",
        if bands_ok { "PASS" } else { "FAIL" },
        doms.iter().map(|p| (p * 100.0).round() / 100.0).collect::<Vec<_>>()
    );
    let pass = report("10 cyclicity", ridge_ok && bands_ok, "see 10a/10b lines");
    // 10b: the 8y and 4y spectral peaks exist as local maxima of the
    // averaged spectrum but sit below any honest red/white-noise
    // significance curve on this subset (the 4y bursts are intermittent),
    // and the long-period peak is truncated below 15y by the cone of
    // influence on a 548-month window.
    assert!(
        pass,
        "ridge_ok={ridge_ok} bands_ok={bands_ok} doms={doms:?}"
    );
}

#[test]
fn criterion_11_estimator_validation() {
    let mut all_ok = true;
    let mut detail = String::new();
    for &h in &[0.3, 0.5, 0.7, 0.9] {
        let mut rs_sum = 0.0;
        let mut wh_sum = 0.0;
        for seed in 0..20 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::Fgn { h }, 4096, seed)).unwrap();
            rs_sum += rs_hurst(&s).unwrap().h;
            wh_sum += whittle_hurst(&s).unwrap().h;
        }
        let rs_err = (rs_sum / 20.0 - h).abs();
        let wh_err = (wh_sum / 20.0 - h).abs();
        if rs_err > 0.1 || wh_err > 0.1 {
            all_ok = false;
        }
        detail.push_str(&format!("H={h}: rs_err={rs_err:.3} wh_err={wh_err:.3}; "));
    }
    // fGn ACF vs closed form, autocorrelation about the known zero mean
    let mut acf_ok = true;
    for &h in &[0.3, 0.7, 0.9] {
        for k in 1..=10usize {
            let mut acc = 0.0;
            for seed in 0..20 {
                let s =
                    generate(&GeneratorSpec::new(GeneratorKind::Fgn { h }, 8192, seed)).unwrap();
                let x = &s.values;
                let denom: f64 = x.iter().map(|v| v * v).sum();
                acc += x[..x.len() - k]
                    .iter()
                    .zip(&x[k..])
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    / denom;
            }
            if (acc / 20.0 - theoretical_fgn_acf(h, k)).abs() > 0.05 {
                acf_ok = false;
                detail.push_str(&format!("acf h={h} k={k} off; "));
            }
        }
    }
    let pass = report("11 estimator validation", all_ok && acf_ok, &detail);
    assert!(pass);
}

#[test]
fn criterion_12_size_control() {
    use chronohurst::par::{map_indices, Parallelism};
    const N: usize = 200;
    let results = map_indices(N, Parallelism::default(), |i| {
        let s = generate(&GeneratorSpec::new(GeneratorKind::White, 972, i as u64)).unwrap();
        [
            anderson_darling(&s).unwrap().rejects(),
            cramer_von_mises(&s).unwrap().rejects(),
            kpss(&s, KpssVariant::Level).unwrap().rejects(),
            seasonality_qs(&s).unwrap().rejects(),
            seasonality_friedman(&s).unwrap().rejects(),
            seasonality_welch(&s).unwrap().rejects(),
            mcleod_li(&s, 24).unwrap().rejects(),
            keenan(&s, None).unwrap().rejects(),
            tsay(&s, None).unwrap().rejects(),
        ]
    });
    let names = [
        "anderson_darling",
        "cramer_von_mises",
        "kpss_level",
        "qs",
        "friedman",
        "welch",
        "mcleod_li",
        "keenan",
        "tsay",
    ];
    let mut all_ok = true;
    let mut detail = String::new();
    for (j, name) in names.iter().enumerate() {
        let count = results.iter().filter(|r| r[j]).count();
        let rate = count as f64 / N as f64;
        let ok = (0.005..=0.12).contains(&rate);
        if !ok {
            all_ok = false;
        }
        detail.push_str(&format!(
            "{name}={count}/200{} ",
            if ok { "" } else { "(!)" }
        ));
    }
    // white-noise wavelet significance area at 99%
    let areas = map_indices(20, Parallelism::default(), |seed| {
        let s = generate(&GeneratorSpec::new(
            GeneratorKind::White,
            972,
            1000 + seed as u64,
        ))
        .unwrap();
        let w = morlet_cwt(&s, 0.1, 8, Detrend::None).unwrap();
        let w = significance(&w, 0.99).unwrap();
        let mut sig = 0usize;
        let mut inside = 0usize;
        for j in 0..w.periods.len() {
            for t in 0..w.n {
                if w.inside_coi(j, t) {
                    inside += 1;
                    if w.significance_mask[j][t] {
                        sig += 1;
                    }
                }
            }
        }
        sig as f64 / inside as f64
    });
    let max_area = areas.iter().cloned().fold(0.0f64, f64::max);
    let area_ok = max_area <= 0.03;
    if !area_ok {
        all_ok = false;
    }
    detail.push_str(&format!("wavelet99_area_max={:.4}", max_area));
    // McLeod-Li's max-p decision rule is an intersection over 24 nested
    // Ljung-Box tests; its true size is ~0.2%, so the [0.5%, 12%] band can
    // only be met by a lucky draw. The count above is reported as measured.
    let pass = report("12 size control", all_ok, &detail);
    assert!(pass);
}
