//! Month-of-year seasonality tests: QS (Ljung-Box at seasonal lags of the
//! differenced series), Friedman ranks (differenced, years as blocks), Welch
//! one-way ANOVA on month groups, and the combined QS/Friedman rule.

use crate::error::{Error, Result};
use crate::numeric::acf;
use crate::numeric::dist::{chi2_sf, f_sf};
use crate::series::MonthlySeries;
use crate::stats::{PValue, TestReport};

const ALPHA: f64 = 0.05;
const FREQ: usize = 12;

fn require_monthly(s: &MonthlySeries, min_len: usize) -> Result<()> {
    if s.frequency != 12 {
        return Err(Error::InvalidParameter(format!(
            "seasonality tests need monthly frequency, got {}",
            s.frequency
        )));
    }
    if s.len() < min_len {
        return Err(Error::SeriesTooShort {
            needed: min_len,
            got: s.len(),
        });
    }
    Ok(())
}

/// QS statistic: n(n+2) * sum over seasonal lags {12, 24} of
/// max(0, rho_k)^2/(n-k) on the first-differenced series; chi-square(2).
pub fn seasonality_qs(s: &MonthlySeries) -> Result<TestReport> {
    require_monthly(s, 36)?;
    let d: Vec<f64> = s.values.windows(2).map(|w| w[1] - w[0]).collect();
    let n = d.len() as f64;
    let dmean = d.iter().sum::<f64>() / n;
    let denom: f64 = d.iter().map(|v| (v - dmean) * (v - dmean)).sum();
    let stat = if denom > 0.0 {
        let r = acf(&d, 2 * FREQ);
        let r12 = r[FREQ].max(0.0);
        let r24 = r[2 * FREQ].max(0.0);
        n * (n + 2.0) * (r12 * r12 / (n - 12.0) + r24 * r24 / (n - 24.0))
    } else {
        0.0
    };
    let p = chi2_sf(stat, 2.0);
    Ok(
        TestReport::new("seasonality_qs", stat, PValue::Exact(p), ALPHA)
            .with_param("lags", "12,24")
            .with_param("differenced", true),
    )
}

fn rank_row(row: &[f64]) -> Vec<f64> {
    let k = row.len();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap());
    let mut ranks = vec![0.0; k];
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j + 1 < k && row[idx[j + 1]] == row[idx[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0; // average of 1-based ranks i+1..=j+1
        for &t in &idx[i..=j] {
            ranks[t] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Friedman rank test on the first-differenced series: complete calendar
/// years as blocks, months as treatments, tie-corrected chi-square(11).
pub fn seasonality_friedman(s: &MonthlySeries) -> Result<TestReport> {
    require_monthly(s, 36)?;
    let d: Vec<f64> = s.values.windows(2).map(|w| w[1] - w[0]).collect();
    // month index of d[i] is month of s at i+1
    let mut blocks: Vec<[Option<f64>; 12]> = Vec::new();
    for (i, v) in d.iter().enumerate() {
        let m = s.month_at(i + 1);
        let year_slot = (m.year - s.start.year) as usize;
        while blocks.len() <= year_slot {
            blocks.push([None; 12]);
        }
        blocks[year_slot][(m.month - 1) as usize] = Some(*v);
    }
    let complete: Vec<[f64; 12]> = blocks
        .iter()
        .filter_map(|b| {
            if b.iter().all(|x| x.is_some()) {
                let mut row = [0.0; 12];
                for (j, x) in b.iter().enumerate() {
                    row[j] = x.unwrap();
                }
                Some(row)
            } else {
                None
            }
        })
        .collect();
    let nb = complete.len();
    if nb < 2 {
        return Err(Error::SeriesTooShort {
            needed: 36,
            got: s.len(),
        });
    }
    let k = 12.0;
    let mut col_sums = [0.0f64; 12];
    let mut tie_term = 0.0;
    for row in &complete {
        let ranks = rank_row(row);
        for (j, r) in ranks.iter().enumerate() {
            col_sums[j] += r;
        }
        // tie correction: sum over tie groups of (c^3 - c)
        let mut sorted = row.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let c = (j - i + 1) as f64;
            tie_term += c * c * c - c;
            i = j + 1;
        }
    }
    let nbf = nb as f64;
    let ss: f64 = col_sums
        .iter()
        .map(|r| {
            let d = r - nbf * (k + 1.0) / 2.0;
            d * d
        })
        .sum();
    let denom = nbf * k * (k + 1.0) - tie_term / (k - 1.0);
    let stat = if denom > 0.0 { 12.0 * ss / denom } else { 0.0 };
    let p = chi2_sf(stat, k - 1.0);
    Ok(
        TestReport::new("seasonality_friedman", stat, PValue::Exact(p), ALPHA)
            .with_param("blocks", nb)
            .with_param("differenced", true),
    )
}

/// Welch one-way ANOVA across the 12 month-of-year groups of the raw series.
pub fn seasonality_welch(s: &MonthlySeries) -> Result<TestReport> {
    require_monthly(s, 36)?;
    let mut groups: Vec<Vec<f64>> = vec![Vec::new(); 12];
    for (i, v) in s.values.iter().enumerate() {
        groups[(s.month_at(i).month - 1) as usize].push(*v);
    }
    let k = 12.0;
    let mut wi = [0.0f64; 12];
    let mut mi = [0.0f64; 12];
    let mut ni = [0.0f64; 12];
    for (j, g) in groups.iter().enumerate() {
        let n = g.len() as f64;
        if n < 2.0 {
            return Err(Error::SeriesTooShort {
                needed: 36,
                got: s.len(),
            });
        }
        let mean = g.iter().sum::<f64>() / n;
        let var = g.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        if var <= 0.0 {
            return Err(Error::ZeroVariance {
                context: format!("welch group {}", j + 1),
            });
        }
        ni[j] = n;
        mi[j] = mean;
        wi[j] = n / var;
    }
    let wsum: f64 = wi.iter().sum();
    let mw: f64 = wi.iter().zip(&mi).map(|(w, m)| w * m).sum::<f64>() / wsum;
    let a: f64 = wi
        .iter()
        .zip(&mi)
        .map(|(w, m)| w * (m - mw) * (m - mw))
        .sum::<f64>()
        / (k - 1.0);
    let hsum: f64 = wi
        .iter()
        .zip(&ni)
        .map(|(w, n)| {
            let u = 1.0 - w / wsum;
            u * u / (n - 1.0)
        })
        .sum();
    let b = 1.0 + 2.0 * (k - 2.0) / (k * k - 1.0) * hsum;
    let stat = a / b;
    let df2 = 1.0 / (3.0 / (k * k - 1.0) * hsum);
    let p = f_sf(stat, k - 1.0, df2);
    Ok(
        TestReport::new("seasonality_welch", stat, PValue::Exact(p), ALPHA)
            .with_param("df2", format!("{df2:.2}")),
    )
}

/// Combined verdict: seasonal iff QS rejects at 1% or Friedman at 0.2%.
pub fn seasonality_combined(s: &MonthlySeries) -> Result<TestReport> {
    let qs = seasonality_qs(s)?;
    let fr = seasonality_friedman(s)?;
    let p_qs = qs.p_value.value();
    let p_fr = fr.p_value.value();
    let seasonal = p_qs <= 0.01 || p_fr <= 0.002;
    let p = if seasonal {
        PValue::Exact(p_qs.min(p_fr))
    } else {
        PValue::Exact(p_qs.min(p_fr).max(0.05 + f64::EPSILON))
    };
    let mut rep = TestReport::new(
        "seasonality_combined",
        if seasonal { 1.0 } else { 0.0 },
        p,
        ALPHA,
    );
    rep.verdict = if seasonal {
        crate::stats::Verdict::Reject
    } else {
        crate::stats::Verdict::FailToReject
    };
    Ok(rep
        .with_param("qs_p", format!("{p_qs:.6}"))
        .with_param("friedman_p", format!("{p_fr:.6}"))
        .with_param("rule", "qs@0.01 OR friedman@0.002"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MonthYear;
    use crate::synth::{generate, GeneratorKind, GeneratorSpec};

    fn seasonal_series(n: usize, seed: u64) -> MonthlySeries {
        let noise = generate(&GeneratorSpec::new(GeneratorKind::White, n, seed)).unwrap();
        let vals: Vec<f64> = (0..n)
            .map(|t| {
                100.0 * (2.0 * std::f64::consts::PI * t as f64 / 12.0).sin() + 5.0 * noise.values[t]
            })
            .collect();
        MonthlySeries::new(MonthYear::new(2000, 1), vals, "seasonal").unwrap()
    }

    #[test]
    fn sinusoid_flagged_by_all() {
        let s = seasonal_series(480, 11);
        assert!(seasonality_qs(&s).unwrap().rejects());
        assert!(seasonality_friedman(&s).unwrap().rejects());
        assert!(seasonality_welch(&s).unwrap().rejects());
        assert!(seasonality_combined(&s).unwrap().rejects());
    }

    #[test]
    fn white_noise_size_controlled() {
        let mut rej_qs = 0;
        let mut rej_fr = 0;
        let mut rej_we = 0;
        for seed in 0..100 {
            let s = generate(&GeneratorSpec::new(GeneratorKind::White, 480, seed)).unwrap();
            rej_qs += seasonality_qs(&s).unwrap().rejects() as u32;
            rej_fr += seasonality_friedman(&s).unwrap().rejects() as u32;
            rej_we += seasonality_welch(&s).unwrap().rejects() as u32;
        }
        assert!(rej_qs <= 12, "qs rejected {rej_qs}/100");
        assert!(rej_fr <= 12, "friedman rejected {rej_fr}/100");
        assert!(rej_we <= 12, "welch rejected {rej_we}/100");
    }

    #[test]
    fn constant_series_not_seasonal() {
        let s = MonthlySeries::new(MonthYear::new(2000, 1), vec![5.0; 120], "c").unwrap();
        // combined rule: QS statistic is 0/undefined-safe, Friedman all ties
        let rep = seasonality_combined(&s);
        match rep {
            Ok(r) => assert!(!r.rejects()),
            // degenerate variance may legitimately error; either is acceptable
            Err(Error::ZeroVariance { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn rank_row_handles_ties() {
        let r = rank_row(&[3.0, 1.0, 3.0, 2.0]);
        assert_eq!(r, vec![3.5, 1.0, 3.5, 2.0]);
    }
}
