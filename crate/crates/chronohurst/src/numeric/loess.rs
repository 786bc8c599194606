//! Loess smoothing (tricube-weighted local quadratic), the flavor the usual
//! wavelet preprocessing applies with span 0.75.

/// Fitted loess curve over equally spaced abscissae `0..n`.
pub fn loess_fit(y: &[f64], span: f64) -> Vec<f64> {
    let n = y.len();
    assert!(n >= 4, "loess needs at least 4 points");
    assert!(span > 0.0 && span <= 1.0, "span must be in (0, 1]");
    let q = ((span * n as f64).ceil() as usize).clamp(3, n);
    let mut fit = vec![0.0; n];
    for i in 0..n {
        // window of the q nearest neighbors of i
        let (mut lo, mut hi) = (i, i);
        while hi - lo + 1 < q {
            if lo == 0 {
                hi += 1;
            } else if hi == n - 1 {
                lo -= 1;
            } else if i - lo <= hi + 1 - i {
                hi += 1;
            } else {
                lo -= 1;
            }
        }
        let dmax = ((i - lo).max(hi - i)) as f64;
        // weighted quadratic fit in (t - i)
        let mut s = [0.0f64; 5]; // sum w * d^k, k = 0..4
        let mut b = [0.0f64; 3]; // sum w * d^k * y, k = 0..2
        for t in lo..=hi {
            let d = t as f64 - i as f64;
            let u = if dmax > 0.0 { d.abs() / dmax } else { 0.0 };
            let w = {
                let c = 1.0 - u * u * u;
                c * c * c
            };
            if w <= 0.0 {
                continue;
            }
            let mut dk = w;
            for sk in s.iter_mut() {
                *sk += dk;
                dk *= d;
            }
            let mut dk = w;
            for bk in b.iter_mut() {
                *bk += dk * y[t];
                dk *= d;
            }
        }
        // solve 3x3 normal system for [c0, c1, c2]; fitted value at d=0 is c0
        let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
        fit[i] = solve3_c0(m, b).unwrap_or(b[0] / s[0].max(1e-300));
    }
    fit
}

fn solve3_c0(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<f64> {
    // Gaussian elimination with partial pivoting; returns x[0]
    let mut idx = [0usize, 1, 2];
    for k in 0..3 {
        let p = (k..3)
            .max_by(|&a, &c| m[a][k].abs().partial_cmp(&m[c][k].abs()).unwrap())
            .unwrap();
        if m[p][k].abs() < 1e-12 {
            return None;
        }
        m.swap(k, p);
        b.swap(k, p);
        idx.swap(k, p);
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for j in k..3 {
                m[i][j] -= f * m[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let x2 = b[2] / m[2][2];
    let x1 = (b[1] - m[1][2] * x2) / m[1][1];
    let x0 = (b[0] - m[0][1] * x1 - m[0][2] * x2) / m[0][0];
    let _ = idx;
    Some(x0)
}
