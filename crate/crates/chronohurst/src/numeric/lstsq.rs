//! Dense least squares via Householder QR.
//!
//! Design matrices here are tall and thin (up to ~1000 x ~100). Normal
//! equations square the condition number, which bites for the quadratic
//! cross-term regressions, so QR it is.

/// Column-major dense matrix.
#[derive(Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>, // column-major
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_columns(cols: &[Vec<f64>]) -> Self {
        let rows = cols[0].len();
        assert!(cols.iter().all(|c| c.len() == rows));
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.col_mut(j).copy_from_slice(c);
        }
        m
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[j * self.rows + i]
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for j in 0..self.cols {
            let c = self.col(j);
            let vj = v[j];
            for i in 0..self.rows {
                out[i] += c[i] * vj;
            }
        }
        out
    }
}

/// Least-squares solution of `a x = y`; also returns fitted values and
/// residuals. Rank-deficient columns get coefficient 0.
pub struct LsFit {
    pub coeffs: Vec<f64>,
    pub fitted: Vec<f64>,
    pub residuals: Vec<f64>,
}

pub fn lstsq(a: &Mat, y: &[f64]) -> LsFit {
    assert_eq!(a.rows, y.len());
    let m = a.rows;
    let n = a.cols;
    let mut r = a.clone();
    let mut qty = y.to_vec();
    let mut beta_house = vec![0.0; n];

    // Householder factorization, applying reflectors to qty as we go.
    for k in 0..n.min(m) {
        let mut norm = 0.0;
        for i in k..m {
            norm += r.at(i, k) * r.at(i, k);
        }
        norm = norm.sqrt();
        if norm == 0.0 {
            beta_house[k] = 0.0;
            continue;
        }
        let alpha = if r.at(k, k) >= 0.0 { -norm } else { norm };
        let v0 = r.at(k, k) - alpha;
        *r.at_mut(k, k) = alpha;
        // v = [v0, r[k+1..m, k]]; store tail in place
        let vtv = v0 * v0 + (k + 1..m).map(|i| r.at(i, k) * r.at(i, k)).sum::<f64>();
        if vtv == 0.0 {
            beta_house[k] = 0.0;
            continue;
        }
        let tau = 2.0 / vtv;
        // apply to remaining columns
        for j in k + 1..n {
            let mut dot = v0 * r.at(k, j);
            for i in k + 1..m {
                dot += r.at(i, k) * r.at(i, j);
            }
            dot *= tau;
            *r.at_mut(k, j) -= dot * v0;
            for i in k + 1..m {
                *r.at_mut(i, j) -= dot * r.at(i, k);
            }
        }
        // apply to qty
        let mut dot = v0 * qty[k];
        for i in k + 1..m {
            dot += r.at(i, k) * qty[i];
        }
        dot *= tau;
        qty[k] -= dot * v0;
        for i in k + 1..m {
            qty[i] -= dot * r.at(i, k);
        }
        beta_house[k] = tau;
    }

    // back substitution on the upper triangle
    let mut coeffs = vec![0.0; n];
    for k in (0..n.min(m)).rev() {
        let mut s = qty[k];
        for j in k + 1..n {
            s -= r.at(k, j) * coeffs[j];
        }
        let d = r.at(k, k);
        coeffs[k] = if d.abs() > 1e-300 { s / d } else { 0.0 };
    }

    let fitted = a.matvec(&coeffs);
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    LsFit {
        coeffs,
        fitted,
        residuals,
    }
}
