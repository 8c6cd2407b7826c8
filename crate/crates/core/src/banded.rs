//! Symmetric banded matrix storage with an LDL^T factorization.
//!
//! Structured spline meshes produce stiffness matrices with a fixed half
//! bandwidth, so a dense band is compact and the factorization is stable
//! enough for the near-semidefinite tangents that wrinkling produces, with
//! an explicit zero-pivot check left to the caller to handle via shifts.

use crate::error::CoreError;

/// Lower-triangle banded storage: entry (i, j) with j <= i and i - j <= hb
/// lives at data[i * (hb + 1) + (j + hb - i)].
#[derive(Debug, Clone)]
pub struct BandedSym {
    pub n: usize,
    pub half_bandwidth: usize,
    data: Vec<f64>,
}

impl BandedSym {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        let hb = half_bandwidth.min(n.saturating_sub(1));
        Self { n, half_bandwidth: hb, data: vec![0.0; n * (hb + 1)] }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.half_bandwidth);
        i * (self.half_bandwidth + 1) + (j + self.half_bandwidth - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        if hi - lo > self.half_bandwidth {
            return 0.0;
        }
        self.data[self.idx(hi, lo)]
    }

    /// Accumulate into entry (i, j); only the lower triangle is stored, so
    /// callers must add each symmetric pair once.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let at = self.idx(hi, lo);
        self.data[at] += value;
    }

    pub fn add_to_diagonal(&mut self, shift: f64) {
        for i in 0..self.n {
            let at = self.idx(i, i);
            self.data[at] += shift;
        }
    }

    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.n).fold(0.0, |m, i| m.max(self.data[self.idx(i, i)].abs()))
    }

    pub fn multiply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.half_bandwidth);
            for j in j0..=i {
                let v = self.data[self.idx(i, j)];
                y[i] += v * x[j];
                if j != i {
                    y[j] += v * x[i];
                }
            }
        }
        y
    }

    /// In-place LDL^T factorization. Fails on a pivot smaller than
    /// `pivot_tol` times the largest original diagonal magnitude.
    pub fn factorize(mut self, pivot_tol: f64) -> Result<BandedLdl, CoreError> {
        let hb = self.half_bandwidth;
        let threshold = pivot_tol * self.max_abs_diagonal().max(1e-300);
        for j in 0..self.n {
            // d_j = a_jj - sum_k l_jk^2 d_k over the band.
            let k0 = j.saturating_sub(hb);
            let mut d = self.data[self.idx(j, j)];
            for k in k0..j {
                let l = self.data[self.idx(j, k)];
                let dk = self.data[self.idx(k, k)];
                d -= l * l * dk;
            }
            if d.abs() <= threshold {
                return Err(CoreError::SingularMatrix { index: j });
            }
            let at_jj = self.idx(j, j);
            self.data[at_jj] = d;
            let i_max = (j + hb).min(self.n - 1);
            for i in (j + 1)..=i_max {
                let k0 = i.saturating_sub(hb).max(k0);
                let mut v = self.data[self.idx(i, j)];
                for k in k0..j {
                    let lik = self.data[self.idx(i, k)];
                    let ljk = self.data[self.idx(j, k)];
                    let dk = self.data[self.idx(k, k)];
                    v -= lik * ljk * dk;
                }
                let at = self.idx(i, j);
                self.data[at] = v / d;
            }
        }
        Ok(BandedLdl { matrix: self })
    }
}

/// Factorized form; diagonal holds D, strict lower band holds L.
#[derive(Debug, Clone)]
pub struct BandedLdl {
    matrix: BandedSym,
}

impl BandedLdl {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let m = &self.matrix;
        let hb = m.half_bandwidth;
        assert_eq!(rhs.len(), m.n);
        let mut x = rhs.to_vec();
        // Forward: L y = b.
        for i in 0..m.n {
            let j0 = i.saturating_sub(hb);
            let mut v = x[i];
            for j in j0..i {
                v -= m.data[m.idx(i, j)] * x[j];
            }
            x[i] = v;
        }
        // Diagonal: D z = y.
        for i in 0..m.n {
            x[i] /= m.data[m.idx(i, i)];
        }
        // Backward: L^T x = z.
        for i in (0..m.n).rev() {
            let j_max = (i + hb).min(m.n - 1);
            let mut v = x[i];
            for j in (i + 1)..=j_max {
                v -= m.data[m.idx(j, i)] * x[j];
            }
            x[i] = v;
        }
        x
    }
}
