//! Univariate B-spline basis on open knot vectors.
//!
//! Only polynomial splines with unit weights are supported. Knot vectors are
//! open (first and last knot repeated degree + 1 times) with single interior
//! multiplicities, so a vector with n spans carries n + degree basis
//! functions of maximal smoothness. Degree 1 coincides with piecewise-linear
//! Lagrange interpolation on the span grid.

use crate::error::CoreError;

#[derive(Debug, Clone)]
pub struct KnotVector {
    pub degree: usize,
    pub knots: Vec<f64>,
}

impl KnotVector {
    /// Open uniform knot vector over [0, 1] with `n_elements` spans.
    pub fn open_uniform(degree: usize, n_elements: usize) -> Result<Self, CoreError> {
        if !(1..=3).contains(&degree) {
            return Err(CoreError::UnsupportedDegree(degree));
        }
        if n_elements == 0 {
            return Err(CoreError::InvalidModel("knot vector needs at least one span".into()));
        }
        let mut knots = vec![0.0; degree + 1];
        for i in 1..n_elements {
            knots.push(i as f64 / n_elements as f64);
        }
        knots.extend(std::iter::repeat(1.0).take(degree + 1));
        Ok(Self { degree, knots })
    }

    /// Number of basis functions.
    pub fn n_basis(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// Number of nonempty spans (elements).
    pub fn n_elements(&self) -> usize {
        self.n_basis() - self.degree
    }

    /// Parametric bounds of element `e`.
    pub fn span_bounds(&self, e: usize) -> (f64, f64) {
        let s = self.degree + e;
        (self.knots[s], self.knots[s + 1])
    }

    /// Greville abscissa of basis function `i` (knot average). Placing
    /// control points at these values reproduces the identity map exactly.
    pub fn greville(&self, i: usize) -> f64 {
        let p = self.degree;
        self.knots[i + 1..i + 1 + p].iter().sum::<f64>() / p as f64
    }

    /// Element containing parameter `u` in [0, 1] (clamped at the ends).
    pub fn element_of(&self, u: f64) -> usize {
        let n = self.n_elements();
        let mut e = 0;
        while e + 1 < n && u >= self.span_bounds(e).1 {
            e += 1;
        }
        e
    }

    /// Values and first derivatives of the degree + 1 functions supported on
    /// element `e`, evaluated at parameter `u` inside that span. Function
    /// `j` in the result corresponds to global basis index `e + j`.
    pub fn eval_element(&self, e: usize, u: f64) -> (Vec<f64>, Vec<f64>) {
        let p = self.degree;
        let span = p + e;
        let knots = &self.knots;

        // Cox-de Boor triangle with saved knot differences.
        let mut ndu = vec![vec![0.0; p + 1]; p + 1];
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        ndu[0][0] = 1.0;
        for j in 1..=p {
            left[j] = u - knots[span + 1 - j];
            right[j] = knots[span + j] - u;
            let mut saved = 0.0;
            for r in 0..j {
                let tmp = ndu[r][j - 1] / (right[r + 1] + left[j - r]);
                ndu[r][j] = saved + right[r + 1] * tmp;
                saved = left[j - r] * tmp;
            }
            ndu[j][j] = saved;
        }

        let values: Vec<f64> = (0..=p).map(|r| ndu[r][p]).collect();

        // First derivatives from the degree p - 1 triangle.
        let mut derivs = vec![0.0; p + 1];
        for r in 0..=p {
            let mut d = 0.0;
            if r >= 1 {
                let denom = knots[span + r] - knots[span + r - p];
                d += ndu[r - 1][p - 1] / denom;
            }
            if r <= p - 1 {
                let denom = knots[span + r + 1] - knots[span + r + 1 - p];
                d -= ndu[r][p - 1] / denom;
            }
            derivs[r] = p as f64 * d;
        }

        (values, derivs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_uniform_structure() {
        let kv = KnotVector::open_uniform(2, 4).unwrap();
        assert_eq!(kv.knots, vec![0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0]);
        assert_eq!(kv.n_basis(), 6);
        assert_eq!(kv.n_elements(), 4);
        assert!(KnotVector::open_uniform(4, 2).is_err());
        assert!(KnotVector::open_uniform(0, 2).is_err());
    }

    #[test]
    fn single_element_quadratic_interpolates_at_ends() {
        let kv = KnotVector::open_uniform(2, 1).unwrap();
        let (v, _) = kv.eval_element(0, 0.0);
        assert_eq!(v, vec![1.0, 0.0, 0.0]);
        let (v, _) = kv.eval_element(0, 1.0);
        assert!((v[2] - 1.0).abs() <= 1e-15 && v[0].abs() <= 1e-15);
    }

    #[test]
    fn degree_one_is_piecewise_linear() {
        let kv = KnotVector::open_uniform(1, 2).unwrap();
        let (v, d) = kv.eval_element(0, 0.25);
        assert!((v[0] - 0.5).abs() <= 1e-15 && (v[1] - 0.5).abs() <= 1e-15);
        assert!((d[0] + 2.0).abs() <= 1e-15 && (d[1] - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn partition_of_unity_and_derivative_sum() {
        for degree in 1..=3 {
            let kv = KnotVector::open_uniform(degree, 5).unwrap();
            for &u in &[0.03, 0.21, 0.4, 0.55, 0.77, 0.98] {
                let e = kv.element_of(u);
                let (v, d) = kv.eval_element(e, u);
                let sv: f64 = v.iter().sum();
                let sd: f64 = d.iter().sum();
                assert!((sv - 1.0).abs() <= 1e-14, "degree {degree}, u {u}");
                assert!(sd.abs() <= 1e-12, "degree {degree}, u {u}");
                assert!(v.iter().all(|&x| x >= -1e-15));
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-7;
        for degree in 1..=3 {
            let kv = KnotVector::open_uniform(degree, 4).unwrap();
            for &u in &[0.1, 0.35, 0.6, 0.9] {
                let e = kv.element_of(u);
                let (_, d) = kv.eval_element(e, u);
                let (vp, _) = kv.eval_element(e, u + h);
                let (vm, _) = kv.eval_element(e, u - h);
                for j in 0..=degree {
                    let fd = (vp[j] - vm[j]) / (2.0 * h);
                    assert!(
                        (d[j] - fd).abs() <= 1e-5 * d[j].abs().max(1.0),
                        "degree {degree}, u {u}, fn {j}: {} vs {fd}",
                        d[j]
                    );
                }
            }
        }
    }

    #[test]
    fn greville_linear_precision() {
        // sum_i N_i(u) greville_i = u for all u: evaluate on a sample and at
        // the domain ends.
        for degree in 1..=3 {
            let kv = KnotVector::open_uniform(degree, 6).unwrap();
            for &u in &[0.0, 0.17, 0.42, 0.73, 1.0] {
                let e = kv.element_of(u);
                let (v, _) = kv.eval_element(e, u);
                let x: f64 = v
                    .iter()
                    .enumerate()
                    .map(|(j, n)| n * kv.greville(e + j))
                    .sum();
                assert!((x - u).abs() <= 1e-14, "degree {degree}, u {u}: {x}");
            }
        }
    }
}
