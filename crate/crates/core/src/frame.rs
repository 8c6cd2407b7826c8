//! Local orthonormal frames on a curved surface and the component
//! transformations between curvilinear and local representations.
//!
//! Given covariant tangents g1, g2 the frame is t1 = g1/|g1| with t2 the
//! Gram-Schmidt complement in the tangent plane. Strains carry covariant
//! components (E = E_ab G^a (x) G^b), stresses contravariant ones
//! (S = S^ab G_a (x) G_b); both map to plain orthonormal components through
//! the coefficients a[i][alpha] = t_i . G^alpha and b[i][alpha] = t_i . G_alpha.

use nalgebra::Vector3;

use crate::error::CoreError;
use crate::tensor::{SymTensor2, Tensor4};

/// Orthonormal surface frame plus the transformation coefficients for one
/// covariant basis (g1, g2).
#[derive(Debug, Clone)]
pub struct LocalFrame {
    pub t1: Vector3<f64>,
    pub t2: Vector3<f64>,
    /// a[i][alpha] = t_i . G^alpha (contravariant legs).
    a: [[f64; 2]; 2],
    /// b[i][alpha] = t_i . G_alpha (covariant legs).
    b: [[f64; 2]; 2],
}

impl LocalFrame {
    /// Build the frame from covariant tangents. Fails when the tangents do
    /// not span a surface (zero-area metric).
    pub fn from_covariant_basis(g1: &Vector3<f64>, g2: &Vector3<f64>) -> Result<Self, CoreError> {
        let g11 = g1.dot(g1);
        let g22 = g2.dot(g2);
        let g12 = g1.dot(g2);
        let det = g11 * g22 - g12 * g12;
        let scale = g11 * g22;
        if !(det > 1e-24 * scale.max(f64::MIN_POSITIVE)) {
            return Err(CoreError::DegenerateGeometry(format!(
                "covariant metric is singular (det = {det:.3e})"
            )));
        }

        let t1 = g1 / g11.sqrt();
        let t2_raw = g2 - g2.dot(&t1) * t1;
        let t2 = t2_raw / t2_raw.norm();

        // Contravariant basis from the inverse metric.
        let gu1 = (g22 * g1 - g12 * g2) / det;
        let gu2 = (g11 * g2 - g12 * g1) / det;

        let a = [[t1.dot(&gu1), t1.dot(&gu2)], [t2.dot(&gu1), t2.dot(&gu2)]];
        let b = [[t1.dot(g1), t1.dot(g2)], [t2.dot(g1), t2.dot(g2)]];
        Ok(Self { t1, t2, a, b })
    }

    /// Covariant components -> local orthonormal components.
    pub fn cov_to_local(&self, e: &SymTensor2) -> SymTensor2 {
        transform(&self.a, e)
    }

    /// Local orthonormal components -> covariant components.
    pub fn local_to_cov(&self, e: &SymTensor2) -> SymTensor2 {
        transform_back(&self.b, e)
    }

    /// Local orthonormal stress -> contravariant components.
    pub fn local_to_contra(&self, s: &SymTensor2) -> SymTensor2 {
        transform_back(&self.a, s)
    }

    /// Contravariant stress -> local orthonormal components.
    pub fn contra_to_local(&self, s: &SymTensor2) -> SymTensor2 {
        transform(&self.b, s)
    }

    /// Local fourth-order tangent -> contravariant components, so that
    /// dS^ab = C^abcd dE_cd with covariant strain increments.
    pub fn local_to_contra4(&self, c: &Tensor4) -> Tensor4 {
        let a = &self.a;
        let mut out = Tensor4::ZERO;
        for al in 0..2 {
            for be in 0..2 {
                for ga in 0..2 {
                    for de in 0..2 {
                        let mut s = 0.0;
                        for i in 0..2 {
                            for j in 0..2 {
                                for k in 0..2 {
                                    for l in 0..2 {
                                        s += a[i][al] * a[j][be] * a[k][ga] * a[l][de]
                                            * c.get(i, j, k, l);
                                    }
                                }
                            }
                        }
                        out.set(al, be, ga, de, s);
                    }
                }
            }
        }
        out
    }

    /// Coefficients t_i . G^alpha, exposed for deformation-gradient assembly.
    pub fn contra_coeff(&self) -> [[f64; 2]; 2] {
        self.a
    }
}

/// out_ij = m[i][al] m[j][be] in_{al be}
fn transform(m: &[[f64; 2]; 2], t: &SymTensor2) -> SymTensor2 {
    let tm = [[t.xx, t.xy], [t.xy, t.yy]];
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = 0.0;
            for al in 0..2 {
                for be in 0..2 {
                    s += m[i][al] * m[j][be] * tm[al][be];
                }
            }
            out[i][j] = s;
        }
    }
    SymTensor2 { xx: out[0][0], yy: out[1][1], xy: 0.5 * (out[0][1] + out[1][0]) }
}

/// out_{al be} = m[i][al] m[j][be] in_ij
fn transform_back(m: &[[f64; 2]; 2], t: &SymTensor2) -> SymTensor2 {
    let tm = [[t.xx, t.xy], [t.xy, t.yy]];
    let mut out = [[0.0; 2]; 2];
    for al in 0..2 {
        for be in 0..2 {
            let mut s = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    s += m[i][al] * m[j][be] * tm[i][j];
                }
            }
            out[al][be] = s;
        }
    }
    SymTensor2 { xx: out[0][0], yy: out[1][1], xy: 0.5 * (out[0][1] + out[1][0]) }
}
