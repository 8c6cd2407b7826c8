//! Tensor-product spline surface patch, precomputed quadrature geometry, and
//! membrane kinematics (Green-Lagrange strain and its displacement
//! variations) in a total-Lagrangian setting.
//!
//! Control points are numbered row-major, cp = iv * n_cp_u + iu, and each
//! carries three displacement components, so dof = 3 * cp + component.

use nalgebra::Vector3;

use crate::basis::KnotVector;
use crate::error::CoreError;
use crate::frame::LocalFrame;
use crate::quadrature::gauss_legendre;
use crate::tensor::SymTensor2;

#[derive(Debug, Clone)]
pub struct Patch {
    pub ku: KnotVector,
    pub kv: KnotVector,
    /// Row-major control net, iv * n_cp_u + iu.
    pub control_points: Vec<Vector3<f64>>,
    pub thickness: f64,
}

impl Patch {
    pub fn new(
        ku: KnotVector,
        kv: KnotVector,
        control_points: Vec<Vector3<f64>>,
        thickness: f64,
    ) -> Result<Self, CoreError> {
        let expected = ku.n_basis() * kv.n_basis();
        if control_points.len() != expected {
            return Err(CoreError::InvalidModel(format!(
                "control net size {} does not match basis ({} x {})",
                control_points.len(),
                ku.n_basis(),
                kv.n_basis()
            )));
        }
        if !(thickness > 0.0) {
            return Err(CoreError::InvalidModel(format!("thickness must be positive, got {thickness}")));
        }
        Ok(Self { ku, kv, control_points, thickness })
    }

    pub fn n_cp(&self) -> (usize, usize) {
        (self.ku.n_basis(), self.kv.n_basis())
    }

    pub fn n_elements(&self) -> (usize, usize) {
        (self.ku.n_elements(), self.kv.n_elements())
    }

    pub fn n_dof(&self) -> usize {
        3 * self.control_points.len()
    }

    pub fn cp_index(&self, iu: usize, iv: usize) -> usize {
        iv * self.ku.n_basis() + iu
    }

    /// Global control-point ids supported on element (eu, ev), ordered
    /// v-major to match the tensor-product basis evaluation.
    pub fn element_cps(&self, eu: usize, ev: usize) -> Vec<usize> {
        let pu = self.ku.degree;
        let pv = self.kv.degree;
        let mut out = Vec::with_capacity((pu + 1) * (pv + 1));
        for jv in 0..=pv {
            for ju in 0..=pu {
                out.push(self.cp_index(eu + ju, ev + jv));
            }
        }
        out
    }

    /// 2D basis values and parametric derivatives at (u, v) on an element,
    /// ordered like `element_cps`.
    pub fn basis_at(&self, eu: usize, ev: usize, u: f64, v: f64) -> (Vec<f64>, Vec<[f64; 2]>) {
        let (nu, du) = self.ku.eval_element(eu, u);
        let (nv, dv) = self.kv.eval_element(ev, v);
        let mut vals = Vec::with_capacity(nu.len() * nv.len());
        let mut ders = Vec::with_capacity(nu.len() * nv.len());
        for jv in 0..nv.len() {
            for ju in 0..nu.len() {
                vals.push(nu[ju] * nv[jv]);
                ders.push([du[ju] * nv[jv], nu[ju] * dv[jv]]);
            }
        }
        (vals, ders)
    }

    /// Interpolate a per-control-point vector field at parameter (u, v).
    pub fn interpolate(&self, field: &[Vector3<f64>], u: f64, v: f64) -> Vector3<f64> {
        let eu = self.ku.element_of(u);
        let ev = self.kv.element_of(v);
        let (vals, _) = self.basis_at(eu, ev, u, v);
        let cps = self.element_cps(eu, ev);
        let mut out = Vector3::zeros();
        for (n, &cp) in vals.iter().zip(&cps) {
            out += *n * field[cp];
        }
        out
    }
}

/// Reference geometry at one quadrature point.
#[derive(Debug, Clone)]
pub struct QuadPoint {
    pub param: (f64, f64),
    /// Gauss weight times the parametric box measure of the span.
    pub weight: f64,
    pub n: Vec<f64>,
    pub dn: Vec<[f64; 2]>,
    pub g1: Vector3<f64>,
    pub g2: Vector3<f64>,
    /// Reference area Jacobian |G1 x G2|.
    pub jac: f64,
    pub frame: LocalFrame,
    pub position: Vector3<f64>,
}

/// One element with its precomputed quadrature points.
#[derive(Debug, Clone)]
pub struct ElementGeom {
    pub eu: usize,
    pub ev: usize,
    pub cps: Vec<usize>,
    pub qps: Vec<QuadPoint>,
}

/// Discretize a patch into elements with (degree + 1)^2 Gauss points each.
pub fn discretize(patch: &Patch) -> Result<Vec<ElementGeom>, CoreError> {
    let (neu, nev) = patch.n_elements();
    let rule_u = gauss_legendre(patch.ku.degree + 1)?;
    let rule_v = gauss_legendre(patch.kv.degree + 1)?;
    let mut elements = Vec::with_capacity(neu * nev);
    for ev in 0..nev {
        for eu in 0..neu {
            let cps = patch.element_cps(eu, ev);
            let (u0, u1) = patch.ku.span_bounds(eu);
            let (v0, v1) = patch.kv.span_bounds(ev);
            let su = 0.5 * (u1 - u0);
            let sv = 0.5 * (v1 - v0);
            let mut qps = Vec::with_capacity(rule_u.len() * rule_v.len());
            for &(xv, wv) in rule_v {
                for &(xu, wu) in rule_u {
                    let u = u0 + su * (xu + 1.0);
                    let v = v0 + sv * (xv + 1.0);
                    let (n, dn) = patch.basis_at(eu, ev, u, v);
                    let mut g1 = Vector3::zeros();
                    let mut g2 = Vector3::zeros();
                    let mut pos = Vector3::zeros();
                    for (k, &cp) in cps.iter().enumerate() {
                        let x = patch.control_points[cp];
                        pos += n[k] * x;
                        g1 += dn[k][0] * x;
                        g2 += dn[k][1] * x;
                    }
                    let jac = g1.cross(&g2).norm();
                    let frame = LocalFrame::from_covariant_basis(&g1, &g2)?;
                    qps.push(QuadPoint {
                        param: (u, v),
                        weight: wu * wv * su * sv,
                        n,
                        dn,
                        g1,
                        g2,
                        jac,
                        frame,
                        position: pos,
                    });
                }
            }
            elements.push(ElementGeom { eu, ev, cps, qps });
        }
    }
    Ok(elements)
}

/// Deformed covariant tangents g_a = G_a + sum_k N^k,a u_k.
pub fn covariant_deformed(qp: &QuadPoint, cps: &[usize], u: &[f64]) -> (Vector3<f64>, Vector3<f64>) {
    let mut g1 = qp.g1;
    let mut g2 = qp.g2;
    for (k, &cp) in cps.iter().enumerate() {
        let d = Vector3::new(u[3 * cp], u[3 * cp + 1], u[3 * cp + 2]);
        g1 += qp.dn[k][0] * d;
        g2 += qp.dn[k][1] * d;
    }
    (g1, g2)
}

/// Covariant Green-Lagrange strain E_ab = (g_a . g_b - G_a . G_b) / 2.
pub fn green_lagrange(qp: &QuadPoint, cps: &[usize], u: &[f64]) -> SymTensor2 {
    let (g1, g2) = covariant_deformed(qp, cps, u);
    SymTensor2 {
        xx: 0.5 * (g1.dot(&g1) - qp.g1.dot(&qp.g1)),
        yy: 0.5 * (g2.dot(&g2) - qp.g2.dot(&qp.g2)),
        xy: 0.5 * (g1.dot(&g2) - qp.g1.dot(&qp.g2)),
    }
}

/// First variation of the covariant strain with respect to element-local
/// dof r = 3 * k + i, at the current deformed tangents (g1, g2).
pub fn strain_variation(
    qp: &QuadPoint,
    g1: &Vector3<f64>,
    g2: &Vector3<f64>,
    r: usize,
) -> SymTensor2 {
    let k = r / 3;
    let i = r % 3;
    let d1 = qp.dn[k][0];
    let d2 = qp.dn[k][1];
    SymTensor2 {
        xx: d1 * g1[i],
        yy: d2 * g2[i],
        xy: 0.5 * (d2 * g1[i] + d1 * g2[i]),
    }
}

/// Second variation of the covariant strain, constant in the displacement:
/// nonzero only when both dofs act on the same displacement component.
pub fn strain_second_variation(qp: &QuadPoint, r: usize, s: usize) -> SymTensor2 {
    if r % 3 != s % 3 {
        return SymTensor2::ZERO;
    }
    let a = r / 3;
    let b = s / 3;
    let (a1, a2) = (qp.dn[a][0], qp.dn[a][1]);
    let (b1, b2) = (qp.dn[b][0], qp.dn[b][1]);
    SymTensor2 { xx: a1 * b1, yy: a2 * b2, xy: 0.5 * (a1 * b2 + a2 * b1) }
}

/// Deformed-surface quantities for stress postprocessing.
#[derive(Debug, Clone)]
pub struct SurfaceState {
    pub g1: Vector3<f64>,
    pub g2: Vector3<f64>,
    /// Current area Jacobian |g1 x g2|.
    pub jac_current: f64,
    /// In-plane deformation gradient, rows in the deformed local frame,
    /// columns in the reference local frame.
    pub def_grad: [[f64; 2]; 2],
    /// det F = current / reference area Jacobian.
    pub det_f: f64,
}

/// Build the deformed-surface state at a quadrature point.
pub fn surface_state(qp: &QuadPoint, cps: &[usize], u: &[f64]) -> Result<SurfaceState, CoreError> {
    let (g1, g2) = covariant_deformed(qp, cps, u);
    let jac_current = g1.cross(&g2).norm();
    let current = LocalFrame::from_covariant_basis(&g1, &g2)?;
    let a_ref = qp.frame.contra_coeff();
    // F = g_a (x) G^a, so F_ij = (tau_i . g_a) (G^a . t_j).
    let tau = [current.t1, current.t2];
    let g = [g1, g2];
    let mut f = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = 0.0;
            for al in 0..2 {
                s += tau[i].dot(&g[al]) * a_ref[j][al];
            }
            f[i][j] = s;
        }
    }
    Ok(SurfaceState { g1, g2, jac_current, def_grad: f, det_f: jac_current / qp.jac })
}
