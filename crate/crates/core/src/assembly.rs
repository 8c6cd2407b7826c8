//! Sequential assembly of internal forces, the consistent tangent, external
//! loads, strain energy, and per-quadrature-point field snapshots.
//!
//! Stress and tangent are evaluated in each point's orthonormal local frame
//! and pushed to contravariant surface components once per point; strain
//! variations stay covariant, so the contractions pair naturally. Element
//! order is fixed, which keeps assembled vectors byte-reproducible.

use nalgebra::Vector3;

use crate::banded::BandedSym;
use crate::error::CoreError;
use crate::material::{evaluate, standard_svk, MaterialResponse};
use crate::model::{DofMap, LoadKind, MaterialKind, Model};
use crate::patch::{
    covariant_deformed, strain_variation, surface_state, ElementGeom, QuadPoint, SurfaceState,
};
use crate::tensor::SymTensor2;

fn respond(model: &Model, kind: MaterialKind, strain_local: &SymTensor2) -> MaterialResponse {
    match kind {
        MaterialKind::Wrinkling => evaluate(&model.material, strain_local),
        MaterialKind::StandardSvk => standard_svk(&model.material, strain_local),
    }
}

fn covariant_strain(qp: &QuadPoint, g1: &Vector3<f64>, g2: &Vector3<f64>) -> SymTensor2 {
    SymTensor2 {
        xx: 0.5 * (g1.dot(g1) - qp.g1.dot(&qp.g1)),
        yy: 0.5 * (g2.dot(g2) - qp.g2.dot(&qp.g2)),
        xy: 0.5 * (g1.dot(g2) - qp.g1.dot(&qp.g2)),
    }
}

/// Internal nodal forces (membrane plus grounded springs), full numbering.
pub fn internal_forces(
    model: &Model,
    elements: &[ElementGeom],
    u: &[f64],
) -> Result<Vec<f64>, CoreError> {
    let mut f = vec![0.0; model.n_dof()];
    let t = model.patch.thickness;
    for el in elements {
        let n_el_dof = 3 * el.cps.len();
        let kind = model.element_kind(el.eu, el.ev);
        for qp in &el.qps {
            let (g1, g2) = covariant_deformed(qp, &el.cps, u);
            let e_loc = qp.frame.cov_to_local(&covariant_strain(qp, &g1, &g2));
            let resp = respond(model, kind, &e_loc);
            let s_con = qp.frame.local_to_contra(&resp.stress);
            let wt = qp.weight * qp.jac * t;
            for r in 0..n_el_dof {
                let b = strain_variation(qp, &g1, &g2, r);
                f[3 * el.cps[r / 3] + r % 3] += wt * s_con.ddot(&b);
            }
        }
    }
    for sp in &model.springs {
        f[sp.dof] += sp.stiffness * u[sp.dof];
    }
    Ok(f)
}

/// Internal forces plus the reduced consistent tangent (material and
/// geometric parts, springs on the diagonal). The follower-pressure
/// contribution to the tangent is deliberately omitted; Newton then uses an
/// inexact Jacobian for pressurized cases and simply takes more iterations.
pub fn internal_forces_and_tangent(
    model: &Model,
    elements: &[ElementGeom],
    u: &[f64],
    map: &DofMap,
    half_bandwidth: usize,
) -> Result<(Vec<f64>, BandedSym), CoreError> {
    let mut f = vec![0.0; model.n_dof()];
    let mut k = BandedSym::zeros(map.n_reduced(), half_bandwidth);
    let t = model.patch.thickness;
    let mut b = Vec::new();
    let mut cb = Vec::new();
    let mut reduced = Vec::new();
    for el in elements {
        let n_el_dof = 3 * el.cps.len();
        b.resize(n_el_dof, SymTensor2::ZERO);
        cb.resize(n_el_dof, SymTensor2::ZERO);
        reduced.clear();
        reduced.extend((0..n_el_dof).map(|r| map.to_reduced[3 * el.cps[r / 3] + r % 3]));
        let kind = model.element_kind(el.eu, el.ev);
        for qp in &el.qps {
            let (g1, g2) = covariant_deformed(qp, &el.cps, u);
            let e_loc = qp.frame.cov_to_local(&covariant_strain(qp, &g1, &g2));
            let resp = respond(model, kind, &e_loc);
            let s_con = qp.frame.local_to_contra(&resp.stress);
            let c_con = qp.frame.local_to_contra4(&resp.tangent);
            let wt = qp.weight * qp.jac * t;
            for r in 0..n_el_dof {
                b[r] = strain_variation(qp, &g1, &g2, r);
                cb[r] = c_con.ddot(&b[r]);
            }
            for r in 0..n_el_dof {
                f[3 * el.cps[r / 3] + r % 3] += wt * s_con.ddot(&b[r]);
                let Some(gr) = reduced[r] else { continue };
                let (a1, a2) = (qp.dn[r / 3][0], qp.dn[r / 3][1]);
                for s in 0..=r {
                    let Some(gs) = reduced[s] else { continue };
                    if gr.abs_diff(gs) > half_bandwidth {
                        return Err(CoreError::InvalidModel(format!(
                            "bandwidth {half_bandwidth} too small for dof pair ({gr}, {gs})"
                        )));
                    }
                    let mut val = b[r].ddot(&cb[s]);
                    if r % 3 == s % 3 {
                        let (b1, b2) = (qp.dn[s / 3][0], qp.dn[s / 3][1]);
                        val += s_con.xx * a1 * b1
                            + s_con.yy * a2 * b2
                            + s_con.xy * (a1 * b2 + a2 * b1);
                    }
                    k.add(gr, gs, wt * val);
                }
            }
        }
    }
    for sp in &model.springs {
        f[sp.dof] += sp.stiffness * u[sp.dof];
        if let Some(r) = map.to_reduced[sp.dof] {
            k.add(r, r, sp.stiffness);
        }
    }
    Ok((f, k))
}

/// Applied external loads at a given step, full numbering. Follower
/// pressure is configuration dependent, so the current displacement enters.
pub fn external_forces(
    model: &Model,
    elements: &[ElementGeom],
    u: &[f64],
    step: usize,
) -> Result<Vec<f64>, CoreError> {
    let mut f = vec![0.0; model.n_dof()];
    for lc in &model.loads {
        let scale = lc.scale_at(step);
        if scale == 0.0 {
            continue;
        }
        match &lc.kind {
            LoadKind::SurfaceTraction { traction } => {
                for el in elements {
                    for qp in &el.qps {
                        let w = scale * qp.weight * qp.jac;
                        for (a, &cp) in el.cps.iter().enumerate() {
                            for i in 0..3 {
                                f[3 * cp + i] += w * qp.n[a] * traction[i];
                            }
                        }
                    }
                }
            }
            LoadKind::FollowerPressure { pressure } => {
                for el in elements {
                    for qp in &el.qps {
                        // g1 x g2 carries both the deformed unit normal and
                        // the current area measure.
                        let (g1, g2) = covariant_deformed(qp, &el.cps, u);
                        let normal = g1.cross(&g2);
                        let w = scale * pressure * qp.weight;
                        for (a, &cp) in el.cps.iter().enumerate() {
                            for i in 0..3 {
                                f[3 * cp + i] += w * qp.n[a] * normal[i];
                            }
                        }
                    }
                }
            }
            LoadKind::EdgeTraction { edge, direction, profile } => {
                for p in model.edge_quadrature(*edge)? {
                    let mag = profile.value_at(&p.position);
                    for (a, &cp) in p.cps.iter().enumerate() {
                        for i in 0..3 {
                            f[3 * cp + i] += scale * p.weight * mag * p.n[a] * direction[i];
                        }
                    }
                }
            }
            LoadKind::PointForce { param, force } => {
                let (cps, n) = model.point_basis(*param);
                for (a, &cp) in cps.iter().enumerate() {
                    for i in 0..3 {
                        f[3 * cp + i] += scale * n[a] * force[i];
                    }
                }
            }
        }
    }
    Ok(f)
}

/// Membrane strain energy: (degraded total, tensile part only).
pub fn strain_energy(
    model: &Model,
    elements: &[ElementGeom],
    u: &[f64],
) -> Result<(f64, f64), CoreError> {
    let t = model.patch.thickness;
    let mut total = 0.0;
    let mut positive = 0.0;
    for el in elements {
        let kind = model.element_kind(el.eu, el.ev);
        for qp in &el.qps {
            let (g1, g2) = covariant_deformed(qp, &el.cps, u);
            let e_loc = qp.frame.cov_to_local(&covariant_strain(qp, &g1, &g2));
            let resp = respond(model, kind, &e_loc);
            let wt = qp.weight * qp.jac * t;
            total += wt * resp.energy;
            positive += wt * resp.energy_pos;
        }
    }
    Ok((total, positive))
}

/// Everything postprocessing needs at one quadrature point.
#[derive(Debug, Clone)]
pub struct QpSnapshot {
    pub element: usize,
    pub qp_index: usize,
    pub kind: MaterialKind,
    pub param: (f64, f64),
    pub position: Vector3<f64>,
    /// Reference area measure carried by this point (weight times Jacobian).
    pub weight_area: f64,
    pub strain_local: SymTensor2,
    pub response: MaterialResponse,
    pub surface: SurfaceState,
    /// Wrinkle direction rotated into global coordinates.
    pub wrinkle_dir_global: Vector3<f64>,
}

/// Evaluate strain, constitutive response, and deformed-surface state at
/// every quadrature point, in fixed element order.
pub fn snapshot_fields(
    model: &Model,
    elements: &[ElementGeom],
    u: &[f64],
) -> Result<Vec<QpSnapshot>, CoreError> {
    let mut out = Vec::new();
    for (ei, el) in elements.iter().enumerate() {
        let kind = model.element_kind(el.eu, el.ev);
        for (qi, qp) in el.qps.iter().enumerate() {
            let (g1, g2) = covariant_deformed(qp, &el.cps, u);
            let e_loc = qp.frame.cov_to_local(&covariant_strain(qp, &g1, &g2));
            let response = respond(model, kind, &e_loc);
            let surface = surface_state(qp, &el.cps, u)?;
            let d = response.wrinkle_dir;
            out.push(QpSnapshot {
                element: ei,
                qp_index: qi,
                kind,
                param: qp.param,
                position: qp.position,
                weight_area: qp.weight * qp.jac,
                strain_local: e_loc,
                response,
                surface,
                wrinkle_dir_global: d[0] * qp.frame.t1 + d[1] * qp.frame.t2,
            });
        }
    }
    Ok(out)
}
