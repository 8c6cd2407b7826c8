//! Postprocessing of converged states: Cauchy stress, probe evaluation, and
//! the field extractions the individual benchmarks report on.

use anyhow::{ensure, Context, Result};
use membrane_core::{Patch, QpSnapshot, SymTensor2, WrinkleState};
use nalgebra::Vector3;

/// In-plane Cauchy stress in the local frame: sigma = F S F^T / det F.
pub fn cauchy_stress(snap: &QpSnapshot) -> SymTensor2 {
    let f = &snap.surface.def_grad;
    let s = &snap.response.stress;
    let fs = [
        [f[0][0] * s.xx + f[0][1] * s.xy, f[0][0] * s.xy + f[0][1] * s.yy],
        [f[1][0] * s.xx + f[1][1] * s.xy, f[1][0] * s.xy + f[1][1] * s.yy],
    ];
    let d = snap.surface.det_f;
    SymTensor2 {
        xx: (fs[0][0] * f[0][0] + fs[0][1] * f[0][1]) / d,
        yy: (fs[1][0] * f[1][0] + fs[1][1] * f[1][1]) / d,
        xy: (fs[0][0] * f[1][0] + fs[0][1] * f[1][1]) / d,
    }
}

/// Principal Cauchy stresses, sigma1 >= sigma2.
pub fn principal_stresses(sigma: &SymTensor2) -> (f64, f64) {
    let sp = sigma.spectral();
    (sp.e1, sp.e2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeQuantity {
    Ux,
    Uy,
    Uz,
    Sigma1,
}

impl ProbeQuantity {
    pub fn unit(&self) -> &'static str {
        match self {
            ProbeQuantity::Sigma1 => "Pa",
            _ => "m",
        }
    }
}

/// A named quantity to extract after the solve, at a parametric location.
#[derive(Debug, Clone)]
pub struct Probe {
    pub name: String,
    pub param: (f64, f64),
    pub quantity: ProbeQuantity,
}

#[derive(Debug, Clone)]
pub struct ProbeValue {
    pub name: String,
    /// Where the value was evaluated (nearest quadrature point for stress).
    pub position: Vector3<f64>,
    pub value: f64,
    pub unit: &'static str,
    /// Distance from the requested location; zero for displacement probes.
    pub distance: f64,
}

fn displacement_field(u: &[f64]) -> Vec<Vector3<f64>> {
    u.chunks_exact(3).map(|c| Vector3::new(c[0], c[1], c[2])).collect()
}

/// Evaluate probes against a converged state. Displacements interpolate the
/// solution basis exactly; stresses take the nearest quadrature point.
pub fn evaluate_probes(
    patch: &Patch,
    snapshots: &[QpSnapshot],
    u: &[f64],
    probes: &[Probe],
) -> Result<Vec<ProbeValue>> {
    let disp = displacement_field(u);
    let mut out = Vec::with_capacity(probes.len());
    for p in probes {
        let position = patch.interpolate(&patch.control_points, p.param.0, p.param.1);
        match p.quantity {
            ProbeQuantity::Ux | ProbeQuantity::Uy | ProbeQuantity::Uz => {
                let d = patch.interpolate(&disp, p.param.0, p.param.1);
                let value = match p.quantity {
                    ProbeQuantity::Ux => d.x,
                    ProbeQuantity::Uy => d.y,
                    _ => d.z,
                };
                out.push(ProbeValue {
                    name: p.name.clone(),
                    position,
                    value,
                    unit: p.quantity.unit(),
                    distance: 0.0,
                });
            }
            ProbeQuantity::Sigma1 => {
                let (snap, dist) = nearest_snapshot(snapshots, &position)?;
                let (s1, _) = principal_stresses(&cauchy_stress(snap));
                out.push(ProbeValue {
                    name: p.name.clone(),
                    position: snap.position,
                    value: s1,
                    unit: p.quantity.unit(),
                    distance: dist,
                });
            }
        }
    }
    Ok(out)
}

fn nearest_snapshot<'a>(
    snapshots: &'a [QpSnapshot],
    target: &Vector3<f64>,
) -> Result<(&'a QpSnapshot, f64)> {
    ensure!(!snapshots.is_empty(), "no quadrature data to probe");
    let mut best = &snapshots[0];
    let mut best_d2 = f64::INFINITY;
    for s in snapshots {
        let d2 = (s.position - target).norm_squared();
        if d2 < best_d2 {
            best_d2 = d2;
            best = s;
        }
    }
    Ok((best, best_d2.sqrt()))
}

/// One row of the stress profile along the height of the bending strip.
#[derive(Debug, Clone, Copy)]
pub struct ProfileRow {
    pub y: f64,
    pub sigma_x: f64,
    pub state: WrinkleState,
}

/// Quadrature-point column closest to the symmetry edge (minimum x), sorted
/// by ascending y. Positions are reference coordinates.
pub fn profile_column(snapshots: &[QpSnapshot]) -> Result<Vec<ProfileRow>> {
    ensure!(!snapshots.is_empty(), "no quadrature data");
    let x_min = snapshots.iter().map(|s| s.position.x).fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * (1.0 + x_min.abs());
    let mut rows: Vec<ProfileRow> = snapshots
        .iter()
        .filter(|s| (s.position.x - x_min).abs() <= tol)
        .map(|s| ProfileRow {
            y: s.position.y,
            sigma_x: cauchy_stress(s).xx,
            state: s.response.state,
        })
        .collect();
    rows.sort_by(|a, b| a.y.total_cmp(&b.y));
    Ok(rows)
}

/// Height of the wrinkled band in a profile column: the largest y among
/// wrinkled points, or zero when none wrinkle.
pub fn band_height_from_column(rows: &[ProfileRow]) -> f64 {
    rows.iter()
        .filter(|r| r.state == WrinkleState::Wrinkled)
        .map(|r| r.y)
        .fold(0.0, f64::max)
}

/// Mean wrinkle intensity inside and outside a diagonal band of the given
/// half-width around the line y = x (area-weighted).
pub fn diagonal_band_stats(snapshots: &[QpSnapshot], half_width: f64) -> (f64, f64) {
    let (mut win, mut aw_in, mut wout, mut aw_out) = (0.0, 0.0, 0.0, 0.0);
    for s in snapshots {
        let d = (s.position.x - s.position.y).abs() / std::f64::consts::SQRT_2;
        let w = s.weight_area;
        if d <= half_width {
            win += w * s.response.intensity;
            aw_in += w;
        } else {
            wout += w * s.response.intensity;
            aw_out += w;
        }
    }
    (win / aw_in.max(f64::MIN_POSITIVE), wout / aw_out.max(f64::MIN_POSITIVE))
}

/// Index permutation mapping each quadrature point of a square n x n mesh to
/// its image under a quarter turn about the patch center. Snapshots must be
/// in canonical order: element ev*n + eu, quadrature point qv*ngp + qu.
pub fn quarter_turn_permutation(n: usize, ngp: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(n * n * ngp * ngp);
    for ev in 0..n {
        for eu in 0..n {
            for qv in 0..ngp {
                for qu in 0..ngp {
                    // (x, y) -> (L - y, x): column from v, row from u.
                    let (reu, rev) = (n - 1 - ev, eu);
                    let (rqu, rqv) = (ngp - 1 - qv, qu);
                    perm.push(((rev * n + reu) * ngp + rqv) * ngp + rqu);
                }
            }
        }
    }
    perm
}

/// Largest absolute intensity difference across quarter-turn image pairs.
pub fn quarter_turn_asymmetry(snapshots: &[QpSnapshot], n: usize, ngp: usize) -> Result<f64> {
    let perm = quarter_turn_permutation(n, ngp);
    ensure!(
        perm.len() == snapshots.len(),
        "snapshot count {} does not match an {n}x{n} mesh with {ngp}x{ngp} quadrature",
        snapshots.len()
    );
    let mut worst = 0.0_f64;
    for (i, &j) in perm.iter().enumerate() {
        let d = (snapshots[i].response.intensity - snapshots[j].response.intensity).abs();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Verify the permutation against actual positions: the image point must sit
/// at the rotated location. Guards the index arithmetic.
pub fn check_quarter_turn_geometry(
    snapshots: &[QpSnapshot],
    n: usize,
    ngp: usize,
    side: f64,
) -> Result<()> {
    let perm = quarter_turn_permutation(n, ngp);
    ensure!(perm.len() == snapshots.len(), "mesh does not match permutation");
    for (i, &j) in perm.iter().enumerate() {
        let p = &snapshots[i].position;
        let q = &snapshots[j].position;
        let rot = Vector3::new(side - p.y, p.x, 0.0);
        ensure!(
            (q - rot).norm() <= 1e-9 * side.max(1.0),
            "quarter-turn image of point {i} lands at ({}, {}), expected ({}, {})",
            q.x,
            q.y,
            rot.x,
            rot.y
        );
    }
    Ok(())
}

/// Interpolated reference position of a parametric point.
pub fn reference_position(patch: &Patch, param: (f64, f64)) -> Vector3<f64> {
    patch.interpolate(&patch.control_points, param.0, param.1)
}

/// Look up a probe value by name.
pub fn probe_value(values: &[ProbeValue], name: &str) -> Result<f64> {
    values
        .iter()
        .find(|v| v.name == name)
        .map(|v| v.value)
        .with_context(|| format!("no probe named {name:?}"))
}
