//! Builders for the four validation problems: a pre-tensioned strip in
//! in-plane bending, a square membrane under corner loads, an inflated
//! square airbag quarter, and a blanket hanging from its corners.

use crate::config::{BenchmarkKind, Config, ParamsCfg};
use crate::post::{Probe, ProbeQuantity};
use anyhow::{bail, ensure, Result};
use membrane_core::{
    ElasticParams, KnotVector, LoadKind, MaterialKind, Model, Patch, PatchEdge, SolverConfig,
    TractionProfile,
};
use nalgebra::Vector3;
use std::collections::BTreeMap;

/// Fully resolved run parameters, echoed into the output directory so a run
/// can be reproduced without the original config file.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CaseSetup {
    pub benchmark: String,
    pub mesh: [usize; 2],
    pub degree: usize,
    pub youngs: f64,
    pub poisson: f64,
    pub eta: f64,
    pub thickness: f64,
    pub steps: usize,
    pub max_iterations: usize,
    pub tol_rel: f64,
    pub params: BTreeMap<String, f64>,
}

/// A benchmark ready to solve.
pub struct BuiltCase {
    pub model: Model,
    pub solver: SolverConfig,
    pub u0: Vec<f64>,
    pub probes: Vec<Probe>,
    pub setup: CaseSetup,
}

struct Common {
    mesh: [usize; 2],
    degree: usize,
    youngs: f64,
    poisson: f64,
    eta: f64,
    thickness: f64,
    steps: usize,
    max_iterations: usize,
    tol_rel: f64,
}

struct CommonDefaults {
    mesh: [usize; 2],
    degree: usize,
    youngs: f64,
    poisson: f64,
    eta: f64,
    thickness: f64,
    steps: usize,
}

fn resolve_common(cfg: &Config, d: CommonDefaults) -> Result<Common> {
    let mesh = cfg.mesh.elements.unwrap_or(d.mesh);
    let degree = cfg.mesh.degree.unwrap_or(d.degree);
    let youngs = match &cfg.material.youngs {
        Some(q) => q.si()?,
        None => d.youngs,
    };
    let thickness = match &cfg.material.thickness {
        Some(q) => q.si()?,
        None => d.thickness,
    };
    let steps = cfg.solver.steps.unwrap_or(d.steps);
    ensure!(steps >= 1, "need at least one load step");
    Ok(Common {
        mesh,
        degree,
        youngs,
        poisson: cfg.material.poisson.unwrap_or(d.poisson),
        eta: cfg.material.eta.unwrap_or(d.eta),
        thickness,
        steps,
        max_iterations: cfg.solver.max_iterations.unwrap_or(100),
        tol_rel: cfg.solver.tol_rel.unwrap_or(1e-6),
    })
}

/// Reject params that the benchmark does not interpret.
fn reject_unused(p: &ParamsCfg, allowed: &[&str], benchmark: BenchmarkKind) -> Result<()> {
    let set: &[(&str, bool)] = &[
        ("sigma0", p.sigma0.is_some()),
        ("load_ratio", p.load_ratio.is_some()),
        ("height", p.height.is_some()),
        ("width", p.width.is_some()),
        ("t1", p.t1.is_some()),
        ("t2", p.t2.is_some()),
        ("pressure", p.pressure.is_some()),
        ("stabilization_fraction", p.stabilization_fraction.is_some()),
        ("hold_fraction", p.hold_fraction.is_some()),
        ("ramp_end_fraction", p.ramp_end_fraction.is_some()),
        ("bump", p.bump.is_some()),
        ("surface_density", p.surface_density.is_some()),
        ("gravity", p.gravity.is_some()),
        ("spring", p.spring.is_some()),
        ("side", p.side.is_some()),
    ];
    for (name, is_set) in set {
        if *is_set && !allowed.contains(name) {
            bail!("parameter {name:?} does not apply to benchmark {benchmark}");
        }
    }
    Ok(())
}

/// Flat rectangular patch with maximal-smoothness open-uniform B-splines and
/// control points at the Greville abscissae, so geometry is exactly affine.
pub fn grid_patch(
    nu: usize,
    nv: usize,
    degree: usize,
    width: f64,
    height: f64,
    thickness: f64,
) -> Result<Patch> {
    let ku = KnotVector::open_uniform(degree, nu)?;
    let kv = KnotVector::open_uniform(degree, nv)?;
    let (ncu, ncv) = (ku.n_basis(), kv.n_basis());
    let mut cps = Vec::with_capacity(ncu * ncv);
    for iv in 0..ncv {
        for iu in 0..ncu {
            cps.push(Vector3::new(
                width * ku.greville(iu),
                height * kv.greville(iv),
                0.0,
            ));
        }
    }
    Ok(Patch::new(ku, kv, cps, thickness)?)
}

fn material(c: &Common) -> Result<ElasticParams> {
    Ok(ElasticParams::new(c.youngs, c.poisson)?.with_eta(c.eta)?)
}

fn solver_config(c: &Common) -> SolverConfig {
    SolverConfig {
        n_steps: c.steps,
        max_iterations: c.max_iterations,
        tol_rel: c.tol_rel,
        ..SolverConfig::default()
    }
}

fn setup(kind: BenchmarkKind, c: &Common, params: BTreeMap<String, f64>) -> CaseSetup {
    CaseSetup {
        benchmark: kind.id().to_string(),
        mesh: c.mesh,
        degree: c.degree,
        youngs: c.youngs,
        poisson: c.poisson,
        eta: c.eta,
        thickness: c.thickness,
        steps: c.steps,
        max_iterations: c.max_iterations,
        tol_rel: c.tol_rel,
        params,
    }
}

fn fix_all_z(model: &mut Model) {
    let (ncu, ncv) = model.patch.n_cp();
    for i in 0..ncu * ncv {
        model.constrain(3 * i + 2, 0.0);
    }
}

/// Linear ramp from 0 to 1 that is still 0 in the first step: the pre-load
/// state converges first, then the tabulated load grows over the remaining
/// steps.
fn deferred_ramp(steps: usize) -> Vec<f64> {
    if steps < 2 {
        return vec![1.0];
    }
    (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect()
}

/// Proportional ramp reaching 1 in the final step.
fn proportional_ramp(steps: usize) -> Vec<f64> {
    (1..=steps).map(|k| k as f64 / steps as f64).collect()
}

pub fn build(cfg: &Config) -> Result<BuiltCase> {
    match cfg.kind() {
        BenchmarkKind::PureBending => build_pure_bending(cfg),
        BenchmarkKind::CornerLoad => build_corner_load(cfg),
        BenchmarkKind::Airbag => build_airbag(cfg),
        BenchmarkKind::Blanket => build_blanket(cfg),
    }
}

/// Pre-tensioned strip, right half modeled. Vertical pre-tension sigma0 on
/// the horizontal edges, mean axial traction on the right edge, and a linear
/// bending traction ramped on top of the held pre-load. The rightmost
/// element column stays fully elastic so the load edge rotates uniformly.
fn build_pure_bending(cfg: &Config) -> Result<BuiltCase> {
    let kind = BenchmarkKind::PureBending;
    reject_unused(&cfg.params, &["sigma0", "load_ratio", "height", "width"], kind)?;
    // Stiffness sets the parasitic coupling between the transverse
    // pre-tension and in-plane section rotation; sigma0/E must stay <= 1e-6
    // or the transmitted moment decays measurably along the strip.
    let c = resolve_common(
        cfg,
        CommonDefaults {
            mesh: [11, 5],
            degree: 2,
            youngs: 1e10,
            poisson: 0.0,
            eta: 0.0,
            thickness: 1e-3,
            steps: 2,
        },
    )?;
    ensure!(c.steps >= 2, "bending benchmark needs at least 2 steps (pre-load, then moment)");
    let sigma0 = match &cfg.params.sigma0 {
        Some(q) => q.si()?,
        None => 1e4,
    };
    let alpha = cfg.params.load_ratio.unwrap_or(2.0 / 3.0);
    ensure!((0.0..=1.0).contains(&alpha), "load ratio 2M/(P*H) = {alpha} outside [0, 1]");
    let height = match &cfg.params.height {
        Some(q) => q.si()?,
        None => 1.0,
    };
    let width = match &cfg.params.width {
        Some(q) => q.si()?,
        None => 2.2,
    };

    let patch = grid_patch(c.mesh[0], c.mesh[1], c.degree, width, height, c.thickness)?;
    let mut model = Model::new(patch, material(&c)?, MaterialKind::Wrinkling);
    let (neu, nev) = model.patch.n_elements();
    let mut kinds = vec![MaterialKind::Wrinkling; neu * nev];
    for ev in 0..nev {
        kinds[ev * neu + (neu - 1)] = MaterialKind::StandardSvk;
    }
    model.element_kinds = kinds;

    fix_all_z(&mut model);
    model.fix_edge(PatchEdge::UMin, 0);
    let (_, ncv) = model.patch.n_cp();
    model.constrain(model.dof(0, ncv / 2, 1), 0.0);

    let t = c.thickness;
    let held = vec![1.0];
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::VMax,
            direction: Vector3::new(0.0, 1.0, 0.0),
            profile: TractionProfile::Constant(sigma0 * t),
        },
        held.clone(),
    );
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::VMin,
            direction: Vector3::new(0.0, -1.0, 0.0),
            profile: TractionProfile::Constant(sigma0 * t),
        },
        held.clone(),
    );
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::UMax,
            direction: Vector3::new(1.0, 0.0, 0.0),
            profile: TractionProfile::Constant(sigma0 * t),
        },
        held,
    );
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::UMax,
            direction: Vector3::new(1.0, 0.0, 0.0),
            profile: TractionProfile::LinearInY {
                base: -3.0 * alpha * sigma0 * t,
                grad: 6.0 * alpha * sigma0 * t / height,
            },
        },
        deferred_ramp(c.steps),
    );

    let u0 = vec![0.0; model.n_dof()];
    let params = BTreeMap::from([
        ("sigma0".to_string(), sigma0),
        ("load_ratio".to_string(), alpha),
        ("height".to_string(), height),
        ("width".to_string(), width),
    ]);
    Ok(BuiltCase {
        solver: solver_config(&c),
        u0,
        probes: vec![Probe {
            name: "sigma1_M".into(),
            param: (0.0, 0.5),
            quantity: ProbeQuantity::Sigma1,
        }],
        setup: setup(kind, &c, params),
        model,
    })
}

/// Square membrane loaded by two diagonal pairs of opposite corner forces.
/// The center is pinned in-plane and the top-edge midpoint holds x to block
/// rigid rotation.
fn build_corner_load(cfg: &Config) -> Result<BuiltCase> {
    let kind = BenchmarkKind::CornerLoad;
    reject_unused(&cfg.params, &["t1", "t2", "side"], kind)?;
    let c = resolve_common(
        cfg,
        CommonDefaults {
            mesh: [40, 40],
            degree: 3,
            youngs: 3.5e9,
            poisson: 0.31,
            eta: 0.0,
            thickness: 25e-6,
            steps: 5,
        },
    )?;
    ensure!(c.mesh[0] == c.mesh[1], "corner-load expects a square mesh");
    let t1 = match &cfg.params.t1 {
        Some(q) => q.si()?,
        None => 20.0,
    };
    let t2 = match &cfg.params.t2 {
        Some(q) => q.si()?,
        None => 5.0,
    };
    let side = match &cfg.params.side {
        Some(q) => q.si()?,
        None => 0.5,
    };

    let patch = grid_patch(c.mesh[0], c.mesh[1], c.degree, side, side, c.thickness)?;
    let mut model = Model::new(patch, material(&c)?, MaterialKind::Wrinkling);
    fix_all_z(&mut model);
    let (ncu, ncv) = model.patch.n_cp();
    model.constrain(model.dof(ncu / 2, ncv / 2, 0), 0.0);
    model.constrain(model.dof(ncu / 2, ncv / 2, 1), 0.0);
    model.constrain(model.dof(ncu / 2, ncv - 1, 0), 0.0);

    let ramp = proportional_ramp(c.steps);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let corner_forces = [
        ((0.0, 0.0), Vector3::new(-s, -s, 0.0) * t1),
        ((1.0, 1.0), Vector3::new(s, s, 0.0) * t1),
        ((1.0, 0.0), Vector3::new(s, -s, 0.0) * t2),
        ((0.0, 1.0), Vector3::new(-s, s, 0.0) * t2),
    ];
    for (param, force) in corner_forces {
        model.add_load(LoadKind::PointForce { param, force }, ramp.clone());
    }

    let u0 = vec![0.0; model.n_dof()];
    let probes = vec![
        Probe { name: "ux_c00".into(), param: (0.0, 0.0), quantity: ProbeQuantity::Ux },
        Probe { name: "uy_c00".into(), param: (0.0, 0.0), quantity: ProbeQuantity::Uy },
        Probe { name: "ux_c11".into(), param: (1.0, 1.0), quantity: ProbeQuantity::Ux },
        Probe { name: "uy_c11".into(), param: (1.0, 1.0), quantity: ProbeQuantity::Uy },
        Probe { name: "ux_c10".into(), param: (1.0, 0.0), quantity: ProbeQuantity::Ux },
        Probe { name: "uy_c10".into(), param: (1.0, 0.0), quantity: ProbeQuantity::Uy },
        Probe { name: "ux_c01".into(), param: (0.0, 1.0), quantity: ProbeQuantity::Ux },
        Probe { name: "uy_c01".into(), param: (0.0, 1.0), quantity: ProbeQuantity::Uy },
        Probe { name: "sigma1_M".into(), param: (0.5, 0.5), quantity: ProbeQuantity::Sigma1 },
    ];
    let params = BTreeMap::from([
        ("t1".to_string(), t1),
        ("t2".to_string(), t2),
        ("side".to_string(), side),
    ]);
    Ok(BuiltCase { solver: solver_config(&c), u0, probes, setup: setup(kind, &c, params), model })
}

/// Stabilization schedule for the airbag: full between load fractions
/// [0, hold], linear down to zero at `end`, zero afterwards.
fn stabilization_ramp(steps: usize, hold: f64, end: f64) -> Vec<f64> {
    (1..=steps)
        .map(|k| {
            let f = k as f64 / steps as f64;
            if f <= hold {
                1.0
            } else if f >= end {
                0.0
            } else {
                (end - f) / (end - hold)
            }
        })
        .collect()
}

/// Quarter model of a square airbag inflated by follower pressure. Symmetry
/// planes on the inner edges, the outer edges stay in the seam plane (z
/// fixed). Small dead edge tractions stretch the flat membrane at the start
/// and are ramped away before full pressure.
fn build_airbag(cfg: &Config) -> Result<BuiltCase> {
    let kind = BenchmarkKind::Airbag;
    reject_unused(
        &cfg.params,
        &["pressure", "stabilization_fraction", "hold_fraction", "ramp_end_fraction", "bump", "side"],
        kind,
    )?;
    let c = resolve_common(
        cfg,
        CommonDefaults {
            mesh: [16, 16],
            degree: 2,
            youngs: 588e6,
            poisson: 0.4,
            eta: 1e-4,
            thickness: 6e-4,
            steps: 25,
        },
    )?;
    let pressure = match &cfg.params.pressure {
        Some(q) => q.si()?,
        None => 5000.0,
    };
    // Quarter side of a square whose diagonal is 1.2 m.
    let side = match &cfg.params.side {
        Some(q) => q.si()?,
        None => 1.2 / (2.0 * std::f64::consts::SQRT_2),
    };
    let stab = cfg.params.stabilization_fraction.unwrap_or(0.01);
    let hold = cfg.params.hold_fraction.unwrap_or(0.2);
    let end = cfg.params.ramp_end_fraction.unwrap_or(0.6);
    ensure!(0.0 < hold && hold < end && end <= 1.0, "need 0 < hold < ramp_end <= 1");
    let bump = cfg.params.bump.unwrap_or(1e-3);

    let patch = grid_patch(c.mesh[0], c.mesh[1], c.degree, side, side, c.thickness)?;
    let mut model = Model::new(patch, material(&c)?, MaterialKind::Wrinkling);
    model.fix_edge(PatchEdge::UMin, 0);
    model.fix_edge(PatchEdge::VMin, 1);
    model.fix_edge(PatchEdge::UMax, 2);
    model.fix_edge(PatchEdge::VMax, 2);

    model.add_load(LoadKind::FollowerPressure { pressure }, proportional_ramp(c.steps));
    let q = stab * pressure * side;
    let stab_ramp = stabilization_ramp(c.steps, hold, end);
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::UMax,
            direction: Vector3::new(1.0, 0.0, 0.0),
            profile: TractionProfile::Constant(q),
        },
        stab_ramp.clone(),
    );
    model.add_load(
        LoadKind::EdgeTraction {
            edge: PatchEdge::VMax,
            direction: Vector3::new(0.0, 1.0, 0.0),
            profile: TractionProfile::Constant(q),
        },
        stab_ramp,
    );

    // Out-of-plane seed so the first pressure increment sees a nonzero
    // normal stiffness; vanishes on the z-fixed outer edges.
    let mut u0 = vec![0.0; model.n_dof()];
    let half_pi = std::f64::consts::FRAC_PI_2;
    for (i, cp) in model.patch.control_points.iter().enumerate() {
        u0[3 * i + 2] =
            bump * side * (half_pi * cp.x / side).cos() * (half_pi * cp.y / side).cos();
    }

    let probes = vec![
        Probe { name: "uz_M".into(), param: (0.0, 0.0), quantity: ProbeQuantity::Uz },
        Probe { name: "ux_A".into(), param: (1.0, 1.0), quantity: ProbeQuantity::Ux },
        Probe { name: "uy_A".into(), param: (1.0, 1.0), quantity: ProbeQuantity::Uy },
        Probe { name: "uy_B".into(), param: (0.0, 1.0), quantity: ProbeQuantity::Uy },
        Probe { name: "sigma1_M".into(), param: (0.0, 0.0), quantity: ProbeQuantity::Sigma1 },
    ];
    let params = BTreeMap::from([
        ("pressure".to_string(), pressure),
        ("side".to_string(), side),
        ("stabilization_fraction".to_string(), stab),
        ("hold_fraction".to_string(), hold),
        ("ramp_end_fraction".to_string(), end),
        ("bump".to_string(), bump),
    ]);
    Ok(BuiltCase { solver: solver_config(&c), u0, probes, setup: setup(kind, &c, params), model })
}

/// Square blanket under self-weight, corners held in z and restrained
/// in-plane by grounded springs. Small dead tractions pull the four edges
/// outward at the start so the barely loaded sheet stays taut and symmetric;
/// they are ramped away before the weight is fully applied.
fn build_blanket(cfg: &Config) -> Result<BuiltCase> {
    let kind = BenchmarkKind::Blanket;
    reject_unused(
        &cfg.params,
        &[
            "surface_density",
            "gravity",
            "spring",
            "bump",
            "side",
            "stabilization_fraction",
            "hold_fraction",
            "ramp_end_fraction",
        ],
        kind,
    )?;
    let c = resolve_common(
        cfg,
        CommonDefaults {
            mesh: [25, 25],
            degree: 2,
            youngs: 30e3,
            poisson: 0.0,
            eta: 0.0,
            thickness: 1.177e-3,
            steps: 30,
        },
    )?;
    let density = match &cfg.params.surface_density {
        Some(q) => q.si()?,
        None => 0.144,
    };
    let gravity = cfg.params.gravity.unwrap_or(9.81);
    let spring = match &cfg.params.spring {
        Some(q) => q.si()?,
        None => 22.95e3,
    };
    let side = match &cfg.params.side {
        Some(q) => q.si()?,
        None => 1.0,
    };
    let bump = cfg.params.bump.unwrap_or(0.01);
    let stab = cfg.params.stabilization_fraction.unwrap_or(0.5);
    let hold = cfg.params.hold_fraction.unwrap_or(0.5);
    let end = cfg.params.ramp_end_fraction.unwrap_or(0.9);
    ensure!(0.0 < hold && hold < end && end <= 1.0, "need 0 < hold < ramp_end <= 1");

    let patch = grid_patch(c.mesh[0], c.mesh[1], c.degree, side, side, c.thickness)?;
    let mut model = Model::new(patch, material(&c)?, MaterialKind::Wrinkling);
    let (ncu, ncv) = model.patch.n_cp();
    for (iu, iv) in [(0, 0), (ncu - 1, 0), (0, ncv - 1), (ncu - 1, ncv - 1)] {
        model.constrain(model.dof(iu, iv, 2), 0.0);
        model.add_spring(model.dof(iu, iv, 0), spring);
        model.add_spring(model.dof(iu, iv, 1), spring);
    }

    // Two-phase continuation: gravity ramps to full over [0, hold] while an
    // outward edge pre-tension holds the sheet taut, then the pre-tension is
    // ramped away over [hold, end] with gravity constant. Releasing the
    // tension around an already hanging sheet draws the free edges inward
    // smoothly; ramping gravity on a loose sheet instead strands the solve in
    // a lobed local minimum with the edges buckled in-plane.
    let weight = density * gravity;
    let gravity_ramp: Vec<f64> =
        (1..=c.steps).map(|k| (k as f64 / (hold * c.steps as f64)).min(1.0)).collect();
    model.add_load(
        LoadKind::SurfaceTraction { traction: Vector3::new(0.0, 0.0, -weight) },
        gravity_ramp,
    );

    let q = stab * weight * side;
    let stab_ramp = stabilization_ramp(c.steps, hold, end);
    for (edge, dir) in [
        (PatchEdge::UMin, Vector3::new(-1.0, 0.0, 0.0)),
        (PatchEdge::UMax, Vector3::new(1.0, 0.0, 0.0)),
        (PatchEdge::VMin, Vector3::new(0.0, -1.0, 0.0)),
        (PatchEdge::VMax, Vector3::new(0.0, 1.0, 0.0)),
    ] {
        model.add_load(
            LoadKind::EdgeTraction { edge, direction: dir, profile: TractionProfile::Constant(q) },
            stab_ramp.clone(),
        );
    }

    let mut u0 = vec![0.0; model.n_dof()];
    let pi = std::f64::consts::PI;
    for (i, cp) in model.patch.control_points.iter().enumerate() {
        u0[3 * i + 2] = -bump * side * (pi * cp.x / side).sin() * (pi * cp.y / side).sin();
    }
    let probes = vec![
        Probe { name: "uz_M".into(), param: (0.5, 0.5), quantity: ProbeQuantity::Uz },
        Probe { name: "ux_A".into(), param: (1.0, 0.5), quantity: ProbeQuantity::Ux },
        Probe { name: "ux_B".into(), param: (1.0, 0.75), quantity: ProbeQuantity::Ux },
        Probe { name: "sigma1_M".into(), param: (0.5, 0.5), quantity: ProbeQuantity::Sigma1 },
    ];
    let params = BTreeMap::from([
        ("surface_density".to_string(), density),
        ("gravity".to_string(), gravity),
        ("spring".to_string(), spring),
        ("side".to_string(), side),
        ("bump".to_string(), bump),
        ("stabilization_fraction".to_string(), stab),
        ("hold_fraction".to_string(), hold),
        ("ramp_end_fraction".to_string(), end),
    ]);
    Ok(BuiltCase { solver: solver_config(&c), u0, probes, setup: setup(kind, &c, params), model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    fn minimal(benchmark: &str) -> Config {
        Config::parse(&format!("schema = 1\nbenchmark = \"{benchmark}\"\n")).unwrap()
    }

    #[test]
    fn defaults_build_for_all_benchmarks() {
        for id in ["pure-bending", "corner-load", "airbag", "blanket"] {
            let case = build(&minimal(id)).unwrap();
            assert!(case.u0.len() == case.model.n_dof(), "{id}");
            assert!(!case.probes.is_empty(), "{id}");
        }
    }

    #[test]
    fn pure_bending_keeps_last_column_elastic() {
        let case = build(&minimal("pure-bending")).unwrap();
        let (neu, nev) = case.model.patch.n_elements();
        assert!(neu == 11 && nev == 5);
        let mut standard = 0;
        for ev in 0..nev {
            for eu in 0..neu {
                let k = case.model.element_kind(eu, ev);
                if eu == neu - 1 {
                    assert!(k == MaterialKind::StandardSvk);
                    standard += 1;
                } else {
                    assert!(k == MaterialKind::Wrinkling);
                }
            }
        }
        assert!(standard == 5);
    }

    #[test]
    fn pure_bending_moment_resultants_match_load_ratio() {
        // Integrate the linear bending traction analytically: zero resultant,
        // moment alpha * P * H / 2 about the edge midpoint.
        let case = build(&minimal("pure-bending")).unwrap();
        let alpha = case.setup.params["load_ratio"];
        let sigma0 = case.setup.params["sigma0"];
        let h = case.setup.params["height"];
        let t = case.setup.thickness;
        let (base, grad) = (-3.0 * alpha * sigma0 * t, 6.0 * alpha * sigma0 * t / h);
        let resultant = base * h + 0.5 * grad * h * h;
        let moment = 0.5 * base * h * h + grad * h * h * h / 3.0 - (base * h + 0.5 * grad * h * h) * h / 2.0;
        assert!(resultant.abs() < 1e-12);
        let p = sigma0 * t * h;
        assert!((moment - alpha * p * h / 2.0).abs() < 1e-12 * p * h);
    }

    #[test]
    fn airbag_stabilization_schedule_holds_then_vanishes() {
        let r = stabilization_ramp(25, 0.2, 0.6);
        assert!(r[0] == 1.0 && r[4] == 1.0);
        assert!(r[5] < 1.0 && r[5] > 0.0);
        assert!(r[10] < r[5]);
        assert!(r[14..].iter().all(|&v| v == 0.0));
        let case = build(&minimal("airbag")).unwrap();
        assert!((case.setup.params["side"] - 0.42426406871192851).abs() < 1e-15);
    }

    #[test]
    fn blanket_supports_sit_at_corners() {
        let case = build(&minimal("blanket")).unwrap();
        assert!(case.model.springs.len() == 8);
        assert!(case.model.constraints.len() == 4);
        let w = case.setup.params["surface_density"] * case.setup.params["gravity"];
        assert!((w - 1.41264).abs() < 1e-12);
    }

    #[test]
    fn unused_params_are_rejected() {
        let cfg = Config::parse(
            "schema = 1\nbenchmark = \"blanket\"\n[params]\npressure = 5000.0\n",
        )
        .unwrap();
        assert!(build(&cfg).is_err());
    }
}
