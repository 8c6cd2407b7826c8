//! Assembled-tangent consistency, byte determinism of assembly and solve,
//! and a driven-shear solve whose wrinkle field has a closed-form oracle.

use membrane_core::model::{MaterialKind, Model, PatchEdge};
use membrane_core::patch::{discretize, Patch};
use membrane_core::{
    internal_forces, internal_forces_and_tangent, snapshot_fields, solve, strain_energy,
    ElasticParams, KnotVector, SolverConfig, WrinkleState,
};
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid_patch(nx: usize, ny: usize, degree: usize, w: f64, h: f64) -> Patch {
    let ku = KnotVector::open_uniform(degree, nx).unwrap();
    let kv = KnotVector::open_uniform(degree, ny).unwrap();
    let mut cps = Vec::new();
    for iv in 0..kv.n_basis() {
        for iu in 0..ku.n_basis() {
            cps.push(Vector3::new(w * ku.greville(iu), h * kv.greville(iv), 0.0));
        }
    }
    Patch::new(ku, kv, cps, 1e-3).unwrap()
}

#[test]
fn tangent_matches_residual_differences_on_mixed_states() {
    // 3 x 3 quadratic mesh, random states mixing taut, wrinkled, and slack
    // points. The assembled tangent must match central differences of the
    // internal force; the geometric term is exercised because states are
    // far from the reference configuration.
    let mut rng = ChaCha8Rng::seed_from_u64(4021);
    for (eta, seed_note) in [(1e-2, "degraded"), (1.0, "standard-equivalent")] {
        let patch = grid_patch(3, 3, 2, 1.0, 1.0);
        let material = ElasticParams::new(2e6, 0.25).unwrap().with_eta(eta).unwrap();
        let mut model = Model::new(patch, material, MaterialKind::Wrinkling);
        model.fix_edge(PatchEdge::UMin, 0);
        model.fix_edge(PatchEdge::VMin, 1);
        model.add_spring(model.dof(2, 2, 2), 5e2);
        let elements = discretize(&model.patch).unwrap();
        let map = model.dof_map();
        let hb = model.reduced_half_bandwidth(&map);
        for _ in 0..4 {
            let mut u: Vec<f64> =
                (0..model.n_dof()).map(|_| rng.gen_range(-4e-3..4e-3)).collect();
            for c in &model.constraints {
                u[c.dof] = 0.0;
            }
            let (_, k) = internal_forces_and_tangent(&model, &elements, &u, &map, hb).unwrap();
            let scale = k.max_abs_diagonal();
            let h = 1e-6;
            let mut worst = 0.0_f64;
            for cs in 0..map.n_reduced() {
                let dof = map.to_full[cs];
                let orig = u[dof];
                u[dof] = orig + h;
                let fp = internal_forces(&model, &elements, &u).unwrap();
                u[dof] = orig - h;
                let fm = internal_forces(&model, &elements, &u).unwrap();
                u[dof] = orig;
                for rr in 0..map.n_reduced() {
                    let fd = (fp[map.to_full[rr]] - fm[map.to_full[rr]]) / (2.0 * h);
                    worst = worst.max((fd - k.get(rr, cs)).abs() / scale);
                }
            }
            assert!(worst <= 5e-6, "{seed_note}: tangent FD mismatch {worst}");
        }
    }
}

#[test]
fn translation_is_in_the_tangent_null_space() {
    // A uniform translation changes no strain, so K t = 0 even at a
    // stressed, partially wrinkled state (geometric stiffness included).
    let patch = grid_patch(2, 2, 2, 1.0, 1.0);
    let material = ElasticParams::new(2e6, 0.3).unwrap().with_eta(1e-3).unwrap();
    let model = Model::new(patch, material, MaterialKind::Wrinkling);
    let elements = discretize(&model.patch).unwrap();
    let map = model.dof_map();
    let hb = model.reduced_half_bandwidth(&map);
    let mut u = vec![0.0; model.n_dof()];
    for (i, x) in model.patch.control_points.iter().enumerate() {
        u[3 * i] = 0.02 * x.x - 0.01 * x.y;
        u[3 * i + 1] = -0.008 * x.x;
        u[3 * i + 2] = 0.005 * x.x * x.y;
    }
    let (_, k) = internal_forces_and_tangent(&model, &elements, &u, &map, hb).unwrap();
    let scale = k.max_abs_diagonal();
    for comp in 0..3 {
        let t: Vec<f64> =
            map.to_full.iter().map(|&d| if d % 3 == comp { 1.0 } else { 0.0 }).collect();
        let kt = k.multiply(&t);
        let worst = kt.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(worst <= 1e-12 * scale, "component {comp}: |K t| = {worst}");
    }
}

#[test]
fn assembly_and_solve_are_bit_reproducible() {
    let build = || {
        let patch = grid_patch(3, 2, 2, 1.0, 0.8);
        let material = ElasticParams::new(1e7, 0.3).unwrap().with_eta(1e-3).unwrap();
        let mut model = Model::new(patch, material, MaterialKind::Wrinkling);
        model.fix_edge(PatchEdge::UMin, 0);
        model.fix_edge(PatchEdge::UMin, 1);
        model.fix_edge(PatchEdge::UMin, 2);
        for iv in 0..model.patch.n_cp().1 {
            for iu in 0..model.patch.n_cp().0 {
                model.constrain(model.dof(iu, iv, 2), 0.0);
            }
        }
        model.add_load(
            membrane_core::LoadKind::EdgeTraction {
                edge: PatchEdge::UMax,
                direction: Vector3::new(1.0, 0.3, 0.0),
                profile: membrane_core::TractionProfile::Constant(2e3),
            },
            vec![0.5, 1.0],
        );
        model
    };
    let run = || {
        let model = build();
        let cfg = SolverConfig { n_steps: 2, ..Default::default() };
        solve(&model, &cfg, &vec![0.0; model.n_dof()]).unwrap().u
    };
    let u1 = run();
    let u2 = run();
    assert_eq!(u1.len(), u2.len());
    for (a, b) in u1.iter().zip(&u2) {
        assert_eq!(a.to_bits(), b.to_bits());
    }

    let model = build();
    let elements = discretize(&model.patch).unwrap();
    let f1 = internal_forces(&model, &elements, &u1).unwrap();
    let f2 = internal_forces(&model, &elements, &u1).unwrap();
    for (a, b) in f1.iter().zip(&f2) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn driven_shear_wrinkles_along_the_diagonal() {
    // Simple shear u_x = gamma * y prescribed on every control point of a
    // flat strip. The Green-Lagrange strain is uniform with a closed form,
    // one tensile and one compressive principal direction; at zero residual
    // stiffness every point reports wrinkled with the analytic direction
    // and intensity, and the energy equals its tensile part.
    let gamma = 0.02;
    let patch = grid_patch(4, 4, 2, 1.0, 1.0);
    let material = ElasticParams::new(3e6, 0.0).unwrap();
    let mut model = Model::new(patch, material, MaterialKind::Wrinkling);
    for (i, x) in model.patch.control_points.clone().iter().enumerate() {
        model.constrain(3 * i, gamma * x.y);
        model.constrain(3 * i + 1, 0.0);
        model.constrain(3 * i + 2, 0.0);
    }
    let out = solve(&model, &SolverConfig::default(), &vec![0.0; model.n_dof()]).unwrap();
    let elements = discretize(&model.patch).unwrap();
    let snaps = snapshot_fields(&model, &elements, &out.u).unwrap();

    // Oracle: E = [[0, g/2], [g/2, g^2/2]].
    let e = membrane_core::SymTensor2::new(0.0, 0.5 * gamma * gamma, 0.5 * gamma);
    let sp = e.spectral();
    assert!(sp.e1 > 0.0 && sp.e2 < 0.0);
    for s in &snaps {
        assert_eq!(s.response.state, WrinkleState::Wrinkled);
        assert!((s.response.intensity - sp.e2.abs()).abs() <= 1e-12);
        let d = s.wrinkle_dir_global;
        let dot = (d.x * sp.n1[0] + d.y * sp.n1[1]).abs();
        assert!(dot >= 1.0 - 1e-10, "direction {d:?} vs {:?}", sp.n1);
        // Zero residual stiffness: compressive branch carries no stress.
        let (_, e_neg) = membrane_core::tensor::split_tensor(&s.response.spectral);
        assert!(s.response.stress.ddot(&e_neg).abs() <= 1e-12 * material.mu);
    }
    let (total, positive) = strain_energy(&model, &elements, &out.u).unwrap();
    assert!((total - positive).abs() <= 1e-15 * positive.max(1e-300));
}
