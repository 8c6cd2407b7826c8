//! Property suite over the constitutive split and the closed-form reference:
//! finite-difference consistency, recomposition to the undegraded model, and
//! branch continuity. Shared by the `verify` subcommand and the test suite.

use crate::analytic;
use membrane_core::{
    energy_split, evaluate, standard_svk, stress_split, tangent_split, ElasticParams, SymTensor2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult { name, passed, detail }
    }
}

/// Random plane strains with components in [-0.1, 0.1], excluding states
/// within 1e-6 of coincident eigenvalues or vanishing trace where the split
/// has one-sided derivatives.
pub fn sample_strains(n: usize, seed: u64) -> Vec<SymTensor2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let e = SymTensor2::new(
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
        );
        let sp = e.spectral();
        if (sp.e1 - sp.e2).abs() < 1e-6 || (sp.e1 + sp.e2).abs() < 1e-6 {
            continue;
        }
        out.push(e);
    }
    out
}

fn directions() -> [SymTensor2; 3] {
    [
        SymTensor2::new(1.0, 0.0, 0.0),
        SymTensor2::new(0.0, 1.0, 0.0),
        SymTensor2::new(0.0, 0.0, 1.0),
    ]
}

/// Finite-difference gradients of the split energies against the split
/// stresses (tolerance 1e-5 relative) and of the split stresses against the
/// split tangents (1e-4 relative), on `n` random strains.
pub fn check_split_derivatives(params: &ElasticParams, n: usize, seed: u64) -> CheckResult {
    let start = Instant::now();
    let h = 1e-7;
    let mut worst_s = 0.0_f64;
    let mut worst_c = 0.0_f64;
    for strain in sample_strains(n, seed) {
        let sp = strain.spectral();
        let (s_p, s_n) = stress_split(params, &sp);
        let (c_p, c_n) = tangent_split(params, &sp);
        for d in directions() {
            let spp = strain.add(&d.scale(h)).spectral();
            let spm = strain.sub(&d.scale(h)).spectral();
            let (pp, np) = energy_split(params, &spp);
            let (pm, nm) = energy_split(params, &spm);
            // ddot doubles the off-diagonal, matching a derivative taken
            // with both symmetric components varying together.
            for (fd, an) in [
                ((pp - pm) / (2.0 * h), s_p.ddot(&d)),
                ((np - nm) / (2.0 * h), s_n.ddot(&d)),
            ] {
                worst_s = worst_s.max((fd - an).abs() / an.abs().max(params.mu * 0.1));
            }
            let (s_pp, s_np) = stress_split(params, &spp);
            let (s_pm, s_nm) = stress_split(params, &spm);
            for (fd, an) in [
                (s_pp.sub(&s_pm).scale(1.0 / (2.0 * h)), c_p.ddot(&d)),
                (s_np.sub(&s_nm).scale(1.0 / (2.0 * h)), c_n.ddot(&d)),
            ] {
                worst_c = worst_c.max(fd.sub(&an).max_abs() / an.max_abs().max(params.mu));
            }
        }
    }
    let passed = worst_s <= 1e-5 && worst_c <= 1e-4;
    CheckResult::new(
        "split finite-difference consistency",
        passed,
        format!(
            "{n} strains, worst stress dev {worst_s:.2e} (tol 1e-5), worst tangent dev {worst_c:.2e} (tol 1e-4), {:.2}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

/// The split parts recompose to the undegraded model within 1e-10 relative,
/// and full residual stiffness reproduces it within 1e-12 relative.
pub fn check_recomposition(params: &ElasticParams, n: usize, seed: u64) -> CheckResult {
    let full = params.clone().with_eta(1.0).expect("eta 1 is valid");
    let mut worst_sum = 0.0_f64;
    let mut worst_eta = 0.0_f64;
    for strain in sample_strains(n, seed) {
        let sp = strain.spectral();
        let std = standard_svk(params, &strain);
        let (psi_p, psi_n) = energy_split(params, &sp);
        let (s_p, s_n) = stress_split(params, &sp);
        let (c_p, c_n) = tangent_split(params, &sp);
        let floor_e = params.mu * 1e-6;
        worst_sum = worst_sum
            .max((psi_p + psi_n - std.energy).abs() / std.energy.abs().max(floor_e))
            .max(s_p.add(&s_n).sub(&std.stress).max_abs() / std.stress.max_abs().max(floor_e))
            .max(c_p.add(&c_n).sub(&std.tangent).max_abs() / std.tangent.max_abs().max(params.mu));
        let resp = evaluate(&full, &strain);
        worst_eta = worst_eta
            .max((resp.energy - std.energy).abs() / std.energy.abs().max(floor_e))
            .max(resp.stress.sub(&std.stress).max_abs() / std.stress.max_abs().max(floor_e))
            .max(resp.tangent.sub(&std.tangent).max_abs() / std.tangent.max_abs().max(params.mu));
    }
    let passed = worst_sum <= 1e-10 && worst_eta <= 1e-12;
    CheckResult::new(
        "split recomposition",
        passed,
        format!(
            "{n} strains, worst part-sum dev {worst_sum:.2e} (tol 1e-10), worst eta=1 dev {worst_eta:.2e} (tol 1e-12)"
        ),
    )
}

/// Branch continuity of the closed-form band height and stress profile.
pub fn check_analytic_continuity() -> CheckResult {
    let eps = 1e-12;
    let onset = (analytic::band_height(1.0 / 6.0 + eps).unwrap()
        - analytic::band_height(1.0 / 6.0 - eps).unwrap())
    .abs();
    let mut worst_edge = 0.0_f64;
    for band in [0.1, 0.25, 0.5, 0.9] {
        worst_edge = worst_edge
            .max(analytic::sigma_profile(band + 1e-15, band).abs())
            .max(analytic::sigma_profile(band, band).abs());
    }
    // Probing at a finite offset from the kink picks up slope times offset
    // (slopes up to 3 and 2/(1-band)^2 = 200); a genuine branch defect
    // would jump by order one.
    let passed = onset <= 1e-11 && worst_edge <= 1e-12;
    CheckResult::new(
        "closed-form branch continuity",
        passed,
        format!("band-height jump {onset:.2e} (tol 1e-11), profile jump {worst_edge:.2e} (tol 1e-12)"),
    )
}

/// Wrinkle-state classification sanity on random strains: state codes match
/// the eigenvalue signs and intensity is the released compressive strain.
pub fn check_state_classification(n: usize, seed: u64) -> CheckResult {
    let params = ElasticParams::new(1.0, 0.3).expect("valid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut ok = true;
    for _ in 0..n {
        let e = SymTensor2::new(
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
        );
        let resp = evaluate(&params, &e);
        let sp = e.spectral();
        let code = resp.state.code();
        let expect = if sp.e2 > 0.0 {
            0
        } else if sp.e1 > 0.0 {
            1
        } else {
            2
        };
        ok &= code == expect;
        let want = if code == 1 { -sp.e2 } else { 0.0 };
        worst = worst.max((resp.intensity - want).abs());
    }
    CheckResult::new(
        "wrinkle-state classification",
        ok && worst <= 1e-15,
        format!("{n} strains, intensity dev {worst:.2e}"),
    )
}

/// Full suite across representative material parameters.
pub fn all_checks() -> Vec<CheckResult> {
    let nu03 = ElasticParams::new(3.0e6, 0.3).expect("valid");
    let nu00 = ElasticParams::new(3.0e6, 0.0).expect("valid");
    let nu045 = ElasticParams::new(1.0, 0.45).expect("valid");
    vec![
        check_split_derivatives(&nu03, 1000, 101),
        check_split_derivatives(&nu00, 1000, 103),
        check_split_derivatives(&nu045, 1000, 107),
        check_recomposition(&nu03, 1000, 101),
        check_recomposition(&nu00, 1000, 103),
        check_analytic_continuity(),
        check_state_classification(1000, 109),
    ]
}
