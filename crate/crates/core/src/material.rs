//! Plane-stress Saint Venant-Kirchhoff material with a spectral
//! tension/compression split, used to model membrane wrinkling without
//! out-of-plane buckling.
//!
//! The Green-Lagrange strain is decomposed spectrally and the stored energy
//! separates into a tensile part psi+ and a compressive part psi-:
//!
//!   psi+-(E) = lam_ps/2 <tr E>+-^2 + mu (<e1>+-^2 + <e2>+-^2)
//!
//! with lam_ps = 2 lam mu / (lam + 2 mu) the plane-stress reduced Lame
//! constant and <.>+- the Macaulay brackets. Differentiation gives the
//! stress and tangent split; the compressive branch is scaled by a residual
//! stiffness factor eta (eta = 0 removes compressive stress entirely,
//! eta = 1 recovers the standard model). Energy, stress, and tangent are
//! consistent derivatives of one another, which keeps assembled tangents
//! symmetric and quadratically convergent.
//!
//! All strain/stress components are understood in a local orthonormal frame.

use crate::error::CoreError;
use crate::tensor::{heaviside, macaulay, split_tensor, Spectral2, SymTensor2, Tensor4};

/// Relative threshold below which eigenvalues count as coincident and the
/// tangent switches to its analytic limit.
pub const DEFAULT_COINCIDENCE_TOL: f64 = 1e-9;

/// Isotropic elastic constants for the plane-stress membrane.
#[derive(Debug, Clone, Copy)]
pub struct ElasticParams {
    pub youngs: f64,
    pub poisson: f64,
    /// 3D Lame constant lambda = E nu / ((1 + nu)(1 - 2 nu)).
    pub lambda: f64,
    /// Shear modulus mu = E / (2 (1 + nu)).
    pub mu: f64,
    /// Plane-stress reduced constant lambda - lambda^2/(lambda + 2 mu).
    pub lambda_ps: f64,
    /// Residual compressive stiffness factor in [0, 1].
    pub eta: f64,
    /// Relative eigenvalue-coincidence threshold for the tangent.
    pub coincidence_tol: f64,
}

impl ElasticParams {
    pub fn new(youngs: f64, poisson: f64) -> Result<Self, CoreError> {
        if !(youngs > 0.0) {
            return Err(CoreError::InvalidMaterial(format!(
                "Young's modulus must be positive, got {youngs}"
            )));
        }
        if !(poisson > -1.0 && poisson < 0.5) {
            return Err(CoreError::InvalidMaterial(format!(
                "Poisson's ratio must lie in (-1, 0.5), got {poisson}"
            )));
        }
        let lambda = youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
        let mu = youngs / (2.0 * (1.0 + poisson));
        let lambda_ps = lambda - lambda * lambda / (lambda + 2.0 * mu);
        Ok(Self {
            youngs,
            poisson,
            lambda,
            mu,
            lambda_ps,
            eta: 0.0,
            coincidence_tol: DEFAULT_COINCIDENCE_TOL,
        })
    }

    pub fn with_eta(mut self, eta: f64) -> Result<Self, CoreError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(CoreError::InvalidMaterial(format!(
                "residual stiffness factor must lie in [0, 1], got {eta}"
            )));
        }
        self.eta = eta;
        Ok(self)
    }
}

/// Pointwise membrane state from the principal strain signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrinkleState {
    Taut,
    Wrinkled,
    Slack,
}

impl WrinkleState {
    /// Stable numeric code for output files: taut 0, wrinkled 1, slack 2.
    pub fn code(&self) -> u8 {
        match self {
            WrinkleState::Taut => 0,
            WrinkleState::Wrinkled => 1,
            WrinkleState::Slack => 2,
        }
    }
}

/// State classification: taut when both principal strains are tensile,
/// slack when both are compressive, wrinkled in between (e1 > 0 >= e2).
pub fn classify(sp: &Spectral2) -> WrinkleState {
    if sp.e2 > 0.0 {
        WrinkleState::Taut
    } else if sp.e1 > 0.0 {
        WrinkleState::Wrinkled
    } else {
        WrinkleState::Slack
    }
}

/// Magnitude of the released compressive principal strain in the wrinkled
/// state; zero for taut and slack points. Wrinkles run along n1.
pub fn wrinkle_intensity(sp: &Spectral2) -> f64 {
    match classify(sp) {
        WrinkleState::Wrinkled => sp.e2.abs(),
        _ => 0.0,
    }
}

/// Tensile/compressive parts of the stored energy density.
pub fn energy_split(params: &ElasticParams, sp: &Spectral2) -> (f64, f64) {
    let (trp, trn) = macaulay(sp.e1 + sp.e2);
    let (e1p, e1n) = macaulay(sp.e1);
    let (e2p, e2n) = macaulay(sp.e2);
    let plus = 0.5 * params.lambda_ps * trp * trp + params.mu * (e1p * e1p + e2p * e2p);
    let minus = 0.5 * params.lambda_ps * trn * trn + params.mu * (e1n * e1n + e2n * e2n);
    (plus, minus)
}

/// Tensile/compressive second Piola-Kirchhoff stress parts:
/// S+- = lam_ps <tr E>+- I + 2 mu E+-.
pub fn stress_split(params: &ElasticParams, sp: &Spectral2) -> (SymTensor2, SymTensor2) {
    let (trp, trn) = macaulay(sp.e1 + sp.e2);
    let (ep, en) = split_tensor(sp);
    let plus = SymTensor2::identity().scale(params.lambda_ps * trp).add(&ep.scale(2.0 * params.mu));
    let minus = SymTensor2::identity().scale(params.lambda_ps * trn).add(&en.scale(2.0 * params.mu));
    (plus, minus)
}

/// Tensile/compressive material tangent parts. For distinct eigenvalues:
///
///   C+- = lam_ps H(+-tr E) J
///       + 2 mu [ sum_a H(+-e_a) Q_a
///              + (<e1>+- - <e2>+-) / (2 (e1 - e2)) (G_12 + G_21) ]
///
/// When |e1 - e2| <= coincidence_tol * max(1, |e1|, |e2|) the eigenprojection
/// derivative is replaced by its analytic limit, which collapses the bracket
/// to H(+-e) I_sym with e the common eigenvalue.
pub fn tangent_split(params: &ElasticParams, sp: &Spectral2) -> (Tensor4, Tensor4) {
    let tr = sp.e1 + sp.e2;
    let h_tr_p = heaviside(tr);
    let h_tr_n = heaviside(-tr);
    let j = Tensor4::trace_op();

    let scale = 1.0_f64.max(sp.e1.abs()).max(sp.e2.abs());
    if (sp.e1 - sp.e2).abs() <= params.coincidence_tol * scale {
        let e = 0.5 * (sp.e1 + sp.e2);
        let isym = Tensor4::sym_identity();
        let plus = j
            .scale(params.lambda_ps * h_tr_p)
            .add(&isym.scale(2.0 * params.mu * heaviside(e)));
        let minus = j
            .scale(params.lambda_ps * h_tr_n)
            .add(&isym.scale(2.0 * params.mu * heaviside(-e)));
        return (plus, minus);
    }

    let m1 = sp.basis1();
    let m2 = sp.basis2();
    let q1 = Tensor4::dyadic_projector(&m1);
    let q2 = Tensor4::dyadic_projector(&m2);
    let g_sym = Tensor4::sym_kronecker(&m1, &m2).add(&Tensor4::sym_kronecker(&m2, &m1));

    let (e1p, e1n) = macaulay(sp.e1);
    let (e2p, e2n) = macaulay(sp.e2);
    let denom = 2.0 * (sp.e1 - sp.e2);

    let plus = j.scale(params.lambda_ps * h_tr_p).add(
        &q1.scale(heaviside(sp.e1))
            .add(&q2.scale(heaviside(sp.e2)))
            .add(&g_sym.scale((e1p - e2p) / denom))
            .scale(2.0 * params.mu),
    );
    let minus = j.scale(params.lambda_ps * h_tr_n).add(
        &q1.scale(heaviside(-sp.e1))
            .add(&q2.scale(heaviside(-sp.e2)))
            .add(&g_sym.scale((e1n - e2n) / denom))
            .scale(2.0 * params.mu),
    );
    (plus, minus)
}

/// Full material response at one quadrature point.
#[derive(Debug, Clone)]
pub struct MaterialResponse {
    pub energy: f64,
    pub energy_pos: f64,
    pub energy_neg: f64,
    pub stress: SymTensor2,
    pub tangent: Tensor4,
    pub state: WrinkleState,
    pub intensity: f64,
    /// Major principal direction (wrinkle direction when wrinkled).
    pub wrinkle_dir: [f64; 2],
    pub spectral: Spectral2,
}

/// Degraded response psi+ + eta psi- (likewise for stress and tangent).
pub fn evaluate(params: &ElasticParams, strain: &SymTensor2) -> MaterialResponse {
    let sp = strain.spectral();
    let (psi_p, psi_n) = energy_split(params, &sp);
    let (s_p, s_n) = stress_split(params, &sp);
    let (c_p, c_n) = tangent_split(params, &sp);
    MaterialResponse {
        energy: psi_p + params.eta * psi_n,
        energy_pos: psi_p,
        energy_neg: psi_n,
        stress: s_p.add(&s_n.scale(params.eta)),
        tangent: c_p.add(&c_n.scale(params.eta)),
        state: classify(&sp),
        intensity: wrinkle_intensity(&sp),
        wrinkle_dir: sp.n1,
        spectral: sp,
    }
}

/// Undegraded plane-stress Saint Venant-Kirchhoff response. The state and
/// intensity fields are informational only (intensity is always zero since
/// no compressive strain is released).
pub fn standard_svk(params: &ElasticParams, strain: &SymTensor2) -> MaterialResponse {
    let sp = strain.spectral();
    let tr = strain.trace();
    let energy = 0.5 * params.lambda_ps * tr * tr + params.mu * strain.ddot(strain);
    let stress = SymTensor2::identity()
        .scale(params.lambda_ps * tr)
        .add(&strain.scale(2.0 * params.mu));
    let tangent = Tensor4::trace_op()
        .scale(params.lambda_ps)
        .add(&Tensor4::sym_identity().scale(2.0 * params.mu));
    MaterialResponse {
        energy,
        energy_pos: energy,
        energy_neg: 0.0,
        stress,
        tangent,
        state: classify(&sp),
        intensity: 0.0,
        wrinkle_dir: sp.n1,
        spectral: sp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol})");
    }

    fn nu_zero_unit_mu() -> ElasticParams {
        // E = 2, nu = 0 gives mu = 1, lambda = lambda_ps = 0.
        ElasticParams::new(2.0, 0.0).unwrap()
    }

    #[test]
    fn derived_constants() {
        let p = ElasticParams::new(588e6, 0.4).unwrap();
        assert_close(p.mu, 210e6, 1.0);
        assert_close(p.lambda, 840e6, 1.0);
        // Plane-stress identity: lambda_ps = E nu / (1 - nu^2).
        assert_close(p.lambda_ps, 588e6 * 0.4 / (1.0 - 0.16), 1.0);
        assert!(ElasticParams::new(-1.0, 0.3).is_err());
        assert!(ElasticParams::new(1.0, 0.5).is_err());
        assert!(ElasticParams::new(1.0, 0.3).unwrap().with_eta(-0.1).is_err());
    }

    #[test]
    fn energy_split_wrinkled_example() {
        let p = nu_zero_unit_mu();
        let sp = SymTensor2::new(0.02, -0.01, 0.0).spectral();
        let (plus, minus) = energy_split(&p, &sp);
        assert_close(plus, 4e-4, 1e-18);
        assert_close(minus, 1e-4, 1e-18);
    }

    #[test]
    fn stress_split_wrinkled_example() {
        let p = nu_zero_unit_mu();
        let sp = SymTensor2::new(0.02, -0.01, 0.0).spectral();
        let (sp_, sn_) = stress_split(&p, &sp);
        assert!(sp_.sub(&SymTensor2::new(0.04, 0.0, 0.0)).max_abs() <= 1e-17);
        assert!(sn_.sub(&SymTensor2::new(0.0, -0.02, 0.0)).max_abs() <= 1e-17);
    }

    #[test]
    fn taut_tangent_recovers_standard_model() {
        let p = ElasticParams::new(3.0, 0.25).unwrap();
        let sp = SymTensor2::new(0.03, 0.01, 0.002).spectral();
        let (cp, cn) = tangent_split(&p, &sp);
        let svk = Tensor4::trace_op()
            .scale(p.lambda_ps)
            .add(&Tensor4::sym_identity().scale(2.0 * p.mu));
        assert!(cp.add(&svk.scale(-1.0)).max_abs() <= 1e-12 * svk.max_abs());
        assert!(cn.max_abs() <= 1e-15);
    }

    #[test]
    fn wrinkled_tangent_components() {
        // E = diag(0.02, -0.01), nu = 0, mu = 1:
        // C+ = 2 (Q1 + <e1>+ / (2 (e1 - e2)) (G12 + G21)).
        let p = nu_zero_unit_mu();
        let sp = SymTensor2::new(0.02, -0.01, 0.0).spectral();
        let (cp, _) = tangent_split(&p, &sp);
        let m1 = sp.basis1();
        let m2 = sp.basis2();
        let expect = Tensor4::dyadic_projector(&m1)
            .add(
                &Tensor4::sym_kronecker(&m1, &m2)
                    .add(&Tensor4::sym_kronecker(&m2, &m1))
                    .scale(0.02 / (2.0 * 0.03)),
            )
            .scale(2.0);
        assert!(cp.add(&expect.scale(-1.0)).max_abs() <= 1e-15);
    }

    #[test]
    fn split_completeness_random() {
        // psi+ + psi- = psi, S+ + S- = S, C+ + C- = C away from the
        // Heaviside discontinuities.
        let mut state: u64 = 42;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 0.2 - 0.1
        };
        let params = [
            ElasticParams::new(2.0, 0.0).unwrap(),
            ElasticParams::new(10.0, 0.3).unwrap(),
            ElasticParams::new(5.0, 0.45).unwrap(),
        ];
        let mut tested = 0;
        while tested < 3000 {
            let e = SymTensor2::new(next(), next(), next());
            let sp = e.spectral();
            if (sp.e1 - sp.e2).abs() < 1e-6 || (sp.e1 + sp.e2).abs() < 1e-6 {
                continue;
            }
            let p = &params[tested % params.len()];
            tested += 1;

            let svk = standard_svk(p, &e);
            let (psi_p, psi_n) = energy_split(p, &sp);
            assert_close(psi_p + psi_n, svk.energy, 1e-10 * svk.energy.abs().max(1e-12));
            let (s_p, s_n) = stress_split(p, &sp);
            let ds = s_p.add(&s_n).sub(&svk.stress).max_abs();
            assert!(ds <= 1e-10 * svk.stress.max_abs().max(1e-12));
            let (c_p, c_n) = tangent_split(p, &sp);
            let dc = c_p.add(&c_n).add(&svk.tangent.scale(-1.0)).max_abs();
            assert!(dc <= 1e-10 * svk.tangent.max_abs());
        }
    }

    #[test]
    fn eta_one_equals_standard_model() {
        let p = ElasticParams::new(7.0, 0.3).unwrap().with_eta(1.0).unwrap();
        for e in [
            SymTensor2::new(0.05, -0.02, 0.01),
            SymTensor2::new(-0.03, -0.01, 0.004),
            SymTensor2::new(0.02, 0.04, -0.015),
        ] {
            let full = evaluate(&p, &e);
            let svk = standard_svk(&p, &e);
            assert_close(full.energy, svk.energy, 1e-12 * svk.energy.abs().max(1e-15));
            assert!(full.stress.sub(&svk.stress).max_abs() <= 1e-12 * svk.stress.max_abs());
            assert!(
                full.tangent.add(&svk.tangent.scale(-1.0)).max_abs()
                    <= 1e-12 * svk.tangent.max_abs()
            );
        }
    }

    #[test]
    fn evaluate_degrades_compressive_branch() {
        let p = nu_zero_unit_mu().with_eta(1e-4).unwrap();
        let r = evaluate(&p, &SymTensor2::new(0.02, -0.01, 0.0));
        assert!(r.stress.sub(&SymTensor2::new(0.04, -2e-6, 0.0)).max_abs() <= 1e-18);
        assert_eq!(r.state, WrinkleState::Wrinkled);
        assert_close(r.intensity, 0.01, 1e-17);
        assert_eq!(r.wrinkle_dir, [1.0, 0.0]);
    }

    #[test]
    fn stress_is_linear_in_eta() {
        let base = ElasticParams::new(4.0, 0.2).unwrap();
        let e = SymTensor2::new(0.03, -0.02, 0.005);
        let sp = e.spectral();
        let (s_p, s_n) = stress_split(&base, &sp);
        for eta in [0.0, 1e-4, 1e-2, 0.5, 1.0] {
            let p = base.with_eta(eta).unwrap();
            let r = evaluate(&p, &e);
            let expect = s_p.add(&s_n.scale(eta));
            assert!(r.stress.sub(&expect).max_abs() <= 1e-15);
        }
    }

    #[test]
    fn classification_and_intensity() {
        let taut = SymTensor2::new(0.02, 0.01, 0.0).spectral();
        assert_eq!(classify(&taut), WrinkleState::Taut);
        assert_eq!(wrinkle_intensity(&taut), 0.0);

        let wrinkled = SymTensor2::new(0.02, -0.01, 0.0).spectral();
        assert_eq!(classify(&wrinkled), WrinkleState::Wrinkled);
        assert_close(wrinkle_intensity(&wrinkled), 0.01, 1e-15);

        let slack = SymTensor2::new(-0.005, -0.02, 0.0).spectral();
        assert_eq!(classify(&slack), WrinkleState::Slack);
        assert_eq!(wrinkle_intensity(&slack), 0.0);

        // Uniaxial boundary e2 = 0 counts as wrinkled with zero intensity.
        let boundary = SymTensor2::new(0.01, 0.0, 0.0).spectral();
        assert_eq!(classify(&boundary), WrinkleState::Wrinkled);
        assert_eq!(wrinkle_intensity(&boundary), 0.0);
    }

    #[test]
    fn objectivity_under_rotation() {
        // Rotating the strain rotates stress and leaves energy and the
        // spectrum invariant.
        let p = ElasticParams::new(6.0, 0.3).unwrap().with_eta(1e-3).unwrap();
        let e = SymTensor2::new(0.04, -0.015, 0.01);
        let r0 = evaluate(&p, &e);
        for angle in [0.3_f64, 1.0, 2.2] {
            let (s, c) = angle.sin_cos();
            // E' = R E R^T
            let exx = c * c * e.xx + s * s * e.yy - 2.0 * s * c * e.xy;
            let eyy = s * s * e.xx + c * c * e.yy + 2.0 * s * c * e.xy;
            let exy = s * c * (e.xx - e.yy) + (c * c - s * s) * e.xy;
            let r = evaluate(&p, &SymTensor2::new(exx, eyy, exy));
            assert_close(r.energy, r0.energy, 1e-12 * r0.energy.abs().max(1e-15));
            assert_close(r.spectral.e1, r0.spectral.e1, 1e-12);
            assert_close(r.spectral.e2, r0.spectral.e2, 1e-12);
            // Rotate stress back and compare.
            let sxx = c * c * r.stress.xx + s * s * r.stress.yy + 2.0 * s * c * r.stress.xy;
            let syy = s * s * r.stress.xx + c * c * r.stress.yy - 2.0 * s * c * r.stress.xy;
            let sxy = -s * c * (r.stress.xx - r.stress.yy) + (c * c - s * s) * r.stress.xy;
            assert!(
                SymTensor2::new(sxx, syy, sxy).sub(&r0.stress).max_abs()
                    <= 1e-12 * r0.stress.max_abs().max(1e-12)
            );
        }
    }

    #[test]
    fn coincident_tangent_is_frame_independent() {
        let p = ElasticParams::new(5.0, 0.3).unwrap();
        // Equal tensile eigenvalues in two different orientations.
        let a = SymTensor2::new(0.02, 0.02, 0.0);
        let (cp_a, cn_a) = tangent_split(&p, &a.spectral());
        let expect = Tensor4::trace_op()
            .scale(p.lambda_ps)
            .add(&Tensor4::sym_identity().scale(2.0 * p.mu));
        assert!(cp_a.add(&expect.scale(-1.0)).max_abs() <= 1e-14 * expect.max_abs());
        assert!(cn_a.max_abs() == 0.0);

        // Equal compressive eigenvalues: only the negative branch is active.
        let b = SymTensor2::new(-0.01, -0.01, 0.0);
        let (cp_b, cn_b) = tangent_split(&p, &b.spectral());
        assert!(cp_b.max_abs() == 0.0);
        assert!(cn_b.add(&expect.scale(-1.0)).max_abs() <= 1e-14 * expect.max_abs());
    }

    #[test]
    fn zero_compression_complementarity_at_nu_zero() {
        // With eta = 0 and nu = 0 the retained stress never works against
        // the compressive strain part.
        let p = nu_zero_unit_mu();
        let mut state: u64 = 7;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 0.2 - 0.1
        };
        for _ in 0..1000 {
            let e = SymTensor2::new(next(), next(), next());
            let r = evaluate(&p, &e);
            let (_, e_minus) = split_tensor(&r.spectral);
            let work = r.stress.ddot(&e_minus);
            assert!(work.abs() <= 1e-15, "S : E- = {work}");
        }
    }
}
