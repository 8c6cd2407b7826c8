//! Incremental-load Newton solver on the reduced system.
//!
//! Each load step equilibrates R(u) = F_int(u) - F_ext(u, step) with a full
//! Newton iteration. The tangent can be singular or semidefinite while the
//! membrane is slack or wrinkled, so a failed factorization is retried with
//! escalating diagonal shifts; the shifted update is still a descent-like
//! correction and the converged solution is unaffected because convergence
//! is judged on the residual alone.

use crate::assembly::{external_forces, internal_forces_and_tangent};
use crate::banded::{BandedLdl, BandedSym};
use crate::error::CoreError;
use crate::model::Model;
use crate::patch::discretize;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub n_steps: usize,
    pub max_iterations: usize,
    /// Residual norm over applied-force norm.
    pub tol_rel: f64,
    /// Absolute residual fallback when the applied force is essentially zero.
    pub tol_abs: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { n_steps: 1, max_iterations: 100, tol_rel: 1e-6, tol_abs: 1e-12 }
    }
}

#[derive(Debug, Clone)]
pub struct StepTrace {
    pub step: usize,
    /// Convergence measure before each linear solve, plus the accepted one.
    pub residuals: Vec<f64>,
    /// Number of linear solves taken.
    pub iterations: usize,
    /// Diagonal-shift retries needed across the step.
    pub shifts: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SolveTrace {
    pub steps: Vec<StepTrace>,
}

impl SolveTrace {
    pub fn total_iterations(&self) -> usize {
        self.steps.iter().map(|s| s.iterations).sum()
    }
}

#[derive(Debug)]
pub enum SolveError {
    NonConvergence { step: usize, residual: f64, trace: SolveTrace },
    Singular { step: usize, iteration: usize, pivot_index: usize, trace: SolveTrace },
    Core(CoreError),
}

impl std::fmt::Display for SolveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveError::NonConvergence { step, residual, .. } => {
                write!(
                    f,
                    "no convergence in load step {}, last residual measure {residual:.3e}",
                    step + 1
                )
            }
            SolveError::Singular { step, iteration, pivot_index, .. } => write!(
                f,
                "tangent stayed singular after shifts at step {} iteration {iteration} (pivot {pivot_index})",
                step + 1
            ),
            SolveError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<CoreError> for SolveError {
    fn from(e: CoreError) -> Self {
        SolveError::Core(e)
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub u: Vec<f64>,
    pub trace: SolveTrace,
}

const PIVOT_TOL: f64 = 1e-14;
const SHIFT_START: f64 = 1e-12;
const SHIFT_GROWTH: f64 = 100.0;
const SHIFT_ATTEMPTS: usize = 4;
/// A near-zero tangent (slack or barely stressed membrane) can produce an
/// astronomically long update even when the factorization succeeds; every
/// update is clamped to this fraction of the patch bounding-box diagonal.
/// Displacement increments beyond the structure scale are never meaningful
/// in a static continuation.
const STEP_FRACTION: f64 = 0.1;

fn factorize_with_shifts(k: BandedSym, shifts_used: &mut usize) -> Result<BandedLdl, CoreError> {
    match k.clone().factorize(PIVOT_TOL) {
        Ok(ldl) => return Ok(ldl),
        Err(CoreError::SingularMatrix { .. }) => {}
        Err(e) => return Err(e),
    }
    let scale = k.max_abs_diagonal().max(1.0);
    let mut shift = SHIFT_START * scale;
    let mut last = CoreError::SingularMatrix { index: 0 };
    for _ in 0..SHIFT_ATTEMPTS {
        *shifts_used += 1;
        let mut shifted = k.clone();
        shifted.add_to_diagonal(shift);
        match shifted.factorize(PIVOT_TOL) {
            Ok(ldl) => return Ok(ldl),
            Err(e @ CoreError::SingularMatrix { .. }) => last = e,
            Err(e) => return Err(e),
        }
        shift *= SHIFT_GROWTH;
    }
    Err(last)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solve the model with incremental loading, starting from `u0` (full dof
/// numbering; entries at constrained dofs are overwritten by the prescribed
/// values before the first iteration).
pub fn solve(model: &Model, cfg: &SolverConfig, u0: &[f64]) -> Result<SolveOutcome, SolveError> {
    assert_eq!(u0.len(), model.n_dof());
    let elements = discretize(&model.patch)?;
    let map = model.dof_map();
    let hb = model.reduced_half_bandwidth(&map);
    let mut u = u0.to_vec();
    for c in &model.constraints {
        u[c.dof] = c.value;
    }
    let mut lo = nalgebra::Vector3::repeat(f64::INFINITY);
    let mut hi = nalgebra::Vector3::repeat(f64::NEG_INFINITY);
    for x in &model.patch.control_points {
        lo = lo.inf(x);
        hi = hi.sup(x);
    }
    let step_cap = STEP_FRACTION * (hi - lo).norm().max(1e-12);
    let mut trace = SolveTrace::default();
    for step in 0..cfg.n_steps {
        let mut residuals = Vec::new();
        let mut shifts = 0usize;
        let mut converged = false;
        let mut iterations = 0usize;
        while iterations <= cfg.max_iterations {
            let f_ext = external_forces(model, &elements, &u, step)?;
            let (f_int, k) = internal_forces_and_tangent(model, &elements, &u, &map, hb)?;
            let mut r_red = Vec::with_capacity(map.n_reduced());
            let mut ext_norm_sq = 0.0;
            for &dof in &map.to_full {
                r_red.push(f_int[dof] - f_ext[dof]);
                ext_norm_sq += f_ext[dof] * f_ext[dof];
            }
            let r_norm = norm(&r_red);
            let ext_norm = ext_norm_sq.sqrt();
            let measure = if ext_norm > 1e-12 { r_norm / ext_norm } else { r_norm };
            residuals.push(measure);
            let tol = if ext_norm > 1e-12 { cfg.tol_rel } else { cfg.tol_abs };
            if measure <= tol {
                converged = true;
                break;
            }
            if iterations == cfg.max_iterations {
                break;
            }
            let ldl = match factorize_with_shifts(k, &mut shifts) {
                Ok(ldl) => ldl,
                Err(CoreError::SingularMatrix { index }) => {
                    trace.steps.push(StepTrace { step, residuals, iterations, shifts, converged: false });
                    return Err(SolveError::Singular {
                        step,
                        iteration: iterations,
                        pivot_index: index,
                        trace,
                    });
                }
                Err(e) => return Err(e.into()),
            };
            let mut du = ldl.solve(&r_red);
            let du_norm = norm(&du);
            if du_norm > step_cap {
                let f = step_cap / du_norm;
                du.iter_mut().for_each(|v| *v *= f);
            }
            for (ri, &dof) in map.to_full.iter().enumerate() {
                u[dof] -= du[ri];
            }
            iterations += 1;
        }
        let last = residuals.last().copied().unwrap_or(f64::NAN);
        trace.steps.push(StepTrace { step, residuals, iterations, shifts, converged });
        if !converged {
            return Err(SolveError::NonConvergence { step, residual: last, trace });
        }
    }
    Ok(SolveOutcome { u, trace })
}
