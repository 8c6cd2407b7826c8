//! Solving a built case into a report: converged solution, quadrature-point
//! fields, probe values, and the iteration trace.

use crate::benchmarks::{BuiltCase, CaseSetup};
use crate::config::ExpectCfg;
use crate::post::{evaluate_probes, probe_value, ProbeValue};
use anyhow::{bail, Context, Result};
use membrane_core::{discretize, snapshot_fields, solve, Patch, QpSnapshot, SolveTrace};

pub struct RunReport {
    pub setup: CaseSetup,
    pub patch: Patch,
    pub u: Vec<f64>,
    pub trace: SolveTrace,
    pub snapshots: Vec<QpSnapshot>,
    pub probes: Vec<ProbeValue>,
}

pub fn run_case(case: &BuiltCase) -> Result<RunReport> {
    let outcome = solve(&case.model, &case.solver, &case.u0)
        .with_context(|| format!("benchmark {} failed to converge", case.setup.benchmark))?;
    let elements = discretize(&case.model.patch)?;
    let snapshots = snapshot_fields(&case.model, &elements, &outcome.u)?;
    let probes = evaluate_probes(&case.model.patch, &snapshots, &outcome.u, &case.probes)?;
    Ok(RunReport {
        setup: case.setup.clone(),
        patch: case.model.patch.clone(),
        u: outcome.u,
        trace: outcome.trace,
        snapshots,
        probes,
    })
}

/// One line per probe plus the iteration budget actually spent.
pub fn summarize(report: &RunReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "benchmark {}  mesh {}x{}  degree {}  eta {:e}\n",
        report.setup.benchmark,
        report.setup.mesh[0],
        report.setup.mesh[1],
        report.setup.degree,
        report.setup.eta,
    ));
    for step in &report.trace.steps {
        s.push_str(&format!(
            "  step {:>3}: {:>3} iterations, residual {:.3e}{}\n",
            step.step + 1,
            step.iterations,
            step.residuals.last().copied().unwrap_or(f64::NAN),
            if step.shifts > 0 { format!(", {} shifted solves", step.shifts) } else { String::new() },
        ));
    }
    for p in &report.probes {
        s.push_str(&format!("  probe {:<10} = {:+.6e} {}", p.name, p.value, p.unit));
        if p.distance > 0.0 {
            s.push_str(&format!("  (at distance {:.3e})", p.distance));
        }
        s.push('\n');
    }
    s
}

/// Evaluate configured expectations against the probe values. Returns one
/// line per check; errors if any expectation fails.
pub fn check_expectations(report: &RunReport, expects: &[ExpectCfg]) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    let mut failures = 0;
    for e in expects {
        let got = probe_value(&report.probes, &e.probe)?;
        let want = e.value.si()?;
        let tol = match (e.rel_tol, e.abs_tol) {
            (Some(r), None) => r * want.abs(),
            (None, Some(a)) => a,
            (None, None) => 0.05 * want.abs(),
            (Some(_), Some(_)) => bail!("expect {:?}: give rel_tol or abs_tol, not both", e.probe),
        };
        let ok = (got - want).abs() <= tol;
        if !ok {
            failures += 1;
        }
        lines.push(format!(
            "  expect {:<10} {}: got {:+.6e}, want {:+.6e} +- {:.2e}",
            e.probe,
            if ok { "ok" } else { "FAILED" },
            got,
            want,
            tol,
        ));
    }
    if failures > 0 {
        for l in &lines {
            eprintln!("{l}");
        }
        bail!("{failures} expectation(s) failed");
    }
    Ok(lines)
}
