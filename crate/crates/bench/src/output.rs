//! File outputs for a run: probe table, per-quadrature-point fields, a
//! legacy-VTK view of the deformed control net, the Newton trace, and an
//! echo of the resolved setup. All files are byte-deterministic for a fixed
//! configuration: fixed row order, `{:.12e}` floats, LF line endings.

use crate::analytic;
use crate::post::cauchy_stress;
use crate::report::RunReport;
use anyhow::{Context, Result};
use membrane_core::{MaterialKind, Patch};
use nalgebra::Vector3;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

pub fn write_outputs(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut written = vec![
        write_file(dir, "probes.csv", &probes_csv(report))?,
        write_file(dir, "fields.csv", &fields_csv(report))?,
        write_file(dir, "solution.vtk", &solution_vtk(report)?)?,
        write_file(dir, "trace.csv", &trace_csv(report))?,
        write_file(dir, "resolved.toml", &resolved_toml(report)?)?,
    ];
    if report.setup.benchmark == "pure-bending" {
        written.push(write_file(dir, "profile.csv", &profile_csv(report)?)?);
    }
    Ok(written)
}

fn probes_csv(report: &RunReport) -> String {
    let mut s = String::from("name,x,y,z,value,unit\n");
    for p in &report.probes {
        let _ = writeln!(
            s,
            "{},{:.12e},{:.12e},{:.12e},{:.12e},{}",
            p.name, p.position.x, p.position.y, p.position.z, p.value, p.unit
        );
    }
    s
}

fn fields_csv(report: &RunReport) -> String {
    let mut s = String::from(
        "element,qp,x,y,z,weight_area,E_xx,E_yy,E_xy,e1,e2,n1_x,n1_y,state,intensity,\
         S_xx,S_yy,S_xy,sigma_xx,sigma_yy,sigma_xy,sigma1,sigma2,dir_x,dir_y,dir_z,standard_svk\n",
    );
    for snap in &report.snapshots {
        let e = &snap.strain_local;
        let sp = &snap.response.spectral;
        let pk2 = &snap.response.stress;
        let sig = cauchy_stress(snap);
        let pr = sig.spectral();
        let d = &snap.wrinkle_dir_global;
        let standard = matches!(snap.kind, MaterialKind::StandardSvk) as u8;
        let _ = writeln!(
            s,
            "{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},\
             {:.12e},{:.12e},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},\
             {:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}",
            snap.element,
            snap.qp_index,
            snap.position.x,
            snap.position.y,
            snap.position.z,
            snap.weight_area,
            e.xx,
            e.yy,
            e.xy,
            sp.e1,
            sp.e2,
            sp.n1[0],
            sp.n1[1],
            snap.response.state.code(),
            snap.response.intensity,
            pk2.xx,
            pk2.yy,
            pk2.xy,
            sig.xx,
            sig.yy,
            sig.xy,
            pr.e1,
            pr.e2,
            d.x,
            d.y,
            d.z,
            standard,
        );
    }
    s
}

fn displacement_field(u: &[f64]) -> Vec<Vector3<f64>> {
    u.chunks_exact(3).map(|c| Vector3::new(c[0], c[1], c[2])).collect()
}

/// Legacy ASCII VTK unstructured grid: one quad per element (corners at the
/// knot-span boundaries), interpolated point displacements, and cell-averaged
/// stress and wrinkling fields.
fn solution_vtk(report: &RunReport) -> Result<String> {
    let patch: &Patch = &report.patch;
    let (neu, nev) = patch.n_elements();
    let mut us: Vec<f64> = (0..neu).map(|e| patch.ku.span_bounds(e).0).collect();
    us.push(patch.ku.span_bounds(neu - 1).1);
    let mut vs: Vec<f64> = (0..nev).map(|e| patch.kv.span_bounds(e).0).collect();
    vs.push(patch.kv.span_bounds(nev - 1).1);
    let disp = displacement_field(&report.u);

    let n_points = us.len() * vs.len();
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\n");
    let _ = writeln!(s, "membrane solution: {}", report.setup.benchmark);
    s.push_str("ASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {n_points} double");
    for &v in &vs {
        for &u in &us {
            let p = patch.interpolate(&patch.control_points, u, v);
            let _ = writeln!(s, "{:.12e} {:.12e} {:.12e}", p.x, p.y, p.z);
        }
    }
    let n_cells = neu * nev;
    let _ = writeln!(s, "CELLS {n_cells} {}", 5 * n_cells);
    for ev in 0..nev {
        for eu in 0..neu {
            let a = ev * us.len() + eu;
            let b = a + 1;
            let c = a + us.len() + 1;
            let d = a + us.len();
            let _ = writeln!(s, "4 {a} {b} {c} {d}");
        }
    }
    let _ = writeln!(s, "CELL_TYPES {n_cells}");
    for _ in 0..n_cells {
        s.push_str("9\n");
    }

    let _ = writeln!(s, "POINT_DATA {n_points}");
    s.push_str("VECTORS displacement double\n");
    for &v in &vs {
        for &u in &us {
            let d = patch.interpolate(&disp, u, v);
            let _ = writeln!(s, "{:.12e} {:.12e} {:.12e}", d.x, d.y, d.z);
        }
    }

    // Area-weighted element averages of the quadrature fields.
    let mut sums = vec![[0.0_f64; 5]; n_cells];
    for snap in &report.snapshots {
        let sig = cauchy_stress(snap);
        let pr = sig.spectral();
        let w = snap.weight_area;
        let acc = &mut sums[snap.element];
        acc[0] += w;
        acc[1] += w * pr.e1;
        acc[2] += w * pr.e2;
        acc[3] += w * snap.response.state.code() as f64;
        acc[4] += w * snap.response.intensity;
    }
    let _ = writeln!(s, "CELL_DATA {n_cells}");
    for (name, idx) in [("sigma1", 1), ("sigma2", 2), ("state", 3), ("intensity", 4)] {
        let _ = writeln!(s, "SCALARS {name} double 1");
        s.push_str("LOOKUP_TABLE default\n");
        for acc in &sums {
            let _ = writeln!(s, "{:.12e}", acc[idx] / acc[0].max(f64::MIN_POSITIVE));
        }
    }
    Ok(s)
}

fn trace_csv(report: &RunReport) -> String {
    let mut s = String::from("step,iteration,residual\n");
    for step in &report.trace.steps {
        for (i, r) in step.residuals.iter().enumerate() {
            let _ = writeln!(s, "{},{},{:.12e}", step.step + 1, i, r);
        }
    }
    s
}

fn resolved_toml(report: &RunReport) -> Result<String> {
    Ok(toml::to_string_pretty(&report.setup).context("cannot serialize setup")?)
}

/// Axial stress over the height in the quadrature column next to the
/// symmetry edge, against the closed-form profile.
fn profile_csv(report: &RunReport) -> Result<String> {
    let height = report.setup.params["height"];
    let sigma0 = report.setup.params["sigma0"];
    let alpha = report.setup.params["load_ratio"];
    let band = analytic::band_height(alpha / 2.0)?;
    let rows = crate::post::profile_column(&report.snapshots)?;
    let mut s = String::from("y,y_over_h,sigma_x,sigma_x_over_sigma0,analytic,state\n");
    for r in rows {
        let y_h = r.y / height;
        let _ = writeln!(
            s,
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}",
            r.y,
            y_h,
            r.sigma_x,
            r.sigma_x / sigma0,
            analytic::sigma_profile(y_h, band),
            r.state.code(),
        );
    }
    Ok(s)
}
