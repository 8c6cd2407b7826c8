//! Command-line driver: solve a configured benchmark, sweep a parameter,
//! run the property suite, or print the closed-form bending reference.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use membrane_bench::{analytic, build, check_expectations, output, run_case, summarize};
use membrane_bench::{Config, Overrides};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "membrane-bench",
    about = "Membrane wrinkling benchmarks: nonlinear solves, probes, and field outputs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Default)]
struct OverrideArgs {
    /// Mesh override, e.g. 16x16
    #[arg(long, value_parser = parse_mesh)]
    mesh: Option<[usize; 2]>,
    /// Basis degree override (1-3)
    #[arg(long)]
    degree: Option<usize>,
    /// Residual compressive stiffness factor override
    #[arg(long)]
    eta: Option<f64>,
    /// Load step count override
    #[arg(long)]
    steps: Option<usize>,
    /// Relative force tolerance override
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory override
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one benchmark configuration and write its outputs
    Run {
        /// Path to a TOML configuration
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Solve a configuration repeatedly across parameter values
    Sweep {
        /// Path to a TOML configuration
        config: PathBuf,
        /// Parameter to vary (supported: eta)
        #[arg(long)]
        param: String,
        /// Comma-separated values, e.g. 1e-8,1e-6,1e-5,1e-4
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Run the constitutive property suite
    Verify,
    /// Print a closed-form reference table
    Reference {
        #[command(subcommand)]
        what: ReferenceCommand,
    },
}

#[derive(Subcommand)]
enum ReferenceCommand {
    /// Band height and stress profile for the strip-bending problem
    PureBending {
        /// Load ratio 2M/(P*H)
        #[arg(long)]
        ratio: f64,
    },
}

fn parse_mesh(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected NxM, e.g. 16x16")?;
    let nu: usize = a.trim().parse().map_err(|_| format!("bad element count {a:?}"))?;
    let nv: usize = b.trim().parse().map_err(|_| format!("bad element count {b:?}"))?;
    if nu == 0 || nv == 0 {
        return Err("element counts must be positive".into());
    }
    Ok([nu, nv])
}

impl OverrideArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            mesh: self.mesh,
            degree: self.degree,
            eta: self.eta,
            steps: self.steps,
            tol: self.tol,
            out: self.out.clone(),
        }
    }
}

fn cmd_run(config: &PathBuf, overrides: &OverrideArgs) -> Result<()> {
    let mut cfg = Config::load(config)?;
    cfg.apply(&overrides.to_overrides());
    let case = build(&cfg)?;
    let report = run_case(&case)?;
    print!("{}", summarize(&report));

    let dir = cfg
        .output
        .dir
        .clone()
        .unwrap_or_else(|| format!("out/{}", report.setup.benchmark));
    let written = output::write_outputs(&report, std::path::Path::new(&dir))?;
    for path in written {
        println!("  wrote {}", path.display());
    }

    if !cfg.expect.is_empty() {
        let lines = check_expectations(&report, &cfg.expect)?;
        for l in lines {
            println!("{l}");
        }
    }
    Ok(())
}

fn cmd_sweep(config: &PathBuf, param: &str, values: &[f64], overrides: &OverrideArgs) -> Result<()> {
    if param != "eta" {
        bail!("unsupported sweep parameter {param:?}; supported: eta");
    }
    if values.is_empty() {
        bail!("no sweep values given");
    }
    let base = Config::load(config)?;
    let base_dir = overrides
        .out
        .clone()
        .or_else(|| base.output.dir.clone())
        .unwrap_or_else(|| format!("out/{}-sweep", base.benchmark));
    let mut rows = Vec::new();
    for &v in values {
        let mut cfg = base.clone();
        cfg.apply(&overrides.to_overrides());
        cfg.material.eta = Some(v);
        cfg.output.dir = Some(format!("{base_dir}/eta-{v:e}"));
        let case = build(&cfg)?;
        let report =
            run_case(&case).with_context(|| format!("sweep point {param}={v:e} failed"))?;
        println!("{param} = {v:e}");
        print!("{}", summarize(&report));
        output::write_outputs(&report, std::path::Path::new(cfg.output.dir.as_ref().unwrap()))?;
        rows.push((v, report));
    }
    println!("sweep summary ({param}):");
    if let Some((_, first)) = rows.first() {
        let names: Vec<String> = first.probes.iter().map(|p| p.name.clone()).collect();
        println!("  {:>12} {}", param, names.iter().map(|n| format!("{n:>14}")).collect::<String>());
        for (v, report) in &rows {
            let vals: String =
                report.probes.iter().map(|p| format!(" {:+.6e}", p.value)).collect();
            println!("  {v:>12.3e}{vals}");
        }
    }
    Ok(())
}

fn cmd_verify() -> Result<()> {
    let mut failed = 0;
    for check in membrane_bench::verify::all_checks() {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("{status}  {} ({})", check.name, check.detail);
        if !check.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        bail!("{failed} property check(s) failed");
    }
    Ok(())
}

fn cmd_reference_pure_bending(ratio: f64) -> Result<()> {
    let m = ratio / 2.0;
    let band = analytic::band_height(m)?;
    println!("load ratio 2M/(P*H) = {ratio}");
    println!("band height h/H = {band:.6}");
    println!("{:>8} {:>14}", "y/H", "sigma_x/sigma_0");
    for (y, s) in analytic::profile_table(m, 21)? {
        println!("{y:>8.2} {s:>14.6}");
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, overrides } => cmd_run(config, overrides),
        Command::Sweep { config, param, values, overrides } => {
            cmd_sweep(config, param, values, overrides)
        }
        Command::Verify => cmd_verify(),
        Command::Reference { what } => match what {
            ReferenceCommand::PureBending { ratio } => cmd_reference_pure_bending(*ratio),
        },
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
