//! Benchmark configuration files: a small TOML schema with optional unit
//! suffixes on physical quantities. Everything except `schema` and
//! `benchmark` is optional; unset keys fall back to the benchmark defaults.

use anyhow::{bail, ensure, Context, Result};
use serde::Deserialize;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkKind {
    PureBending,
    CornerLoad,
    Airbag,
    Blanket,
}

impl BenchmarkKind {
    pub fn id(&self) -> &'static str {
        match self {
            BenchmarkKind::PureBending => "pure-bending",
            BenchmarkKind::CornerLoad => "corner-load",
            BenchmarkKind::Airbag => "airbag",
            BenchmarkKind::Blanket => "blanket",
        }
    }
}

impl FromStr for BenchmarkKind {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pure-bending" => BenchmarkKind::PureBending,
            "corner-load" => BenchmarkKind::CornerLoad,
            "airbag" => BenchmarkKind::Airbag,
            "blanket" => BenchmarkKind::Blanket,
            other => bail!(
                "unknown benchmark {other:?}; expected pure-bending, corner-load, airbag, or blanket"
            ),
        })
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A number with an optional unit suffix: `0.5`, `"0.5 m"`, `"25 um"`,
/// `"3500 MPa"`. Bare numbers are taken as SI base units.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

const UNIT_FACTORS: &[(&str, f64)] = &[
    ("m", 1.0),
    ("cm", 1e-2),
    ("mm", 1e-3),
    ("um", 1e-6),
    ("Pa", 1.0),
    ("kPa", 1e3),
    ("MPa", 1e6),
    ("GPa", 1e9),
    ("N", 1.0),
    ("kN", 1e3),
    ("N/m", 1.0),
    ("kN/m", 1e3),
    ("N/m2", 1.0),
    ("kg/m2", 1.0),
    ("kg/m^2", 1.0),
];

impl Quantity {
    /// Value in SI base units.
    pub fn si(&self) -> Result<f64> {
        match self {
            Quantity::Number(v) => Ok(*v),
            Quantity::Text(s) => {
                let s = s.trim();
                if let Ok(v) = s.parse::<f64>() {
                    return Ok(v);
                }
                let split = s
                    .find(|c: char| c.is_ascii_alphabetic())
                    .with_context(|| format!("cannot parse quantity {s:?}"))?;
                let (num, unit) = s.split_at(split);
                let value: f64 = num
                    .trim()
                    .parse()
                    .with_context(|| format!("bad number in quantity {s:?}"))?;
                let unit = unit.trim();
                let factor = UNIT_FACTORS
                    .iter()
                    .find(|(u, _)| *u == unit)
                    .map(|(_, f)| *f)
                    .with_context(|| format!("unknown unit {unit:?} in quantity {s:?}"))?;
                Ok(value * factor)
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MeshCfg {
    /// Element counts [n_u, n_v].
    pub elements: Option<[usize; 2]>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MaterialCfg {
    pub youngs: Option<Quantity>,
    pub poisson: Option<f64>,
    pub eta: Option<f64>,
    pub thickness: Option<Quantity>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SolverCfg {
    pub steps: Option<usize>,
    pub max_iterations: Option<usize>,
    pub tol_rel: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputCfg {
    pub dir: Option<String>,
}

/// Benchmark-specific parameters. Which keys apply depends on the benchmark;
/// setting a key the benchmark does not use is rejected at build time.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ParamsCfg {
    /// Pre-tension stress (pure-bending).
    pub sigma0: Option<Quantity>,
    /// Bending load ratio 2M/(P*H) (pure-bending).
    pub load_ratio: Option<f64>,
    /// Strip height (pure-bending).
    pub height: Option<Quantity>,
    /// Modeled half-length (pure-bending).
    pub width: Option<Quantity>,
    /// Corner forces (corner-load).
    pub t1: Option<Quantity>,
    pub t2: Option<Quantity>,
    /// Inflation pressure (airbag).
    pub pressure: Option<Quantity>,
    /// Stabilization traction resultant as a fraction of the peak pressure
    /// force on the quarter model (airbag).
    pub stabilization_fraction: Option<f64>,
    /// Fraction of the schedule over which stabilization is held, then the
    /// fraction by which it has ramped to zero (airbag).
    pub hold_fraction: Option<f64>,
    pub ramp_end_fraction: Option<f64>,
    /// Initial out-of-plane seed amplitude as a fraction of the panel side
    /// (airbag, blanket).
    pub bump: Option<f64>,
    /// Self-weight parameters (blanket).
    pub surface_density: Option<Quantity>,
    pub gravity: Option<f64>,
    pub spring: Option<Quantity>,
    /// Panel side length (corner-load, blanket).
    pub side: Option<Quantity>,
}

/// Post-run check on a named probe value.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectCfg {
    pub probe: String,
    pub value: Quantity,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema: u32,
    pub benchmark: String,
    #[serde(default)]
    pub mesh: MeshCfg,
    #[serde(default)]
    pub material: MaterialCfg,
    #[serde(default)]
    pub solver: SolverCfg,
    #[serde(default)]
    pub output: OutputCfg,
    #[serde(default)]
    pub params: ParamsCfg,
    #[serde(default)]
    pub expect: Vec<ExpectCfg>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).context("invalid configuration")?;
        ensure!(cfg.schema == 1, "unsupported schema version {}", cfg.schema);
        cfg.benchmark.parse::<BenchmarkKind>()?;
        if let Some(d) = cfg.mesh.degree {
            ensure!((1..=3).contains(&d), "degree {d} outside 1..=3");
        }
        if let Some([nu, nv]) = cfg.mesh.elements {
            ensure!(nu >= 1 && nv >= 1, "element counts must be at least 1");
        }
        if let Some(eta) = cfg.material.eta {
            ensure!((0.0..=1.0).contains(&eta), "eta {eta} outside [0, 1]");
        }
        if let Some(nu) = cfg.material.poisson {
            ensure!((0.0..0.5).contains(&nu), "poisson {nu} outside [0, 0.5)");
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn kind(&self) -> BenchmarkKind {
        self.benchmark.parse().expect("validated at parse time")
    }
}

/// Command-line overrides applied on top of a parsed config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mesh: Option<[usize; 2]>,
    pub degree: Option<usize>,
    pub eta: Option<f64>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<String>,
}

impl Config {
    pub fn apply(&mut self, ov: &Overrides) {
        if let Some(m) = ov.mesh {
            self.mesh.elements = Some(m);
        }
        if let Some(d) = ov.degree {
            self.mesh.degree = Some(d);
        }
        if let Some(e) = ov.eta {
            self.material.eta = Some(e);
        }
        if let Some(s) = ov.steps {
            self.solver.steps = Some(s);
        }
        if let Some(t) = ov.tol {
            self.solver.tol_rel = Some(t);
        }
        if let Some(o) = &ov.out {
            self.output.dir = Some(o.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantities_parse_with_and_without_units() {
        assert!(Quantity::Number(5.0).si().unwrap() == 5.0);
        assert!(Quantity::Text("0.5 m".into()).si().unwrap() == 0.5);
        assert!((Quantity::Text("25 um".into()).si().unwrap() - 25e-6).abs() < 1e-18);
        assert!((Quantity::Text("3500 MPa".into()).si().unwrap() - 3.5e9).abs() < 1e-3);
        assert!((Quantity::Text("22.95 kN/m".into()).si().unwrap() - 22950.0).abs() < 1e-9);
        assert!(Quantity::Text("0.144 kg/m2".into()).si().unwrap() == 0.144);
        assert!(Quantity::Text("1e-3".into()).si().unwrap() == 1e-3);
        assert!(Quantity::Text("12 furlongs".into()).si().is_err());
    }

    #[test]
    fn minimal_config_parses() {
        let cfg = Config::parse("schema = 1\nbenchmark = \"airbag\"\n").unwrap();
        assert!(cfg.kind() == BenchmarkKind::Airbag);
        assert!(cfg.mesh.elements.is_none());
        assert!(cfg.expect.is_empty());
    }

    #[test]
    fn full_config_parses() {
        let text = r#"
schema = 1
benchmark = "blanket"

[mesh]
elements = [25, 25]
degree = 2

[material]
youngs = "30000 Pa"
poisson = 0.3
eta = 0.0
thickness = "1.177 mm"

[solver]
steps = 30
tol_rel = 1e-6

[output]
dir = "out/blanket"

[params]
surface_density = "0.144 kg/m2"
gravity = 9.81
spring = "22.95 kN/m"
bump = 0.01

[[expect]]
probe = "uz_M"
value = "-0.29531 m"
rel_tol = 0.02
"#;
        let cfg = Config::parse(text).unwrap();
        assert!(cfg.kind() == BenchmarkKind::Blanket);
        assert!(cfg.mesh.elements == Some([25, 25]));
        assert!(cfg.material.thickness.as_ref().unwrap().si().unwrap() == 1.177e-3);
        assert!(cfg.expect.len() == 1);
        assert!(cfg.expect[0].value.si().unwrap() == -0.29531);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(Config::parse("schema = 2\nbenchmark = \"airbag\"\n").is_err());
        assert!(Config::parse("schema = 1\nbenchmark = \"beam\"\n").is_err());
        assert!(Config::parse("schema = 1\nbenchmark = \"airbag\"\n[mesh]\ndegree = 4\n").is_err());
        assert!(Config::parse("schema = 1\nbenchmark = \"airbag\"\n[mesh]\nknots = 3\n").is_err());
        assert!(
            Config::parse("schema = 1\nbenchmark = \"airbag\"\n[material]\neta = 1.5\n").is_err()
        );
    }

    #[test]
    fn overrides_take_precedence() {
        let mut cfg = Config::parse("schema = 1\nbenchmark = \"airbag\"\n[mesh]\nelements = [8, 8]\n").unwrap();
        cfg.apply(&Overrides {
            mesh: Some([16, 16]),
            eta: Some(1e-4),
            out: Some("elsewhere".into()),
            ..Default::default()
        });
        assert!(cfg.mesh.elements == Some([16, 16]));
        assert!(cfg.material.eta == Some(1e-4));
        assert!(cfg.output.dir.as_deref() == Some("elsewhere"));
    }
}
