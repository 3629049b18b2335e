//! Run configuration and curve specification files.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::path::{Path, PathBuf};

use bishop_ruled::SurfaceKind;
use serde::Deserialize;

use crate::CliError;

/// A curve specification, either a builtin parametric curve or a sampled
/// Bishop curvature profile that is integrated into a curve.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    Builtin {
        name: String,
        #[serde(default)]
        params: BuiltinParams,
        domain: Option<[f64; 2]>,
    },
    BishopProfile {
        #[serde(default)]
        name: Option<String>,
        params: ProfileParams,
        domain: Option<[f64; 2]>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinParams {
    pub radius: Option<f64>,
    pub pitch: Option<f64>,
    /// Parabola coefficient in `(t, a t², 0)`.
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileParams {
    /// `(s, k1, k2)` rows, linearly interpolated.
    pub samples: Vec<[f64; 3]>,
    #[serde(default)]
    pub initial_point: Option<[f64; 3]>,
    /// Rows `T, N1, N2`; the standard basis when absent.
    #[serde(default)]
    pub initial_frame: Option<[[f64; 3]; 3]>,
}

/// Builtin curve names accepted in a spec.
pub const BUILTINS: [&str; 3] = ["helix", "circle", "parabola"];

impl CurveSpec {
    pub fn label(&self) -> String {
        match self {
            CurveSpec::Builtin { name, .. } => name.clone(),
            CurveSpec::BishopProfile { name, .. } => name.clone().unwrap_or_else(|| "bishop_profile".into()),
        }
    }

    /// The curve parameter domain, with the builtin defaults filled in.
    pub fn domain(&self) -> [f64; 2] {
        match self {
            CurveSpec::Builtin { name, domain, .. } => domain.unwrap_or(match name.as_str() {
                "circle" => [0.0, 2.0 * PI],
                "parabola" => [-1.0, 1.0],
                _ => [-PI, PI],
            }),
            CurveSpec::BishopProfile { params, domain, .. } => domain.unwrap_or_else(|| {
                let first = params.samples.first().map_or(0.0, |r| r[0]);
                let last = params.samples.last().map_or(0.0, |r| r[0]);
                [first, last]
            }),
        }
    }

    /// `true` for the helix `(√2/2)(cos s, sin s, s)` on `[-π, π]`.
    pub fn is_standard_helix(&self) -> bool {
        match self {
            CurveSpec::Builtin { name, params, .. } => {
                let close = |x: Option<f64>| x.is_none_or(|x| (x - FRAC_1_SQRT_2).abs() <= 1e-15);
                name == "helix" && close(params.radius) && close(params.pitch) && self.domain() == [-PI, PI]
            }
            CurveSpec::BishopProfile { .. } => false,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let [a, b] = self.domain();
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(CliError::Config(format!("curve domain [{a}, {b}] must be a finite non-empty interval")));
        }
        match self {
            CurveSpec::Builtin { name, params, .. } => {
                if !BUILTINS.contains(&name.as_str()) {
                    return Err(CliError::Config(format!(
                        "unknown builtin curve `{name}` (expected one of {})",
                        BUILTINS.join(", ")
                    )));
                }
                for (key, value) in [("radius", params.radius), ("pitch", params.pitch), ("a", params.a)] {
                    if value.is_some_and(|x| !x.is_finite()) {
                        return Err(CliError::Config(format!("curve parameter `{key}` must be finite")));
                    }
                }
                // a helix of radius 0 is a straight line, or a point when its pitch is 0 too
                let min_ok = |r: f64| if name == "helix" { r >= 0.0 } else { r > 0.0 };
                if params.radius.is_some_and(|r| !min_ok(r)) {
                    return Err(CliError::Config(format!("radius of a {name} must be {}", if name == "helix" { "non-negative" } else { "positive" })));
                }
            }
            CurveSpec::BishopProfile { params, .. } => {
                if params.samples.len() < 2 {
                    return Err(CliError::Config("bishop_profile needs at least 2 (s, k1, k2) samples".into()));
                }
                let (s0, s1) = (params.samples[0][0], params.samples[params.samples.len() - 1][0]);
                if a < s0 || b > s1 {
                    return Err(CliError::Config(format!("domain [{a}, {b}] exceeds the profile's samples [{s0}, {s1}]")));
                }
            }
        }
        Ok(())
    }
}

/// Where the curve spec comes from: a path relative to the config file, or inline.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CurveSource {
    Path(PathBuf),
    Inline(CurveSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub quad_tol: f64,
    pub kappa_eps: f64,
    pub rel_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quad_tol: 1e-12,
            kappa_eps: bishop_ruled::geometry::DEFAULT_KAPPA_EPS,
            rel_tol: 1e-6,
        }
    }
}

/// The config file as written.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub curve: CurveSource,
    #[serde(default)]
    pub kinds: Option<Vec<String>>,
    /// Arclength range of the surface grid; the whole curve when absent.
    #[serde(default)]
    pub s_range: Option<[f64; 2]>,
    #[serde(default)]
    pub v_range: Option<[f64; 2]>,
    #[serde(default)]
    pub ns: Option<usize>,
    #[serde(default)]
    pub nv: Option<usize>,
    /// Samples of the arclength table the frames are built on.
    #[serde(default)]
    pub curve_samples: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Half-width of the band around `v = 0` left out of N1N2 grids.
    #[serde(default)]
    pub n1n2_v_gap: Option<f64>,
    #[serde(default)]
    pub theta0: Option<f64>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub formats: Option<Vec<Format>>,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub kinds: Option<Vec<String>>,
    pub ns: Option<usize>,
    pub nv: Option<usize>,
    pub theta0: Option<f64>,
}

/// A validated configuration with every default filled in.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: CurveSpec,
    pub kinds: Vec<SurfaceKind>,
    pub s_range: Option<(f64, f64)>,
    pub v_range: (f64, f64),
    pub ns: usize,
    pub nv: usize,
    pub curve_samples: usize,
    pub tolerances: Tolerances,
    pub n1n2_v_gap: f64,
    pub theta0: f64,
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
}

pub const DEFAULT_OUT_DIR: &str = "out";
pub const DEFAULT_CURVE_SAMPLES: usize = 401;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn interval(name: &str, [a, b]: [f64; 2]) -> Result<(f64, f64), CliError> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok((a, b))
    } else {
        Err(CliError::Config(format!("{name} [{a}, {b}] must be a finite non-empty interval")))
    }
}

pub fn parse_kinds(names: &[String]) -> Result<Vec<SurfaceKind>, CliError> {
    let mut kinds = Vec::new();
    for name in names {
        let kind: SurfaceKind = name.parse().map_err(|e: bishop_ruled::Error| CliError::Config(e.to_string()))?;
        if kind == SurfaceKind::Generic {
            return Err(CliError::Config("generic surfaces cannot be built from a curve spec".into()));
        }
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err(CliError::Config("no surface kinds requested".into()));
    }
    Ok(kinds)
}

impl RunConfig {
    /// Reads and validates the config at `path`, resolving a curve spec path
    /// against the config's directory.
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self, CliError> {
        let file: RunConfigFile = parse(&read(path)?, path)?;
        let curve = match &file.curve {
            CurveSource::Inline(spec) => spec.clone(),
            CurveSource::Path(p) => {
                let p = if p.is_relative() { path.parent().unwrap_or(Path::new(".")).join(p) } else { p.clone() };
                parse(&read(&p)?, &p)?
            }
        };
        Self::resolve(curve, file, overrides)
    }

    pub fn resolve(curve: CurveSpec, file: RunConfigFile, overrides: &Overrides) -> Result<Self, CliError> {
        curve.validate()?;
        let kinds = match overrides.kinds.as_ref().or(file.kinds.as_ref()) {
            Some(names) => parse_kinds(names)?,
            None => SurfaceKind::NAMED.to_vec(),
        };
        let ns = overrides.ns.or(file.ns).unwrap_or(bishop_ruled::geometry::DEFAULT_GRID.0);
        let nv = overrides.nv.or(file.nv).unwrap_or(bishop_ruled::geometry::DEFAULT_GRID.1);
        let curve_samples = file.curve_samples.unwrap_or(DEFAULT_CURVE_SAMPLES);
        if ns < 2 || nv < 2 || curve_samples < 2 {
            return Err(CliError::Config(format!(
                "sample counts must be at least 2 (ns = {ns}, nv = {nv}, curve_samples = {curve_samples})"
            )));
        }
        let t = file.tolerances;
        for (name, x) in [("quad_tol", t.quad_tol), ("kappa_eps", t.kappa_eps), ("rel_tol", t.rel_tol)] {
            if !(x.is_finite() && x > 0.0) {
                return Err(CliError::Config(format!("tolerance {name} must be positive, got {x}")));
            }
        }
        let gap = file.n1n2_v_gap.unwrap_or(bishop_ruled::geometry::N1N2_V_GAP);
        if !(gap.is_finite() && gap >= 0.0) {
            return Err(CliError::Config(format!("n1n2_v_gap must be non-negative, got {gap}")));
        }
        let theta0 = overrides.theta0.or(file.theta0).unwrap_or(0.0);
        if !theta0.is_finite() {
            return Err(CliError::Config("theta0 must be finite".into()));
        }
        let formats = file.formats.unwrap_or_else(|| vec![Format::Json, Format::Csv, Format::Obj]);
        Ok(RunConfig {
            curve,
            kinds,
            s_range: file.s_range.map(|r| interval("s_range", r)).transpose()?,
            v_range: interval("v_range", file.v_range.unwrap_or([-1.0, 1.0]))?,
            ns,
            nv,
            curve_samples,
            tolerances: t,
            n1n2_v_gap: gap,
            theta0,
            out_dir: overrides
                .out
                .clone()
                .or(file.out_dir)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
            formats,
        })
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }
}
