//! Curves, frames and surfaces from a validated config.

use bishop_ruled::curve::{curve_from_bishop_curvatures, reparametrize_arclength, CurvatureProfile, Frame, ParamCurve};
use bishop_ruled::framing::{bishop_from_frenet_anchored, bishop_parallel_transport, frenet_frame, DEFAULT_KAPPA_FLOOR};
use bishop_ruled::geometry::SurfaceGrid;
use bishop_ruled::numeric::adaptive_simpson;
use bishop_ruled::smarandache::build_surface;
use bishop_ruled::{BishopData, RuledSurface, SurfaceKind, Vec3};

use crate::config::{CurveSpec, RunConfig};
use crate::CliError;

/// Fewest samples the curvature integrator accepts.
const MIN_SYNTHESIS_SAMPLES: usize = 64;

pub struct Session {
    pub config: RunConfig,
    pub label: String,
    pub bishop: BishopData,
    /// Arclength range of the surface grids.
    pub s_range: (f64, f64),
    pub surfaces: Vec<RuledSurface>,
}

fn parametric(name: &str, spec: &CurveSpec) -> Result<ParamCurve, CliError> {
    let CurveSpec::Builtin { params, .. } = spec else { unreachable!() };
    let [a, b] = spec.domain();
    let half = core::f64::consts::FRAC_1_SQRT_2;
    let curve = match name {
        "helix" => ParamCurve::helix(params.radius.unwrap_or(half), params.pitch.unwrap_or(half), (a, b)),
        "circle" => ParamCurve::circle(params.radius.unwrap_or(1.0), (a, b)),
        "parabola" => ParamCurve::parabola(params.a.unwrap_or(1.0), (a, b)),
        other => return Err(CliError::Config(format!("unknown builtin curve `{other}`"))),
    };
    curve.map_err(|e| CliError::Config(e.to_string()))
}

/// Signed arclength from `t = 0` to `t`, so that `s = 0` sits at `t = 0`.
fn arclength_from_zero(curve: &ParamCurve, t: f64, tol: f64) -> Result<f64, CliError> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let speed = |x: f64| curve.speed(x);
    let (lo, hi) = if t < 0.0 { (t, 0.0) } else { (0.0, t) };
    let len = adaptive_simpson(&speed, lo, hi, tol).map_err(CliError::Curve)?;
    Ok(if t < 0.0 { -len } else { len })
}

fn builtin_bishop(spec: &CurveSpec, config: &RunConfig) -> Result<BishopData, CliError> {
    let CurveSpec::Builtin { name, .. } = spec else { unreachable!() };
    let curve = parametric(name, spec)?;
    let tol = config.tolerances.quad_tol;
    let [a, _] = spec.domain();
    // s = 0 at t = 0 needs t = 0 reachable by the speed integral; otherwise start at 0
    let s_start = if curve.domain().0 <= 0.0 && 0.0 <= curve.domain().1 {
        arclength_from_zero(&curve, a, tol)?
    } else {
        0.0
    };
    let arc = reparametrize_arclength(&curve, config.curve_samples, tol)
        .map_err(CliError::Curve)?
        .with_start(s_start);
    match frenet_frame(&arc, DEFAULT_KAPPA_FLOOR) {
        Ok(frenet) => {
            let (s0, s1) = (arc.s[0], arc.s[arc.len() - 1]);
            let anchor = if s0 <= 0.0 && 0.0 <= s1 { 0.0 } else { s0 };
            Ok(bishop_from_frenet_anchored(&frenet, anchor, config.theta0))
        }
        // straight stretches have no Frenet frame but do have a Bishop frame
        Err(bishop_ruled::Error::FrameUndefined { .. }) => {
            let bishop = bishop_parallel_transport(&arc, perpendicular(arc.d1[0])).map_err(CliError::Curve)?;
            Ok(if config.theta0 == 0.0 { bishop } else { bishop.rotated(config.theta0) })
        }
        Err(e) => Err(CliError::Curve(e)),
    }
}

/// A unit vector orthogonal to `t`, built from the basis axis least aligned with it.
fn perpendicular(t: Vec3) -> Vec3 {
    let t = t.normalize();
    let axis = [Vec3::x(), Vec3::y(), Vec3::z()]
        .into_iter()
        .min_by(|a, b| a.dot(&t).abs().total_cmp(&b.dot(&t).abs()))
        .expect("three axes");
    (axis - t * t.dot(&axis)).normalize()
}

fn profile_bishop(spec: &CurveSpec, config: &RunConfig) -> Result<BishopData, CliError> {
    let CurveSpec::BishopProfile { params, .. } = spec else { unreachable!() };
    let column = |k: usize| params.samples.iter().map(|r| r[k]).collect::<Vec<_>>();
    let profile = CurvatureProfile::from_table(column(0), column(1), column(2))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let frame = match params.initial_frame {
        Some([t, n1, n2]) => Frame::new(Vec3::from(t), Vec3::from(n1), Vec3::from(n2)),
        None => Frame::new(Vec3::x(), Vec3::y(), Vec3::z()),
    };
    let origin = params.initial_point.map_or_else(Vec3::zeros, Vec3::from);
    let [a, b] = spec.domain();
    let n = config.curve_samples.max(MIN_SYNTHESIS_SAMPLES);
    let (_, bishop) = curve_from_bishop_curvatures(&profile, frame, origin, (a, b), n).map_err(|e| match e {
        bishop_ruled::Error::Input(_) => CliError::Config(e.to_string()),
        e => CliError::Curve(e),
    })?;
    Ok(if config.theta0 == 0.0 { bishop } else { bishop.rotated(config.theta0) })
}

impl Session {
    pub fn new(config: RunConfig) -> Result<Self, CliError> {
        let bishop = match &config.curve {
            spec @ CurveSpec::Builtin { .. } => builtin_bishop(spec, &config)?,
            spec @ CurveSpec::BishopProfile { .. } => profile_bishop(spec, &config)?,
        };
        let whole = bishop.s_range();
        let s_range = match config.s_range {
            None => whole,
            Some((a, b)) => {
                let slack = 1e-9 * (1.0 + whole.0.abs().max(whole.1.abs()));
                if a < whole.0 - slack || b > whole.1 + slack {
                    return Err(CliError::Config(format!(
                        "s_range [{a}, {b}] lies outside the curve's arclength range [{}, {}]",
                        whole.0, whole.1
                    )));
                }
                (a.max(whole.0), b.min(whole.1))
            }
        };
        let surfaces = config
            .kinds
            .iter()
            .map(|&kind| build_surface(&bishop, kind, config.v_range))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Numeric)?;
        Ok(Session { label: config.curve.label(), config, bishop, s_range, surfaces })
    }

    /// The analysis grid of one surface; N1N2 grids leave out `|v| < n1n2_v_gap`.
    pub fn analysis_grid(&self, kind: SurfaceKind) -> Result<SurfaceGrid, CliError> {
        let grid = self.mesh_grid()?;
        Ok(if kind == SurfaceKind::N1n2 && self.config.n1n2_v_gap > 0.0 {
            grid.without_band(self.config.n1n2_v_gap)
        } else {
            grid
        })
    }

    /// The full `ns × nv` lattice.
    pub fn mesh_grid(&self) -> Result<SurfaceGrid, CliError> {
        SurfaceGrid::uniform(self.s_range, self.config.ns, self.config.v_range, self.config.nv)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}
