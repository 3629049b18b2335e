//! Space curves: evaluation, arclength reparametrization and synthesis from
//! prescribed Bishop curvatures.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::framing::BishopData;
use crate::numeric::{self, adaptive_simpson};
use crate::{Error, Result, Vec3};

/// A vector-valued function of one real parameter.
pub type CurveFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;
/// A scalar function of one real parameter.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Speeds below this are treated as a regularity failure.
pub const MIN_SPEED: f64 = 1e-10;

/// Base finite-difference steps for derivative orders 1, 2 and 3.
///
/// The third derivative uses a coarser step because its roundoff grows as `h^-3`.
const FD_BASE_STEP: [f64; 3] = [1e-3, 1e-3, 1e-3];

/// A parametric space curve `t ↦ γ(t)` on a closed interval.
///
/// Derivatives up to order 3 come from registered analytic closures when
/// available, otherwise from finite differences of the position.
#[derive(Clone)]
pub struct ParamCurve {
    label: String,
    domain: (f64, f64),
    position: CurveFn,
    derivatives: [Option<CurveFn>; 3],
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field(
                "analytic",
                &[
                    self.derivatives[0].is_some(),
                    self.derivatives[1].is_some(),
                    self.derivatives[2].is_some(),
                ],
            )
            .finish()
    }
}

impl ParamCurve {
    pub fn new<F>(label: impl Into<String>, domain: (f64, f64), position: F) -> Result<Self>
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        let (a, b) = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::input(format!("curve domain [{a}, {b}] is not a finite interval")));
        }
        Ok(ParamCurve {
            label: label.into(),
            domain,
            position: Arc::new(position),
            derivatives: [None, None, None],
        })
    }

    /// Registers an analytic derivative of the given order (1 to 3).
    pub fn with_derivative<F>(mut self, order: u8, f: F) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        assert!((1..=3).contains(&order), "derivative order must be 1, 2 or 3");
        self.derivatives[order as usize - 1] = Some(Arc::new(f));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn has_analytic_derivative(&self, order: u8) -> bool {
        (1..=3).contains(&order) && self.derivatives[order as usize - 1].is_some()
    }

    /// The `order`-th derivative at `t`; order 0 is the point itself.
    pub fn evaluate(&self, t: f64, order: u8) -> Result<Vec3> {
        if order > 3 {
            return Err(Error::UnsupportedOrder(order));
        }
        let (a, b) = self.domain;
        if !(t >= a && t <= b) {
            return Err(Error::Domain { value: t, min: a, max: b });
        }
        Ok(self.eval_unchecked(t, order))
    }

    fn eval_unchecked(&self, t: f64, order: u8) -> Vec3 {
        match order {
            0 => (self.position)(t),
            k => match &self.derivatives[k as usize - 1] {
                Some(f) => f(t),
                None => self.finite_difference(t, k, fd_step(t, k)),
            },
        }
    }

    /// Finite-difference derivative of the position with step `h`.
    ///
    /// Central stencils where they fit in the domain, one-sided stencils at the
    /// ends. Orders 1 and 2 are fourth-order accurate, order 3 second-order.
    pub fn finite_difference(&self, t: f64, order: u8, h: f64) -> Vec3 {
        let f = |x: f64| (self.position)(x);
        let (a, b) = self.domain;
        let reach = 2.0 * h;
        let dir = if t - reach >= a && t + reach <= b {
            0.0
        } else if t - reach < a {
            1.0
        } else {
            -1.0
        };
        if dir == 0.0 {
            match order {
                1 => (8.0 * (f(t + h) - f(t - h)) - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h),
                2 => {
                    (16.0 * (f(t + h) + f(t - h)) - (f(t + 2.0 * h) + f(t - 2.0 * h)) - 30.0 * f(t)) / (12.0 * h * h)
                }
                _ => (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h),
            }
        } else {
            // dir flips the stencil; odd derivatives pick up its sign
            let g = |k: f64| f(t + dir * k * h);
            match order {
                1 => dir * (-25.0 * g(0.0) + 48.0 * g(1.0) - 36.0 * g(2.0) + 16.0 * g(3.0) - 3.0 * g(4.0)) / (12.0 * h),
                2 => {
                    (45.0 * g(0.0) - 154.0 * g(1.0) + 214.0 * g(2.0) - 156.0 * g(3.0) + 61.0 * g(4.0) - 10.0 * g(5.0))
                        / (12.0 * h * h)
                }
                _ => {
                    dir * (-5.0 * g(0.0) + 18.0 * g(1.0) - 24.0 * g(2.0) + 14.0 * g(3.0) - 3.0 * g(4.0))
                        / (2.0 * h * h * h)
                }
            }
        }
    }

    /// Speed `‖γ'(t)‖`.
    pub fn speed(&self, t: f64) -> f64 {
        self.eval_unchecked(t, 1).norm()
    }

    /// Circular helix `(r cos t, r sin t, c t)` with analytic derivatives.
    pub fn helix(radius: f64, pitch: f64, domain: (f64, f64)) -> Result<Self> {
        let (r, c) = (radius, pitch);
        Ok(ParamCurve::new("helix", domain, move |t| Vec3::new(r * t.cos(), r * t.sin(), c * t))?
            .with_derivative(1, move |t| Vec3::new(-r * t.sin(), r * t.cos(), c))
            .with_derivative(2, move |t| Vec3::new(-r * t.cos(), -r * t.sin(), 0.0))
            .with_derivative(3, move |t| Vec3::new(r * t.sin(), -r * t.cos(), 0.0)))
    }

    /// The standard unit-speed helix `(√2/2)(cos s, sin s, s)` on `[-π, π]`.
    pub fn standard_helix() -> Self {
        let a = core::f64::consts::FRAC_1_SQRT_2;
        let pi = core::f64::consts::PI;
        ParamCurve::helix(a, a, (-pi, pi)).expect("valid domain")
    }

    /// Circle of the given radius in the xy-plane, `(r cos t, r sin t, 0)`.
    pub fn circle(radius: f64, domain: (f64, f64)) -> Result<Self> {
        let r = radius;
        Ok(ParamCurve::new("circle", domain, move |t| Vec3::new(r * t.cos(), r * t.sin(), 0.0))?
            .with_derivative(1, move |t| Vec3::new(-r * t.sin(), r * t.cos(), 0.0))
            .with_derivative(2, move |t| Vec3::new(-r * t.cos(), -r * t.sin(), 0.0))
            .with_derivative(3, move |t| Vec3::new(r * t.sin(), -r * t.cos(), 0.0)))
    }

    /// Straight line `origin + t·direction`.
    pub fn line(origin: Vec3, direction: Vec3, domain: (f64, f64)) -> Result<Self> {
        Ok(ParamCurve::new("line", domain, move |t| origin + t * direction)?
            .with_derivative(1, move |_| direction)
            .with_derivative(2, |_| Vec3::zeros())
            .with_derivative(3, |_| Vec3::zeros()))
    }

    /// Planar parabola `(t, a t², 0)`.
    pub fn parabola(a: f64, domain: (f64, f64)) -> Result<Self> {
        Ok(ParamCurve::new("parabola", domain, move |t| Vec3::new(t, a * t * t, 0.0))?
            .with_derivative(1, move |t| Vec3::new(1.0, 2.0 * a * t, 0.0))
            .with_derivative(2, move |_| Vec3::new(0.0, 2.0 * a, 0.0))
            .with_derivative(3, |_| Vec3::zeros()))
    }
}

fn fd_step(t: f64, order: u8) -> f64 {
    let base = FD_BASE_STEP[order as usize - 1];
    base.max(f64::EPSILON.cbrt() * t.abs())
}

/// A curve sampled on a uniform arclength grid.
///
/// `points[i] = γ(s[i])`, and `d1`, `d2`, `d3` hold the first three
/// derivatives with respect to arclength.
#[derive(Debug, Clone)]
pub struct ArcLengthCurve {
    pub label: String,
    /// Arclength samples, uniform spacing.
    pub s: Vec<f64>,
    /// Parameter of the source curve at each sample.
    pub t: Vec<f64>,
    pub points: Vec<Vec3>,
    pub d1: Vec<Vec3>,
    pub d2: Vec<Vec3>,
    pub d3: Vec<Vec3>,
    pub length: f64,
    pub source: Option<ParamCurve>,
}

impl ArcLengthCurve {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Grid spacing.
    pub fn ds(&self) -> f64 {
        self.length / (self.s.len() - 1) as f64
    }

    /// Moves the arclength origin so that the first sample sits at `s_start`.
    pub fn with_start(mut self, s_start: f64) -> Self {
        let shift = s_start - self.s[0];
        for s in &mut self.s {
            *s += shift;
        }
        self
    }

    /// Largest deviation of `‖γ'‖` from 1 over the samples.
    pub fn max_speed_defect(&self) -> f64 {
        self.d1.iter().map(|d| (d.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Resamples `curve` on `n_samples` points uniformly spaced in arclength.
///
/// The total length comes from adaptive Simpson quadrature to `quad_tol`. The
/// inverse map `s ↦ t` starts from a monotone cubic interpolant of the
/// cumulative length table and is polished by Newton steps. Arclength
/// derivatives are obtained through the chain rule, so the unit-speed contract
/// holds to rounding regardless of how precisely `t(s)` is located.
pub fn reparametrize_arclength(curve: &ParamCurve, n_samples: usize, quad_tol: f64) -> Result<ArcLengthCurve> {
    if n_samples < 16 {
        return Err(Error::input(format!("need at least 16 samples, got {n_samples}")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::input("quadrature tolerance must be positive"));
    }
    let (a, b) = curve.domain();
    let segments = 8 * (n_samples - 1);
    let dt = (b - a) / segments as f64;

    let table_t: Vec<f64> = (0..=segments).map(|j| if j == segments { b } else { a + j as f64 * dt }).collect();
    let mut table_speed = Vec::with_capacity(table_t.len());
    for &t in &table_t {
        let speed = curve.speed(t);
        if !(speed >= MIN_SPEED) {
            return Err(Error::Regularity { t, speed });
        }
        table_speed.push(speed);
    }

    let speed = |t: f64| curve.speed(t);
    let seg_tol = quad_tol / segments as f64;
    let mut table_s = Vec::with_capacity(table_t.len());
    table_s.push(0.0);
    for w in table_t.windows(2) {
        let piece = adaptive_simpson(&speed, w[0], w[1], seg_tol)?;
        let last = *table_s.last().unwrap();
        table_s.push(last + piece);
    }
    let length = *table_s.last().unwrap();

    // t as a monotone function of s
    let mut slopes: Vec<f64> = table_speed.iter().map(|v| 1.0 / v).collect();
    numeric::limit_monotone_slopes(&table_s, &table_t, &mut slopes);

    let mut s_grid = Vec::with_capacity(n_samples);
    let mut t_grid = Vec::with_capacity(n_samples);
    let ds = length / (n_samples - 1) as f64;
    for i in 0..n_samples {
        let s = if i == n_samples - 1 { length } else { i as f64 * ds };
        let t = if i == 0 {
            a
        } else if i == n_samples - 1 {
            b
        } else {
            let guess = numeric::hermite_eval(&table_s, &table_t, &slopes, s);
            newton_polish(curve, &table_s, &table_t, s, guess, seg_tol)?
        };
        s_grid.push(s);
        t_grid.push(t);
    }

    let mut points = Vec::with_capacity(n_samples);
    let mut d1 = Vec::with_capacity(n_samples);
    let mut d2 = Vec::with_capacity(n_samples);
    let mut d3 = Vec::with_capacity(n_samples);
    for &t in &t_grid {
        let r0 = curve.eval_unchecked(t, 0);
        let r1 = curve.eval_unchecked(t, 1);
        let r2 = curve.eval_unchecked(t, 2);
        let r3 = curve.eval_unchecked(t, 3);
        let sigma = r1.norm();
        if !(sigma >= MIN_SPEED) {
            return Err(Error::Regularity { t, speed: sigma });
        }
        let sigma1 = r1.dot(&r2) / sigma;
        let sigma2 = (r2.dot(&r2) + r1.dot(&r3) - sigma1 * sigma1) / sigma;
        let s2 = sigma * sigma;
        let s3 = s2 * sigma;
        let s4 = s3 * sigma;
        points.push(r0);
        d1.push(r1 / sigma);
        d2.push(r2 / s2 - r1 * (sigma1 / s3));
        d3.push(r3 / s3 - r2 * (3.0 * sigma1 / s4) - r1 * (sigma2 / s4) + r1 * (3.0 * sigma1 * sigma1 / (s4 * sigma)));
    }

    Ok(ArcLengthCurve {
        label: String::from(curve.label()),
        s: s_grid,
        t: t_grid,
        points,
        d1,
        d2,
        d3,
        length,
        source: Some(curve.clone()),
    })
}

fn newton_polish(curve: &ParamCurve, table_s: &[f64], table_t: &[f64], s: f64, guess: f64, tol: f64) -> Result<f64> {
    let (a, b) = curve.domain();
    let j = match table_s.binary_search_by(|p| p.total_cmp(&s)) {
        Ok(j) => return Ok(table_t[j]),
        Err(j) => j.saturating_sub(1).min(table_s.len() - 2),
    };
    let (t_lo, t_hi) = (table_t[j], table_t[j + 1]);
    let speed = |t: f64| curve.speed(t);
    let mut t = guess.clamp(t_lo, t_hi);
    for _ in 0..20 {
        let residual = table_s[j] + adaptive_simpson(&speed, t_lo, t, tol)? - s;
        let step = residual / speed(t);
        t = (t - step).clamp(a.max(t_lo - (t_hi - t_lo)), b.min(t_hi + (t_hi - t_lo)));
        if step.abs() <= 1e-15 * (1.0 + t.abs()) {
            break;
        }
    }
    Ok(t)
}

/// Bishop curvatures `k1(s)`, `k2(s)` given as functions or as a sampled table.
#[derive(Clone)]
pub enum CurvatureProfile {
    Functions { k1: ScalarFn, k2: ScalarFn },
    /// Linearly interpolated samples; values are held constant outside the table.
    Table { s: Vec<f64>, k1: Vec<f64>, k2: Vec<f64> },
}

impl fmt::Debug for CurvatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureProfile::Functions { .. } => f.write_str("CurvatureProfile::Functions"),
            CurvatureProfile::Table { s, .. } => write!(f, "CurvatureProfile::Table({} samples)", s.len()),
        }
    }
}

impl CurvatureProfile {
    pub fn from_fns<F1, F2>(k1: F1, k2: F2) -> Self
    where
        F1: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        CurvatureProfile::Functions { k1: Arc::new(k1), k2: Arc::new(k2) }
    }

    pub fn constant(k1: f64, k2: f64) -> Self {
        Self::from_fns(move |_| k1, move |_| k2)
    }

    pub fn from_table(s: Vec<f64>, k1: Vec<f64>, k2: Vec<f64>) -> Result<Self> {
        if s.len() < 2 || k1.len() != s.len() || k2.len() != s.len() {
            return Err(Error::input("curvature table needs at least 2 rows of equal length"));
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::input("curvature table arclengths must be strictly increasing"));
        }
        if s.iter().chain(&k1).chain(&k2).any(|x| !x.is_finite()) {
            return Err(Error::input("curvature table contains non-finite values"));
        }
        Ok(CurvatureProfile::Table { s, k1, k2 })
    }

    /// `(k1(s), k2(s))`.
    pub fn eval(&self, s: f64) -> (f64, f64) {
        match self {
            CurvatureProfile::Functions { k1, k2 } => (k1(s), k2(s)),
            CurvatureProfile::Table { s: grid, k1, k2 } => {
                let (i, w) = table_cell(grid, s);
                (k1[i] + w * (k1[i + 1] - k1[i]), k2[i] + w * (k2[i + 1] - k2[i]))
            }
        }
    }

    /// `(k1'(s), k2'(s))`: central differences for functions, cell slopes for tables.
    pub fn derivative(&self, s: f64) -> (f64, f64) {
        match self {
            CurvatureProfile::Functions { k1, k2 } => {
                let h = 1e-4 * (1.0 + s.abs());
                ((k1(s + h) - k1(s - h)) / (2.0 * h), (k2(s + h) - k2(s - h)) / (2.0 * h))
            }
            CurvatureProfile::Table { s: grid, k1, k2 } => {
                if s < grid[0] || s > grid[grid.len() - 1] {
                    return (0.0, 0.0);
                }
                let (i, _) = table_cell(grid, s);
                let h = grid[i + 1] - grid[i];
                ((k1[i + 1] - k1[i]) / h, (k2[i + 1] - k2[i]) / h)
            }
        }
    }
}

fn table_cell(grid: &[f64], s: f64) -> (usize, f64) {
    let n = grid.len();
    if s <= grid[0] {
        return (0, 0.0);
    }
    if s >= grid[n - 1] {
        return (n - 2, 1.0);
    }
    let i = grid.partition_point(|&g| g <= s) - 1;
    let i = i.min(n - 2);
    (i, (s - grid[i]) / (grid[i + 1] - grid[i]))
}

/// An orthonormal triple `{T, N1, N2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub t: Vec3,
    pub n1: Vec3,
    pub n2: Vec3,
}

impl Frame {
    pub fn new(t: Vec3, n1: Vec3, n2: Vec3) -> Self {
        Frame { t, n1, n2 }
    }

    /// Largest violation of orthonormality and right-handedness.
    pub fn orthonormality_defect(&self) -> f64 {
        let Frame { t, n1, n2 } = self;
        [
            t.norm() - 1.0,
            n1.norm() - 1.0,
            n2.norm() - 1.0,
            t.dot(n1),
            t.dot(n2),
            n1.dot(n2),
            t.cross(n1).dot(n2) - 1.0,
        ]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
    }

    /// Gram–Schmidt on `T`, then `N1`, with `N2 = T × N1`.
    pub fn reorthonormalized(&self) -> Self {
        let t = self.t.normalize();
        let n1 = (self.n1 - t * t.dot(&self.n1)).normalize();
        Frame { t, n1, n2: t.cross(&n1) }
    }
}

/// Integrates the Bishop equations
/// `γ' = T`, `T' = k1 N1 + k2 N2`, `N1' = -k1 T`, `N2' = -k2 T`
/// with fixed-step RK4 and per-step re-orthonormalization.
pub fn curve_from_bishop_curvatures(
    profile: &CurvatureProfile,
    initial_frame: Frame,
    initial_point: Vec3,
    s_range: (f64, f64),
    n_samples: usize,
) -> Result<(ArcLengthCurve, BishopData)> {
    if n_samples < 64 {
        return Err(Error::input(format!("need at least 64 samples, got {n_samples}")));
    }
    let (s0, s1) = s_range;
    if !(s0.is_finite() && s1.is_finite() && s0 < s1) {
        return Err(Error::input("arclength range must be a finite non-empty interval"));
    }
    let defect = initial_frame.orthonormality_defect();
    if !(defect <= 1e-10) {
        return Err(Error::input(format!(
            "initial frame is not orthonormal and right-handed (defect {defect:e})"
        )));
    }

    #[derive(Clone, Copy)]
    struct State {
        p: Vec3,
        f: Frame,
    }
    let rhs = |s: f64, st: &State| -> State {
        let (k1, k2) = profile.eval(s);
        State {
            p: st.f.t,
            f: Frame {
                t: st.f.n1 * k1 + st.f.n2 * k2,
                n1: st.f.t * -k1,
                n2: st.f.t * -k2,
            },
        }
    };
    let axpy = |st: &State, h: f64, d: &State| State {
        p: st.p + d.p * h,
        f: Frame {
            t: st.f.t + d.f.t * h,
            n1: st.f.n1 + d.f.n1 * h,
            n2: st.f.n2 + d.f.n2 * h,
        },
    };

    let h = (s1 - s0) / (n_samples - 1) as f64;
    let mut s_grid = Vec::with_capacity(n_samples);
    let mut states = Vec::with_capacity(n_samples);
    let mut state = State { p: initial_point, f: initial_frame };
    for i in 0..n_samples {
        let s = s0 + i as f64 * h;
        s_grid.push(if i == n_samples - 1 { s1 } else { s });
        states.push(state);
        if i + 1 == n_samples {
            break;
        }
        let a = rhs(s, &state);
        let b = rhs(s + 0.5 * h, &axpy(&state, 0.5 * h, &a));
        let c = rhs(s + 0.5 * h, &axpy(&state, 0.5 * h, &b));
        let d = rhs(s + h, &axpy(&state, h, &c));
        let mut next = state;
        next.p += (a.p + b.p * 2.0 + c.p * 2.0 + d.p) * (h / 6.0);
        next.f.t += (a.f.t + b.f.t * 2.0 + c.f.t * 2.0 + d.f.t) * (h / 6.0);
        next.f.n1 += (a.f.n1 + b.f.n1 * 2.0 + c.f.n1 * 2.0 + d.f.n1) * (h / 6.0);
        next.f.n2 += (a.f.n2 + b.f.n2 * 2.0 + c.f.n2 * 2.0 + d.f.n2) * (h / 6.0);
        next.f = next.f.reorthonormalized();
        state = next;
    }

    let mut k1 = Vec::with_capacity(n_samples);
    let mut k2 = Vec::with_capacity(n_samples);
    let mut d2 = Vec::with_capacity(n_samples);
    let mut d3 = Vec::with_capacity(n_samples);
    for (s, st) in s_grid.iter().zip(&states) {
        let (a, b) = profile.eval(*s);
        let (da, db) = profile.derivative(*s);
        k1.push(a);
        k2.push(b);
        d2.push(st.f.n1 * a + st.f.n2 * b);
        d3.push(st.f.n1 * da + st.f.n2 * db - st.f.t * (a * a + b * b));
    }
    let mut theta: Vec<f64> = k1.iter().zip(&k2).map(|(a, b)| b.atan2(*a)).collect();
    hold_where_flat(&mut theta, &k1, &k2);
    numeric::unwrap_angles(&mut theta);

    let curve = ArcLengthCurve {
        label: String::from("bishop_profile"),
        s: s_grid.clone(),
        t: s_grid.clone(),
        points: states.iter().map(|st| st.p).collect(),
        d1: states.iter().map(|st| st.f.t).collect(),
        d2,
        d3,
        length: s1 - s0,
        source: None,
    };
    let bishop = BishopData {
        s: s_grid,
        t: states.iter().map(|st| st.f.t).collect(),
        n1: states.iter().map(|st| st.f.n1).collect(),
        n2: states.iter().map(|st| st.f.n2).collect(),
        k1,
        k2,
        theta,
        degenerate: vec![false; n_samples],
    };
    Ok((curve, bishop))
}

/// Where the curvature vanishes the Bishop angle is undefined; carry the
/// previous value across such samples.
pub(crate) fn hold_where_flat(theta: &mut [f64], k1: &[f64], k2: &[f64]) {
    let mut last = None;
    for i in 0..theta.len() {
        if k1[i] * k1[i] + k2[i] * k2[i] < 1e-28 {
            theta[i] = last.unwrap_or(0.0);
        } else {
            last = Some(theta[i]);
        }
    }
}
