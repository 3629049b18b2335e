//! Differential geometry of ruled surfaces computed from surface jets.
//!
//! Nothing here uses the closed-form expressions: fundamental forms, curvatures,
//! striction curves and curve-on-surface invariants are all evaluated from
//! [`SurfaceJet`]s and finite differences, so they serve as the reference that
//! [`crate::closedform`] is checked against.

use alloc::vec::Vec;

use crate::numeric::{d1_central4, d2_central4};
use crate::smarandache::{JetMode, RuledSurface, SurfaceJet, SurfaceKind, NUMERIC_STEP_S, SINGULAR_FLOOR};
use crate::{Error, Result, Vec3};

/// `EG - F²` below this is a degenerate first fundamental form.
pub const METRIC_FLOOR: f64 = 1e-18;

/// Default tolerance for classifying curvatures as zero.
pub const DEFAULT_KAPPA_EPS: f64 = 1e-6;

/// Default sample counts in `s` and `v`.
pub const DEFAULT_GRID: (usize, usize) = (201, 41);

/// Half-width of the band around `v = 0` left out of default N1N2 grids.
pub const N1N2_V_GAP: f64 = 0.05;

/// Floor on `‖X'‖²` for a striction point to be defined.
pub const STRICTION_FLOOR: f64 = 1e-10;

/// Floor on `‖c'‖` for the base curve to count as regular.
pub const BASE_SPEED_FLOOR: f64 = 1e-6;

/// Initial step for derivatives of the striction curve.
const STRICTION_STEP: f64 = 5e-4;

/// The striction step is halved down to this while successive estimates disagree.
const STRICTION_MIN_STEP: f64 = 1e-7;

/// Coefficients of the first and second fundamental forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    /// `EG - F²`.
    pub fn metric_determinant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// The forms for the opposite normal.
    pub fn flipped(&self) -> Self {
        FundamentalForms { l: -self.l, m: -self.m, n: -self.n, ..*self }
    }
}

pub fn fundamental_forms(jet: &SurfaceJet, n: &Vec3) -> FundamentalForms {
    FundamentalForms {
        e: jet.xs.dot(&jet.xs),
        f: jet.xs.dot(&jet.xv),
        g: jet.xv.dot(&jet.xv),
        l: jet.xss.dot(n),
        m: jet.xsv.dot(n),
        n: jet.xvv.dot(n),
    }
}

/// Gaussian and mean curvature `(K, H)`.
pub fn curvatures(forms: &FundamentalForms) -> Result<(f64, f64)> {
    let FundamentalForms { e, f, g, l, m, n } = *forms;
    let det = forms.metric_determinant();
    if !(det >= METRIC_FLOOR) {
        return Err(Error::SingularDenominator { value: det });
    }
    let k = (l * n - m * m) / det;
    let h = (e * n - 2.0 * m * f + l * g) / (2.0 * det);
    Ok((k, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Elliptic,
    Hyperbolic,
    Parabolic,
    PlanarPoint,
    Singular,
}

impl PointClass {
    pub const ALL: [PointClass; 5] = [
        PointClass::Elliptic,
        PointClass::Hyperbolic,
        PointClass::Parabolic,
        PointClass::PlanarPoint,
        PointClass::Singular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PointClass::Elliptic => "elliptic",
            PointClass::Hyperbolic => "hyperbolic",
            PointClass::Parabolic => "parabolic",
            PointClass::PlanarPoint => "planar",
            PointClass::Singular => "singular",
        }
    }

    /// Small integer code; singular points get the sentinel `-1`.
    pub fn code(self) -> i32 {
        match self {
            PointClass::Elliptic => 0,
            PointClass::Hyperbolic => 1,
            PointClass::Parabolic => 2,
            PointClass::PlanarPoint => 3,
            PointClass::Singular => -1,
        }
    }
}

pub fn classify_point(k: f64, h: f64, kappa_eps: f64) -> PointClass {
    if k > kappa_eps {
        PointClass::Elliptic
    } else if k < -kappa_eps {
        PointClass::Hyperbolic
    } else if h.abs() <= kappa_eps {
        PointClass::PlanarPoint
    } else {
        PointClass::Parabolic
    }
}

/// Everything known about one regular surface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointAnalysis {
    pub s: f64,
    pub v: f64,
    pub forms: FundamentalForms,
    pub normal: Vec3,
    pub k: f64,
    pub h: f64,
    pub class: PointClass,
}

/// Analyzes `(s, v)`, returning a singular-point error where `χ_s × χ_v` or
/// the first fundamental form degenerates.
pub fn analyze_point(surface: &RuledSurface, s: f64, v: f64, mode: JetMode, kappa_eps: f64) -> Result<PointAnalysis> {
    let jet = surface.surface_jet(s, v, mode)?;
    let normal = surface.unit_normal(s, v, mode)?;
    let forms = fundamental_forms(&jet, &normal);
    let (k, h) = curvatures(&forms).map_err(|_| Error::SingularPoint { s, v })?;
    Ok(PointAnalysis {
        s,
        v,
        forms,
        normal,
        k,
        h,
        class: classify_point(k, h, kappa_eps),
    })
}

/// A tensor grid of `(s, v)` sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub s: Vec<f64>,
    pub v: Vec<f64>,
}

fn linspace((a, b): (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
        .collect()
}

impl SurfaceGrid {
    pub fn uniform(s_range: (f64, f64), ns: usize, v_range: (f64, f64), nv: usize) -> Result<Self> {
        if ns < 2 || nv < 2 {
            return Err(Error::input("grid needs at least 2 samples in each direction"));
        }
        if !(s_range.0 < s_range.1 && v_range.0 < v_range.1) {
            return Err(Error::input("grid ranges must be non-degenerate"));
        }
        Ok(SurfaceGrid {
            s: linspace(s_range, ns),
            v: linspace(v_range, nv),
        })
    }

    /// Drops `v` samples with `|v| < half_width`.
    pub fn without_band(mut self, half_width: f64) -> Self {
        let cut = half_width * (1.0 - 1e-9);
        self.v.retain(|v| v.abs() >= cut);
        self
    }

    /// [`DEFAULT_GRID`] over the surface's ranges, with the band
    /// `|v| < N1N2_V_GAP` removed on N1N2 surfaces.
    pub fn default_for(surface: &RuledSurface) -> Self {
        let (ns, nv) = DEFAULT_GRID;
        let g = SurfaceGrid {
            s: linspace(surface.s_range(), ns),
            v: linspace(surface.v_range(), nv),
        };
        if surface.kind() == SurfaceKind::N1n2 {
            g.without_band(N1N2_V_GAP)
        } else {
            g
        }
    }

    pub fn len(&self) -> usize {
        self.s.len() * self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in `s`-major order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.s.iter().flat_map(move |&s| self.v.iter().map(move |&v| (s, v)))
    }
}

/// One grid point; `analysis` is `None` at singular points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSample {
    pub s: f64,
    pub v: f64,
    pub analysis: Option<PointAnalysis>,
}

impl GridSample {
    pub fn class(&self) -> PointClass {
        self.analysis.map_or(PointClass::Singular, |a| a.class)
    }
}

/// Analyzes every grid point, in `s`-major order.
pub fn analyze_grid(surface: &RuledSurface, grid: &SurfaceGrid, mode: JetMode, kappa_eps: f64) -> Result<Vec<GridSample>> {
    let mut out = Vec::with_capacity(grid.len());
    for (s, v) in grid.points() {
        let analysis = match analyze_point(surface, s, v, mode, kappa_eps) {
            Ok(a) => Some(a),
            Err(Error::SingularPoint { .. } | Error::SingularDenominator { .. }) => None,
            Err(e) => return Err(e),
        };
        out.push(GridSample { s, v, analysis });
    }
    Ok(out)
}

/// Point-class counts over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassHistogram {
    pub elliptic: usize,
    pub hyperbolic: usize,
    pub parabolic: usize,
    pub planar: usize,
    pub singular: usize,
}

impl ClassHistogram {
    pub fn add(&mut self, class: PointClass) {
        *self.slot(class) += 1;
    }

    pub fn get(&self, class: PointClass) -> usize {
        match class {
            PointClass::Elliptic => self.elliptic,
            PointClass::Hyperbolic => self.hyperbolic,
            PointClass::Parabolic => self.parabolic,
            PointClass::PlanarPoint => self.planar,
            PointClass::Singular => self.singular,
        }
    }

    fn slot(&mut self, class: PointClass) -> &mut usize {
        match class {
            PointClass::Elliptic => &mut self.elliptic,
            PointClass::Hyperbolic => &mut self.hyperbolic,
            PointClass::Parabolic => &mut self.parabolic,
            PointClass::PlanarPoint => &mut self.planar,
            PointClass::Singular => &mut self.singular,
        }
    }
}

/// Grid-level classification of a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceReport {
    pub kind: SurfaceKind,
    /// `max |K| ≤ kappa_eps` over regular points.
    pub developable: bool,
    /// `max |H| ≤ kappa_eps` over regular points.
    pub minimal: bool,
    /// The mean of `H` when its spread is within `kappa_eps` and the mean is
    /// well away from zero.
    pub cmc: Option<f64>,
    pub histogram: ClassHistogram,
    pub max_abs_k: f64,
    pub max_abs_h: f64,
    /// Smallest and largest `H` over regular points.
    pub h_range: (f64, f64),
    pub singular_points: Vec<(f64, f64)>,
    pub regular_points: usize,
    pub kappa_eps: f64,
}

impl SurfaceReport {
    pub fn from_samples(kind: SurfaceKind, samples: &[GridSample], kappa_eps: f64) -> Self {
        let mut histogram = ClassHistogram::default();
        let mut singular_points = Vec::new();
        let (mut max_k, mut max_h) = (0.0f64, 0.0f64);
        let (mut h_min, mut h_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let mut h_sum = 0.0;
        let mut regular = 0usize;
        for sample in samples {
            histogram.add(sample.class());
            match sample.analysis {
                Some(a) => {
                    regular += 1;
                    max_k = max_k.max(a.k.abs());
                    max_h = max_h.max(a.h.abs());
                    h_min = h_min.min(a.h);
                    h_max = h_max.max(a.h);
                    h_sum += a.h;
                }
                None => singular_points.push((sample.s, sample.v)),
            }
        }
        let any = regular > 0;
        let mean_h = if any { h_sum / regular as f64 } else { 0.0 };
        let cmc = (any && h_max - h_min <= kappa_eps && mean_h.abs() > 10.0 * kappa_eps).then_some(mean_h);
        SurfaceReport {
            kind,
            developable: any && max_k <= kappa_eps,
            minimal: any && max_h <= kappa_eps,
            cmc,
            histogram,
            max_abs_k: max_k,
            max_abs_h: max_h,
            h_range: if any { (h_min, h_max) } else { (f64::NAN, f64::NAN) },
            singular_points,
            regular_points: regular,
            kappa_eps,
        }
    }
}

/// Classifies `surface` on `grid` using numeric jets.
pub fn classify_surface(surface: &RuledSurface, grid: &SurfaceGrid, kappa_eps: f64) -> Result<SurfaceReport> {
    let samples = analyze_grid(surface, grid, JetMode::Numeric, kappa_eps)?;
    Ok(SurfaceReport::from_samples(surface.kind(), &samples, kappa_eps))
}

fn base_velocity(surface: &RuledSurface, s: f64, h: f64) -> (Vec3, Vec3) {
    let base = |x: f64| surface.base_and_ruling(x).0;
    let ruling = |x: f64| surface.base_and_ruling(x).1;
    (d1_central4(&base, s, h), d1_central4(&ruling, s, h))
}

/// Striction point `c - (⟨c', X'⟩/‖X'‖²) X` and its ruling coefficient, or
/// `None` where `‖X'‖²` is below [`STRICTION_FLOOR`].
pub fn striction_point(surface: &RuledSurface, s: f64) -> Option<(Vec3, f64)> {
    let (dc, dx) = base_velocity(surface, s, NUMERIC_STEP_S);
    let xx = dx.dot(&dx);
    if !(xx >= STRICTION_FLOOR) {
        return None;
    }
    let u = -dc.dot(&dx) / xx;
    let (c, x) = surface.base_and_ruling(s);
    Some((c + x * u, u))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictionSample {
    pub s: f64,
    pub point: Option<Vec3>,
    pub coefficient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrictionCurve {
    pub samples: Vec<StrictionSample>,
    /// Set when every sample is masked, as on cylinders.
    pub cylindrical: bool,
}

impl StrictionCurve {
    pub fn valid_count(&self) -> usize {
        self.samples.iter().filter(|x| x.point.is_some()).count()
    }
}

/// Striction curve on the surface's `s` samples.
pub fn striction_curve(surface: &RuledSurface) -> StrictionCurve {
    let samples: Vec<StrictionSample> = surface
        .s_samples()
        .into_iter()
        .map(|s| match striction_point(surface, s) {
            Some((p, u)) => StrictionSample { s, point: Some(p), coefficient: Some(u) },
            None => StrictionSample { s, point: None, coefficient: None },
        })
        .collect();
    let cylindrical = samples.iter().all(|x| x.point.is_none());
    StrictionCurve { samples, cylindrical }
}

/// How far the striction curve is from its defining property at `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictionDefect {
    /// `⟨γ̄', X'⟩`.
    pub inner: f64,
    /// `⟨γ̄', X'⟩ / (max(‖γ̄'‖, ‖c'‖) ‖X'‖)`, zero when both vanish.
    pub normalized: f64,
}

/// `None` if the striction point is masked anywhere on the difference stencil.
pub fn striction_defect(surface: &RuledSurface, s: f64) -> Option<StrictionDefect> {
    striction_point(surface, s)?;
    let stencil = |h: f64| -> Option<Vec3> {
        let mut pts = [Vec3::zeros(); 4];
        for (slot, k) in pts.iter_mut().zip([-2.0, -1.0, 1.0, 2.0]) {
            *slot = striction_point(surface, s + k * h)?.0;
        }
        Some((pts[0] - pts[1] * 8.0 + pts[2] * 8.0 - pts[3]) * (1.0 / (12.0 * h)))
    };
    // near a zero of ‖X'‖ the coefficient has a pole and a fixed step can
    // straddle it, so refine until two estimates agree
    let mut h = STRICTION_STEP;
    let mut dg = stencil(h)?;
    while h > STRICTION_MIN_STEP {
        let finer = stencil(0.5 * h)?;
        let settled = (finer - dg).norm() <= 1e-6 * finer.norm();
        dg = finer;
        h *= 0.5;
        if settled {
            break;
        }
    }
    let (dc, dx) = base_velocity(surface, s, NUMERIC_STEP_S);
    let inner = dg.dot(&dx);
    // ‖c'‖ keeps the scale honest where the striction curve is stationary
    let scale = dg.norm().max(dc.norm()) * dx.norm();
    let normalized = if scale > 0.0 { inner / scale } else { 0.0 };
    Some(StrictionDefect { inner, normalized })
}

/// Normal curvature, geodesic curvature and geodesic torsion of the base curve.
///
/// Computed literally as `κ_n = ⟨c'', n⟩`, `κ_g = ⟨n × T_c, T_c'⟩` and
/// `τ_g = ⟨n × n', T_c'⟩`, where `c''` is the raw second derivative of the
/// base curve, `T_c = c'/‖c'‖` its unit tangent, and `n` the numeric unit
/// normal at `(s, v_eval)`. The base curve is generally not unit speed, so
/// these depend on its parametrization. Masked samples hold `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveOnSurfaceInvariants {
    pub v_eval: f64,
    pub s: Vec<f64>,
    pub kn: Vec<f64>,
    pub kg: Vec<f64>,
    pub tg: Vec<f64>,
    pub valid: Vec<bool>,
}

pub fn base_curve_invariants(surface: &RuledSurface, v_eval: f64) -> Result<CurveOnSurfaceInvariants> {
    let (a, b) = surface.v_range();
    if !(v_eval >= a && v_eval <= b) {
        return Err(Error::Domain { value: v_eval, min: a, max: b });
    }
    let s_grid = surface.s_samples();
    let mut out = CurveOnSurfaceInvariants {
        v_eval,
        s: s_grid.clone(),
        kn: Vec::with_capacity(s_grid.len()),
        kg: Vec::with_capacity(s_grid.len()),
        tg: Vec::with_capacity(s_grid.len()),
        valid: Vec::with_capacity(s_grid.len()),
    };
    for &s in &s_grid {
        match curve_invariants_at(surface, s, v_eval) {
            Some((kn, kg, tg)) => {
                out.kn.push(kn);
                out.kg.push(kg);
                out.tg.push(tg);
                out.valid.push(true);
            }
            None => {
                out.kn.push(f64::NAN);
                out.kg.push(f64::NAN);
                out.tg.push(f64::NAN);
                out.valid.push(false);
            }
        }
    }
    Ok(out)
}

fn numeric_normal(surface: &RuledSurface, s: f64, v: f64) -> Option<Vec3> {
    let h = NUMERIC_STEP_S;
    let along = |x: f64| surface.point_unchecked(x, v);
    let xs = d1_central4(&along, s, h);
    let xv = surface.point_unchecked(s, v + 0.5) - surface.point_unchecked(s, v - 0.5);
    let c = xs.cross(&xv);
    let norm = c.norm();
    (norm >= SINGULAR_FLOOR).then(|| c / norm)
}

/// Values of `f` on the five-point stencil around `s`, or `None` if any is
/// undefined or points away from the center value.
fn coherent_stencil(f: impl Fn(f64) -> Option<Vec3>, s: f64, h: f64) -> Option<[Vec3; 5]> {
    let mut vals = [Vec3::zeros(); 5];
    for (i, k) in [-2.0, -1.0, 0.0, 1.0, 2.0].into_iter().enumerate() {
        vals[i] = f(s + k * h)?;
    }
    vals.iter().all(|x| x.dot(&vals[2]) > 0.5).then_some(vals)
}

fn stencil_d1(v: &[Vec3; 5], h: f64) -> Vec3 {
    (v[0] - v[1] * 8.0 + v[3] * 8.0 - v[4]) * (1.0 / (12.0 * h))
}

fn curve_invariants_at(surface: &RuledSurface, s: f64, v: f64) -> Option<(f64, f64, f64)> {
    let h = NUMERIC_STEP_S;
    let base = |x: f64| surface.base_and_ruling(x).0;
    let unit_tangent = |x: f64| {
        let d = d1_central4(&base, x, h);
        let n = d.norm();
        (n >= BASE_SPEED_FLOOR).then(|| d / n)
    };
    let tc = coherent_stencil(unit_tangent, s, h)?;
    let nn = coherent_stencil(|x| numeric_normal(surface, x, v), s, h)?;
    let cpp = d2_central4(&base, s, h);
    let tcp = stencil_d1(&tc, h);
    let np = stencil_d1(&nn, h);
    let n = nn[2];
    Some((cpp.dot(&n), n.cross(&tc[2]).dot(&tcp), n.cross(&np).dot(&tcp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{reparametrize_arclength, ParamCurve};
    use crate::framing::{bishop_from_frenet, bishop_from_frenet_anchored, frenet_frame, BishopData, DEFAULT_KAPPA_FLOOR};
    use crate::smarandache::build_surface;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn helix_bishop() -> BishopData {
        let c = reparametrize_arclength(&ParamCurve::standard_helix(), 201, 1e-12)
            .unwrap()
            .with_start(-PI);
        bishop_from_frenet_anchored(&frenet_frame(&c, DEFAULT_KAPPA_FLOOR).unwrap(), 0.0, 0.0)
    }

    fn circle_bishop() -> BishopData {
        let c = reparametrize_arclength(&ParamCurve::circle(1.0, (0.0, 2.0 * PI)).unwrap(), 201, 1e-12).unwrap();
        bishop_from_frenet(&frenet_frame(&c, DEFAULT_KAPPA_FLOOR).unwrap(), 0.0)
    }

    #[test]
    fn classification_thresholds() {
        assert_eq!(classify_point(0.0, 0.0, 1e-6), PointClass::PlanarPoint);
        assert_eq!(classify_point(0.0, 0.1, 1e-6), PointClass::Parabolic);
        assert_eq!(classify_point(-1e-3, 0.1, 1e-6), PointClass::Hyperbolic);
        assert_eq!(classify_point(1e-3, 0.1, 1e-6), PointClass::Elliptic);
    }

    #[test]
    fn degenerate_metric_is_singular() {
        let f = FundamentalForms { e: 1.0, f: 1.0, g: 1.0, l: 0.0, m: 0.0, n: 0.0 };
        assert!(curvatures(&f).is_err());
    }

    #[test]
    fn sphere_like_forms() {
        let f = FundamentalForms { e: 1.0, f: 0.0, g: 1.0, l: 1.0, m: 0.0, n: 1.0 };
        assert_eq!(curvatures(&f).unwrap(), (1.0, 1.0));
        let (k, h) = curvatures(&f.flipped()).unwrap();
        assert_eq!((k, h), (1.0, -1.0));
    }

    #[test]
    fn n1n2_forms_on_helix() {
        let b = helix_bishop();
        let s = build_surface(&b, SurfaceKind::N1n2, (-1.0, 1.0)).unwrap();
        for (sv, v) in [(-2.0, 0.5), (0.3, -0.8), (1.7, 0.2)] {
            let p = analyze_point(&s, sv, v, JetMode::Numeric, DEFAULT_KAPPA_EPS).unwrap();
            let f = s.frame_at(sv).unwrap().jet;
            assert_abs_diff_eq!(p.forms.g, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.forms.f, -(f.k1 + f.k2) * FRAC_1_SQRT_2, epsilon = 1e-8);
            assert_abs_diff_eq!(p.forms.metric_determinant(), v * v * f.kappa * f.kappa, epsilon = 1e-8);
            assert_abs_diff_eq!(p.forms.n, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(p.k, 0.0, epsilon = 1e-10);
            assert_eq!(p.class, PointClass::Parabolic);
        }
    }

    #[test]
    fn tn1_mean_curvature_at_origin() {
        let s = build_surface(&helix_bishop(), SurfaceKind::Tn1, (-1.0, 1.0)).unwrap();
        let p = analyze_point(&s, 0.0, 0.0, JetMode::Numeric, DEFAULT_KAPPA_EPS).unwrap();
        assert_abs_diff_eq!(p.h, -0.5, epsilon = 1e-6);
        let p = analyze_point(&s, 1.0, 0.3, JetMode::Numeric, DEFAULT_KAPPA_EPS).unwrap();
        assert_eq!(p.class, PointClass::Hyperbolic);
    }

    #[test]
    fn default_grid_skips_the_n1n2_singular_line() {
        let b = helix_bishop();
        let s = build_surface(&b, SurfaceKind::N1n2, (-1.0, 1.0)).unwrap();
        let g = SurfaceGrid::default_for(&s);
        assert_eq!(g.s.len(), 201);
        assert_eq!(g.v.len(), 40);
        assert!(g.v.iter().all(|v| v.abs() > 0.049));
        let t = build_surface(&b, SurfaceKind::Tn1, (-1.0, 1.0)).unwrap();
        assert_eq!(SurfaceGrid::default_for(&t).len(), 201 * 41);
    }

    #[test]
    fn circle_surfaces() {
        let b = circle_bishop();
        let g = SurfaceGrid::uniform(b.s_range(), 41, (-1.0, 1.0), 11).unwrap();
        let tn1 = build_surface(&b, SurfaceKind::Tn1, (-1.0, 1.0)).unwrap();
        let r = classify_surface(&tn1, &g, DEFAULT_KAPPA_EPS).unwrap();
        assert!(r.developable);
        assert!(!r.minimal);
        assert_abs_diff_eq!(r.cmc.unwrap(), -0.5, epsilon = 1e-6);
        let tn2 = build_surface(&b, SurfaceKind::Tn2, (-1.0, 1.0)).unwrap();
        let r = classify_surface(&tn2, &g, DEFAULT_KAPPA_EPS).unwrap();
        assert!(r.minimal);
        assert!(r.cmc.is_none());
        // v = 0 is singular on this surface
        assert_eq!(r.singular_points.len(), 41);
    }

    #[test]
    fn n1n2_striction_is_the_base() {
        let s = build_surface(&helix_bishop(), SurfaceKind::N1n2, (-1.0, 1.0)).unwrap();
        let c = striction_curve(&s);
        for (x, base) in c.samples.iter().zip(s.base_samples()) {
            assert_abs_diff_eq!(x.point.unwrap(), base, epsilon = 1e-8);
        }
    }

    #[test]
    fn tn1_striction_masked_at_origin() {
        let s = build_surface(&helix_bishop(), SurfaceKind::Tn1, (-1.0, 1.0)).unwrap();
        assert!(striction_point(&s, 0.0).is_none());
        let d = striction_defect(&s, 1.0).unwrap();
        assert!(d.normalized.abs() < 1e-6);
    }

    #[test]
    fn cylinder_striction_is_masked() {
        let s = RuledSurface::generic(|t| Vec3::new(t.cos(), t.sin(), 0.0), |_| Vec3::z(), (0.0, 6.0), 31, (0.0, 1.0)).unwrap();
        let c = striction_curve(&s);
        assert!(c.cylindrical);
        assert_eq!(c.valid_count(), 0);
    }

    #[test]
    fn n1n2_base_curve_invariants() {
        let s = build_surface(&helix_bishop(), SurfaceKind::N1n2, (-1.0, 1.0)).unwrap();
        let inv = base_curve_invariants(&s, 0.5).unwrap();
        let mut checked = 0;
        for i in 0..inv.s.len() {
            if inv.valid[i] {
                assert_abs_diff_eq!(inv.kn[i], 0.0, epsilon = 1e-5);
                assert_abs_diff_eq!(inv.kg[i], -FRAC_1_SQRT_2, epsilon = 1e-5);
                assert_abs_diff_eq!(inv.tg[i], 0.0, epsilon = 1e-5);
                checked += 1;
            }
        }
        assert!(checked > 190);
        assert!(base_curve_invariants(&s, 2.0).is_err());
    }
}
