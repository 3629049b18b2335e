//! The Smarandache ruled surfaces of a Bishop frame field.
//!
//! ```text
//! TN1:  χ(s, v) = (T + N1)/√2 + v N2
//! TN2:  χ(s, v) = (T + N2)/√2 + v N1
//! N1N2: χ(s, v) = (N1 + N2)/√2 + v T
//! ```
//!
//! A [`RuledSurface`] can also be built from an explicit base curve and ruling
//! ([`SurfaceKind::Generic`]), which is how the generic pipeline in
//! [`crate::geometry`] is tested on classical surfaces.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::closedform::{self, BishopJet1};
use crate::curve::CurveFn;
use crate::framing::BishopData;
use crate::numeric::{self, d1_central4, d2_central4, derivative_5pt, hermite_two_point};
use crate::{Error, Result, Vec3};

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// `‖χ_s × χ_v‖` below this marks a singular point.
pub const SINGULAR_FLOOR: f64 = 1e-9;

/// Step in `s` for numeric jets.
pub const NUMERIC_STEP_S: f64 = 2e-3;

/// Step in `v` for numeric jets. Surfaces are affine in `v`, so a unit step
/// loses nothing to truncation and keeps roundoff small.
pub const NUMERIC_STEP_V: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Tn1,
    Tn2,
    N1n2,
    Generic,
}

impl SurfaceKind {
    /// The three surfaces built from a Bishop frame.
    pub const NAMED: [SurfaceKind; 3] = [SurfaceKind::Tn1, SurfaceKind::Tn2, SurfaceKind::N1n2];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Tn1 => "tn1",
            SurfaceKind::Tn2 => "tn2",
            SurfaceKind::N1n2 => "n1n2",
            SurfaceKind::Generic => "generic",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tn1" => Ok(SurfaceKind::Tn1),
            "tn2" => Ok(SurfaceKind::Tn2),
            "n1n2" => Ok(SurfaceKind::N1n2),
            "generic" => Ok(SurfaceKind::Generic),
            other => Err(Error::input(alloc::format!("unknown surface kind `{other}`"))),
        }
    }
}

/// How partial derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetMode {
    /// From the frame equations, using interpolated curvatures and frames.
    ClosedForm,
    /// Central differences of [`RuledSurface::point`].
    Numeric,
}

/// Position and partial derivatives of a surface at one `(s, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub point: Vec3,
    pub xs: Vec3,
    pub xv: Vec3,
    pub xss: Vec3,
    pub xsv: Vec3,
    pub xvv: Vec3,
}

/// Bishop frame and curvature jet interpolated at one arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSample {
    pub t: Vec3,
    pub n1: Vec3,
    pub n2: Vec3,
    pub jet: BishopJet1,
}

impl FrameSample {
    /// `a T + b N1 + c N2`.
    pub fn combine(&self, c: [f64; 3]) -> Vec3 {
        self.t * c[0] + self.n1 * c[1] + self.n2 * c[2]
    }
}

/// Frame field with derivative data for Hermite interpolation between samples.
#[derive(Debug, Clone)]
struct FrameField {
    s0: f64,
    h: f64,
    // per sample: value and derivatives up to third order from the frame equations
    t: Vec<[Vec3; 4]>,
    n1: Vec<[Vec3; 4]>,
    n2: Vec<[Vec3; 4]>,
    k1: Vec<[f64; 3]>,
    k2: Vec<[f64; 3]>,
}

impl FrameField {
    fn new(b: &BishopData) -> Self {
        let (dk1, dk2) = b.curvature_derivatives();
        let h = b.ds();
        let (ddk1, ddk2) = (derivative_5pt(&dk1, h), derivative_5pt(&dk2, h));
        let n = b.len();
        let mut f = FrameField {
            s0: b.s[0],
            h,
            t: Vec::with_capacity(n),
            n1: Vec::with_capacity(n),
            n2: Vec::with_capacity(n),
            k1: Vec::with_capacity(n),
            k2: Vec::with_capacity(n),
        };
        for i in 0..n {
            let (t, n1, n2) = (b.t[i], b.n1[i], b.n2[i]);
            let (k1, k2, d1, d2, e1, e2) = (b.k1[i], b.k2[i], dk1[i], dk2[i], ddk1[i], ddk2[i]);
            let kk = k1 * k1 + k2 * k2;
            let tp = n1 * k1 + n2 * k2;
            let tpp = n1 * d1 + n2 * d2 - t * kk;
            let tppp = n1 * e1 + n2 * e2 - t * (3.0 * (k1 * d1 + k2 * d2)) - tp * kk;
            f.t.push([t, tp, tpp, tppp]);
            f.n1.push([n1, -t * k1, -t * d1 - tp * k1, -t * e1 - tp * (2.0 * d1) - tpp * k1]);
            f.n2.push([n2, -t * k2, -t * d2 - tp * k2, -t * e2 - tp * (2.0 * d2) - tpp * k2]);
            f.k1.push([k1, d1, e1]);
            f.k2.push([k2, d2, e2]);
        }
        f
    }

    fn len(&self) -> usize {
        self.t.len()
    }

    fn eval(&self, s: f64) -> FrameSample {
        let (i, u) = numeric::locate_uniform(self.s0, self.h, self.len(), s);
        let q = |d: &[[Vec3; 4]]| hermite_two_point([d[i], d[i + 1]], self.h, u)[0];
        let c = |d: &[[f64; 3]]| hermite_two_point([d[i], d[i + 1]], self.h, u);
        let t = q(&self.t).normalize();
        let n1 = q(&self.n1);
        let n1 = (n1 - t * t.dot(&n1)).normalize();
        let n2 = t.cross(&n1);
        let [k1, dk1, _] = c(&self.k1);
        let [k2, dk2, _] = c(&self.k2);
        FrameSample {
            t,
            n1,
            n2,
            jet: BishopJet1::new(k1, k2, dk1, dk2),
        }
    }
}

#[derive(Clone)]
enum Source {
    Bishop { data: BishopData, field: FrameField },
    Explicit { base: CurveFn, ruling: CurveFn, n_samples: usize },
}

/// A ruled surface `χ(s, v) = c(s) + v X(s)`.
#[derive(Clone)]
pub struct RuledSurface {
    kind: SurfaceKind,
    source: Source,
    s_range: (f64, f64),
    v_range: (f64, f64),
}

impl fmt::Debug for RuledSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuledSurface")
            .field("kind", &self.kind)
            .field("s_range", &self.s_range)
            .field("v_range", &self.v_range)
            .finish_non_exhaustive()
    }
}

fn check_range(name: &str, r: (f64, f64)) -> Result<()> {
    if !(r.0.is_finite() && r.1.is_finite() && r.0 < r.1) {
        return Err(Error::input(alloc::format!("{name} range must be finite with min < max")));
    }
    Ok(())
}

/// Builds one of the three Smarandache surfaces over the frame field `bishop`.
pub fn build_surface(bishop: &BishopData, kind: SurfaceKind, v_range: (f64, f64)) -> Result<RuledSurface> {
    if kind == SurfaceKind::Generic {
        return Err(Error::input("a generic surface needs an explicit base curve and ruling"));
    }
    if bishop.len() < 5 {
        return Err(Error::input("frame field needs at least 5 samples"));
    }
    check_range("v", v_range)?;
    Ok(RuledSurface {
        kind,
        s_range: bishop.s_range(),
        v_range,
        source: Source::Bishop {
            data: bishop.clone(),
            field: FrameField::new(bishop),
        },
    })
}

impl RuledSurface {
    /// A surface from an explicit base curve and ruling, both smooth on `s_range`.
    ///
    /// `n_samples` sets the default sampling in `s` used by grids and striction curves.
    pub fn generic<B, X>(base: B, ruling: X, s_range: (f64, f64), n_samples: usize, v_range: (f64, f64)) -> Result<Self>
    where
        B: Fn(f64) -> Vec3 + Send + Sync + 'static,
        X: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        check_range("s", s_range)?;
        check_range("v", v_range)?;
        if n_samples < 2 {
            return Err(Error::input("need at least 2 samples in s"));
        }
        Ok(RuledSurface {
            kind: SurfaceKind::Generic,
            s_range,
            v_range,
            source: Source::Explicit {
                base: Arc::new(base),
                ruling: Arc::new(ruling),
                n_samples,
            },
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn s_range(&self) -> (f64, f64) {
        self.s_range
    }

    pub fn v_range(&self) -> (f64, f64) {
        self.v_range
    }

    pub fn bishop(&self) -> Option<&BishopData> {
        match &self.source {
            Source::Bishop { data, .. } => Some(data),
            Source::Explicit { .. } => None,
        }
    }

    /// The sample grid in `s`: the frame field's grid, or a uniform grid for generic surfaces.
    pub fn s_samples(&self) -> Vec<f64> {
        match &self.source {
            Source::Bishop { data, .. } => data.s.clone(),
            Source::Explicit { n_samples, .. } => {
                let (a, b) = self.s_range;
                (0..*n_samples)
                    .map(|i| a + (b - a) * i as f64 / (*n_samples - 1) as f64)
                    .collect()
            }
        }
    }

    /// Set on N1N2 surfaces whose `v` range contains the singular line `v = 0`.
    pub fn singular_line_warning(&self) -> bool {
        self.kind == SurfaceKind::N1n2 && self.v_range.0 <= 0.0 && self.v_range.1 >= 0.0
    }

    /// Interpolated frame and curvature jet, for surfaces built from a frame field.
    pub fn frame_at(&self, s: f64) -> Option<FrameSample> {
        match &self.source {
            Source::Bishop { field, .. } => Some(field.eval(s)),
            Source::Explicit { .. } => None,
        }
    }

    /// Base curve and ruling at `s`, without a range check.
    pub fn base_and_ruling(&self, s: f64) -> (Vec3, Vec3) {
        match &self.source {
            Source::Bishop { field, .. } => {
                let f = field.eval(s);
                match self.kind {
                    SurfaceKind::Tn1 => ((f.t + f.n1) * FRAC_1_SQRT_2, f.n2),
                    SurfaceKind::Tn2 => ((f.t + f.n2) * FRAC_1_SQRT_2, f.n1),
                    _ => ((f.n1 + f.n2) * FRAC_1_SQRT_2, f.t),
                }
            }
            Source::Explicit { base, ruling, .. } => (base(s), ruling(s)),
        }
    }

    /// `c(s_i)` at the sample grid.
    pub fn base_samples(&self) -> Vec<Vec3> {
        self.s_samples().into_iter().map(|s| self.base_and_ruling(s).0).collect()
    }

    /// `X(s_i)` at the sample grid.
    pub fn ruling_samples(&self) -> Vec<Vec3> {
        self.s_samples().into_iter().map(|s| self.base_and_ruling(s).1).collect()
    }

    fn check_domain(&self, s: f64, v: f64) -> Result<()> {
        let inside = |x: f64, (a, b): (f64, f64)| {
            let slack = 1e-12 * (1.0 + a.abs().max(b.abs()));
            x >= a - slack && x <= b + slack
        };
        if !inside(s, self.s_range) {
            return Err(Error::Domain { value: s, min: self.s_range.0, max: self.s_range.1 });
        }
        if !inside(v, self.v_range) {
            return Err(Error::Domain { value: v, min: self.v_range.0, max: self.v_range.1 });
        }
        Ok(())
    }

    /// `χ(s, v) = c(s) + v X(s)`.
    pub fn point(&self, s: f64, v: f64) -> Result<Vec3> {
        self.check_domain(s, v)?;
        Ok(self.point_unchecked(s, v))
    }

    /// [`point`](Self::point) without the domain check; frame-field surfaces
    /// extrapolate their end cells outside the grid.
    pub fn point_unchecked(&self, s: f64, v: f64) -> Vec3 {
        let (c, x) = self.base_and_ruling(s);
        c + x * v
    }

    pub fn surface_jet(&self, s: f64, v: f64, mode: JetMode) -> Result<SurfaceJet> {
        self.check_domain(s, v)?;
        match mode {
            JetMode::Numeric => Ok(self.numeric_jet(s, v)),
            JetMode::ClosedForm => self.closed_jet(s, v),
        }
    }

    fn numeric_jet(&self, s: f64, v: f64) -> SurfaceJet {
        let hs = NUMERIC_STEP_S;
        let hv = NUMERIC_STEP_V;
        let along_s = |sigma: f64| self.point_unchecked(sigma, v);
        let v_slope = |sigma: f64| (self.point_unchecked(sigma, v + hv) - self.point_unchecked(sigma, v - hv)) * (0.5 / hv);
        let p = self.point_unchecked(s, v);
        let (pp, pm) = (self.point_unchecked(s, v + hv), self.point_unchecked(s, v - hv));
        SurfaceJet {
            point: p,
            xs: d1_central4(&along_s, s, hs),
            xv: (pp - pm) * (0.5 / hv),
            xss: d2_central4(&along_s, s, hs),
            xsv: d1_central4(&v_slope, s, hs),
            xvv: (pp - p * 2.0 + pm) * (1.0 / (hv * hv)),
        }
    }

    fn closed_jet(&self, s: f64, v: f64) -> Result<SurfaceJet> {
        let f = self.frame_at(s).ok_or(Error::Unsupported(self.kind))?;
        let BishopJet1 { k1, k2, dk1, dk2, .. } = f.jet;
        let kk = k1 * k1 + k2 * k2;
        let r = FRAC_1_SQRT_2;
        let jet = match self.kind {
            SurfaceKind::Tn1 => {
                let a = r * k1 + v * k2;
                SurfaceJet {
                    point: (f.t + f.n1) * r + f.n2 * v,
                    xs: f.combine([-a, r * k1, r * k2]),
                    xv: f.n2,
                    xss: f.combine([-r * (kk + dk1) - v * dk2, r * dk1 - a * k1, r * dk2 - a * k2]),
                    xsv: f.t * -k2,
                    xvv: Vec3::zeros(),
                }
            }
            SurfaceKind::Tn2 => {
                let a = r * k2 + v * k1;
                SurfaceJet {
                    point: (f.t + f.n2) * r + f.n1 * v,
                    xs: f.combine([-a, r * k1, r * k2]),
                    xv: f.n1,
                    xss: f.combine([-r * (kk + dk2) - v * dk1, r * dk1 - a * k1, r * dk2 - a * k2]),
                    xsv: f.t * -k1,
                    xvv: Vec3::zeros(),
                }
            }
            SurfaceKind::N1n2 => SurfaceJet {
                point: (f.n1 + f.n2) * r + f.t * v,
                xs: f.combine([-r * (k1 + k2), v * k1, v * k2]),
                xv: f.t,
                xss: f.combine([-(v * kk + r * (dk1 + dk2)), v * dk1 - r * k1 * (k1 + k2), v * dk2 - r * k2 * (k1 + k2)]),
                xsv: f.combine([0.0, k1, k2]),
                xvv: Vec3::zeros(),
            },
            SurfaceKind::Generic => return Err(Error::Unsupported(self.kind)),
        };
        Ok(jet)
    }

    /// Unit normal oriented along `χ_s × χ_v` in both modes.
    ///
    /// In closed-form mode the published normal is multiplied by
    /// [`closedform::normal_orientation`].
    pub fn unit_normal(&self, s: f64, v: f64, mode: JetMode) -> Result<Vec3> {
        let jet = self.surface_jet(s, v, mode)?;
        let cross = jet.xs.cross(&jet.xv);
        let norm = cross.norm();
        if !(norm >= SINGULAR_FLOOR) {
            return Err(Error::SingularPoint { s, v });
        }
        match mode {
            JetMode::Numeric => Ok(cross / norm),
            JetMode::ClosedForm => {
                let f = self.frame_at(s).ok_or(Error::Unsupported(self.kind))?;
                let c = closedform::closed_normals(&f.jet, v, self.kind).map_err(|_| Error::SingularPoint { s, v })?;
                Ok(f.combine(c) * closedform::normal_orientation(self.kind, v))
            }
        }
    }
}
