//! Closed-form curvature expressions for the three Smarandache ruled surfaces.
//!
//! Everything here is a scalar function of the Bishop curvatures, their first
//! derivatives and the ruling parameter `v`. The expressions are transcribed as
//! published so they can be compared against the numeric pipeline in
//! [`crate::geometry`]; suspected misprints are kept, not corrected.
//!
//! Normals and mean curvatures are returned in the published orientation. The
//! numeric pipeline orients by `χ_s × χ_v`; [`normal_orientation`] and
//! [`mean_curvature_orientation`] give the factor that converts one into the
//! other.

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::smarandache::SurfaceKind;
use crate::{Error, Result};

const SQRT_2: f64 = core::f64::consts::SQRT_2;

/// Denominators below this are rejected.
pub const DENOMINATOR_FLOOR: f64 = 1e-10;

/// Bishop curvatures and their first derivatives at one arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BishopJet1 {
    pub k1: f64,
    pub k2: f64,
    pub dk1: f64,
    pub dk2: f64,
    pub kappa: f64,
}

impl BishopJet1 {
    pub fn new(k1: f64, k2: f64, dk1: f64, dk2: f64) -> Self {
        BishopJet1 { k1, k2, dk1, dk2, kappa: k1.hypot(k2) }
    }

    /// The jet with the roles of the two normals exchanged.
    pub fn swapped(&self) -> Self {
        BishopJet1::new(self.k2, self.k1, self.dk2, self.dk1)
    }
}

fn floored(value: f64) -> Result<f64> {
    if value.abs() < DENOMINATOR_FLOOR || !value.is_finite() {
        Err(Error::SingularDenominator { value })
    } else {
        Ok(value)
    }
}

/// `k1² + v²k2² + √2 v k1 k2`, the squared length of `χ_s × χ_v` (times 2) on TN1.
fn tn1_radicand(j: &BishopJet1, v: f64) -> f64 {
    j.k1 * j.k1 + v * v * j.k2 * j.k2 + SQRT_2 * v * j.k1 * j.k2
}

/// `k2² + v²k1² + √2 v k1 k2`, the TN2 counterpart of [`tn1_radicand`].
fn tn2_radicand(j: &BishopJet1, v: f64) -> f64 {
    j.k2 * j.k2 + v * v * j.k1 * j.k1 + SQRT_2 * v * j.k1 * j.k2
}

/// Gaussian and mean curvature of the TN1 surface.
pub fn tn1_k_h(j: &BishopJet1, v: f64) -> Result<(f64, f64)> {
    let (k1, k2, d1, d2) = (j.k1, j.k2, j.dk1, j.dk2);
    let den = floored(tn1_radicand(j, v))?;
    let k = -0.5 * (k1 * k2 / den).powi(2);
    let num = k1 * k2 * k2 * (1.0 - 2.0 * v * v) + v * k2 * (d1 * SQRT_2 - 2.0 * k1 * k1 * SQRT_2)
        - v * k1 * d2 * SQRT_2
        - 2.0 * k1 * k1 * k1;
    let h = num / (4.0 * den * den.sqrt());
    Ok((k, h))
}

/// Gaussian and mean curvature of the TN2 surface.
pub fn tn2_k_h(j: &BishopJet1, v: f64) -> Result<(f64, f64)> {
    let (k1, k2, d1, d2) = (j.k1, j.k2, j.dk1, j.dk2);
    let den = floored(tn2_radicand(j, v))?;
    let k = -0.5 * (k1 * k2 / den).powi(2);
    let num = k1 * k1 * k2 * (1.0 - 2.0 * v * v) + v * k1 * (d2 * SQRT_2 - 2.0 * k2 * k2 * SQRT_2)
        - v * d1 * k2 * SQRT_2
        - 2.0 * k2 * k2 * k2;
    let h = num / (4.0 * den * den.sqrt());
    Ok((k, h))
}

/// Gaussian and mean curvature of the N1N2 surface. `K` is identically zero.
pub fn n1n2_k_h(j: &BishopJet1, v: f64) -> Result<(f64, f64)> {
    let den = floored(2.0 * v * j.kappa.powi(3))?;
    Ok((0.0, (j.dk1 * j.k2 - j.k1 * j.dk2) / den))
}

pub fn closed_k_h(j: &BishopJet1, v: f64, kind: SurfaceKind) -> Result<(f64, f64)> {
    match kind {
        SurfaceKind::Tn1 => tn1_k_h(j, v),
        SurfaceKind::Tn2 => tn2_k_h(j, v),
        SurfaceKind::N1n2 => n1n2_k_h(j, v),
        SurfaceKind::Generic => Err(Error::Unsupported(kind)),
    }
}

/// Unit normal as published, as coefficients in the `(T, N1, N2)` basis.
pub fn closed_normals(j: &BishopJet1, v: f64, kind: SurfaceKind) -> Result<[f64; 3]> {
    let (k1, k2) = (j.k1, j.k2);
    match kind {
        SurfaceKind::Tn1 => {
            let den = 2.0 * floored(tn1_radicand(j, v))?.sqrt();
            Ok([SQRT_2 * k1 / den, (SQRT_2 * k1 + 2.0 * v * k2) / den, 0.0])
        }
        SurfaceKind::Tn2 => {
            let den = 2.0 * floored(tn2_radicand(j, v))?.sqrt();
            Ok([-SQRT_2 * k2 / den, 0.0, -(SQRT_2 * k2 + 2.0 * v * k1) / den])
        }
        SurfaceKind::N1n2 => {
            let kappa = floored(j.kappa)?;
            Ok([0.0, k2 / kappa, -k1 / kappa])
        }
        SurfaceKind::Generic => Err(Error::Unsupported(kind)),
    }
}

/// Factor `σ` with `(χ_s × χ_v)/‖χ_s × χ_v‖ = σ · closed_normals(..)`.
///
/// On N1N2, `χ_s × χ_v = v (k2 N1 − k1 N2)`, so the numeric normal flips with
/// the sign of `v` while the published one does not.
pub fn normal_orientation(kind: SurfaceKind, v: f64) -> f64 {
    match kind {
        SurfaceKind::N1n2 if v < 0.0 => -1.0,
        _ => 1.0,
    }
}

/// Factor `σ` with `H(χ_s × χ_v) = σ · H(published)`.
///
/// This differs from [`normal_orientation`] on TN2: the published TN2 mean
/// curvature belongs to the normal opposite to the published TN2 normal.
pub fn mean_curvature_orientation(kind: SurfaceKind, v: f64) -> f64 {
    match kind {
        SurfaceKind::Tn2 => -1.0,
        _ => normal_orientation(kind, v),
    }
}

/// Striction coefficient `u` in `ς = c + u X`, in two versions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictionCoefficients {
    /// As printed: `-k1 k2/√2` for both TN1 and TN2.
    pub published: f64,
    /// `-⟨c', X'⟩/‖X'‖²`; `None` when `‖X'‖²` is below the floor.
    pub from_definition: Option<f64>,
}

/// Floor on `‖X'‖²` for the striction formula.
pub const STRICTION_FLOOR: f64 = 1e-10;

pub fn closed_striction(j: &BishopJet1, kind: SurfaceKind) -> Result<StrictionCoefficients> {
    let (k1, k2) = (j.k1, j.k2);
    let out = match kind {
        SurfaceKind::Tn1 => StrictionCoefficients {
            published: -k1 * k2 / SQRT_2,
            from_definition: (k2 * k2 >= STRICTION_FLOOR).then(|| -k1 / (SQRT_2 * k2)),
        },
        SurfaceKind::Tn2 => StrictionCoefficients {
            published: -k1 * k2 / SQRT_2,
            from_definition: (k1 * k1 >= STRICTION_FLOOR).then(|| -k2 / (SQRT_2 * k1)),
        },
        SurfaceKind::N1n2 => StrictionCoefficients {
            published: 0.0,
            from_definition: Some(0.0),
        },
        SurfaceKind::Generic => return Err(Error::Unsupported(kind)),
    };
    Ok(out)
}

/// Intermediate coefficient vectors of the curve-on-surface formulas, in the
/// `(T, N1, N2)` basis.
///
/// TN1 fills `eta` (derivative of the base curve's unit tangent) and `lambda`
/// (derivative of the normal); TN2 fills `omega` and `alpha` likewise.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoefficientTriples {
    pub eta: Option<[f64; 3]>,
    pub lambda: Option<[f64; 3]>,
    pub omega: Option<[f64; 3]>,
    pub alpha: Option<[f64; 3]>,
}

/// Normal curvature, geodesic curvature and geodesic torsion of the base curve,
/// as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveInvariants {
    pub kn: f64,
    pub kg: f64,
    pub tg: f64,
}

pub fn closed_curve_invariants(j: &BishopJet1, v: f64, kind: SurfaceKind) -> Result<(CurveInvariants, CoefficientTriples)> {
    match kind {
        SurfaceKind::Tn1 => tn1_curve_invariants(j, v),
        SurfaceKind::Tn2 => tn2_curve_invariants(j, v),
        SurfaceKind::N1n2 => {
            floored(j.kappa)?;
            Ok((CurveInvariants { kn: 0.0, kg: -j.kappa, tg: 0.0 }, CoefficientTriples::default()))
        }
        SurfaceKind::Generic => Err(Error::Unsupported(kind)),
    }
}

fn tn1_curve_invariants(j: &BishopJet1, v: f64) -> Result<(CurveInvariants, CoefficientTriples)> {
    let (k1, k2, d1, d2) = (j.k1, j.k2, j.dk1, j.dk2);
    let r = floored(v * v * k2 * k2 + k1 * k2 * v * SQRT_2 + k1 * k1)?;
    let sr = r.sqrt();
    let q = floored(2.0 * k2 * k2 + k1 * k1)?;

    let kn = (k1 * (d2 + k1 * k1 + k2 * k1 + (SQRT_2 * v + 1.0) * k2 * k2) - d1 * (k2 * SQRT_2 * v + k1)) / (2.0 * sr);
    let kg = (k1 * k1 * SQRT_2 * (k2 * k2 * v * SQRT_2 - d2)
        + k1 * SQRT_2 * (2.0 * k2.powi(3) + d1 * k2)
        + k2 * (4.0 * k2.powi(3) * v + k1.powi(3) * SQRT_2))
        / (2.0 * q * sr);

    let e = 1.0 / (k2 * k2 + 2.0 * k1 * k1).powf(1.5);
    let eta = [
        e * (-k2 * k2 * (k2 * k2 + 3.0 * k1 * k1) - 2.0 * k1.powi(4) + k2 * (k1 * d2 - k2 * d1)),
        e * (-k1 * k1 * (k2 * k2 + 2.0 * k1 * k1) + k2 * (k2 * d1 - k1 * d2)),
        e * (k1 * (-k2.powi(3) - 2.0 * (k2 * k1 * k1 - k1 * d2 + k2 * d1))),
    ];
    let l = 1.0 / (2.0 * r * sr);
    let lambda = [
        l * (d1 * k2 * v * (k2 * v * SQRT_2 + k1) - k1 * d2 * v * (k2 * SQRT_2 * v + k1)
            - k1 * k2 * k2 * v * (3.0 * k1 * v * SQRT_2 + 2.0 * k2 * v * v)
            - k1.powi(3) * (k1 * SQRT_2 + 4.0 * k2 * v)),
        l * (k1 * (k1 * k2 * k2 * SQRT_2 * v * v + 2.0 * k2 * k1 * k1 * v - k2 * d1 * v + k1.powi(3) * SQRT_2 + k1 * d2 * v)),
        l * (k1 * k2 * SQRT_2 * r),
    ];
    let tg = (eta[0] * lambda[2] * (SQRT_2 * k1 + 2.0 * k2 * v) - eta[2] * lambda[0] * (k1 * SQRT_2 + 2.0 * k2 * v)
        + k1 * SQRT_2 * (eta[2] * lambda[1] - lambda[2] * eta[1]))
        / (2.0 * sr);

    Ok((
        CurveInvariants { kn, kg, tg },
        CoefficientTriples {
            eta: Some(eta),
            lambda: Some(lambda),
            ..Default::default()
        },
    ))
}

fn tn2_curve_invariants(j: &BishopJet1, v: f64) -> Result<(CurveInvariants, CoefficientTriples)> {
    let (k1, k2, d1, d2) = (j.k1, j.k2, j.dk1, j.dk2);
    let r = floored(k1 * k2 * v * SQRT_2 + v * v * k1 * k1 + k2 * k2)?;
    let sr = r.sqrt();
    let q = floored(2.0 * k2 * k2 + k1 * k1)?;

    let kn = (k1 * v * SQRT_2 * (k2 * k2 - d2) + k2 * (k1 * k1 + 2.0 * k2 * k2)) / (2.0 * sr);
    let kg = (2.0 * (d1 * k2 - k1 * d2) * (SQRT_2 * k2 + k1 * v)
        - k1 * k2 * SQRT_2 * (2.0 * k2 * k2 + k1 * k1)
        - 2.0 * k1 * k1 * v * (k1 * k1 + 4.0 * k2 * k2))
        / (2.0 * q * sr);

    let w = 1.0 / q.powf(1.5);
    let omega = [
        w * (k1 * (d1 * k2 - d2 * k1) - 2.0 * k2.powi(4) - 3.0 * k1 * k1 * k2 * k2 - k1.powi(4)),
        w * (k2 * (2.0 * (d1 * k2 - d2 * k1) - 2.0 * k2 * k2 * k1 - k1.powi(3))),
        w * (k1 * (d2 * k1 - d1 * k2) - 2.0 * k2.powi(4) - k1 * k1 * k2 * k2),
    ];
    // printed with `k1'k2 - k1k2` in the first row and `-k1k2 + k1'k2` in the third
    let a = 1.0 / (2.0 * r * sr);
    let alpha = [
        a * ((SQRT_2 * k1 * v + k2) * (d1 * k2 - k1 * k2) * v
            + k1 * k1 * k2 * v * v * (3.0 * k2 * SQRT_2 + 2.0 * k1 * v)
            + k2.powi(3) * (k2 * SQRT_2 + 4.0 * k1 * v)),
        a * (-k1 * k2 * SQRT_2 * r),
        a * (k2 * (-k2 * SQRT_2 * (k1 * k1 * v * v + k2 * k2) - v * (2.0 * k1 * k2 * k2 - k1 * k2 + d1 * k2))),
    ];
    let tg = ((alpha[1] * omega[0] - alpha[0] * omega[1]) * (k2 * SQRT_2 + 2.0 * k1 * v)
        + k2 * SQRT_2 * (alpha[2] * omega[1] - alpha[1] * omega[2]))
        / (2.0 * sr);

    Ok((
        CurveInvariants { kn, kg, tg },
        CoefficientTriples {
            omega: Some(omega),
            alpha: Some(alpha),
            ..Default::default()
        },
    ))
}
