//! Closed-form frame and surfaces of the unit-speed helix
//! `γ(s) = (√2/2)(cos s, sin s, s)`, with Bishop angle `θ = s√2/2`.
//!
//! These are written out component by component, independently of the frame
//! machinery, and serve as the reference values for the helix.

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::Vec3;

const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

fn angles(s: f64) -> (f64, f64, f64, f64) {
    let th = s * R;
    (s.sin(), s.cos(), th.sin(), th.cos())
}

pub fn helix_point(s: f64) -> Vec3 {
    Vec3::new(R * s.cos(), R * s.sin(), R * s)
}

pub fn helix_k1(s: f64) -> f64 {
    R * (s * R).cos()
}

pub fn helix_k2(s: f64) -> f64 {
    R * (s * R).sin()
}

pub fn helix_dk1(s: f64) -> f64 {
    -0.5 * (s * R).sin()
}

pub fn helix_dk2(s: f64) -> f64 {
    0.5 * (s * R).cos()
}

pub fn helix_t(s: f64) -> Vec3 {
    Vec3::new(-R * s.sin(), R * s.cos(), R)
}

/// `N1 = cos θ N - sin θ B` with `N = -(cos s, sin s, 0)` and
/// `B = (√2/2)(sin s, -cos s, 1)`.
pub fn helix_n1(s: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(-ct * cs - R * st * sn, -ct * sn + R * st * cs, -R * st)
}

/// `N1` with the z-component sign as it is commonly printed, `+(√2/2) sin θ`.
///
/// That vector fails `⟨N1, T⟩ = 0` (the product is `sin θ`), and the printed
/// surfaces are built from [`helix_n1`]; kept only to quantify the mismatch.
pub fn helix_n1_printed(s: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(-ct * cs - R * st * sn, -ct * sn + R * st * cs, R * st)
}

pub fn helix_n2(s: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(-st * cs + R * ct * sn, -st * sn - R * ct * cs, R * ct)
}

/// TN1 surface of the helix, as displayed component by component.
pub fn helix_tn1(s: f64, v: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(
        (-sn / 2.0 - v * cs) * st + (-cs * R + v * sn * R) * ct - sn / 2.0,
        (cs / 2.0 - v * sn) * st + (-sn * R - v * cs * R) * ct + cs / 2.0,
        -0.5 * st + 0.5 * v * ct * core::f64::consts::SQRT_2 + 0.5,
    )
}

/// TN2 surface of the helix.
pub fn helix_tn2(s: f64, v: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(
        (-cs * R - v * sn * R) * st + (sn / 2.0 - v * cs) * ct - sn / 2.0,
        (-sn * R + v * cs * R) * st + (-cs / 2.0 - v * sn) * ct + cs / 2.0,
        -R * v * st + 0.5 * ct + 0.5,
    )
}

/// N1N2 surface of the helix, `(N1 + N2)/√2 + v T`.
pub fn helix_n1n2(s: f64, v: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(
        R * ((-cs - sn * R) * st + (sn * R - cs) * ct - v * sn),
        R * ((-sn + cs * R) * st + (-cs * R - sn) * ct + v * cs),
        0.5 * (ct - st) + R * v,
    )
}

/// N1N2 surface with the z-component as commonly printed,
/// `(1 + cos θ)/2 - v (√2/2) sin θ`, which coincides with the TN2 z-component
/// and not with `(N1 + N2)/√2 + v T`.
pub fn helix_n1n2_printed(s: f64, v: f64) -> Vec3 {
    let (sn, cs, st, ct) = angles(s);
    Vec3::new(
        R * ((-cs - sn * R) * st + (sn * R - cs) * ct - v * sn),
        R * ((-sn + cs * R) * st + (-cs * R - sn) * ct + v * cs),
        0.5 * (-v * st * core::f64::consts::SQRT_2 + ct + 1.0),
    )
}
