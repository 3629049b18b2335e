//! Frenet and Bishop frames along unit-speed curves.
//!
//! The Bishop frame `{T, N1, N2}` rotates minimally about `T`: both normals
//! have derivatives parallel to `T`. It is related to the Frenet frame by the
//! angle `θ` with `θ' = τ`:
//!
//! ```text
//! N  = cos θ N1 + sin θ N2        k1 = κ cos θ
//! B  = -sin θ N1 + cos θ N2       k2 = κ sin θ
//! ```

use alloc::vec::Vec;

use crate::curve::{hold_where_flat, ArcLengthCurve, Frame};
#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::numeric::{self, cumulative_corrected_trapezoid, derivative_5pt};
use crate::{Error, Result, Vec3};

/// Curvature below which the Frenet normal is considered undefined.
pub const DEFAULT_KAPPA_FLOOR: f64 = 1e-7;

/// Sampled Frenet apparatus `{T, N, B, κ, τ}` along an arclength grid.
#[derive(Debug, Clone)]
pub struct FrenetData {
    pub s: Vec<f64>,
    pub t: Vec<Vec3>,
    pub n: Vec<Vec3>,
    pub b: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    /// Samples where `κ` fell below the floor; `N`, `B` and `τ` there are fill-ins.
    pub degenerate: Vec<bool>,
}

impl FrenetData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn ds(&self) -> f64 {
        (self.s[self.s.len() - 1] - self.s[0]) / (self.s.len() - 1) as f64
    }
}

/// Sampled Bishop frame with its curvatures and rotation angle.
#[derive(Debug, Clone)]
pub struct BishopData {
    pub s: Vec<f64>,
    pub t: Vec<Vec3>,
    pub n1: Vec<Vec3>,
    pub n2: Vec<Vec3>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    /// Angle from `N1` to the Frenet normal, continuous in `s`.
    pub theta: Vec<f64>,
    pub degenerate: Vec<bool>,
}

impl BishopData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn ds(&self) -> f64 {
        (self.s[self.s.len() - 1] - self.s[0]) / (self.s.len() - 1) as f64
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.s[0], self.s[self.s.len() - 1])
    }

    pub fn frame(&self, i: usize) -> Frame {
        Frame::new(self.t[i], self.n1[i], self.n2[i])
    }

    pub fn kappa(&self, i: usize) -> f64 {
        self.k1[i].hypot(self.k2[i])
    }

    /// `(k1', k2')` on the grid by five-point differences.
    pub fn curvature_derivatives(&self) -> (Vec<f64>, Vec<f64>) {
        let h = self.ds();
        (derivative_5pt(&self.k1, h), derivative_5pt(&self.k2, h))
    }

    /// Rotates the normal pair by a constant angle, the gauge freedom of the frame.
/// Equivalent to starting the Bishop angle at `θ0 + delta`.
    pub fn rotated(&self, delta: f64) -> BishopData {
        let (sn, cs) = (delta.sin(), delta.cos());
        let mut out = self.clone();
        for i in 0..self.len() {
            let (n1, n2) = (self.n1[i], self.n2[i]);
            out.n1[i] = n1 * cs - n2 * sn;
            out.n2[i] = n1 * sn + n2 * cs;
            let (k1, k2) = (self.k1[i], self.k2[i]);
            out.k1[i] = k1 * cs - k2 * sn;
            out.k2[i] = k1 * sn + k2 * cs;
            out.theta[i] = self.theta[i] + delta;
        }
        out
    }
}

/// Frenet frame of a unit-speed sampled curve.
///
/// `T = γ'`, `κ = ‖γ''‖`, `N = γ''/κ`, `B = T × N`, and
/// `τ = ⟨γ' × γ'', γ'''⟩ / κ²`.
pub fn frenet_frame(curve: &ArcLengthCurve, kappa_floor: f64) -> Result<FrenetData> {
    let n = curve.len();
    if n < 5 {
        return Err(Error::input("Frenet frame needs at least 5 samples"));
    }
    let mut t = Vec::with_capacity(n);
    let mut normal = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    let mut degenerate = Vec::with_capacity(n);
    for i in 0..n {
        let ti = curve.d1[i].normalize();
        let acc = curve.d2[i] - ti * ti.dot(&curve.d2[i]);
        let k = curve.d2[i].norm();
        t.push(ti);
        kappa.push(k);
        if k < kappa_floor {
            degenerate.push(true);
            normal.push(None);
        } else {
            degenerate.push(false);
            normal.push(Some(acc.normalize()));
        }
    }
    let bad = degenerate.iter().filter(|d| **d).count();
    if 2 * bad > n {
        return Err(Error::FrameUndefined { degenerate: bad, total: n });
    }

    // fill undefined normals from the nearest defined one, projected off T
    let mut filled: Vec<Vec3> = Vec::with_capacity(n);
    let first = normal.iter().position(|x| x.is_some()).unwrap();
    let mut last = normal[first].unwrap();
    for i in 0..n {
        let v = match normal[i] {
            Some(v) => {
                last = v;
                v
            }
            None => {
                let p = last - t[i] * t[i].dot(&last);
                if p.norm() > 1e-12 {
                    p.normalize()
                } else {
                    any_perpendicular(&t[i])
                }
            }
        };
        filled.push(v);
    }
    let b: Vec<Vec3> = t.iter().zip(&filled).map(|(t, n)| t.cross(n)).collect();
    let tau = (0..n)
        .map(|i| {
            if degenerate[i] {
                0.0
            } else {
                curve.d1[i].cross(&curve.d2[i]).dot(&curve.d3[i]) / (kappa[i] * kappa[i])
            }
        })
        .collect();

    Ok(FrenetData {
        s: curve.s.clone(),
        t,
        n: filled,
        b,
        kappa,
        tau,
        degenerate,
    })
}

fn any_perpendicular(t: &Vec3) -> Vec3 {
    let probe = if t.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    (probe - t * t.dot(&probe)).normalize()
}

/// Bishop frame obtained by rotating the Frenet normals through
/// `θ(s) = θ0 + ∫ τ ds`, with `θ(s[0]) = theta0`.
pub fn bishop_from_frenet(frenet: &FrenetData, theta0: f64) -> BishopData {
    let s0 = frenet.s[0];
    bishop_from_frenet_anchored(frenet, s0, theta0)
}

/// Like [`bishop_from_frenet`], but pins `θ(s_anchor) = theta_at_anchor`.
///
/// The anchor may be any arclength inside the grid; `θ` between samples is
/// interpolated with cubic Hermite on `(θ, τ)`.
pub fn bishop_from_frenet_anchored(frenet: &FrenetData, s_anchor: f64, theta_at_anchor: f64) -> BishopData {
    let h = frenet.ds();
    let dtau = derivative_5pt(&frenet.tau, h);
    let mut theta = cumulative_corrected_trapezoid(&frenet.tau, &dtau, h);
    let (i, u) = numeric::locate_uniform(frenet.s[0], h, frenet.len(), s_anchor);
    let at = numeric::cubic_hermite([[theta[i], frenet.tau[i]], [theta[i + 1], frenet.tau[i + 1]]], h, u)[0];
    for th in &mut theta {
        *th += theta_at_anchor - at;
    }

    let n = frenet.len();
    let mut out = BishopData {
        s: frenet.s.clone(),
        t: frenet.t.clone(),
        n1: Vec::with_capacity(n),
        n2: Vec::with_capacity(n),
        k1: Vec::with_capacity(n),
        k2: Vec::with_capacity(n),
        theta,
        degenerate: frenet.degenerate.clone(),
    };
    for i in 0..n {
        let (sn, cs) = (out.theta[i].sin(), out.theta[i].cos());
        out.n1.push(frenet.n[i] * cs - frenet.b[i] * sn);
        out.n2.push(frenet.n[i] * sn + frenet.b[i] * cs);
        out.k1.push(frenet.kappa[i] * cs);
        out.k2.push(frenet.kappa[i] * sn);
    }
    out
}

/// Bishop frame by parallel transport of `n1_initial` along the curve.
///
/// Uses the double-reflection rule on consecutive samples, which needs no
/// curvature and so works across straight stretches. Curvatures are then read
/// off as `k1 = ⟨γ'', N1⟩`, `k2 = ⟨γ'', N2⟩`.
pub fn bishop_parallel_transport(curve: &ArcLengthCurve, n1_initial: Vec3) -> Result<BishopData> {
    let n = curve.len();
    let t0 = curve.d1[0].normalize();
    if !(n1_initial.norm() > 0.0) || n1_initial.dot(&t0).abs() > 1e-10 * n1_initial.norm() {
        return Err(Error::input("initial N1 must be a nonzero vector orthogonal to T(s0)"));
    }
    let mut n1 = Vec::with_capacity(n);
    n1.push(n1_initial.normalize());
    for i in 0..n - 1 {
        let r = n1[i];
        let ti = curve.d1[i].normalize();
        let tj = curve.d1[i + 1].normalize();
        let v1 = curve.points[i + 1] - curve.points[i];
        let c1 = v1.dot(&v1);
        let (r_l, t_l) = if c1 > 0.0 {
            (r - v1 * (2.0 / c1 * v1.dot(&r)), ti - v1 * (2.0 / c1 * v1.dot(&ti)))
        } else {
            (r, ti)
        };
        let v2 = tj - t_l;
        let c2 = v2.dot(&v2);
        let next = if c2 > 1e-300 { r_l - v2 * (2.0 / c2 * v2.dot(&r_l)) } else { r_l };
        n1.push((next - tj * tj.dot(&next)).normalize());
    }

    let t: Vec<Vec3> = curve.d1.iter().map(|d| d.normalize()).collect();
    let n2: Vec<Vec3> = t.iter().zip(&n1).map(|(t, n1)| t.cross(n1)).collect();
    let k1: Vec<f64> = (0..n).map(|i| curve.d2[i].dot(&n1[i])).collect();
    let k2: Vec<f64> = (0..n).map(|i| curve.d2[i].dot(&n2[i])).collect();
    let mut theta: Vec<f64> = k1.iter().zip(&k2).map(|(a, b)| b.atan2(*a)).collect();
    hold_where_flat(&mut theta, &k1, &k2);
    numeric::unwrap_angles(&mut theta);
    Ok(BishopData {
        s: curve.s.clone(),
        t,
        n1,
        n2,
        k1,
        k2,
        theta,
        degenerate: alloc::vec![false; n],
    })
}

/// Which curvature ratio a slant-helix verdict was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureRatio {
    K1OverK2,
    K2OverK1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlantHelixWitness {
    /// `None` when neither ratio is bounded on the grid.
    pub ratio: Option<CurvatureRatio>,
    pub mean: f64,
    pub total_variation: f64,
    /// Largest `|ratio - mean|`, infinite when the ratio is unbounded.
    pub max_deviation: f64,
    /// Arclength of the largest deviation.
    pub at_s: f64,
}

/// Floor on `|k|` for a curvature to serve as a ratio denominator.
const RATIO_FLOOR: f64 = 1e-9;

/// Tests whether `k1/k2` is constant, the slant-helix condition.
///
/// The ratio is formed with whichever curvature stays away from zero on the
/// whole grid. When each of `k1` and `k2` vanishes somewhere (at different
/// places) the ratio runs through both `0` and `∞` and the verdict is `false`.
/// If both vanish at the same sample the direction of `(k1, k2)` is undefined
/// and the test is indeterminate.
pub fn slant_helix_test(bishop: &BishopData, rel_tol: f64) -> Result<(bool, SlantHelixWitness)> {
    let n = bishop.len();
    for i in 0..n {
        if bishop.k1[i].abs() < RATIO_FLOOR && bishop.k2[i].abs() < RATIO_FLOOR {
            return Err(Error::Indeterminate { s: bishop.s[i] });
        }
    }
    let (num, den, which) = if bishop.k2.iter().all(|k| k.abs() >= RATIO_FLOOR) {
        (&bishop.k1, &bishop.k2, CurvatureRatio::K1OverK2)
    } else if bishop.k1.iter().all(|k| k.abs() >= RATIO_FLOOR) {
        (&bishop.k2, &bishop.k1, CurvatureRatio::K2OverK1)
    } else {
        let i = bishop.k2.iter().position(|k| k.abs() < RATIO_FLOOR).unwrap();
        return Ok((
            false,
            SlantHelixWitness {
                ratio: None,
                mean: f64::NAN,
                total_variation: f64::INFINITY,
                max_deviation: f64::INFINITY,
                at_s: bishop.s[i],
            },
        ));
    };
    let ratio: Vec<f64> = num.iter().zip(den).map(|(a, b)| a / b).collect();
    let mean = ratio.iter().sum::<f64>() / n as f64;
    let total_variation: f64 = ratio.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let (at, max_deviation) = ratio
        .iter()
        .map(|r| (r - mean).abs())
        .enumerate()
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
    // scale floor of 1 keeps a ratio near zero (k1 or k2 almost vanishing) decidable
    let is_slant = total_variation <= rel_tol * mean.abs().max(1.0);
    Ok((
        is_slant,
        SlantHelixWitness {
            ratio: Some(which),
            mean,
            total_variation,
            max_deviation,
            at_s: bishop.s[at],
        },
    ))
}

/// `true` iff `|τ| ≤ abs_tol` at every non-degenerate sample.
pub fn planarity_test(frenet: &FrenetData, abs_tol: f64) -> bool {
    frenet
        .tau
        .iter()
        .zip(&frenet.degenerate)
        .all(|(tau, deg)| *deg || tau.abs() <= abs_tol)
}
