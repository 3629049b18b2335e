//! Small numerical building blocks shared by the curve, frame and surface code.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

#[cfg(not(feature = "std"))]
use crate::float::FloatFuncs;
use crate::{Error, Result};

/// Anything that can be combined linearly with `f64` weights.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

const MAX_SIMPSON_DEPTH: u32 = 48;

/// Subintervals narrower than this fraction of `b - a` are accepted as they are.
/// A small jump in `f` (a finite-difference stencil switching to one-sided near a
/// domain end, say) otherwise keeps the error estimate proportional to the
/// halved tolerance at every level and the recursion never terminates.
const MIN_SIMPSON_WIDTH: f64 = 1e-10;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Fails with a tolerance error on non-finite values of `f` or when the
/// recursion depth runs out.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let min_width = MIN_SIMPSON_WIDTH * (b - a).abs();
    simpson_step(f, a, b, fa, fm, fb, whole, tol, min_width, MAX_SIMPSON_DEPTH).ok_or(Error::Tolerance { tol })
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    min_width: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return None;
    }
    if delta.abs() <= 15.0 * tol || (b - a).abs() <= min_width {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, min_width, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, min_width, depth - 1)?;
    Some(l + r)
}

/// Fourth-order first derivative of uniformly spaced samples.
///
/// Central five-point stencil in the interior, one-sided five-point stencils at
/// the two samples nearest each end. Needs at least five samples.
pub fn derivative_5pt<T: Linear>(values: &[T], h: f64) -> Vec<T> {
    let n = values.len();
    assert!(n >= 5, "five-point derivative needs at least 5 samples");
    let f = values;
    let w = 1.0 / (12.0 * h);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i >= 2 && i + 2 < n {
            (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * w
        } else if i == 0 {
            (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * w
        } else if i == 1 {
            (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * w
        } else if i == n - 2 {
            (f[n - 1] * 3.0 + f[n - 2] * 10.0 - f[n - 3] * 18.0 + f[n - 4] * 6.0 - f[n - 5]) * w
        } else {
            (f[n - 1] * 25.0 - f[n - 2] * 48.0 + f[n - 3] * 36.0 - f[n - 4] * 16.0 + f[n - 5] * 3.0)
                * w
        };
        out.push(d);
    }
    out
}

/// Running integral with the endpoint-corrected trapezoid rule,
/// `h/2 (f_i + f_{i+1}) + h²/12 (f'_i - f'_{i+1})`, starting at 0.
pub fn cumulative_corrected_trapezoid(values: &[f64], slopes: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(acc);
    for i in 1..values.len() {
        acc += 0.5 * h * (values[i - 1] + values[i]) + h * h / 12.0 * (slopes[i - 1] - slopes[i]);
        out.push(acc);
    }
    out
}

/// Fourth-order central first derivative of `f` at `x` with step `h`.
pub fn d1_central4<T: Linear, F: Fn(f64) -> T>(f: &F, x: f64, h: f64) -> T {
    (f(x - 2.0 * h) - f(x - h) * 8.0 + f(x + h) * 8.0 - f(x + 2.0 * h)) * (1.0 / (12.0 * h))
}

/// Fourth-order central second derivative of `f` at `x` with step `h`.
pub fn d2_central4<T: Linear, F: Fn(f64) -> T>(f: &F, x: f64, h: f64) -> T {
    let f0 = f(x);
    (f(x - 2.0 * h) * -1.0 + f(x - h) * 16.0 - f0 * 30.0 + f(x + h) * 16.0 - f(x + 2.0 * h))
        * (1.0 / (12.0 * h * h))
}

/// Cumulative trapezoid integral of uniformly spaced samples, starting at zero.
pub fn cumulative_trapezoid(values: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for (i, &y) in values.iter().enumerate() {
        if i > 0 {
            acc += 0.5 * h * (values[i - 1] + y);
        }
        out.push(acc);
    }
    out
}

/// Removes `2π` jumps between consecutive angles.
pub fn unwrap_angles(angles: &mut [f64]) {
    for i in 1..angles.len() {
        let d = angles[i] - angles[i - 1];
        let turns = (d / (2.0 * PI)).round();
        angles[i] -= turns * 2.0 * PI;
    }
}

/// Locates the cell `[grid[i], grid[i + 1]]` of a uniform grid containing `x`,
/// returning `(i, u)` with local coordinate `u = (x - grid[i]) / h`.
///
/// Points outside the grid map to the first or last cell with `u` outside
/// `[0, 1]`, which extrapolates that cell's polynomial.
pub fn locate_uniform(start: f64, h: f64, len: usize, x: f64) -> (usize, f64) {
    debug_assert!(len >= 2);
    let pos = (x - start) / h;
    let i = if pos <= 0.0 {
        0
    } else {
        (pos.floor() as usize).min(len - 2)
    };
    (i, pos - i as f64)
}

/// Quintic Hermite interpolation on one cell of width `h` from values and the
/// first two derivatives at both ends. Returns value, first and second derivative.
pub fn quintic_hermite<T: Linear>(ends: [[T; 3]; 2], h: f64, u: f64) -> [T; 3] {
    let [[p0, d0, a0], [p1, d1, a1]] = ends;
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u3 * u;
    let u5 = u4 * u;
    // basis values
    let h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    let h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    let h2 = 0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5);
    let h3 = 0.5 * (u3 - 2.0 * u4 + u5);
    let h4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    let h5 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    // first derivatives in u
    let g0 = -30.0 * u2 + 60.0 * u3 - 30.0 * u4;
    let g1 = 1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4;
    let g2 = 0.5 * (2.0 * u - 9.0 * u2 + 12.0 * u3 - 5.0 * u4);
    let g3 = 0.5 * (3.0 * u2 - 8.0 * u3 + 5.0 * u4);
    let g4 = -12.0 * u2 + 28.0 * u3 - 15.0 * u4;
    let g5 = -g0;
    // second derivatives in u
    let s0 = -60.0 * u + 180.0 * u2 - 120.0 * u3;
    let s1 = -36.0 * u + 96.0 * u2 - 60.0 * u3;
    let s2 = 0.5 * (2.0 - 18.0 * u + 36.0 * u2 - 20.0 * u3);
    let s3 = 0.5 * (6.0 * u - 24.0 * u2 + 20.0 * u3);
    let s4 = -24.0 * u + 84.0 * u2 - 60.0 * u3;
    let s5 = -s0;

    let hh = h * h;
    let combine = |b0: f64, b1: f64, b2: f64, b3: f64, b4: f64, b5: f64| {
        p0 * b0 + d0 * (b1 * h) + a0 * (b2 * hh) + a1 * (b3 * hh) + d1 * (b4 * h) + p1 * b5
    };
    [
        combine(h0, h1, h2, h3, h4, h5),
        combine(g0, g1, g2, g3, g4, g5) * (1.0 / h),
        combine(s0, s1, s2, s3, s4, s5) * (1.0 / hh),
    ]
}

/// Basis of two-point Taylor interpolation with `m` conditions per end:
/// `u^j/j! (1-u)^m Σ_{k<m-j} C(m-1+k, k) u^k`. Returns value and first two
/// derivatives at `u`.
fn taylor_basis(m: usize, j: usize, u: f64) -> [f64; 3] {
    let mut c = [0.0f64; 8];
    // (1-u)^m
    let mut binom = 1.0;
    for i in 0..=m {
        c[i] = if i % 2 == 0 { binom } else { -binom };
        binom = binom * (m - i) as f64 / (i + 1) as f64;
    }
    let mut poly = [0.0f64; 8];
    let mut coef = 1.0;
    for k in 0..m - j {
        for i in 0..=m {
            if i + k + j < 8 {
                poly[i + k + j] += coef * c[i];
            }
        }
        coef = coef * (m + k) as f64 / (k + 1) as f64;
    }
    let mut fact = 1.0;
    for i in 2..=j {
        fact *= i as f64;
    }
    let (mut v, mut d, mut dd) = (0.0, 0.0, 0.0);
    for i in (0..8).rev() {
        let a = poly[i] / fact;
        v = v * u + a;
        if i >= 1 {
            d = d * u + a * i as f64;
        }
        if i >= 2 {
            dd = dd * u + a * (i * (i - 1)) as f64;
        }
    }
    [v, d, dd]
}

/// Two-point Hermite interpolation on one cell of width `h`, matching the
/// first `M` derivatives (value included) at both ends. Returns value, first
/// and second derivative. `M` is at most 4.
pub fn hermite_two_point<T: Linear, const M: usize>(ends: [[T; M]; 2], h: f64, u: f64) -> [T; 3] {
    assert!((1..=4).contains(&M), "two-point Hermite supports 1 to 4 conditions per end");
    let mut out: Option<[T; 3]> = None;
    let mut scale = 1.0;
    for j in 0..M {
        let a = taylor_basis(M, j, u);
        let b = taylor_basis(M, j, 1.0 - u);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        // end 1 basis is (-1)^j A_j(1-u); each derivative in u flips the sign once more
        let terms = [
            ends[0][j] * (a[0] * scale) + ends[1][j] * (sign * b[0] * scale),
            ends[0][j] * (a[1] * scale) + ends[1][j] * (-sign * b[1] * scale),
            ends[0][j] * (a[2] * scale) + ends[1][j] * (sign * b[2] * scale),
        ];
        out = Some(match out {
            None => terms,
            Some(o) => [o[0] + terms[0], o[1] + terms[1], o[2] + terms[2]],
        });
        scale *= h;
    }
    let o = out.expect("at least one condition");
    [o[0], o[1] * (1.0 / h), o[2] * (1.0 / (h * h))]
}

/// Cubic Hermite interpolation on one cell of width `h`. Returns value and slope.
pub fn cubic_hermite<T: Linear>(ends: [[T; 2]; 2], h: f64, u: f64) -> [T; 2] {
    let [[p0, d0], [p1, d1]] = ends;
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    let g00 = 6.0 * u2 - 6.0 * u;
    let g10 = 3.0 * u2 - 4.0 * u + 1.0;
    let g01 = -g00;
    let g11 = 3.0 * u2 - 2.0 * u;
    [
        p0 * h00 + d0 * (h10 * h) + p1 * h01 + d1 * (h11 * h),
        (p0 * g00 + d0 * (g10 * h) + p1 * g01 + d1 * (g11 * h)) * (1.0 / h),
    ]
}

/// Fritsch–Carlson limiting of Hermite slopes so that the piecewise cubic
/// through increasing data stays monotone.
pub fn limit_monotone_slopes(x: &[f64], y: &[f64], slopes: &mut [f64]) {
    let n = x.len();
    for i in 0..n.saturating_sub(1) {
        let secant = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        if secant == 0.0 {
            slopes[i] = 0.0;
            slopes[i + 1] = 0.0;
            continue;
        }
        let a = slopes[i] / secant;
        let b = slopes[i + 1] / secant;
        if a < 0.0 {
            slopes[i] = 0.0;
        }
        if b < 0.0 {
            slopes[i + 1] = 0.0;
        }
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            slopes[i] = tau * a * secant;
            slopes[i + 1] = tau * b * secant;
        }
    }
}

/// Evaluates a piecewise cubic Hermite interpolant on a non-uniform increasing grid.
pub fn hermite_eval(x: &[f64], y: &[f64], slopes: &[f64], at: f64) -> f64 {
    let n = x.len();
    let i = match x.binary_search_by(|probe| probe.total_cmp(&at)) {
        Ok(i) => return y[i],
        Err(0) => 0,
        Err(i) if i >= n => n - 2,
        Err(i) => i - 1,
    };
    let h = x[i + 1] - x[i];
    let u = (at - x[i]) / h;
    cubic_hermite([[y[i], slopes[i]], [y[i + 1], slopes[i + 1]]], h, u)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn simpson_integrates_sine() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-11);
    }

    #[test]
    fn simpson_reports_nonconvergence() {
        let r = adaptive_simpson(&|x: f64| 1.0 / x, -1.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::Tolerance { .. })));
    }

    #[test]
    fn five_point_derivative_is_fourth_order() {
        let h = 0.05;
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * h).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let d = derivative_5pt(&ys, h);
        for (x, dv) in xs.iter().zip(&d) {
            assert_abs_diff_eq!(*dv, x.exp(), epsilon = 2e-5 * x.exp());
        }
    }

    #[test]
    fn quintic_hermite_reproduces_quintic() {
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(3) + 0.25 * x.powi(5);
        let dp = |x: f64| -2.0 + 1.5 * x * x + 1.25 * x.powi(4);
        let ddp = |x: f64| 3.0 * x + 5.0 * x.powi(3);
        let (a, b) = (0.3, 0.8);
        let h = b - a;
        for k in 0..=10 {
            let u = k as f64 / 10.0;
            let x = a + u * h;
            let [v, d, dd] = quintic_hermite([[p(a), dp(a), ddp(a)], [p(b), dp(b), ddp(b)]], h, u);
            assert_abs_diff_eq!(v, p(x), epsilon = 1e-13);
            assert_abs_diff_eq!(d, dp(x), epsilon = 1e-12);
            assert_abs_diff_eq!(dd, ddp(x), epsilon = 1e-11);
        }
    }

    #[test]
    fn unwrap_removes_jumps() {
        let mut a = [3.0, -3.1, -2.9, 3.0];
        unwrap_angles(&mut a);
        for w in a.windows(2) {
            assert!((w[1] - w[0]).abs() < PI);
        }
    }

    #[test]
    fn monotone_hermite_stays_monotone() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0];
        let y = [0.0, 0.1, 0.2, 3.0, 3.1];
        let mut m = [0.1, 0.1, 5.0, 5.0, 0.1];
        limit_monotone_slopes(&x, &y, &mut m);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=400 {
            let v = hermite_eval(&x, &y, &m, k as f64 / 100.0);
            assert!(v >= prev - 1e-14);
            prev = v;
        }
    }

    #[test]
    fn two_point_hermite_reproduces_septic() {
        let p = |x: f64| 0.3 - x + 0.5 * x.powi(3) - 0.2 * x.powi(5) + 0.07 * x.powi(7);
        let dp = |x: f64| -1.0 + 1.5 * x * x - x.powi(4) + 0.49 * x.powi(6);
        let ddp = |x: f64| 3.0 * x - 4.0 * x.powi(3) + 2.94 * x.powi(5);
        let dddp = |x: f64| 3.0 - 12.0 * x * x + 14.7 * x.powi(4);
        let (a, b) = (0.4, 1.1);
        let h = b - a;
        let end = |x: f64| [p(x), dp(x), ddp(x), dddp(x)];
        for k in 0..=10 {
            let u = k as f64 / 10.0;
            let x = a + u * h;
            let [v, d, dd] = hermite_two_point([end(a), end(b)], h, u);
            assert!((v - p(x)).abs() < 1e-13);
            assert!((d - dp(x)).abs() < 1e-12);
            assert!((dd - ddp(x)).abs() < 1e-11);
            let q = quintic_hermite([[p(a), dp(a), ddp(a)], [p(b), dp(b), ddp(b)]], h, u);
            let r = hermite_two_point([[p(a), dp(a), ddp(a)], [p(b), dp(b), ddp(b)]], h, u);
            for i in 0..3 {
                assert!((q[i] - r[i]).abs() < 1e-11);
            }
        }
    }
}
