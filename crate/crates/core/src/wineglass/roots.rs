//! Level sets of `F(x) = x² − 3 − 2/((x+1)(x−2))` for `y ∈ [−2, 2]`.
//!
//! On that range `F(x) = y` has exactly four real solutions, one in each of
//! `(−∞, −1)`, `(−1, 0]`, `(0, 2)` and `(2, ∞)`. They are also the roots of
//! the quartic `x⁴ − x³ − (y+5)x² + (y+3)x + (2y+4)`.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("level y = {0} is outside [-2, 2]")]
    OutOfRange(f64),
    #[error("F has a pole at x = {0}")]
    Pole(f64),
}

/// The four solutions of `F(x) = y`, in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootQuartet {
    pub y: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta_root: f64,
}

impl RootQuartet {
    pub fn as_array(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta_root]
    }

    /// Whether each root lies in its interval: `α < −1 < β ≤ 0 < γ < 2 < δ`.
    pub fn in_intervals(&self) -> bool {
        self.alpha < -1.0
            && -1.0 < self.beta
            && self.beta <= 0.0
            && 0.0 < self.gamma
            && self.gamma < 2.0
            && self.delta_root > 2.0
    }
}

/// `F(x)`; errors at the poles `x = −1` and `x = 2`.
pub fn f(x: f64) -> Result<f64, RootError> {
    if x == -1.0 || x == 2.0 {
        return Err(RootError::Pole(x));
    }
    Ok(f_unchecked(x))
}

#[inline]
pub(crate) fn f_unchecked(x: f64) -> f64 {
    x * x - 3.0 - 2.0 / ((x + 1.0) * (x - 2.0))
}

/// `F′(x) = 2x + (4x − 2)/((x+1)²(x−2)²)`.
#[inline]
pub fn f_prime(x: f64) -> f64 {
    let d = (x + 1.0) * (x - 2.0);
    2.0 * x + (4.0 * x - 2.0) / (d * d)
}

/// Coefficients `(c4, c3, c2, c1, c0)` of the quartic whose roots are the
/// solutions of `F(x) = y`.
pub fn quartic_coefficients(y: f64) -> [f64; 5] {
    [1.0, -1.0, -(y + 5.0), y + 3.0, 2.0 * y + 4.0]
}

fn check_level(y: f64) -> Result<(), RootError> {
    if (-2.0..=2.0).contains(&y) {
        Ok(())
    } else {
        Err(RootError::OutOfRange(y))
    }
}

/// Safeguarded Newton for `F(x) = y` on a bracket where `F − y` changes
/// sign. Newton steps that leave the bracket or stall fall back to
/// bisection. Returns the iterate with the smallest residual.
fn solve_bracketed(y: f64, lo: f64, hi: f64, guess: f64) -> f64 {
    let g = |x: f64| f_unchecked(x) - y;
    let (mut neg, mut pos) = if g(lo) < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = if guess > lo.min(hi) && guess < lo.max(hi) { guess } else { 0.5 * (lo + hi) };
    let mut best = (f64::INFINITY, x);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    for _ in 0..200 {
        let gx = g(x);
        if gx.abs() < best.0 {
            best = (gx.abs(), x);
        }
        if gx == 0.0 {
            break;
        }
        if gx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let d = f_prime(x);
        let newton_leaves = ((x - pos) * d - gx) * ((x - neg) * d - gx) > 0.0;
        if newton_leaves || (2.0 * gx).abs() > (dx_old * d).abs() {
            dx_old = dx;
            dx = 0.5 * (pos - neg);
            let next = neg + dx;
            if next == x || next == neg || next == pos {
                break;
            }
            x = next;
        } else {
            dx_old = dx;
            dx = gx / d;
            let next = x - dx;
            if next == x {
                break;
            }
            x = next;
        }
        if (pos - neg).abs() <= f64::EPSILON * x.abs().max(1e-300) {
            let gx = g(x);
            if gx.abs() < best.0 {
                best = (gx.abs(), x);
            }
            break;
        }
    }
    best.1
}

/// Point `pole + sign·ε` (ε halved from 1/2) where `sign_wanted·(F − y) > 0`.
fn approach_pole(y: f64, pole: f64, side: f64, sign_wanted: f64) -> f64 {
    let mut eps = 0.5;
    loop {
        let x = pole + side * eps;
        if sign_wanted * (f_unchecked(x) - y) > 0.0 {
            return x;
        }
        eps *= 0.5;
        assert!(eps > 1e-300, "F does not diverge near the pole");
    }
}

/// α(y) ∈ (−∞, −1), with `F` decreasing there: bracketed on `[−3, −1 − ε]`
/// (`F(−3) = 5.8`).
pub fn alpha(y: f64) -> Result<f64, RootError> {
    check_level(y)?;
    let hi = approach_pole(y, -1.0, -1.0, -1.0);
    Ok(solve_bracketed(y, -3.0, hi, 0.5 * (hi - 3.0)))
}

/// β(y) ∈ (−1, 0], with `F` decreasing there and `F(0) = −2`, so β(−2) = 0.
pub fn beta(y: f64) -> Result<f64, RootError> {
    check_level(y)?;
    if y == -2.0 {
        return Ok(0.0);
    }
    let lo = approach_pole(y, -1.0, 1.0, 1.0);
    Ok(solve_bracketed(y, lo, 0.0, 0.5 * lo))
}

/// All four roots. α and β come from their brackets; γ and δ from the
/// quadratic left after dividing the quartic by `(x − α)(x − β)`, then
/// polished on the brackets `[0.01, 2 − ε]` and `[2 + ε, 3]`. On
/// `(0, 0.01]` we have `F < −2 ≤ y`, and `F(3) = 5.5`.
pub fn roots(y: f64) -> Result<RootQuartet, RootError> {
    let a = alpha(y)?;
    let b = beta(y)?;
    let s = a + b;
    let p = a * b;
    // (x² − s x + p)(x² + u x + v) matched against the quartic
    let u = s - 1.0;
    let v = -(y + 5.0) + s * u - p;
    let disc = (u * u - 4.0 * v).max(0.0);
    let q = -0.5 * (u + u.signum() * disc.sqrt());
    let (r1, r2) = if q != 0.0 { (q, v / q) } else { (0.0, 0.0) };
    let (g0, d0) = if r1 < r2 { (r1, r2) } else { (r2, r1) };

    let g_hi = approach_pole(y, 2.0, -1.0, 1.0);
    let gamma = solve_bracketed(y, 0.01, g_hi, g0);
    let d_lo = approach_pole(y, 2.0, 1.0, -1.0);
    let delta_root = solve_bracketed(y, d_lo, 3.0, d0);
    Ok(RootQuartet { y, alpha: a, beta: b, gamma, delta_root })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection to full precision: slow and independent of the
    /// Newton machinery above.
    fn bisect(y: f64, mut lo: f64, mut hi: f64) -> f64 {
        let neg_at_lo = f_unchecked(lo) < y;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if (f_unchecked(mid) < y) == neg_at_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn f_values() {
        assert_eq!(f(0.0), Ok(-2.0));
        assert_eq!(f(3.0), Ok(5.5));
        assert!((f(-3.0).unwrap() - 5.8).abs() < 1e-15);
        assert_eq!(f(-1.0), Err(RootError::Pole(-1.0)));
        assert_eq!(f(2.0), Err(RootError::Pole(2.0)));
    }

    #[test]
    fn derivative_at_half_is_one() {
        assert!((f_prime(0.5) - 1.0).abs() < 1e-15);
        assert!((f_prime(0.0) + 0.5).abs() < 1e-15);
        // central difference cross-check
        for x in [-2.5, -0.5, 0.3, 1.5, 2.7] {
            let h = 1e-6;
            let fd = (f_unchecked(x + h) - f_unchecked(x - h)) / (2.0 * h);
            assert!((fd - f_prime(x)).abs() < 1e-5 * (1.0 + fd.abs()), "x = {x}");
        }
    }

    #[test]
    fn quartic_coefficient_examples() {
        assert_eq!(quartic_coefficients(-2.0), [1.0, -1.0, -3.0, 1.0, 0.0]);
        assert_eq!(quartic_coefficients(0.0), [1.0, -1.0, -5.0, 3.0, 4.0]);
        assert_eq!(quartic_coefficients(2.0), [1.0, -1.0, -7.0, 5.0, 8.0]);
    }

    #[test]
    fn beta_at_minus_two_is_zero() {
        assert_eq!(roots(-2.0).unwrap().beta, 0.0);
    }

    #[test]
    fn alpha_at_minus_two() {
        // real root of x³ − x² − 3x + 1 below −1
        let cubic = |x: f64| x * x * x - x * x - 3.0 * x + 1.0;
        let (mut lo, mut hi) = (-3.0f64, -1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (cubic(mid) < 0.0) == (cubic(lo) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = roots(-2.0).unwrap().alpha;
        assert!((a - lo).abs() < 1e-14);
        assert!((a + 1.4812).abs() < 1e-4);
    }

    #[test]
    fn roots_sum_to_one() {
        for y in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let r = roots(y).unwrap();
            let sum: f64 = r.as_array().iter().sum();
            assert!((sum - 1.0).abs() < 1e-10, "y = {y}: {sum}");
            assert!(r.in_intervals(), "{r:?}");
        }
    }

    #[test]
    fn agrees_with_bisection_oracle() {
        for i in 0..=40 {
            let y = -2.0 + 0.1 * i as f64;
            let r = roots(y).unwrap();
            assert!((r.alpha - bisect(y, -3.0, -1.0 - 1e-9)).abs() < 1e-13);
            if y > -2.0 {
                assert!((r.beta - bisect(y, -1.0 + 1e-9, 0.0)).abs() < 1e-13);
            }
            assert!((r.gamma - bisect(y, 0.01, 2.0 - 1e-9)).abs() < 1e-13);
            assert!((r.delta_root - bisect(y, 2.0 + 1e-9, 3.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn residuals_and_vieta_product() {
        for i in 0..=200 {
            let y = -2.0 + 0.02 * i as f64;
            let r = roots(y).unwrap();
            for x in r.as_array() {
                assert!((f_unchecked(x) - y).abs() <= 1e-12, "y = {y}, x = {x}");
            }
            let prod: f64 = r.as_array().iter().product();
            assert!((prod - (2.0 * y + 4.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn out_of_range_level() {
        assert_eq!(roots(2.5), Err(RootError::OutOfRange(2.5)));
        assert!(matches!(alpha(f64::NAN), Err(RootError::OutOfRange(_))));
    }
}
