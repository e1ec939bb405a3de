//! The common limit `L` of `E/μ` over both wine glass families, computed
//! in two independent ways.

use std::f64::consts::PI;

use serde::Serialize;

use super::roots::{alpha, beta, f_unchecked};
use super::WineGlassError;
use crate::quad::{adaptive_endpoint_smoothed, composite_gauss_converged};

pub const DEFAULT_QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitResult {
    /// From the arccos integrals over the root intervals.
    pub l: f64,
    /// From `1 − (1/π)∫₀^π [α + β](2 cos x) dx`.
    pub l_cos_form: f64,
    pub alpha_m2: f64,
    pub alpha_p2: f64,
    pub beta_p2: f64,
    /// Sum of the quadrature error estimates of the arccos form.
    pub quadrature_error_estimate: f64,
}

impl LimitResult {
    pub fn forms_agree(&self, tol: f64) -> bool {
        (self.l - self.l_cos_form).abs() <= tol
    }
}

fn arccos_half_f(x: f64) -> f64 {
    (0.5 * f_unchecked(x)).clamp(-1.0, 1.0).acos()
}

/// `L = 1 − α(−2) + (1/π)∫_{α(2)}^{α(−2)} arccos(F/2) + (1/π)∫_{β(2)}^{0} arccos(F/2)`,
/// together with the cosine form as a cross-check.
pub fn limit_l(quad_tol: f64) -> Result<LimitResult, WineGlassError> {
    if quad_tol.is_nan() || quad_tol <= 0.0 {
        return Err(WineGlassError::BadTolerance(quad_tol));
    }
    let alpha_m2 = alpha(-2.0)?;
    let alpha_p2 = alpha(2.0)?;
    let beta_p2 = beta(2.0)?;

    // each integral is divided by π afterwards, so it gets half the budget
    let part_tol = 0.5 * quad_tol * PI;
    let ia = adaptive_endpoint_smoothed(arccos_half_f, alpha_p2, alpha_m2, part_tol)?;
    let ib = adaptive_endpoint_smoothed(arccos_half_f, beta_p2, 0.0, part_tol)?;
    let l = 1.0 - alpha_m2 + (ia.value + ib.value) / PI;

    // α and β cannot fail on [−2, 2]; the clamp only absorbs rounding in cos
    let cos_integrand = |x: f64| {
        let y = (2.0 * x.cos()).clamp(-2.0, 2.0);
        alpha(y).unwrap_or(f64::NAN) + beta(y).unwrap_or(f64::NAN)
    };
    let ic = composite_gauss_converged(cos_integrand, 0.0, PI, quad_tol * PI)?;
    let l_cos_form = 1.0 - ic.value / PI;

    Ok(LimitResult {
        l,
        l_cos_form,
        alpha_m2,
        alpha_p2,
        beta_p2,
        quadrature_error_estimate: (ia.error + ib.error) / PI,
    })
}
