//! Finite-difference derivatives of section functions.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::body::StarBody;

use super::slice::{SliceRule, Slicer};

/// A derivative estimate with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
    pub step: f64,
}

/// Central difference of order `k` (1 or 2) with one Richardson step.
pub(crate) fn richardson<F: Fn(f64) -> f64>(f: F, x: f64, k: u32, h: f64) -> Derivative {
    let d = |h: f64| match k {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        _ => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    };
    let coarse = d(h);
    let fine = d(0.5 * h);
    let value = (4.0 * fine - coarse) / 3.0;
    Derivative { value, error: (fine - coarse).abs(), step: h }
}

/// Default step `eps^{1/(k+2)} R`.
pub fn default_step(k: u32, outer_radius: f64) -> f64 {
    f64::EPSILON.powf(1.0 / (k as f64 + 2.0)) * outer_radius
}

impl Slicer<'_> {
    /// `A^{(k)}_{K,xi}(t)` for `k` in {1, 2}.
    pub fn derivative(&self, t: f64, k: u32, step: Option<f64>) -> Result<Derivative> {
        if !(k == 1 || k == 2) {
            return Err(Error::RangeError(format!("derivative order {k} must be 1 or 2")));
        }
        let h = step.unwrap_or_else(|| default_step(k, self.body().outer_radius()));
        let (lo, hi) = self.window();
        if t - h <= lo || t + h >= hi {
            return Err(Error::BoundaryError { t, step: h });
        }
        Ok(richardson(|s| self.area(s), t, k, h))
    }
}

pub fn section_derivative(
    body: &StarBody,
    xi: &[f64],
    t: f64,
    k: u32,
    step: Option<f64>,
    rule: &SliceRule,
) -> Result<Derivative> {
    Slicer::new(body, xi, rule.clone())?.derivative(t, k, step)
}

/// `A'_{K,xi}(0)` for a planar body with `xi = (cos theta, sin theta)`, from
/// the radial function alone:
/// `-rho'(theta + pi/2)/rho(theta + pi/2) + rho'(theta - pi/2)/rho(theta - pi/2)`.
pub fn prime_at_zero_2d(body: &StarBody, theta: f64) -> Result<Derivative> {
    if body.dim() != 2 {
        return Err(Error::DimError { expected: 2, got: body.dim() });
    }
    if !body.smoothness().at_least(1) {
        return Err(Error::SmoothnessError(
            "the closed planar formula needs a C^1 radial function; mollify the body first".into(),
        ));
    }
    let rho = |phi: f64| body.radial_at(&[phi.cos(), phi.sin()]);
    let h = default_step(1, 1.0);
    let term = |phi: f64| {
        let d = richardson(rho, phi, 1, h);
        let r = rho(phi);
        (d.value / r, d.error / r)
    };
    let (a, ea) = term(theta + FRAC_PI_2);
    let (b, eb) = term(theta - FRAC_PI_2);
    Ok(Derivative { value: -a + b, error: ea + eb, step: h })
}
