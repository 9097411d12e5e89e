//! Fractional derivatives at zero of functions on the line.
//!
//! For `-1 < p < m`, `p` not an integer,
//!
//! ```text
//! h^{(p)}(0) = 1/Gamma(-p) * [ int_0^s t^{-1-p} (h(-t) - T(t)) dt
//!                             + int_s^inf t^{-1-p} h(-t) dt
//!                             + sum_{k<m} c_k s^{k-p} / (k - p) ]
//! T(t) = sum_{k<m} c_k t^k,  c_k = (-1)^k h^{(k)}(0) / k!
//! ```
//!
//! with split point `s = 1`; the value does not depend on `s`.

use crate::error::{Error, Result};
use crate::numeric::kronrod::{integrate, integrate_with_breaks, Tolerance};
use crate::numeric::special::gamma;

/// Distance to the nearest integer below which `p` is rejected.
pub const POLE_DISTANCE: f64 = 1e-6;
/// Distance below which results are flagged as ill-conditioned.
pub const WARN_DISTANCE: f64 = 1e-3;

/// Fractional order `p` with the number `m` of Taylor terms subtracted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    pub p: f64,
    pub m: usize,
    pub ill_conditioned: bool,
}

impl FractionalOrder {
    /// Picks `m = floor(p) + 1`, or `floor(p) + 2` when `p` sits within 0.4
    /// below the next integer so the subtracted integrand vanishes at least
    /// like `t^{0.4}`.
    pub fn new(p: f64) -> Result<Self> {
        let fl = p.floor();
        let m = if fl + 1.0 - p >= 0.4 { fl + 1.0 } else { fl + 2.0 };
        Self::with_terms(p, m.max(0.0) as usize)
    }

    pub fn with_terms(p: f64, m: usize) -> Result<Self> {
        if !(p > -1.0 && p < m as f64) || !p.is_finite() {
            return Err(Error::RangeError(format!("fractional order {p} needs -1 < p < m = {m}")));
        }
        let dist = (p - p.round()).abs();
        if dist < POLE_DISTANCE {
            return Err(Error::PoleError(p));
        }
        Ok(FractionalOrder { p, m, ill_conditioned: dist < WARN_DISTANCE })
    }
}

/// Value of a fractional derivative with the pieces that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FracValue {
    pub value: f64,
    /// Quadrature error estimate, already divided by `|Gamma(-p)|`.
    pub error: f64,
    /// Classical derivatives `h^{(k)}(0)`, `k < m`, that were used.
    pub taylor: Vec<f64>,
    pub ill_conditioned: bool,
}

/// Function on the line together with what the definition needs from it.
pub struct LineFunction<'a> {
    pub h: &'a (dyn Fn(f64) -> f64 + Sync),
    /// `h(-t) = 0` for `t >= support`; `None` for an unbounded tail.
    pub support: Option<f64>,
    /// Classical derivatives at zero, `h^{(k)}(0)` for `k = 0, 1, ...`.
    /// Missing entries are estimated by finite differences.
    pub derivatives: Vec<f64>,
    /// Length scale for finite-difference steps.
    pub scale: f64,
}

fn binom(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Central difference of order `k` at 0 with one Richardson step.
pub(crate) fn fd_derivative(h: &dyn Fn(f64) -> f64, k: usize, scale: f64) -> f64 {
    if k == 0 {
        return h(0.0);
    }
    let step = f64::EPSILON.powf(1.0 / (k as f64 + 2.0)) * scale;
    let d = |s: f64| {
        let mut acc = 0.0;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom(k, j) * h((k as f64 / 2.0 - j as f64) * s);
        }
        acc / s.powi(k as i32)
    };
    (4.0 * d(0.5 * step) - d(step)) / 3.0
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

/// `h^{(p)}(0)` with split point 1.
pub fn frac_derivative(f: &LineFunction, order: &FractionalOrder) -> Result<FracValue> {
    frac_derivative_split(f, order, 1.0)
}

/// As [`frac_derivative`] with the split between the Taylor-subtracted part
/// and the tail at `split`.
pub fn frac_derivative_split(f: &LineFunction, order: &FractionalOrder, split: f64) -> Result<FracValue> {
    if !(split > 0.0) {
        return Err(Error::RangeError("split point must be positive".into()));
    }
    let p = order.p;
    let m = order.m;
    let taylor: Vec<f64> = (0..m)
        .map(|k| f.derivatives.get(k).copied().unwrap_or_else(|| fd_derivative(f.h, k, f.scale)))
        .collect();
    let c: Vec<f64> = taylor.iter().enumerate().map(|(k, d)| if k % 2 == 0 { 1.0 } else { -1.0 } * d / factorial(k)).collect();
    let poly = |t: f64| c.iter().rev().fold(0.0, |acc, ck| acc * t + ck);
    let support = f.support.unwrap_or(f64::INFINITY);
    let hm = |t: f64| if t >= support { 0.0 } else { (f.h)(-t) };
    let rem = |t: f64| hm(t) - poly(t);
    let tol = Tolerance { abs: 1e-13, rel: 1e-12, max_intervals: 4000 };

    // Fit truncation ~ tau^{m+2-p} balances rounding ~ eps tau^{-p}.
    let tau = (f64::EPSILON.powf(1.0 / (m as f64 + 2.0)) * f.scale).min(0.5 * split).min(0.5 * support);
    let near = if m == 0 {
        // Nothing is subtracted; w = t^{-p} removes the endpoint singularity.
        integrate(|w: f64| hm(w.powf(-1.0 / p)), 0.0, tau.powf(-p), tol).value / -p
    } else {
        // Near zero the remainder is cancellation-dominated; replace it on
        // [0, tau] by c_m t^m + c_{m+1} t^{m+1} fitted at tau and tau/2.
        let r1 = rem(tau) / tau.powi(m as i32);
        let r2 = rem(0.5 * tau) / (0.5 * tau).powi(m as i32);
        let b = (r1 - r2) / (0.5 * tau);
        let a = r2 - b * 0.5 * tau;
        let mf = m as f64;
        a * tau.powf(mf - p) / (mf - p) + b * tau.powf(mf + 1.0 - p) / (mf + 1.0 - p)
    };

    let body = integrate_with_breaks(|t| t.powf(-1.0 - p) * rem(t), tau, split, &[support], tol);
    let tail = if support <= split {
        crate::numeric::kronrod::Integral { value: 0.0, error: 0.0, intervals: 0 }
    } else if support.is_finite() {
        integrate(|t| t.powf(-1.0 - p) * hm(t), split, support, tol)
    } else {
        // t = split / u maps [split, inf) onto (0, 1].
        integrate(|u| split.powf(-p) * u.powf(p - 1.0) * hm(split / u), 0.0, 1.0, tol)
    };
    let correction: f64 = c.iter().enumerate().map(|(k, ck)| ck * split.powf(k as f64 - p) / (k as f64 - p)).sum();
    let g = gamma(-p);
    Ok(FracValue {
        value: (near + body.value + tail.value + correction) / g,
        error: (body.error + tail.error) / g.abs(),
        taylor,
        ill_conditioned: order.ill_conditioned,
    })
}

/// One row of an integer-limit study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub p: f64,
    pub value: f64,
    pub gap: f64,
}

/// Evaluates `h^{(p)}(0)` along `p = k +- 10^{-j}` and reports the distance
/// to the classical derivative `h^{(k)}(0)` (taken from `f.derivatives` when
/// supplied, finite differences otherwise).
pub fn integer_limit_check(f: &LineFunction, k: usize, exponents: &[i32]) -> Result<Vec<LimitPoint>> {
    let classical = f.derivatives.get(k).copied().unwrap_or_else(|| fd_derivative(f.h, k, f.scale));
    let mut out = Vec::new();
    for &j in exponents {
        for sign in [-1.0, 1.0] {
            let p = k as f64 + sign * 10f64.powi(-j);
            if p <= -1.0 {
                continue;
            }
            let order = FractionalOrder::with_terms(p, k + 1)?;
            let v = frac_derivative(f, &order)?.value;
            out.push(LimitPoint { p, value: v, gap: (v - classical).abs() });
        }
    }
    Ok(out)
}
