//! Body distance against the `L^2` norm of `I_p (rho_K^{n-p} - rho_L^{n-p})`.

use crate::error::{Error, Result};
use crate::geometry::body::StarBody;
use crate::geometry::metrics::radial_metric;
use crate::geometry::quadrature::SphereQuadrature;
use crate::harmonics::eigen::apply_ip;
use crate::harmonics::expansion::{expand, gradient_norm_sq};
use crate::numeric::special::omega;

use super::fit::q_keylemma;
use super::report::{StabilityReport, Theorem, Verdict};
use super::verify::{BOUND_TOL, EPS_FLOOR};

/// `R^2 r^{(-3n-1+2p)/(n+1)} eps^{2/(n+1)}` for `n <= 2p`, otherwise
/// `R^2 r^{(-3n-1+2p)/(n+1)} (eps^2 + R^{2(n+1-p)}/r^2)^{(n-2p)/((n+2-2p)(n+1))}
/// eps^{4/((n+2-2p)(n+1))}`; the bound up to the abstract factor `C(n,p)`.
pub fn keylemma_shape(n: usize, p: f64, r: f64, big_r: f64, eps: f64) -> f64 {
    let nf = n as f64;
    let head = big_r * big_r * r.powf((-3.0 * nf - 1.0 + 2.0 * p) / (nf + 1.0));
    if nf <= 2.0 * p {
        head * eps.powf(2.0 / (nf + 1.0))
    } else {
        let d = (nf + 2.0 - 2.0 * p) * (nf + 1.0);
        let mid = eps * eps + big_r.powf(2.0 * (nf + 1.0 - p)) / (r * r);
        head * mid.powf((nf - 2.0 * p) / d) * eps.powf(4.0 / d)
    }
}

/// `16 (n-p)^2 R^{2(n+1-p)} r^{-2} omega_n`.
pub fn gradient_bound(n: usize, p: f64, r: f64, big_r: f64) -> f64 {
    let nf = n as f64;
    16.0 * (nf - p).powi(2) * big_r.powf(2.0 * (nf + 1.0 - p)) / (r * r) * omega(n)
}

/// Computes `eps = ||I_p f||_2` for `f = rho_K^{n-p} - rho_L^{n-p}` from a
/// degree-`max_degree` expansion, the grid distance `rho(K, L)` and the
/// bound shape. The explicit gradient estimate on `f` is audited; the
/// distance bound itself only admits a rate check.
pub fn keylemma_bound(
    k: &StarBody,
    l: &StarBody,
    p: f64,
    quad: &SphereQuadrature,
    max_degree: usize,
) -> Result<StabilityReport> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimError { expected: n, got: l.dim() });
    }
    if !(p > 0.0 && p < n as f64) {
        return Err(Error::RangeError(format!("order p = {p} outside (0, {n})")));
    }
    for b in [k, l] {
        if !b.smoothness().at_least(1) {
            return Err(Error::SmoothnessError("the key estimate is stated for smooth bodies".into()));
        }
    }
    let e = n as f64 - p;
    let f = expand(|x| k.radial_at(x).powf(e) - l.radial_at(x).powf(e), quad, max_degree)?;
    let eps = apply_ip(&f, p)?.norm_sq().sqrt();
    let dist = radial_metric(k, l, quad)?.value;
    let r = k.inner_radius().min(l.inner_radius());
    let big_r = k.outer_radius().max(l.outer_radius());
    let shape = keylemma_shape(n, p, r, big_r, eps);
    let grad = gradient_norm_sq(&f);
    let grad_bound = gradient_bound(n, p, r, big_r);

    let mut rep = StabilityReport::new(Theorem::KeyLemma, n, r, big_r, quad.order());
    rep.epsilon = eps;
    rep.distance = dist;
    rep.q = q_keylemma(n, p);
    rep.details.push(("p", p));
    rep.details.push(("shape", shape));
    if shape > 0.0 {
        rep.details.push(("implied_constant", dist / shape));
    }
    rep.details.push(("grad_norm_sq", grad));
    rep.details.push(("grad_bound", grad_bound));
    rep.verdict = if grad > grad_bound * (1.0 + 1e-9) {
        rep.note = "gradient estimate exceeded".into();
        Verdict::Violated
    } else if eps <= EPS_FLOOR && dist > BOUND_TOL {
        Verdict::Inconsistent
    } else {
        rep.note = "constant C(n,p) is not numeric; verdict is rate consistency plus the gradient estimate".into();
        Verdict::Consistent
    };
    Ok(rep)
}
