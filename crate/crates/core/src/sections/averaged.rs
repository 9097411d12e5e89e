//! The spherical average of parallel sections and the Lipschitz audit.

use crate::error::{Error, Result};
use crate::geometry::body::StarBody;
use crate::geometry::quadrature::SphereQuadrature;
use crate::numeric::special::{averaged_section_constant, lipschitz_constant, omega};

use super::slice::{SliceRule, Slicer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragedRoute {
    /// `(1/omega_n) int A_{K,xi}(t) dxi`.
    Definition,
    /// `(C(n)/(n-1)) int (rho^2 - t^2)_+^{(n-1)/2} dxi`.
    RadialFormula,
}

/// Spherical average of `A_{K,xi}(t)` by either route.
pub fn averaged_section(body: &StarBody, t: f64, quad: &SphereQuadrature, route: AveragedRoute) -> Result<f64> {
    let n = body.dim();
    if quad.dim() != n {
        return Err(Error::DimError { expected: n, got: quad.dim() });
    }
    match route {
        AveragedRoute::Definition => {
            let rule = SliceRule::default_for(body);
            let vals: Result<Vec<f64>> = quad.map_par(|xi| Slicer::new(body, xi, rule.clone()).map(|s| s.area(t))).into_iter().collect();
            let vals = vals?;
            Ok(vals.iter().zip(quad.weights()).map(|(v, w)| v * w).sum::<f64>() / omega(n))
        }
        AveragedRoute::RadialFormula => {
            let e = (n as f64 - 1.0) / 2.0;
            let s = quad.integrate_par(|xi| {
                let r = body.radial_at(xi);
                (r * r - t * t).max(0.0).powf(e)
            });
            Ok(averaged_section_constant(n) / (n as f64 - 1.0) * s)
        }
    }
}

/// Derivative in `t` of the averaged section,
/// `-C(n) t int (rho^2 - t^2)^{(n-3)/2} dxi`, valid for `|t| < r`.
pub fn averaged_section_derivative(body: &StarBody, t: f64, quad: &SphereQuadrature) -> Result<f64> {
    let n = body.dim();
    if quad.dim() != n {
        return Err(Error::DimError { expected: n, got: quad.dim() });
    }
    if t.abs() >= body.inner_radius() {
        return Err(Error::RangeError(format!("|t| = {} must stay below the inner radius", t.abs())));
    }
    let e = (n as f64 - 3.0) / 2.0;
    let s = quad.integrate_par(|xi| {
        let r = body.radial_at(xi);
        (r * r - t * t).powf(e)
    });
    Ok(-averaged_section_constant(n) * t * s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzAudit {
    pub max_ratio: f64,
    pub bound: f64,
    pub holds: bool,
    /// Direction and `(s, t)` pair attaining `max_ratio`.
    pub worst: (Vec<f64>, f64, f64),
}

/// Largest difference quotient of `A_{K,xi}` over `[-r/2, r/2]`, sampled on
/// `samples` equally spaced points per node of `quad`, against
/// `L(n) R^{n-1} / r`. Adjacent pairs suffice: every chord slope is an
/// average of adjacent ones.
pub fn lipschitz_audit(body: &StarBody, quad: &SphereQuadrature, samples: usize) -> Result<LipschitzAudit> {
    lipschitz_audit_with(body, quad, samples, lipschitz_constant(body.dim()))
}

/// As [`lipschitz_audit`] with an explicit dimensional constant `L`.
pub fn lipschitz_audit_with(body: &StarBody, quad: &SphereQuadrature, samples: usize, l_const: f64) -> Result<LipschitzAudit> {
    let n = body.dim();
    if quad.dim() != n {
        return Err(Error::DimError { expected: n, got: quad.dim() });
    }
    if samples < 2 {
        return Err(Error::RangeError("lipschitz audit needs at least two samples".into()));
    }
    let r = body.inner_radius();
    let big_r = body.outer_radius();
    let ts: Vec<f64> = (0..samples).map(|i| -0.5 * r + r * i as f64 / (samples - 1) as f64).collect();
    let rule = SliceRule::default_for(body);
    let per_node: Result<Vec<(f64, usize)>> = quad
        .map_par(|xi| {
            let s = Slicer::new(body, xi, rule.clone())?;
            let a: Vec<f64> = ts.iter().map(|t| s.area(*t)).collect();
            let mut best = (0.0, 0);
            for j in 0..samples - 1 {
                let q = (a[j + 1] - a[j]).abs() / (ts[j + 1] - ts[j]);
                if q > best.0 {
                    best = (q, j);
                }
            }
            Ok(best)
        })
        .into_iter()
        .collect();
    let per_node = per_node?;
    let (i, &(max_ratio, j)) = per_node
        .iter()
        .enumerate()
        .fold((0, &(f64::NEG_INFINITY, 0)), |acc, (i, v)| if v.0 > acc.1 .0 { (i, v) } else { acc });
    let bound = l_const * big_r.powi(n as i32 - 1) / r;
    Ok(LipschitzAudit {
        max_ratio,
        bound,
        holds: max_ratio <= bound,
        worst: (quad.node(i).to_vec(), ts[j], ts[j + 1]),
    })
}
