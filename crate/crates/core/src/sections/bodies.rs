//! Intersection and cross-section bodies, tabulated on sphere grids.

use crate::error::Result;
use crate::geometry::body::StarBody;
use crate::geometry::quadrature::SphereQuadrature;
use crate::geometry::tabulated::tabulated_body;

use super::slice::{SliceRule, Slicer};

/// Radial values of a derived body on the nodes of `quad`, with the
/// interpolating star body.
#[derive(Debug, Clone)]
pub struct BodyTable {
    pub quad: SphereQuadrature,
    pub values: Vec<f64>,
    /// Maximizers `t_K(xi)` per node (cross-section bodies only).
    pub t_star: Option<Vec<f64>>,
    pub body: StarBody,
}

fn tabulate<F>(body: &StarBody, quad: &SphereQuadrature, rule: &SliceRule, f: F) -> Result<Vec<(f64, f64)>>
where
    F: Fn(&Slicer) -> (f64, f64) + Sync,
{
    if quad.dim() != body.dim() {
        return Err(crate::error::Error::DimError { expected: body.dim(), got: quad.dim() });
    }
    quad.map_par(|xi| Slicer::new(body, xi, rule.clone()).map(|s| f(&s))).into_iter().collect()
}

/// `rho_{IK}(xi) = A_{K,xi}(0)`.
pub fn intersection_body(body: &StarBody, quad: &SphereQuadrature) -> Result<BodyTable> {
    intersection_body_with(body, quad, &SliceRule::default_for(body))
}

pub fn intersection_body_with(body: &StarBody, quad: &SphereQuadrature, rule: &SliceRule) -> Result<BodyTable> {
    let vals = tabulate(body, quad, rule, |s| (s.area(0.0), 0.0))?;
    let values: Vec<f64> = vals.into_iter().map(|v| v.0).collect();
    let tb = tabulated_body(quad.clone(), values.clone())?;
    Ok(BodyTable { quad: quad.clone(), values, t_star: None, body: tb })
}

/// `rho_{CK}(xi) = m_K(xi)`.
pub fn cross_section_body(body: &StarBody, quad: &SphereQuadrature) -> Result<BodyTable> {
    cross_section_body_with(body, quad, &SliceRule::default_for(body))
}

pub fn cross_section_body_with(body: &StarBody, quad: &SphereQuadrature, rule: &SliceRule) -> Result<BodyTable> {
    let vals = tabulate(body, quad, rule, |s| {
        let m = s.max_section();
        (m.m, m.t_star)
    })?;
    let values: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let t_star = vals.iter().map(|v| v.1).collect();
    let tb = tabulated_body(quad.clone(), values.clone())?;
    Ok(BodyTable { quad: quad.clone(), values, t_star: Some(t_star), body: tb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadrature::sphere_grid;
    use crate::geometry::spec::ConvexBodySpec;
    use std::f64::consts::PI;

    #[test]
    fn shifted_ball_bodies() {
        let s = 0.2;
        let k = ConvexBodySpec::shifted_ball(3, s).build().unwrap();
        let q = sphere_grid(3, 12).unwrap();
        let ik = intersection_body(&k, &q).unwrap();
        let ck = cross_section_body(&k, &q).unwrap();
        for (i, x) in q.nodes().enumerate() {
            assert!((ik.values[i] - PI * (1.0 - s * s * x[0] * x[0])).abs() < 1e-12);
            assert!((ck.values[i] - PI).abs() < 1e-12);
            assert!((ik.body.radial_at(x) - ik.values[i]).abs() < 1e-12);
        }
        let gap = ck.values.iter().zip(&ik.values).map(|(a, b)| a - b).fold(0.0, f64::max);
        assert!((gap - PI * s * s).abs() < 1e-12);
    }
}
