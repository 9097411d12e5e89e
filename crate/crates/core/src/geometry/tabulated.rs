//! Star bodies known only through radial values on a sphere grid.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::body::{radial_extremes, RadialOracle, Smoothness, StarBody};
use super::quadrature::SphereQuadrature;

#[derive(Debug, Clone)]
pub struct TabulatedRadial {
    quad: SphereQuadrature,
    values: Vec<f64>,
}

impl TabulatedRadial {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quad
    }
}

impl RadialOracle for TabulatedRadial {
    fn dim(&self) -> usize {
        self.quad.dim()
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        self.quad.interpolate(&self.values, xi)
    }
}

/// Wraps node values as a star body. The result is never labelled convex.
pub fn tabulated_body(quad: SphereQuadrature, values: Vec<f64>) -> Result<StarBody> {
    if values.len() != quad.len() {
        return Err(Error::DimError { expected: quad.len(), got: values.len() });
    }
    if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidBody("tabulated radial values must be positive".into()));
    }
    let order = quad.order();
    let t = TabulatedRadial { quad, values };
    let node_min = t.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let node_max = t.values.iter().cloned().fold(0.0, f64::max);
    // The interpolant can overshoot the node values slightly between nodes.
    let (lo, hi) = radial_extremes(&t, order.max(8));
    let inner = lo.min(node_min) * (1.0 - 1e-9);
    let outer = hi.max(node_max) * (1.0 + 1e-9);
    if inner <= 0.0 {
        return Err(Error::InvalidBody("tabulated interpolant is not positive".into()));
    }
    StarBody::new(Arc::new(t), inner, outer, Smoothness::C0, false)
}
