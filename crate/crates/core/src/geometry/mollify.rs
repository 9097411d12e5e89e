//! Smooth approximants obtained by averaging the gauge over a thin shell.
//!
//! `||x||_{K_delta} = sum_i w_i ||x + |x| z_i||_K` where the `z_i` sample the
//! shell `delta/2 <= |z| <= delta` against the bump density
//! `exp(-1/(1 - s^2))`, `s = (4|z| - 3 delta)/delta`, and the weights are
//! normalized to total mass one. Any such positive rule keeps the
//! containment `B_{r/(1+delta)} in K_delta in B_{R/(1-delta)}` exact.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::gauss::gauss_legendre;
use crate::numeric::{norm, MAX_DIM};

use super::body::{RadialOracle, Smoothness, StarBody};
use super::quadrature::sphere_grid;

/// Radial and angular resolution of the shell rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShellRule {
    pub radial_nodes: usize,
    pub angular_order: usize,
}

impl ShellRule {
    pub fn default_for(n: usize) -> Self {
        match n {
            2 => ShellRule { radial_nodes: 12, angular_order: 256 },
            3 => ShellRule { radial_nodes: 8, angular_order: 24 },
            _ => ShellRule { radial_nodes: 6, angular_order: 12 },
        }
    }
}

/// Unnormalized bump profile on `[delta/2, delta]`.
pub fn bump(u: f64, delta: f64) -> f64 {
    let s = (4.0 * u - 3.0 * delta) / delta;
    if s.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

#[derive(Debug)]
struct Mollified {
    base: Arc<dyn RadialOracle>,
    dim: usize,
    /// Flat shell offsets `z_i`.
    offsets: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialOracle for Mollified {
    fn dim(&self) -> usize {
        self.dim
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        1.0 / self.gauge(xi)
    }

    fn gauge(&self, x: &[f64]) -> f64 {
        let n = self.dim;
        let len = norm(x);
        if len == 0.0 {
            return 0.0;
        }
        let mut p = [0.0; MAX_DIM];
        let mut acc = 0.0;
        for (z, w) in self.offsets.chunks_exact(n).zip(&self.weights) {
            for i in 0..n {
                p[i] = x[i] + len * z[i];
            }
            acc += w * self.base.gauge(&p[..n]);
        }
        acc
    }
}

/// Mollifies `body` at scale `delta` with the default shell rule.
pub fn mollify(body: &StarBody, delta: f64) -> Result<StarBody> {
    mollify_with(body, delta, ShellRule::default_for(body.dim()))
}

pub fn mollify_with(body: &StarBody, delta: f64, rule: ShellRule) -> Result<StarBody> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::RangeError(format!("mollifier scale {delta} outside (0, 1)")));
    }
    let n = body.dim();
    let sphere = sphere_grid(n, rule.angular_order)?;
    let (us, uw) = gauss_legendre(rule.radial_nodes, 0.5 * delta, delta);
    let mut offsets = Vec::with_capacity(us.len() * sphere.len() * n);
    let mut weights = Vec::with_capacity(us.len() * sphere.len());
    for (u, wu) in us.iter().zip(&uw) {
        let radial_w = wu * bump(*u, delta) * u.powi(n as i32 - 1);
        for (z, wz) in sphere.nodes().zip(sphere.weights()) {
            offsets.extend(z.iter().map(|c| c * u));
            weights.push(radial_w * wz);
        }
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let oracle = Mollified { base: body.oracle().clone(), dim: n, offsets, weights };
    StarBody::new(
        Arc::new(oracle),
        body.inner_radius() / (1.0 + delta),
        body.outer_radius() / (1.0 - delta),
        Smoothness::Cinf,
        body.is_convex(),
    )
}
