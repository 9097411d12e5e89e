//! Product quadratures on spheres.
//!
//! `S^1` uses the uniform trapezoid rule. `S^{n-1}` for `n >= 3` is the
//! product of a Gauss rule in the last coordinate `x = cos(theta)` (weight
//! `(1 - x^2)^{(n-3)/2}`) with a rule on `S^{n-2}` for the remaining
//! coordinates. Weights are non-normalized: they sum to the surface area.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::gauss::gauss_gegenbauer;
use crate::numeric::special::omega;
use crate::numeric::MAX_DIM;

#[derive(Debug, Clone)]
enum Layout {
    /// `S^0 = {+1, -1}` with counting measure.
    Pair,
    /// Uniform angles `2 pi j / count` on `S^1`.
    Circle { count: usize },
    /// Gauss rows in the last coordinate times a lower-dimensional rule.
    Product { polar: Vec<f64>, sub: Box<SphereQuadrature> },
}

/// Node/weight set on the unit sphere `S^{dim-1}`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    dim: usize,
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    layout: Layout,
}

/// Builds the standard grid on `S^{n-1}`. For `n = 2` the rule has `order`
/// equally spaced nodes; for `n >= 3` it integrates every polynomial of
/// degree `<= order` exactly.
pub fn sphere_grid(n: usize, order: usize) -> Result<SphereQuadrature> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::RangeError(format!("sphere grid dimension {n} outside 2..={MAX_DIM}")));
    }
    if order < 4 {
        return Err(Error::RangeError(format!("sphere grid order {order} < 4")));
    }
    Ok(build(n, order, false))
}

fn build(n: usize, order: usize, inner: bool) -> SphereQuadrature {
    if n == 2 {
        // Inside a product rule the circle must be exact to degree `order`.
        let count = if inner { order + 2 - order % 2 } else { order };
        let step = 2.0 * PI / count as f64;
        let mut nodes = Vec::with_capacity(2 * count);
        for j in 0..count {
            let phi = step * j as f64;
            nodes.push(phi.cos());
            nodes.push(phi.sin());
        }
        return SphereQuadrature {
            dim: 2,
            order,
            nodes,
            weights: vec![step; count],
            layout: Layout::Circle { count },
        };
    }
    let sub = build(n - 1, order, true);
    let (polar, pw) = gauss_gegenbauer(order / 2 + 1, (n as f64 - 3.0) / 2.0);
    let mut nodes = Vec::with_capacity(polar.len() * sub.len() * n);
    let mut weights = Vec::with_capacity(polar.len() * sub.len());
    for (x, wx) in polar.iter().zip(&pw) {
        let s = (1.0 - x * x).max(0.0).sqrt();
        for j in 0..sub.len() {
            nodes.extend(sub.node(j).iter().map(|c| c * s));
            nodes.push(*x);
            weights.push(wx * sub.weights[j]);
        }
    }
    SphereQuadrature { dim: n, order, nodes, weights, layout: Layout::Product { polar, sub: Box::new(sub) } }
}

impl SphereQuadrature {
    /// Two-point rule on `S^0`, used for slices of planar bodies.
    pub fn zero_sphere() -> Self {
        SphereQuadrature { dim: 1, order: usize::MAX, nodes: vec![1.0, -1.0], weights: vec![1.0, 1.0], layout: Layout::Pair }
    }

    /// Rule on `S^{n-2}` for integrating over hyperplane sections of a body in
    /// `R^n`.
    pub fn for_slices(n: usize, order: usize) -> Result<Self> {
        if n == 2 {
            Ok(Self::zero_sphere())
        } else {
            sphere_grid(n - 1, order)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        match self.layout {
            Layout::Pair => usize::MAX,
            Layout::Circle { count } => count - 1,
            Layout::Product { .. } => self.order,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total mass, equal to the surface area of the sphere.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `sum_i w_i f(node_i)` with a fixed summation order.
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.nodes().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    /// Same as [`integrate`](Self::integrate) with the integrand evaluated in
    /// parallel; the summation order is still fixed.
    pub fn integrate_par<F: Fn(&[f64]) -> f64 + Sync>(&self, f: F) -> f64 {
        let vals = self.map_par(f);
        vals.iter().zip(&self.weights).map(|(v, w)| w * v).sum()
    }

    /// Evaluates `f` at every node in parallel, in node order.
    pub fn map_par<T: Send, F: Fn(&[f64]) -> T + Sync>(&self, f: F) -> Vec<T> {
        use rayon::prelude::*;
        let f = &f;
        self.nodes.par_chunks_exact(self.dim).map(|x| f(x)).collect()
    }

    /// Interpolates node values at an arbitrary unit vector: periodic cubic
    /// in the azimuth and cubic Lagrange across the Gauss rows. Reproduces
    /// node values exactly.
    pub fn interpolate(&self, values: &[f64], xi: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        match &self.layout {
            Layout::Pair => {
                if xi[0] >= 0.0 {
                    values[0]
                } else {
                    values[1]
                }
            }
            Layout::Circle { count } => {
                let count = *count;
                let mut phi = xi[1].atan2(xi[0]);
                if phi < 0.0 {
                    phi += 2.0 * PI;
                }
                let u = phi / (2.0 * PI / count as f64);
                let i = u.floor();
                let s = u - i;
                let i = i as isize;
                let at = |k: isize| values[k.rem_euclid(count as isize) as usize];
                let (p0, p1, p2, p3) = (at(i - 1), at(i), at(i + 1), at(i + 2));
                // Catmull-Rom spline.
                0.5 * (2.0 * p1
                    + (p2 - p0) * s
                    + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s
                    + (3.0 * (p1 - p2) + p3 - p0) * s * s * s)
            }
            Layout::Product { polar, sub } => {
                let n = self.dim;
                let x = xi[n - 1].clamp(-1.0, 1.0);
                let rest = &xi[..n - 1];
                let len = crate::numeric::norm(rest);
                let m = sub.len();
                let row_value = |r: usize| -> f64 {
                    let row = &values[r * m..(r + 1) * m];
                    if len < 1e-300 {
                        row.iter().zip(sub.weights()).map(|(v, w)| v * w).sum::<f64>() / sub.total_weight()
                    } else {
                        let mut buf = [0.0; MAX_DIM];
                        for (b, c) in buf.iter_mut().zip(rest) {
                            *b = c / len;
                        }
                        sub.interpolate(row, &buf[..n - 1])
                    }
                };
                let rows = polar.len();
                if rows == 1 {
                    return row_value(0);
                }
                let k = polar.partition_point(|p| *p <= x);
                let width = 4.min(rows);
                let start = k.saturating_sub(2).min(rows - width);
                let idx: Vec<usize> = (start..start + width).collect();
                if let Some(&hit) = idx.iter().find(|&&r| polar[r] == x) {
                    return row_value(hit);
                }
                idx.iter()
                    .map(|&r| {
                        let basis: f64 = idx
                            .iter()
                            .filter(|&&q| q != r)
                            .map(|&q| (x - polar[q]) / (polar[r] - polar[q]))
                            .product();
                        basis * row_value(r)
                    })
                    .sum()
            }
        }
    }

    /// Surface area `omega_n` of the sphere this rule lives on.
    pub fn sphere_area(&self) -> f64 {
        if self.dim == 1 {
            2.0
        } else {
            omega(self.dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_rule() {
        let q = sphere_grid(2, 8).unwrap();
        assert_eq!(q.len(), 8);
        assert!(q.weights().iter().all(|w| (w - 2.0 * PI / 8.0).abs() < 1e-15));
    }

    #[test]
    fn total_weights() {
        for n in 2..=5 {
            let q = sphere_grid(n, 16).unwrap();
            assert!((q.total_weight() - omega(n)).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn second_moment_on_s2() {
        let q = sphere_grid(3, 16).unwrap();
        let m = q.integrate(|x| x[0] * x[0]);
        assert!((m - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sphere_grid(1, 8).is_err());
        assert!(sphere_grid(3, 2).is_err());
    }

    #[test]
    fn interpolation_reproduces_nodes_and_smooth_functions() {
        let q = sphere_grid(3, 32).unwrap();
        let f = |x: &[f64]| 1.0 + 0.3 * x[0] - 0.2 * x[1] * x[2];
        let vals: Vec<f64> = q.nodes().map(f).collect();
        for i in (0..q.len()).step_by(37) {
            assert!((q.interpolate(&vals, q.node(i)) - vals[i]).abs() < 1e-12);
        }
        let p = [0.48, -0.6, 0.64];
        assert!((q.interpolate(&vals, &p) - f(&p)).abs() < 1e-3);
    }
}
