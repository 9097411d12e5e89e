//! Numerical building blocks shared by the geometric modules: Gauss rules,
//! adaptive Gauss-Kronrod integration, one-dimensional search and root
//! bracketing, and the Gamma-function constants of the unit ball.

pub mod gauss;
pub mod kronrod;
pub mod search;
pub mod special;

/// Largest ambient dimension supported by stack-allocated point buffers.
pub const MAX_DIM: usize = 8;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
