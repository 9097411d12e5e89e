//! Degree-wise harmonic expansions of functions on the sphere.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::quadrature::SphereQuadrature;
use crate::geometry::spec::{ConvexBodySpec, SeriesTerm};

use super::basis::{basis_all, harmonic_dim};

/// Real coefficients of `f` in the orthonormal basis, one block per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    pub dim: usize,
    pub blocks: Vec<Vec<f64>>,
    /// `L^2` norm of `f - synthesis` measured on the expansion grid.
    pub residual: f64,
}

/// Complex-valued coefficients, produced by the operator `I_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexExpansion {
    pub dim: usize,
    pub blocks: Vec<Vec<Complex64>>,
}

fn guard(quad: &SphereQuadrature, max_degree: usize) -> Result<()> {
    if quad.order() < 2 * max_degree + 2 {
        return Err(Error::ResolutionError(format!(
            "grid order {} is below 2 * max_degree + 2 = {}",
            quad.order(),
            2 * max_degree + 2
        )));
    }
    Ok(())
}

/// Expands `f` up to `max_degree` by quadrature inner products.
pub fn expand<F: Fn(&[f64]) -> f64 + Sync>(f: F, quad: &SphereQuadrature, max_degree: usize) -> Result<HarmonicExpansion> {
    let values = quad.map_par(&f);
    expand_values(&values, quad, max_degree)
}

/// Expands the function with the given node values.
pub fn expand_values(values: &[f64], quad: &SphereQuadrature, max_degree: usize) -> Result<HarmonicExpansion> {
    guard(quad, max_degree)?;
    if values.len() != quad.len() {
        return Err(Error::DimError { expected: quad.len(), got: values.len() });
    }
    let n = quad.dim();
    let basis = quad.map_par(|x| basis_all(n, max_degree, x));
    let len = basis[0].len();
    let mut flat = vec![0.0; len];
    for ((b, v), w) in basis.iter().zip(values).zip(quad.weights()) {
        for (c, y) in flat.iter_mut().zip(b) {
            *c += w * v * y;
        }
    }
    let mut blocks = Vec::with_capacity(max_degree + 1);
    let mut at = 0;
    for m in 0..=max_degree {
        let d = harmonic_dim(n, m);
        blocks.push(flat[at..at + d].to_vec());
        at += d;
    }
    let mut sq = 0.0;
    for ((b, v), w) in basis.iter().zip(values).zip(quad.weights()) {
        let s: f64 = b.iter().zip(&flat).map(|(y, c)| y * c).sum();
        sq += w * (v - s) * (v - s);
    }
    Ok(HarmonicExpansion { dim: n, blocks, residual: sq.sqrt() })
}

impl HarmonicExpansion {
    pub fn max_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Expansion with the given blocks and no recorded residual.
    pub fn from_blocks(dim: usize, blocks: Vec<Vec<f64>>) -> Result<Self> {
        for (m, b) in blocks.iter().enumerate() {
            if b.len() != harmonic_dim(dim, m) {
                return Err(Error::DimError { expected: harmonic_dim(dim, m), got: b.len() });
            }
        }
        Ok(HarmonicExpansion { dim, blocks, residual: 0.0 })
    }

    pub fn synthesize(&self, xi: &[f64]) -> f64 {
        let b = basis_all(self.dim, self.max_degree(), xi);
        b.iter().zip(self.blocks.iter().flatten()).map(|(y, c)| y * c).sum()
    }

    /// `||block_m||^2` per degree.
    pub fn block_norms_sq(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.iter().map(|c| c * c).sum()).collect()
    }

    /// `||f||_2^2` by Parseval.
    pub fn norm_sq(&self) -> f64 {
        self.block_norms_sq().iter().sum()
    }

    /// Radial-series body description with the same synthesis; the degree-0
    /// block becomes the base radius and coefficients with `|c| <= drop` are
    /// omitted.
    pub fn to_radial_series(&self, drop: f64) -> ConvexBodySpec {
        let y0 = basis_all(self.dim, 0, &unit_e1(self.dim))[0];
        let terms = self
            .blocks
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(m, b)| b.iter().enumerate().map(move |(i, c)| SeriesTerm { degree: m, index: i, coeff: *c }))
            .filter(|t| t.coeff.abs() > drop)
            .collect();
        ConvexBodySpec::RadialSeries { dim: self.dim, base: self.blocks[0][0] * y0, terms }
    }

    /// Even-degree and odd-degree parts.
    pub fn split_parity(&self) -> (HarmonicExpansion, HarmonicExpansion) {
        let keep = |odd: bool| HarmonicExpansion {
            dim: self.dim,
            blocks: self
                .blocks
                .iter()
                .enumerate()
                .map(|(m, b)| if (m % 2 == 1) == odd { b.clone() } else { vec![0.0; b.len()] })
                .collect(),
            residual: 0.0,
        };
        (keep(false), keep(true))
    }

    /// Records `(m, index, re, im)`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "m,index,coefficient_real,coefficient_imag")?;
        for (m, b) in self.blocks.iter().enumerate() {
            for (i, c) in b.iter().enumerate() {
                writeln!(w, "{m},{i},{:.16e},{:.16e}", c, 0.0)?;
            }
        }
        Ok(())
    }
}

fn unit_e1(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect()
}

/// `||grad_o f||_2^2 = sum_m m (m + n - 2) ||block_m||^2`.
pub fn gradient_norm_sq(e: &HarmonicExpansion) -> f64 {
    let n = e.dim as f64;
    e.block_norms_sq().iter().enumerate().map(|(m, s)| m as f64 * (m as f64 + n - 2.0) * s).sum()
}

impl ComplexExpansion {
    pub fn max_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn synthesize(&self, xi: &[f64]) -> Complex64 {
        let b = basis_all(self.dim, self.max_degree(), xi);
        b.iter().zip(self.blocks.iter().flatten()).map(|(y, c)| c * y).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.blocks.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "m,index,coefficient_real,coefficient_imag")?;
        for (m, b) in self.blocks.iter().enumerate() {
            for (i, c) in b.iter().enumerate() {
                writeln!(w, "{m},{i},{:.16e},{:.16e}", c.re, c.im)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadrature::sphere_grid;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_linear() {
        let q = sphere_grid(3, 16).unwrap();
        let e = expand(|_| 1.0, &q, 6).unwrap();
        assert!((e.blocks[0][0] - (4.0 * PI).sqrt()).abs() < 1e-12);
        assert!(e.blocks[1..].iter().flatten().all(|c| c.abs() < 1e-12));
        let e = expand(|x| x[0], &q, 6).unwrap();
        let norms = e.block_norms_sq();
        assert!((norms[1] - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((gradient_norm_sq(&e) - 8.0 * PI / 3.0).abs() < 1e-11);
        assert!(e.residual < 1e-12);
    }

    #[test]
    fn radial_series_reproduces_synthesis() {
        let q = sphere_grid(3, 16).unwrap();
        let f = |x: &[f64]| 1.0 + 0.1 * x[0] + 0.05 * (x[1] * x[1] - x[2] * x[2]);
        let e = expand(f, &q, 4).unwrap();
        let body = e.to_radial_series(1e-15).build().unwrap();
        for x in q.nodes() {
            assert!((body.radial_at(x) - f(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn guard_rejects_coarse_grid() {
        let q = sphere_grid(3, 10).unwrap();
        assert!(matches!(expand(|_| 1.0, &q, 6), Err(Error::ResolutionError(_))));
    }
}
