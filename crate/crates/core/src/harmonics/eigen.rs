//! Eigenvalues of `I_p` on spherical harmonics.
//!
//! `I_p f` is the restriction to the sphere of the Fourier transform of the
//! `(-n+p)`-homogeneous extension of `f`. On degree-`m` harmonics it acts
//! by the scalar
//!
//! ```text
//! lambda_m(n, p) = 2^p pi^{n/2} c_m Gamma((m+p)/2) / Gamma((m+n-p)/2),
//! c_m = (-1)^{m/2} (m even),  i (-1)^{(m-1)/2} (m odd).
//! ```
//!
//! The factor `c_m = i^m` corresponds to the transform kernel
//! `exp(+i<x, y>)`; with `exp(-i<x, y>)` odd eigenvalues change sign.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::special::{gamma, ln_gamma};

use super::expansion::{ComplexExpansion, HarmonicExpansion};

/// Sign of the exponent in the Fourier kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierKernel {
    /// `exp(+i<x, y>)`: the tabulated eigenvalues as printed.
    Positive,
    /// `exp(-i<x, y>)`: complex conjugates of the former.
    Negative,
}

/// `lambda_m(n, p)` with the positive kernel.
pub fn lambda_eigenvalue(n: usize, p: f64, m: usize) -> Result<Complex64> {
    lambda_with(n, p, m, FourierKernel::Positive)
}

pub fn lambda_with(n: usize, p: f64, m: usize, kernel: FourierKernel) -> Result<Complex64> {
    let nf = n as f64;
    if !(p > 0.0 && p < nf) {
        return Err(Error::RangeError(format!("order p = {p} outside (0, {n})")));
    }
    let a = (m as f64 + p) / 2.0;
    let b = (m as f64 + nf - p) / 2.0;
    let ratio = if a < 100.0 && b < 100.0 { gamma(a) / gamma(b) } else { (ln_gamma(a) - ln_gamma(b)).exp() };
    let mag = 2f64.powf(p) * std::f64::consts::PI.powf(nf / 2.0) * ratio;
    let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let v = if m % 2 == 0 { Complex64::new(sign * mag, 0.0) } else { Complex64::new(0.0, sign * mag) };
    Ok(match kernel {
        FourierKernel::Positive => v,
        FourierKernel::Negative => v.conj(),
    })
}

/// Multiplies each degree block by `lambda_m(n, p)`.
pub fn apply_ip(e: &HarmonicExpansion, p: f64) -> Result<ComplexExpansion> {
    apply_ip_with(e, p, FourierKernel::Positive)
}

pub fn apply_ip_with(e: &HarmonicExpansion, p: f64, kernel: FourierKernel) -> Result<ComplexExpansion> {
    let blocks = e
        .blocks
        .iter()
        .enumerate()
        .map(|(m, b)| {
            let l = lambda_with(e.dim, p, m, kernel)?;
            Ok(b.iter().map(|c| l * c).collect())
        })
        .collect::<Result<Vec<Vec<Complex64>>>>()?;
    Ok(ComplexExpansion { dim: e.dim, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tabulated_values() {
        let l = lambda_eigenvalue(2, 1.0, 0).unwrap();
        assert!((l.re - 2.0 * PI).abs() < 1e-12 * 2.0 * PI && l.im == 0.0);
        let l = lambda_eigenvalue(3, 2.0, 2).unwrap();
        assert!((l.re + 8.0 * PI).abs() < 1e-12 * 8.0 * PI && l.im == 0.0);
        let l = lambda_eigenvalue(3, 2.0, 1).unwrap();
        assert!((l.im - 2.0 * PI * PI).abs() < 1e-12 * 2.0 * PI * PI && l.re == 0.0);
        assert!(lambda_eigenvalue(3, 3.0, 0).is_err());
        assert!(lambda_eigenvalue(3, 0.0, 0).is_err());
    }

    #[test]
    fn large_degree_branch_is_continuous() {
        // Crossing the switch between direct Gamma and log-Gamma.
        let below = lambda_eigenvalue(3, 0.5, 196).unwrap().norm();
        let above = lambda_eigenvalue(3, 0.5, 198).unwrap().norm();
        // |lambda_{m+2}| / |lambda_m| = ((m+p)/2) / ((m+n-p)/2).
        let expect = (196.5 / 2.0) / (198.5 / 2.0);
        assert!((above / below - expect).abs() < 1e-12);
    }
}
