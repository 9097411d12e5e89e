//! Real orthonormal spherical-harmonic bases on `S^{n-1}`.
//!
//! `n = 2` uses `{1/sqrt(2 pi), cos(m phi)/sqrt(pi), sin(m phi)/sqrt(pi)}`.
//! For `n >= 3` a degree-`m` basis function is indexed by a degree
//! `k <= m` harmonic `P` on `S^{n-2}` (recursively) and evaluated as
//!
//! ```text
//! N * P(x_1..x_{n-1}) * |x|^{m-k} C^{(k + (n-2)/2)}_{m-k}(x_n / |x|)
//! ```
//!
//! with `C` the Gegenbauer polynomial. Both factors are homogeneous
//! polynomials, so evaluation never divides by `sin(theta)` and stays exact
//! at the poles.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::special::ln_gamma;

/// Dimension of the space of degree-`m` spherical harmonics in `n` variables.
pub fn harmonic_dim(n: usize, m: usize) -> usize {
    match n {
        1 => {
            if m <= 1 {
                1
            } else {
                0
            }
        }
        2 => {
            if m == 0 {
                1
            } else {
                2
            }
        }
        _ => (0..=m).map(|k| harmonic_dim(n - 1, k)).sum(),
    }
}

/// Total number of basis functions of degree `<= max_degree`.
pub fn basis_len(n: usize, max_degree: usize) -> usize {
    (0..=max_degree).map(|m| harmonic_dim(n, m)).sum()
}

/// Value at the unit vector `xi` of the `index`-th real orthonormal harmonic
/// of degree `m`.
pub fn basis_eval(n: usize, m: usize, index: usize, xi: &[f64]) -> Result<f64> {
    if xi.len() != n {
        return Err(Error::DimError { expected: n, got: xi.len() });
    }
    if n < 2 {
        return Err(Error::RangeError("harmonics need n >= 2".into()));
    }
    let d = harmonic_dim(n, m);
    if index >= d {
        return Err(Error::RangeError(format!("index {index} >= dim H_{m}^{n} = {d}")));
    }
    Ok(harmonic_poly(n, m, index, xi))
}

/// The homogeneous harmonic polynomial behind [`basis_eval`], valid for any
/// vector (not only unit ones). Caller guarantees `index < harmonic_dim`.
pub(crate) fn harmonic_poly(n: usize, m: usize, index: usize, x: &[f64]) -> f64 {
    if n == 2 {
        if m == 0 {
            return 1.0 / (2.0 * PI).sqrt();
        }
        // Re / Im of (x0 + i x1)^m.
        let (mut re, mut im) = (1.0, 0.0);
        for _ in 0..m {
            let t = re * x[0] - im * x[1];
            im = re * x[1] + im * x[0];
            re = t;
        }
        return if index == 0 { re } else { im } / PI.sqrt();
    }
    let mut idx = index;
    let mut k = 0;
    loop {
        let d = harmonic_dim(n - 1, k);
        if idx < d {
            break;
        }
        idx -= d;
        k += 1;
    }
    let lower = harmonic_poly(n - 1, k, idx, &x[..n - 1]);
    let lambda = k as f64 + (n as f64 - 2.0) / 2.0;
    let j = m - k;
    let r2: f64 = x.iter().map(|c| c * c).sum();
    lower * gegenbauer_homogeneous(j, lambda, x[n - 1], r2) * gegenbauer_norm(j, lambda)
}

/// `|x|^j C_j^{(lambda)}(x_n / |x|)` from the three-term recurrence.
fn gegenbauer_homogeneous(j: usize, lambda: f64, xn: f64, r2: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * xn;
    for i in 1..j {
        let i = i as f64;
        let next = (2.0 * (i + lambda) * xn * cur - (i + 2.0 * lambda - 1.0) * r2 * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `1 / sqrt(int_{-1}^{1} (1-x^2)^{lambda-1/2} C_j^{(lambda)}(x)^2 dx)`.
fn gegenbauer_norm(j: usize, lambda: f64) -> f64 {
    let jf = j as f64;
    let ln_sq = PI.ln() + (1.0 - 2.0 * lambda) * 2f64.ln() + ln_gamma(jf + 2.0 * lambda)
        - ln_gamma(jf + 1.0)
        - (jf + lambda).ln()
        - 2.0 * ln_gamma(lambda);
    (-0.5 * ln_sq).exp()
}

/// Values of every basis function of degree `<= max_degree` at `xi`, ordered
/// by degree and then by index.
pub fn basis_all(n: usize, max_degree: usize, xi: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(basis_len(n, max_degree));
    for m in 0..=max_degree {
        for i in 0..harmonic_dim(n, m) {
            out.push(harmonic_poly(n, m, i, xi));
        }
    }
    out
}
