//! Gauss rules for the Gegenbauer weight `(1 - x^2)^a` on `[-1, 1]`, computed
//! by the Golub-Welsch eigenvalue method.

use nalgebra::{DMatrix, SymmetricEigen};

use super::special::ln_gamma;

/// Nodes (ascending) and weights of the `count`-point Gauss rule for the
/// weight `(1 - x^2)^a`, `a > -1`. Exact for polynomials of degree `< 2 count`.
pub fn gauss_gegenbauer(count: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(count >= 1 && a > -1.0);
    // Jacobi matrix of the monic recurrence for Jacobi(a, a).
    let mut jac = DMatrix::<f64>::zeros(count, count);
    for k in 1..count {
        let k = k as f64;
        let num = 4.0 * k * (k + 2.0 * a) * (k + a) * (k + a);
        let den = (2.0 * k + 2.0 * a).powi(2) * (2.0 * k + 2.0 * a + 1.0) * (2.0 * k + 2.0 * a - 1.0);
        let b = (num / den).sqrt();
        let i = k as usize;
        jac[(i, i - 1)] = b;
        jac[(i - 1, i)] = b;
    }
    let mass = (0.5 * std::f64::consts::PI.ln() + ln_gamma(a + 1.0) - ln_gamma(a + 1.5)).exp();
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..count)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // Symmetrize: the rule is exactly symmetric about zero.
    let mut nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    for i in 0..count / 2 {
        let j = count - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -x;
        nodes[j] = x;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if count % 2 == 1 {
        nodes[count / 2] = 0.0;
    }
    // Renormalize the total mass against rounding in the eigenvectors.
    let s: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= mass / s;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule on `[lo, hi]`.
pub fn gauss_legendre(count: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_gegenbauer(count, 0.0);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_moments() {
        let (x, w) = gauss_gegenbauer(6, 0.0);
        for k in 0..12 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "k={k} q={q}");
        }
    }

    #[test]
    fn chebyshev_second_kind_weight() {
        // (1-x^2)^{1/2}: integral of x^2 is pi/8.
        let (x, w) = gauss_gegenbauer(5, 0.5);
        let total: f64 = w.iter().sum();
        assert!((total - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m2 - std::f64::consts::PI / 8.0).abs() < 1e-14);
    }
}
