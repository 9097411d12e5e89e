use std::f64::consts::PI;

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Volume of the unit ball in `R^n`.
pub fn kappa(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Surface area of the unit sphere `S^{n-1}`.
pub fn omega(n: usize) -> f64 {
    n as f64 * kappa(n)
}

/// `Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2))`, the constant in the averaged
/// section formula.
pub fn averaged_section_constant(n: usize) -> f64 {
    let n = n as f64;
    gamma(n / 2.0) / (PI.sqrt() * gamma((n - 1.0) / 2.0))
}

/// Lipschitz constant `8 (n-1) pi^{(n-1)/2} / Gamma((n+1)/2)` of the parallel
/// section function on `[-r/2, r/2]`, before the `R^{n-1}/r` scaling.
pub fn lipschitz_constant(n: usize) -> f64 {
    8.0 * (n as f64 - 1.0) * kappa(n - 1)
}

/// Reciprocal Gamma function, finite (zero) at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_constants() {
        assert!((kappa(2) - PI).abs() < 1e-13);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((omega(2) - 2.0 * PI).abs() < 1e-13);
        assert!((omega(3) - 4.0 * PI).abs() < 1e-13);
        assert!((kappa(1) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn section_constants() {
        assert!((averaged_section_constant(2) - 1.0 / PI).abs() < 1e-13);
        assert!((averaged_section_constant(3) - 0.5).abs() < 1e-13);
        assert!((lipschitz_constant(3) - 16.0 * PI).abs() < 1e-12);
        assert!((lipschitz_constant(2) - 16.0).abs() < 1e-13);
    }

    #[test]
    fn gamma_accuracy() {
        assert!((gamma(0.5) - PI.sqrt()).abs() / PI.sqrt() < 1e-13);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert_eq!(rgamma(-2.0), 0.0);
    }
}
