//! Claimed exponents and least-squares exponent fits.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exponent `q(n)` for asymmetry in terms of `rho(CK, IK)`.
pub fn q_exponent(n: usize) -> Ratio<u32> {
    assert!(n >= 2, "q_exponent needs n >= 2");
    let n = n as u32;
    match n {
        2 => Ratio::new(1, 2),
        3 | 4 => Ratio::new(1, 2 * (n + 1)),
        _ => Ratio::new(1, (n - 2) * (n + 1)),
    }
}

pub fn ratio_value(q: Ratio<u32>) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Exponent for body distance in terms of the fractional-derivative gap of
/// order `p`.
pub fn q_main2(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    if nf <= 2.0 * p + 2.0 {
        2.0 / (nf + 1.0)
    } else {
        4.0 / ((nf - 2.0 * p) * (nf + 1.0))
    }
}

/// Exponent for body distance in terms of `||I_p f||_2`.
pub fn q_keylemma(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    if nf <= 2.0 * p {
        2.0 / (nf + 1.0)
    } else {
        4.0 / ((nf + 2.0 - 2.0 * p) * (nf + 1.0))
    }
}

/// Least-squares line through `(log eps, log dist)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub count: usize,
    /// `log10(max eps / min eps)`.
    pub decades: f64,
}

pub const MIN_POINTS: usize = 5;
pub const MIN_DECADES: f64 = 2.0;

/// Fits `dist ~ C eps^slope` over a family.
pub fn exponent_fit<T>(members: &[T], eps: impl Fn(&T) -> f64, dist: impl Fn(&T) -> f64) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = members.iter().map(|m| (eps(m), dist(m))).collect();
    if pts.len() < MIN_POINTS {
        return Err(Error::FitError(format!("{} points, need {MIN_POINTS}", pts.len())));
    }
    if pts.iter().any(|&(e, d)| !(e > 0.0 && d > 0.0 && e.is_finite() && d.is_finite())) {
        return Err(Error::FitError("non-positive or non-finite value".into()));
    }
    let lo = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let decades = (hi / lo).log10();
    if decades < MIN_DECADES {
        return Err(Error::FitError(format!("eps spans {decades:.3} decades, need {MIN_DECADES}")));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / k).sqrt();
    Ok(ExponentFit { slope, intercept, residual, count: pts.len(), decades })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_cases() {
        assert_eq!(q_exponent(2), Ratio::new(1, 2));
        assert_eq!(q_exponent(3), Ratio::new(1, 8));
        assert_eq!(q_exponent(4), Ratio::new(1, 10));
        assert_eq!(q_exponent(5), Ratio::new(1, 18));
        assert_eq!(q_exponent(6), Ratio::new(1, 28));
        assert_eq!(q_main2(3, 0.5), 0.5);
        assert!((q_main2(5, 0.5) - 4.0 / 24.0).abs() < 1e-15);
        assert_eq!(q_keylemma(3, 2.0), 0.5);
        assert!((q_keylemma(3, 1.0) - 4.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn recovers_power_law() {
        let s: Vec<f64> = (0..7).map(|i| 1e-3 * 10f64.powf(i as f64 / 3.0)).collect();
        let f = exponent_fit(&s, |s| std::f64::consts::PI * s * s, |s| 2.0 * s).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn degenerate_families() {
        let c = vec![1.0; 6];
        assert!(matches!(exponent_fit(&c, |x| *x, |x| *x), Err(Error::FitError(_))));
        let few = vec![1e-3, 1.0];
        assert!(matches!(exponent_fit(&few, |x| *x, |x| *x), Err(Error::FitError(_))));
    }
}
