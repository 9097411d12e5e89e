//! Fractional derivatives of parallel section functions, directly and
//! through the eigenvalues of `I_{1+p}`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::body::StarBody;
use crate::geometry::quadrature::SphereQuadrature;
use crate::harmonics::eigen::{apply_ip_with, FourierKernel};
use crate::harmonics::expansion::{expand, ComplexExpansion};
use crate::sections::slice::{SliceRule, Slicer};

use super::derivative::{frac_derivative, FracValue, FractionalOrder, LineFunction};

fn require_smooth(body: &StarBody) -> Result<()> {
    if !body.smoothness().at_least(1) {
        return Err(Error::SmoothnessError(
            "fractional section derivatives need a smooth body; mollify it first".into(),
        ));
    }
    Ok(())
}

fn check_p(n: usize, p: f64) -> Result<()> {
    if !(p > -1.0 && p < n as f64 - 1.0) {
        return Err(Error::RangeError(format!("fractional order {p} outside (-1, {})", n - 1)));
    }
    Ok(())
}

/// `A^{(p)}_{K,xi}(0)` from the integral definition, with classical
/// derivatives at zero from central differences of the section function.
pub fn frac_section(body: &StarBody, xi: &[f64], p: f64, rule: &SliceRule) -> Result<FracValue> {
    require_smooth(body)?;
    check_p(body.dim(), p)?;
    let order = FractionalOrder::new(p)?;
    let s = Slicer::new(body, xi, rule.clone())?;
    let (lo, _) = s.window();
    let mut derivatives = vec![s.area(0.0)];
    for k in 1..order.m.min(3) {
        derivatives.push(s.derivative(0.0, k as u32, None)?.value);
    }
    let h = |t: f64| s.area(t);
    let f = LineFunction { h: &h, support: Some(-lo), derivatives, scale: body.inner_radius() };
    frac_derivative(&f, &order)
}

/// Result of the eigenvalue route.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierFrac {
    pub value: f64,
    /// Imaginary part left over after combining the even and odd parts.
    pub imag_residual: f64,
    /// `true` when the residual exceeds `1e-3 |value|`.
    pub truncation_flag: bool,
}

/// The two transforms entering the eigenvalue route for a fixed body.
#[derive(Debug, Clone)]
pub struct FourierPieces {
    pub p: f64,
    pub even: ComplexExpansion,
    pub odd: ComplexExpansion,
}

/// Expands `g_+- (xi) = rho^{n-1-p}(xi) +- rho^{n-1-p}(-xi)` and applies
/// `I_{1+p}`.
///
/// The transform kernel is `exp(-i<x, y>)`, the one matching the definition
/// of `h^{(p)}(0)` through `h(-t)`.
pub fn fourier_pieces(body: &StarBody, p: f64, quad: &SphereQuadrature, max_degree: usize) -> Result<FourierPieces> {
    require_smooth(body)?;
    let n = body.dim();
    check_p(n, p)?;
    if quad.dim() != n {
        return Err(Error::DimError { expected: n, got: quad.dim() });
    }
    FractionalOrder::new(p)?;
    let e = n as f64 - 1.0 - p;
    let pair = |x: &[f64]| {
        let minus: Vec<f64> = x.iter().map(|c| -c).collect();
        (body.radial_at(x).powf(e), body.radial_at(&minus).powf(e))
    };
    let g_even = expand(|x| { let (a, b) = pair(x); a + b }, quad, max_degree)?;
    let g_odd = expand(|x| { let (a, b) = pair(x); a - b }, quad, max_degree)?;
    Ok(FourierPieces {
        p,
        even: apply_ip_with(&g_even, 1.0 + p, FourierKernel::Negative)?,
        odd: apply_ip_with(&g_odd, 1.0 + p, FourierKernel::Negative)?,
    })
}

impl FourierPieces {
    /// `(cos(p pi/2) I(g_+)(xi) + i sin(p pi/2) I(g_-)(xi)) / (2 pi (n-1-p))`.
    pub fn at(&self, xi: &[f64]) -> FourierFrac {
        let n = self.even.dim as f64;
        let p = self.p;
        let ev = self.even.synthesize(xi);
        let od = self.odd.synthesize(xi);
        let i = num_complex::Complex64::new(0.0, 1.0);
        let z = ((p * FRAC_PI_2).cos() * ev + i * (p * FRAC_PI_2).sin() * od) / (2.0 * PI * (n - 1.0 - p));
        FourierFrac { value: z.re, imag_residual: z.im.abs(), truncation_flag: z.im.abs() > 1e-3 * z.re.abs() }
    }
}

pub fn frac_section_fourier(
    body: &StarBody,
    xi: &[f64],
    p: f64,
    quad: &SphereQuadrature,
    max_degree: usize,
) -> Result<FourierFrac> {
    Ok(fourier_pieces(body, p, quad, max_degree)?.at(xi))
}

/// `||I_{1+p} f||_2` for `f = rho_K^{n-1-p} - rho_L^{n-1-p}` against
/// `pi sqrt(omega_n) (n-1-p) (|sec(p pi/2)| + |csc(p pi/2)|) eps`, where
/// `eps` is the largest gap between fractional section derivatives over the
/// grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IpBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub eps: f64,
    pub holds: bool,
}

pub fn ip_bound_check(
    k: &StarBody,
    l: &StarBody,
    p: f64,
    quad: &SphereQuadrature,
    max_degree: usize,
) -> Result<IpBoundCheck> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimError { expected: n, got: l.dim() });
    }
    require_smooth(k)?;
    require_smooth(l)?;
    check_p(n, p)?;
    let e = n as f64 - 1.0 - p;
    let f = expand(|x| k.radial_at(x).powf(e) - l.radial_at(x).powf(e), quad, max_degree)?;
    let lhs = apply_ip_with(&f, 1.0 + p, FourierKernel::Negative)?.norm_sq().sqrt();
    let rule_k = SliceRule::default_for(k);
    let rule_l = SliceRule::default_for(l);
    let gaps: Result<Vec<f64>> = quad
        .map_par(|xi| {
            let a = frac_section(k, xi, p, &rule_k)?.value;
            let b = frac_section(l, xi, p, &rule_l)?.value;
            Ok((a - b).abs())
        })
        .into_iter()
        .collect();
    let eps = gaps?.into_iter().fold(0.0, f64::max);
    let t = p * FRAC_PI_2;
    let rhs = PI * crate::numeric::special::omega(n).sqrt() * e * (1.0 / t.cos().abs() + 1.0 / t.sin().abs()) * eps;
    Ok(IpBoundCheck { lhs, rhs, eps, holds: lhs <= rhs })
}
