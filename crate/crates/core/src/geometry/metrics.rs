//! Distances between bodies: the radial metric and support-function metrics.

use crate::error::{Error, Result};
use crate::numeric::special::{kappa, omega};

use super::body::StarBody;
use super::quadrature::{sphere_grid, SphereQuadrature};

/// Grid supremum of `|rho_K - rho_L|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDistance {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub order: usize,
}

fn same_dim(k: &StarBody, l: &StarBody, quad: &SphereQuadrature) -> Result<()> {
    if k.dim() != l.dim() {
        return Err(Error::DimError { expected: k.dim(), got: l.dim() });
    }
    if quad.dim() != k.dim() {
        return Err(Error::DimError { expected: k.dim(), got: quad.dim() });
    }
    Ok(())
}

pub fn radial_metric(k: &StarBody, l: &StarBody, quad: &SphereQuadrature) -> Result<RadialDistance> {
    same_dim(k, l, quad)?;
    let diffs = quad.map_par(|x| (k.radial_at(x) - l.radial_at(x)).abs());
    let (i, v) = diffs
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, v)| if *v > bv { (i, *v) } else { (bi, bv) });
    Ok(RadialDistance { value: v, argmax: quad.node(i).to_vec(), order: quad.order() })
}

/// Doubles the grid order from `order` until the grid maximum changes by
/// less than `1e-3` relative, or `max_order` is reached.
pub fn radial_metric_refined(k: &StarBody, l: &StarBody, order: usize, max_order: usize) -> Result<RadialDistance> {
    let mut cur = radial_metric(k, l, &sphere_grid(k.dim(), order)?)?;
    let mut o = order;
    while 2 * o <= max_order {
        o *= 2;
        let next = radial_metric(k, l, &sphere_grid(k.dim(), o)?)?;
        let settled = (next.value - cur.value).abs() <= 1e-3 * next.value.abs().max(1e-300);
        cur = next;
        if settled {
            break;
        }
    }
    Ok(cur)
}

/// Supremum and `L^2` distances between support functions on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportDistances {
    pub delta_inf: f64,
    pub delta_2: f64,
}

fn support_values(k: &StarBody, quad: &SphereQuadrature, polar: bool) -> Vec<f64> {
    if polar {
        // h_{K polar}(xi) = ||xi||_K.
        quad.map_par(|x| 1.0 / k.radial_at(x))
    } else {
        quad.map_par(|x| k.support(x).value)
    }
}

fn distances(hk: &[f64], hl: &[f64], quad: &SphereQuadrature) -> SupportDistances {
    let mut sup = 0.0f64;
    let mut sq = 0.0;
    for ((a, b), w) in hk.iter().zip(hl).zip(quad.weights()) {
        let d = (a - b).abs();
        sup = sup.max(d);
        sq += w * d * d;
    }
    SupportDistances { delta_inf: sup, delta_2: sq.sqrt() }
}

pub fn hausdorff_and_l2(k: &StarBody, l: &StarBody, quad: &SphereQuadrature) -> Result<SupportDistances> {
    same_dim(k, l, quad)?;
    k.require_convex("support distances")?;
    l.require_convex("support distances")?;
    Ok(distances(&support_values(k, quad, false), &support_values(l, quad, false), quad))
}

/// Which pair of convex bodies the support-function comparison runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VitaleMode {
    /// `K` and `L` themselves.
    Direct,
    /// The polar bodies, whose support functions are the gauges of `K`, `L`.
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VitaleReport {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub diameter: f64,
    pub distances: SupportDistances,
    pub holds: bool,
}

/// `c D^{1-n} delta_inf^{n+1} <= delta_2^2 <= omega_n delta_inf^2`, with
/// `c = 2 kappa_{n-1} / (n (n+1))` and `D` the grid diameter of the union.
pub fn vitale_check(k: &StarBody, l: &StarBody, quad: &SphereQuadrature, mode: VitaleMode) -> Result<VitaleReport> {
    same_dim(k, l, quad)?;
    if mode == VitaleMode::Direct {
        k.require_convex("support distances")?;
        l.require_convex("support distances")?;
    }
    let polar = mode == VitaleMode::Polar;
    let hk = support_values(k, quad, polar);
    let hl = support_values(l, quad, polar);
    let n = k.dim();
    let mut diameter = 0.0f64;
    for i in 0..quad.len() {
        let x = quad.node(i);
        let minus: Vec<f64> = x.iter().map(|c| -c).collect();
        let (hkm, hlm) = if polar {
            (1.0 / k.radial_at(&minus), 1.0 / l.radial_at(&minus))
        } else {
            (k.support(&minus).value, l.support(&minus).value)
        };
        diameter = diameter.max(hk[i].max(hl[i]) + hkm.max(hlm));
    }
    let d = distances(&hk, &hl, quad);
    let nf = n as f64;
    let lower = 2.0 * kappa(n - 1) * diameter.powf(1.0 - nf) / (nf * (nf + 1.0)) * d.delta_inf.powi(n as i32 + 1);
    let middle = d.delta_2 * d.delta_2;
    let upper = omega(n) * d.delta_inf * d.delta_inf;
    let slack = 1e-9;
    let holds = lower <= middle * (1.0 + slack) + 1e-300 && middle <= upper * (1.0 + slack) + 1e-300;
    Ok(VitaleReport { lower, middle, upper, diameter, distances: d, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::spec::ConvexBodySpec;

    #[test]
    fn concentric_balls() {
        let a = ConvexBodySpec::unit_ball(2).build().unwrap();
        let b = ConvexBodySpec::ball(vec![0.0, 0.0], 1.1).build().unwrap();
        let q = sphere_grid(2, 64).unwrap();
        assert!((radial_metric(&a, &b, &q).unwrap().value - 0.1).abs() < 1e-14);
        let d = hausdorff_and_l2(&a, &b, &q).unwrap();
        assert!((d.delta_inf - 0.1).abs() < 1e-14);
        assert!((d.delta_2 - (2.0 * std::f64::consts::PI).sqrt() * 0.1).abs() < 1e-13);
        let v = vitale_check(&a, &b, &q, VitaleMode::Direct).unwrap();
        assert!(v.holds);
        assert!((v.middle - v.upper).abs() <= 1e-9 * v.upper);
    }

    #[test]
    fn shifted_ball_asymmetry() {
        let k = ConvexBodySpec::shifted_ball(3, 0.2).build().unwrap();
        let r = radial_metric_refined(&k, &k.reflect(), 16, 64).unwrap();
        assert!((r.value - 0.4).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let a = ConvexBodySpec::unit_ball(2).build().unwrap();
        let b = ConvexBodySpec::unit_ball(3).build().unwrap();
        let q = sphere_grid(2, 8).unwrap();
        assert!(matches!(radial_metric(&a, &b, &q), Err(Error::DimError { .. })));
    }
}
