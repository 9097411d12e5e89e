//! Families of bodies shrinking toward a symmetric (or common) limit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::body::StarBody;
use crate::geometry::mollify::mollify;
use crate::geometry::quadrature::SphereQuadrature;
use crate::geometry::spec::ConvexBodySpec;

use super::fit::{exponent_fit, ExponentFit};
use super::report::{StabilityReport, Verdict};
use super::verify::{verify_main1_with, verify_main2_with};

/// Slack allowed below the claimed exponent before a sweep is called
/// inconsistent.
pub const SLOPE_SLACK: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Unit ball centred at `s e_1`.
    ShiftedBall { dim: usize },
    /// Axis-aligned ellipsoid centred at `s e_1`.
    ShiftedEllipsoid { semi_axes: Vec<f64> },
    /// Mollified cube `[-1, 1]^n + s e_1`.
    MollifiedShiftedCube { dim: usize, delta: f64 },
    /// Ball of radius `1 + d` paired with the unit ball.
    Dilate { dim: usize },
    /// Ellipsoid `(1, ..., 1, 1 + d)` paired with the unit ball.
    EllipsoidStretch { dim: usize },
}

impl Family {
    pub fn dim(&self) -> usize {
        match self {
            Family::ShiftedEllipsoid { semi_axes } => semi_axes.len(),
            Family::ShiftedBall { dim }
            | Family::MollifiedShiftedCube { dim, .. }
            | Family::Dilate { dim }
            | Family::EllipsoidStretch { dim } => *dim,
        }
    }

    pub fn member(&self, t: f64) -> Result<StarBody> {
        let n = self.dim();
        let mut shift = vec![0.0; n];
        shift[0] = t;
        match self {
            Family::ShiftedBall { .. } => ConvexBodySpec::shifted_ball(n, t).build(),
            Family::ShiftedEllipsoid { semi_axes } => {
                let axes = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
                ConvexBodySpec::Ellipsoid { center: shift, semi_axes: semi_axes.clone(), axes }.build()
            }
            Family::MollifiedShiftedCube { delta, .. } => mollify(&ConvexBodySpec::cube(n, 1.0, &shift).build()?, *delta),
            Family::Dilate { .. } => ConvexBodySpec::ball(vec![0.0; n], 1.0 + t).build(),
            Family::EllipsoidStretch { .. } => {
                let mut semi = vec![1.0; n];
                semi[n - 1] = 1.0 + t;
                ConvexBodySpec::ellipsoid(semi).build()
            }
        }
    }

    /// Fixed partner for pair families.
    pub fn reference(&self) -> Result<Option<StarBody>> {
        match self {
            Family::Dilate { .. } | Family::EllipsoidStretch { .. } => Ok(Some(ConvexBodySpec::unit_ball(self.dim()).build()?)),
            _ => Ok(None),
        }
    }
}

/// `count` parameters spaced geometrically from `lo` to `hi`.
pub fn geometric_params(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    (0..count).map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64)).collect()
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub params: Vec<f64>,
    pub reports: Vec<StabilityReport>,
    pub fit: ExponentFit,
    /// Largest `distance / eps^q` over the half of the family with the
    /// largest `eps`; the other half is checked against it.
    pub ratio_cap: f64,
    pub verdict: Verdict,
}

fn finish(params: Vec<f64>, mut reports: Vec<StabilityReport>, q: f64) -> Result<Sweep> {
    let fit = exponent_fit(&reports, |r| r.epsilon, |r| r.distance)?;
    let mut order: Vec<usize> = (0..reports.len()).collect();
    order.sort_by(|&a, &b| reports[b].epsilon.total_cmp(&reports[a].epsilon));
    let half = reports.len().div_ceil(2);
    let ratio_cap = order[..half].iter().map(|&i| reports[i].ratio()).fold(0.0, f64::max);
    let mut verdict = if fit.slope >= q - SLOPE_SLACK { Verdict::Consistent } else { Verdict::Inconsistent };
    for &i in &order[half..] {
        if reports[i].ratio() > ratio_cap * (1.0 + 1e-9) && reports[i].verdict == Verdict::Consistent {
            reports[i].verdict = Verdict::Inconsistent;
        }
    }
    for r in reports.iter_mut() {
        r.fitted = Some(fit.slope);
        match r.verdict {
            Verdict::Violated => verdict = Verdict::Violated,
            Verdict::Inconsistent if verdict != Verdict::Violated => verdict = Verdict::Inconsistent,
            _ => {}
        }
    }
    Ok(Sweep { params, reports, fit, ratio_cap, verdict })
}

/// Runs the asymmetry check on each member of a single-body family.
pub fn sweep_main1(family: &Family, params: &[f64], quad: &SphereQuadrature) -> Result<Sweep> {
    if family.reference()?.is_some() {
        return Err(Error::RangeError("pair family given to an asymmetry sweep".into()));
    }
    let reports = params
        .par_iter()
        .map(|&t| verify_main1_with(&family.member(t)?, quad, None))
        .collect::<Result<Vec<_>>>()?;
    let q = reports[0].q;
    finish(params.to_vec(), reports, q)
}

/// Runs the fractional-derivative check on each member of a pair family.
pub fn sweep_main2(family: &Family, params: &[f64], p: f64, quad: &SphereQuadrature) -> Result<Sweep> {
    let reference = family
        .reference()?
        .ok_or_else(|| Error::RangeError("single-body family given to a pair sweep".into()))?;
    let reports = params
        .par_iter()
        .map(|&t| verify_main2_with(&family.member(t)?, &reference, p, quad, None))
        .collect::<Result<Vec<_>>>()?;
    let q = reports[0].q;
    finish(params.to_vec(), reports, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadrature::sphere_grid;

    #[test]
    fn shifted_disks_fit_half() {
        let q = sphere_grid(2, 64).unwrap();
        let s = geometric_params(1e-3, 1e-1, 5);
        let sw = sweep_main1(&Family::ShiftedBall { dim: 2 }, &s, &q).unwrap();
        assert!((sw.fit.slope - 0.5).abs() < 0.02, "{:?}", sw.fit);
        assert_ne!(sw.verdict, Verdict::Violated);
        assert_ne!(sw.verdict, Verdict::Inconsistent);
    }

    #[test]
    fn family_kinds_are_checked() {
        let q = sphere_grid(2, 8).unwrap();
        assert!(sweep_main1(&Family::Dilate { dim: 2 }, &[0.1], &q).is_err());
        assert!(sweep_main2(&Family::ShiftedBall { dim: 2 }, &[0.1], 0.5, &q).is_err());
    }

    #[test]
    fn members_have_expected_geometry() {
        let b = Family::EllipsoidStretch { dim: 3 }.member(0.1).unwrap();
        assert!((b.radial_at(&[0.0, 0.0, 1.0]) - 1.1).abs() < 1e-14);
        let c = Family::ShiftedEllipsoid { semi_axes: vec![1.0, 1.2] }.member(0.1).unwrap();
        assert!((c.radial_at(&[1.0, 0.0]) - 1.1).abs() < 1e-14);
    }
}
