//! Maximal sections `m_K(xi)` and the maximizer `t_K(xi)` closest to zero.

use crate::error::Result;
use crate::geometry::body::StarBody;
use crate::numeric::search::golden_max;

use super::slice::{SliceRule, Slicer};

/// Relative flatness below which two section values count as equal.
const PLATEAU_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxSection {
    pub m: f64,
    pub t_star: f64,
}

impl Slicer<'_> {
    /// Golden-section search on `A^{1/(n-1)}`, which is concave on the
    /// support window for convex bodies. Flat stretches resolve to the
    /// maximizer nearest zero.
    pub fn max_section(&self) -> MaxSection {
        let n = self.body().dim();
        let r_out = self.body().outer_radius();
        let (lo, hi) = self.window();
        let e = 1.0 / (n as f64 - 1.0);
        let (tg, _) = golden_max(|t| self.area(t).powf(e), lo, hi, 1e-10 * r_out);
        let mg = self.area(tg);
        let a0 = self.area(0.0);
        let flat = |v: f64, m: f64| v >= m * (1.0 - PLATEAU_TOL);
        if flat(a0, mg) {
            return MaxSection { m: mg.max(a0), t_star: 0.0 };
        }
        // Probe toward zero for a plateau; its end is found by bisection since
        // the set of maximizers of a concave function is an interval.
        let probe = tg - tg.signum() * 1e-4 * r_out;
        let ap = self.area(probe);
        if probe * tg > 0.0 && flat(ap, mg) {
            let m = mg.max(ap);
            let (mut outside, mut inside) = (0.0, probe);
            while (inside - outside).abs() > 1e-10 * r_out {
                let mid = 0.5 * (outside + inside);
                if flat(self.area(mid), m) {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            return MaxSection { m, t_star: inside };
        }
        MaxSection { m: mg, t_star: tg }
    }
}

pub fn max_section(body: &StarBody, xi: &[f64], rule: &SliceRule) -> Result<MaxSection> {
    Ok(Slicer::new(body, xi, rule.clone())?.max_section())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::spec::ConvexBodySpec;
    use std::f64::consts::PI;

    #[test]
    fn shifted_ball_peak() {
        let k = ConvexBodySpec::shifted_ball(3, 0.2).build().unwrap();
        let ms = max_section(&k, &[1.0, 0.0, 0.0], &SliceRule::grid(3, 32).unwrap()).unwrap();
        assert!((ms.m - PI).abs() < 1e-12);
        assert!((ms.t_star - 0.2).abs() < 1e-6);
    }

    #[test]
    fn cube_plateau_resolves_to_zero() {
        let k = ConvexBodySpec::cube(3, 1.0, &[0.3, 0.0, 0.0]).build().unwrap();
        let ms = max_section(&k, &[1.0, 0.0, 0.0], &SliceRule::default_for(&k)).unwrap();
        assert!((ms.m - 4.0).abs() < 1e-10);
        assert_eq!(ms.t_star, 0.0);
    }

    #[test]
    fn plateau_end_nearest_zero() {
        // Square shifted by 0.5 along e_1 in the plane, xi at a small angle:
        // the chord length is flat on an interval not containing 0.
        let k = ConvexBodySpec::cube(2, 1.0, &[1.5, 0.0]).build();
        assert!(k.is_err());
        let k = ConvexBodySpec::cube(2, 1.0, &[0.8, 0.0]).build().unwrap();
        let a = 0.3f64;
        let xi = [a.cos(), a.sin()];
        let rule = SliceRule::grid(2, 8).unwrap();
        let ms = max_section(&k, &xi, &rule).unwrap();
        // Dense scan oracle.
        let s = Slicer::new(&k, &xi, rule).unwrap();
        let (lo, hi) = s.window();
        let mut best = (0.0, f64::INFINITY);
        let mut m = 0.0f64;
        let steps = ((hi - lo) / 1e-4) as usize;
        let vals: Vec<(f64, f64)> = (0..=steps).map(|i| {
            let t = lo + i as f64 * 1e-4;
            (t, s.area(t))
        }).collect();
        for v in &vals {
            m = m.max(v.1);
        }
        for v in &vals {
            if v.1 >= m * (1.0 - 1e-12) && v.0.abs() < best.1.abs() {
                best = (v.0, v.0);
            }
        }
        assert!((ms.m - m).abs() < 1e-12);
        assert!((ms.t_star - best.0).abs() < 2e-4, "{} vs {}", ms.t_star, best.0);
        assert!(ms.t_star.abs() > 0.1);
    }
}
