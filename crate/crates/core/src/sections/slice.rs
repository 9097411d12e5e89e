//! Hyperplane slices and the parallel section function.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::body::{Smoothness, StarBody};
use crate::geometry::direction::householder_frame;
use crate::geometry::quadrature::SphereQuadrature;
use crate::numeric::kronrod::{integrate, Tolerance};
use crate::numeric::{dot, norm, MAX_DIM};

/// How the `S^{n-2}` integral over a slice is evaluated.
#[derive(Debug, Clone)]
pub enum SliceRule {
    /// Fixed rule on `S^{n-2}`.
    Grid(SphereQuadrature),
    /// Adaptive Gauss-Kronrod in the slice angle (`n = 3` only; other
    /// dimensions fall back to a grid of order 64).
    Adaptive { tol: f64 },
}

impl SliceRule {
    pub fn grid(n: usize, order: usize) -> Result<Self> {
        Ok(SliceRule::Grid(SphereQuadrature::for_slices(n, order)?))
    }

    /// Adaptive for planar slices of polytopes, whose slice radial functions
    /// have corners; a fixed grid of order 64 otherwise.
    pub fn default_for(body: &StarBody) -> Self {
        let n = body.dim();
        if n == 3 && body.smoothness() == Smoothness::Polytope {
            SliceRule::Adaptive { tol: 1e-13 }
        } else {
            SliceRule::grid(n, 64).expect("valid slice grid")
        }
    }
}

/// Distance from `t xi` to the boundary of `K` along `theta` inside the
/// hyperplane `<x, xi> = t`. Zero when the hyperplane misses the interior.
pub fn slice_radial(body: &StarBody, xi: &[f64], t: f64, theta: &[f64]) -> Result<f64> {
    let n = body.dim();
    if xi.len() != n || theta.len() != n {
        return Err(Error::DimError { expected: n, got: if xi.len() != n { xi.len() } else { theta.len() } });
    }
    if dot(xi, theta).abs() > 1e-12 || (norm(theta) - 1.0).abs() > 1e-12 {
        return Err(Error::FrameError("theta must be a unit vector orthogonal to xi".into()));
    }
    let minus: Vec<f64> = xi.iter().map(|c| -c).collect();
    if t >= body.support(xi).value || -t >= body.support(&minus).value {
        return Ok(0.0);
    }
    let mut p = [0.0; MAX_DIM];
    for i in 0..n {
        p[i] = t * xi[i];
    }
    if body.gauge(&p[..n]) > 1.0 {
        return Err(Error::PreconditionError(format!(
            "the point t*xi (t = {t}) lies outside the body; the slice is not star-shaped about it"
        )));
    }
    Ok(body.ray_exit(&p[..n], theta))
}

/// Precomputed data for slicing one body orthogonally to one direction.
///
/// Slices are integrated in polar coordinates about the centre
/// `c_t = (t / h(xi)) x_+` for `t >= 0` and `c_t = (|t| / h(-xi)) x_-` for
/// `t < 0`, where `x_+-` are support points. The centre lies in the slice
/// for every `t` inside the support window, even when `t xi` does not.
#[derive(Debug, Clone)]
pub struct Slicer<'a> {
    body: &'a StarBody,
    xi: Vec<f64>,
    frame: Vec<Vec<f64>>,
    upper: f64,
    lower: f64,
    top: Vec<f64>,
    bottom: Vec<f64>,
    rule: SliceRule,
}

impl<'a> Slicer<'a> {
    pub fn new(body: &'a StarBody, xi: &[f64], rule: SliceRule) -> Result<Self> {
        let n = body.dim();
        if xi.len() != n {
            return Err(Error::DimError { expected: n, got: xi.len() });
        }
        if (norm(xi) - 1.0).abs() > 1e-12 {
            return Err(Error::RangeError("direction must be a unit vector".into()));
        }
        if let SliceRule::Grid(q) = &rule {
            if q.dim() + 1 != n {
                return Err(Error::DimError { expected: n - 1, got: q.dim() });
            }
        }
        let minus: Vec<f64> = xi.iter().map(|c| -c).collect();
        let sp = body.support(xi);
        let sm = body.support(&minus);
        Ok(Slicer {
            body,
            xi: xi.to_vec(),
            frame: householder_frame(xi),
            upper: sp.value,
            lower: -sm.value,
            top: sp.point,
            bottom: sm.point,
            rule,
        })
    }

    pub fn body(&self) -> &StarBody {
        self.body
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    /// `[-h(-xi), h(xi)]`.
    pub fn window(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    fn center(&self, t: f64, out: &mut [f64]) {
        let (scale, anchor) = if t >= 0.0 { (t / self.upper, &self.top) } else { (t / self.lower, &self.bottom) };
        for (o, a) in out.iter_mut().zip(anchor) {
            *o = scale * a;
        }
    }

    /// Exit distance from the slice centre along `sum_j u_j f_j`.
    fn ray(&self, c: &[f64], u: &[f64]) -> f64 {
        let n = c.len();
        let mut d = [0.0; MAX_DIM];
        for (uj, f) in u.iter().zip(&self.frame) {
            for i in 0..n {
                d[i] += uj * f[i];
            }
        }
        self.body.ray_exit(c, &d[..n])
    }

    /// `A_{K,xi}(t)`.
    pub fn area(&self, t: f64) -> f64 {
        if !(t > self.lower && t < self.upper) {
            return 0.0;
        }
        let n = self.body.dim();
        let mut cbuf = [0.0; MAX_DIM];
        let c = &mut cbuf[..n];
        self.center(t, c);
        if n == 2 {
            return self.ray(c, &[1.0]) + self.ray(c, &[-1.0]);
        }
        let k = (n - 1) as i32;
        match &self.rule {
            SliceRule::Adaptive { .. } if n == 3 && self.body.exit_facet(c, &self.frame[0]).is_some() => self.polygon_area(c),
            SliceRule::Adaptive { tol } if n == 3 => {
                let f = |phi: f64| self.ray(c, &[phi.cos(), phi.sin()]).powi(2);
                let r = self.body.outer_radius();
                let tol = Tolerance { abs: tol * r * r, rel: *tol, max_intervals: 4000 };
                0.5 * integrate(f, 0.0, TAU, tol).value
            }
            SliceRule::Grid(q) => q.integrate(|u| self.ray(c, u).powi(k)) / (n - 1) as f64,
            SliceRule::Adaptive { .. } => {
                let q = SphereQuadrature::for_slices(n, 64).expect("valid slice grid");
                q.integrate(|u| self.ray(c, u).powi(k)) / (n - 1) as f64
            }
        }
    }
}

impl Slicer<'_> {
    /// Area of a polygonal slice, summing the triangles fanned from the
    /// centre between consecutive corners. Corners are located by bisecting
    /// the polar angle wherever the exit facet changes; between two rays
    /// leaving through the same facet the boundary is a straight segment.
    fn polygon_area(&self, c: &[f64]) -> f64 {
        let n = c.len();
        let dir = |phi: f64| {
            let mut d = [0.0; MAX_DIM];
            for i in 0..n {
                d[i] = phi.cos() * self.frame[0][i] + phi.sin() * self.frame[1][i];
            }
            d
        };
        let facet = |phi: f64| self.body.exit_facet(c, &dir(phi)[..n]);
        let samples = 64;
        let mut angles = Vec::with_capacity(4 * samples);
        let mut prev = (0.0, facet(0.0));
        angles.push(0.0);
        for k in 1..=samples {
            let phi = TAU * k as f64 / samples as f64;
            let f = facet(phi);
            let mut stack = vec![(prev.0, prev.1, phi, f)];
            while let Some((a, fa, b, fb)) = stack.pop() {
                if fa == fb {
                    continue;
                }
                if b - a < 1e-14 {
                    angles.push(a);
                    angles.push(b);
                    continue;
                }
                let m = 0.5 * (a + b);
                let fm = facet(m);
                stack.push((m, fm, b, fb));
                stack.push((a, fa, m, fm));
            }
            angles.push(phi);
            prev = (phi, f);
        }
        angles.sort_by(f64::total_cmp);
        let point = |phi: f64| {
            let r = self.ray(c, &[phi.cos(), phi.sin()]);
            (r * phi.cos(), r * phi.sin())
        };
        let mut area = 0.0;
        let mut p = point(angles[0]);
        for &phi in &angles[1..] {
            let q = point(phi);
            area += 0.5 * (p.0 * q.1 - p.1 * q.0);
            p = q;
        }
        area
    }
}

/// `A_{K,xi}(t)`, the `(n-1)`-volume of `K` cut by `<x, xi> = t`.
pub fn parallel_section(body: &StarBody, xi: &[f64], t: f64, rule: &SliceRule) -> Result<f64> {
    Ok(Slicer::new(body, xi, rule.clone())?.area(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::spec::ConvexBodySpec;
    use std::f64::consts::PI;

    #[test]
    fn ball_slices() {
        let k = ConvexBodySpec::unit_ball(3).build().unwrap();
        assert!((slice_radial(&k, &[0.0, 0.0, 1.0], 0.6, &[1.0, 0.0, 0.0]).unwrap() - 0.8).abs() < 1e-14);
        let rule = SliceRule::grid(3, 64).unwrap();
        for t in [0.0, 0.3, -0.6] {
            let a = parallel_section(&k, &[0.0, 0.0, 1.0], t, &rule).unwrap();
            assert!((a - PI * (1.0 - t * t)).abs() < 1e-12);
        }
        assert_eq!(parallel_section(&k, &[0.0, 0.0, 1.0], 1.2, &rule).unwrap(), 0.0);
    }

    #[test]
    fn shifted_ball_off_center_slice() {
        let k = ConvexBodySpec::ball(vec![0.2, 0.0, 0.0], 1.0).build().unwrap();
        let r = slice_radial(&k, &[0.0, 0.0, 1.0], 0.0, &[1.0, 0.0, 0.0]).unwrap();
        assert!((r - 1.2).abs() < 1e-14);
        // Centre lifted off the cutting plane: the slice is a disk of radius
        // sqrt(1 - 0.04) centred at 0.2 e_1.
        let lifted = ConvexBodySpec::ball(vec![0.2, 0.0, 0.2], 1.0).build().unwrap();
        let r = slice_radial(&lifted, &[0.0, 0.0, 1.0], 0.0, &[1.0, 0.0, 0.0]).unwrap();
        assert!((r - (0.2 + 0.96f64.sqrt())).abs() < 1e-14);
        assert!(matches!(
            slice_radial(&k, &[0.0, 0.0, 1.0], 0.0, &[0.6, 0.0, 0.8]),
            Err(Error::FrameError(_))
        ));
        // Slices away from t xi still have the right area.
        let s = Slicer::new(&k, &[0.0, 1.0, 0.0], SliceRule::grid(3, 32).unwrap()).unwrap();
        assert!((s.area(0.99) - PI * (1.0 - 0.99 * 0.99)).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_central_section() {
        let k = ConvexBodySpec::ellipsoid(vec![1.0, 1.2, 0.8]).build().unwrap();
        let a = parallel_section(&k, &[0.0, 0.0, 1.0], 0.0, &SliceRule::grid(3, 64).unwrap()).unwrap();
        assert!((a - PI * 1.2).abs() < 1e-10);
    }

    #[test]
    fn cube_sections_adaptive() {
        let k = ConvexBodySpec::cube(3, 1.0, &[0.0; 3]).build().unwrap();
        let rule = SliceRule::default_for(&k);
        assert!((parallel_section(&k, &[0.0, 0.0, 1.0], 0.5, &rule).unwrap() - 4.0).abs() < 1e-11);
        // Diagonal central section of the cube is a regular hexagon of side sqrt(2).
        let d = 1.0 / 3f64.sqrt();
        let hex = 3.0 * 3f64.sqrt() / 2.0 * 2.0;
        assert!((parallel_section(&k, &[d, d, d], 0.0, &rule).unwrap() - hex).abs() < 1e-10);
    }

    #[test]
    fn planar_chords() {
        let k = ConvexBodySpec::ball(vec![0.2, 0.0], 1.0).build().unwrap();
        let rule = SliceRule::grid(2, 8).unwrap();
        for t in [-0.5, 0.0, 0.7] {
            let a = parallel_section(&k, &[1.0, 0.0], t, &rule).unwrap();
            let exact = 2.0 * (1.0 - (0.2 - t) * (0.2 - t) as f64).sqrt();
            assert!((a - exact).abs() < 1e-14);
        }
    }
}
