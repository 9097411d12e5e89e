//! Parametric convex bodies and their exact radial and support evaluators.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harmonics::basis::{basis_eval, harmonic_poly};
use crate::numeric::{dot, norm, MAX_DIM};

use super::body::{radial_extremes, RadialOracle, Smoothness, StarBody};
use super::direction::check_dim;
use super::quadrature::sphere_grid;

/// Relative safety margin applied to radii that are located numerically.
const RADIUS_MARGIN: f64 = 1e-9;

/// One coefficient of a radial-series perturbation: degree, basis index and
/// value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTerm {
    pub degree: usize,
    pub index: usize,
    pub coeff: f64,
}

/// Closed description of a convex body containing the origin in its
/// interior.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBodySpec {
    Ball { center: Vec<f64>, radius: f64 },
    /// `axes[i]` is the unit principal axis carrying semi-axis `semi_axes[i]`.
    Ellipsoid { center: Vec<f64>, semi_axes: Vec<f64>, axes: Vec<Vec<f64>> },
    /// Intersection of `{x : <normal, x> <= offset}`.
    Polytope { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    /// `rho(xi) = base + sum c Y_{m,i}(xi)`.
    RadialSeries { dim: usize, base: f64, terms: Vec<SeriesTerm> },
}

impl ConvexBodySpec {
    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        ConvexBodySpec::Ball { center, radius }
    }

    pub fn unit_ball(n: usize) -> Self {
        ConvexBodySpec::Ball { center: vec![0.0; n], radius: 1.0 }
    }

    /// Ball of radius 1 centred at `s e_1`.
    pub fn shifted_ball(n: usize, s: f64) -> Self {
        let mut c = vec![0.0; n];
        c[0] = s;
        ConvexBodySpec::Ball { center: c, radius: 1.0 }
    }

    /// Axis-aligned ellipsoid centred at the origin.
    pub fn ellipsoid(semi_axes: Vec<f64>) -> Self {
        let n = semi_axes.len();
        let axes = (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        ConvexBodySpec::Ellipsoid { center: vec![0.0; n], semi_axes, axes }
    }

    /// The cube `[-half, half]^n` translated by `shift`.
    pub fn cube(n: usize, half: f64, shift: &[f64]) -> Self {
        let mut normals = Vec::with_capacity(2 * n);
        let mut offsets = Vec::with_capacity(2 * n);
        for i in 0..n {
            for sg in [1.0, -1.0] {
                let mut a = vec![0.0; n];
                a[i] = sg;
                offsets.push(half + sg * shift.get(i).copied().unwrap_or(0.0));
                normals.push(a);
            }
        }
        ConvexBodySpec::Polytope { normals, offsets }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBodySpec::Ball { center, .. } => center.len(),
            ConvexBodySpec::Ellipsoid { center, .. } => center.len(),
            ConvexBodySpec::Polytope { normals, .. } => normals.first().map_or(0, |a| a.len()),
            ConvexBodySpec::RadialSeries { dim, .. } => *dim,
        }
    }

    /// Spec of `-K`.
    pub fn reflect(&self) -> Self {
        match self {
            ConvexBodySpec::Ball { center, radius } => {
                ConvexBodySpec::Ball { center: center.iter().map(|c| -c).collect(), radius: *radius }
            }
            ConvexBodySpec::Ellipsoid { center, semi_axes, axes } => ConvexBodySpec::Ellipsoid {
                center: center.iter().map(|c| -c).collect(),
                semi_axes: semi_axes.clone(),
                axes: axes.clone(),
            },
            ConvexBodySpec::Polytope { normals, offsets } => ConvexBodySpec::Polytope {
                normals: normals.iter().map(|a| a.iter().map(|c| -c).collect()).collect(),
                offsets: offsets.clone(),
            },
            ConvexBodySpec::RadialSeries { dim, base, terms } => ConvexBodySpec::RadialSeries {
                dim: *dim,
                base: *base,
                terms: terms
                    .iter()
                    .map(|t| SeriesTerm { coeff: if t.degree % 2 == 1 { -t.coeff } else { t.coeff }, ..*t })
                    .collect(),
            },
        }
    }

    /// Validates the parameters and builds the evaluator together with its
    /// certified radii.
    pub fn build(&self) -> Result<StarBody> {
        let n = self.dim();
        check_dim(n)?;
        match self {
            ConvexBodySpec::Ball { center, radius } => {
                let c = norm(center);
                if !(*radius > 0.0 && c < *radius) {
                    return Err(Error::InvalidBody(format!("ball must contain the origin strictly (|c|={c}, radius={radius})")));
                }
                let o = BallOracle { center: center.clone(), radius: *radius };
                StarBody::new(Arc::new(o), radius - c, radius + c, Smoothness::Cinf, true)
            }
            ConvexBodySpec::Ellipsoid { center, semi_axes, axes } => {
                let o = EllipsoidOracle::new(center, semi_axes, axes)?;
                let (lo, hi) = radial_extremes(&o, 32);
                StarBody::new(Arc::new(o), lo * (1.0 - RADIUS_MARGIN), hi * (1.0 + RADIUS_MARGIN), Smoothness::Cinf, true)
            }
            ConvexBodySpec::Polytope { normals, offsets } => {
                let o = PolytopeOracle::new(normals, offsets)?;
                let inner = offsets.iter().cloned().fold(f64::INFINITY, f64::min);
                let outer = match &o.vertices {
                    Some(v) => v.iter().map(|p| norm(p)).fold(0.0, f64::max),
                    None => radial_extremes(&o, 32).1 * (1.0 + RADIUS_MARGIN),
                };
                StarBody::new(Arc::new(o), inner, outer, Smoothness::Polytope, true)
            }
            ConvexBodySpec::RadialSeries { dim, base, terms } => {
                let o = SeriesOracle::new(*dim, *base, terms)?;
                let (lo, hi) = radial_extremes(&o, 48);
                if lo <= 0.0 {
                    return Err(Error::InvalidBody("radial series is not positive".into()));
                }
                let convex = o.convexity_certificate(10_000, 0x5ec7_10ab);
                StarBody::new(Arc::new(o), lo * (1.0 - RADIUS_MARGIN), hi * (1.0 + RADIUS_MARGIN), Smoothness::Cinf, convex)
            }
        }
    }

    /// Support function `h_K(xi)`.
    pub fn support(&self, xi: &[f64]) -> Result<f64> {
        if xi.len() != self.dim() {
            return Err(Error::DimError { expected: self.dim(), got: xi.len() });
        }
        let body = self.build()?;
        body.require_convex("support")?;
        Ok(body.support(xi).value)
    }
}

#[derive(Debug, Clone)]
struct BallOracle {
    center: Vec<f64>,
    radius: f64,
}

impl BallOracle {
    /// Forward distance from `o` along unit `d` to the sphere.
    fn exit(&self, o: &[f64], d: &[f64]) -> f64 {
        let mut b = 0.0;
        let mut q = 0.0;
        for i in 0..o.len() {
            let w = o[i] - self.center[i];
            b += w * d[i];
            q += w * w;
        }
        let disc = (b * b - q + self.radius * self.radius).max(0.0);
        (-b + disc.sqrt()).max(0.0)
    }
}

impl RadialOracle for BallOracle {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        let b = dot(&self.center, xi);
        let c2 = dot(&self.center, &self.center);
        b + (b * b - c2 + self.radius * self.radius).sqrt()
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64], _reach: f64) -> f64 {
        self.exit(origin, dir)
    }

    fn support_exact(&self, xi: &[f64]) -> Option<(f64, Vec<f64>)> {
        let p = self.center.iter().zip(xi).map(|(c, x)| c + self.radius * x).collect();
        Some((dot(&self.center, xi) + self.radius, p))
    }
}

#[derive(Debug, Clone)]
struct EllipsoidOracle {
    center: Vec<f64>,
    semi: Vec<f64>,
    axes: Vec<Vec<f64>>,
}

impl EllipsoidOracle {
    fn new(center: &[f64], semi: &[f64], axes: &[Vec<f64>]) -> Result<Self> {
        let n = center.len();
        if semi.len() != n || axes.len() != n || axes.iter().any(|a| a.len() != n) {
            return Err(Error::InvalidBody("ellipsoid parameters have inconsistent lengths".into()));
        }
        if semi.iter().any(|a| !(*a > 0.0)) {
            return Err(Error::InvalidBody("ellipsoid semi-axes must be positive".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let d = dot(&axes[i], &axes[j]) - if i == j { 1.0 } else { 0.0 };
                if d.abs() > 1e-9 {
                    return Err(Error::InvalidBody("ellipsoid axes are not orthonormal".into()));
                }
            }
        }
        let o = EllipsoidOracle { center: center.to_vec(), semi: semi.to_vec(), axes: axes.to_vec() };
        let zero = vec![0.0; n];
        if o.normalized(&zero, &o.center, -1.0).iter().map(|c| c * c).sum::<f64>() >= 1.0 {
            return Err(Error::InvalidBody("ellipsoid must contain the origin strictly".into()));
        }
        Ok(o)
    }

    /// Coordinates of `x + sign * y` in the frame where the body is the unit
    /// ball centred at the origin (with `y` taken relative to the centre when
    /// `sign` is -1 and `x` is a point).
    fn normalized(&self, x: &[f64], y: &[f64], sign: f64) -> [f64; MAX_DIM] {
        let mut out = [0.0; MAX_DIM];
        for (i, (a, s)) in self.axes.iter().zip(&self.semi).enumerate() {
            let mut v = 0.0;
            for k in 0..x.len() {
                v += a[k] * (x[k] + sign * y[k]);
            }
            out[i] = v / s;
        }
        out
    }

    fn exit(&self, o: &[f64], d: &[f64]) -> f64 {
        let n = o.len();
        let u = self.normalized(o, &self.center, -1.0);
        let zero = [0.0; MAX_DIM];
        let v = self.normalized(d, &zero[..n], 0.0);
        let uv = dot(&u[..n], &v[..n]);
        let vv = dot(&v[..n], &v[..n]);
        let uu = dot(&u[..n], &u[..n]);
        let disc = (uv * uv - vv * (uu - 1.0)).max(0.0);
        ((-uv + disc.sqrt()) / vv).max(0.0)
    }
}

impl RadialOracle for EllipsoidOracle {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        let zero = [0.0; MAX_DIM];
        self.exit(&zero[..xi.len()], xi)
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64], _reach: f64) -> f64 {
        self.exit(origin, dir)
    }

    fn support_exact(&self, xi: &[f64]) -> Option<(f64, Vec<f64>)> {
        let n = xi.len();
        // w = D R^T xi, h = <c, xi> + |w|, x* = c + R D w / |w|.
        let w: Vec<f64> = self.axes.iter().zip(&self.semi).map(|(a, s)| s * dot(a, xi)).collect();
        let wl = norm(&w);
        let mut p = self.center.clone();
        for i in 0..n {
            for k in 0..n {
                p[k] += self.axes[i][k] * self.semi[i] * w[i] / wl;
            }
        }
        Some((dot(&self.center, xi) + wl, p))
    }
}

/// Facet count up to which vertices are enumerated for `n <= 4`.
const VERTEX_ENUM_FACETS: usize = 64;

#[derive(Debug, Clone)]
struct PolytopeOracle {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
    vertices: Option<Vec<Vec<f64>>>,
}

impl PolytopeOracle {
    fn new(normals: &[Vec<f64>], offsets: &[f64]) -> Result<Self> {
        if normals.is_empty() || normals.len() != offsets.len() {
            return Err(Error::InvalidBody("polytope needs matching normals and offsets".into()));
        }
        let n = normals[0].len();
        let mut unit = Vec::with_capacity(normals.len());
        for (a, b) in normals.iter().zip(offsets) {
            if a.len() != n {
                return Err(Error::InvalidBody("polytope normals have inconsistent lengths".into()));
            }
            if !(*b > 0.0) {
                return Err(Error::InvalidBody(format!("polytope offset {b} must be positive")));
            }
            let l = norm(a);
            if (l - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidBody("polytope normals must be unit vectors".into()));
            }
            unit.push(a.iter().map(|c| c / l).collect::<Vec<f64>>());
        }
        let mut o = PolytopeOracle { normals: unit, offsets: offsets.to_vec(), vertices: None };
        o.check_bounded()?;
        if n <= 4 && normals.len() <= VERTEX_ENUM_FACETS {
            o.vertices = Some(o.enumerate_vertices());
        }
        Ok(o)
    }

    /// The polytope is bounded iff every direction has a facet in front of
    /// it: `min_xi max_i <a_i, xi> > 0`.
    fn check_bounded(&self) -> Result<()> {
        let n = self.normals[0].len();
        let q = sphere_grid(n, 48)?;
        let f = |x: &[f64]| self.normals.iter().map(|a| dot(a, x)).fold(f64::NEG_INFINITY, f64::max);
        let vals = q.map_par(f);
        let (i, _) = vals.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nodes");
        let (_, v) = super::direction::sphere_search(f, q.node(i), 0.05, false);
        if v <= 1e-9 {
            return Err(Error::InvalidBody("polytope is unbounded".into()));
        }
        Ok(())
    }

    fn enumerate_vertices(&self) -> Vec<Vec<f64>> {
        let n = self.normals[0].len();
        let m = self.normals.len();
        let mut out: Vec<Vec<f64>> = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let a = DMatrix::from_fn(n, n, |r, c| self.normals[idx[r]][c]);
            let b = DVector::from_fn(n, |r, _| self.offsets[idx[r]]);
            if let Some(x) = a.lu().solve(&b) {
                let x: Vec<f64> = x.iter().copied().collect();
                let scale = norm(&x).max(1.0);
                let feasible = self.normals.iter().zip(&self.offsets).all(|(a, b)| dot(a, &x) <= b + 1e-9 * scale);
                if x.iter().all(|c| c.is_finite())
                    && feasible
                    && !out.iter().any(|v| v.iter().zip(&x).all(|(p, q)| (p - q).abs() < 1e-9 * scale))
                {
                    out.push(x);
                }
            }
            // Next n-subset in lexicographic order.
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < m - n + k {
                    idx[k] += 1;
                    for j in k + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// `min { b.y : sum y_i a_i = xi, y >= 0 }`, the linear-programming dual
    /// of `max <x, xi>` over the polytope; solved by a dense two-phase simplex
    /// with Bland's rule. Returns the value and the facets of the final
    /// basis.
    fn support_lp(&self, xi: &[f64]) -> (f64, Vec<usize>) {
        let n = xi.len();
        let m = self.normals.len();
        let cols = m + n + 1;
        // Rows 0..n constraints, row n objective.
        let mut t = vec![vec![0.0; cols]; n + 1];
        for r in 0..n {
            let sg = if xi[r] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..m {
                t[r][j] = sg * self.normals[j][r];
            }
            t[r][m + r] = 1.0;
            t[r][cols - 1] = sg * xi[r];
        }
        let mut basis: Vec<usize> = (m..m + n).collect();
        // Phase 1: minimize the sum of artificials.
        let phase1: Vec<f64> = (0..m + n).map(|j| if j >= m { 1.0 } else { 0.0 }).collect();
        simplex(&mut t, &mut basis, &phase1, m + n);
        // Drive remaining artificials out of the basis when possible.
        for r in 0..n {
            if basis[r] >= m {
                if let Some(j) = (0..m).find(|&j| t[r][j].abs() > 1e-12) {
                    pivot(&mut t, r, j);
                    basis[r] = j;
                }
            }
        }
        let cost: Vec<f64> = (0..m + n).map(|j| if j < m { self.offsets[j] } else { 1e30 }).collect();
        simplex(&mut t, &mut basis, &cost, m);
        let value: f64 = (0..n).map(|r| if basis[r] < m { self.offsets[basis[r]] * t[r][cols - 1] } else { 0.0 }).sum();
        (value, basis.into_iter().filter(|&j| j < m).collect())
    }

    fn point_on_facets(&self, facets: &[usize], xi: &[f64], value: f64) -> Vec<f64> {
        let n = xi.len();
        // Least-norm solution of the active equalities plus <x, xi> = h.
        let rows = facets.len() + 1;
        let a = DMatrix::from_fn(rows, n, |r, c| if r < facets.len() { self.normals[facets[r]][c] } else { xi[c] });
        let b = DVector::from_fn(rows, |r, _| if r < facets.len() { self.offsets[facets[r]] } else { value });
        let svd = a.svd(true, true);
        match svd.solve(&b, 1e-12) {
            Ok(x) => x.iter().copied().collect(),
            Err(_) => xi.iter().map(|c| c * value).collect(),
        }
    }
}

fn pivot(t: &mut [Vec<f64>], r: usize, c: usize) {
    let p = t[r][c];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    let row = t[r].clone();
    for (i, other) in t.iter_mut().enumerate() {
        if i != r {
            let f = other[c];
            if f != 0.0 {
                for (o, v) in other.iter_mut().zip(&row) {
                    *o -= f * v;
                }
            }
        }
    }
}

/// Minimizes `cost . y` over columns `0..allowed` starting from a feasible
/// basis, with Bland's anti-cycling rule.
fn simplex(t: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64], allowed: usize) {
    let n = basis.len();
    let last = t[0].len() - 1;
    for _ in 0..10_000 {
        // Reduced costs c_j - c_B B^{-1} a_j.
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z: f64 = (0..n).map(|r| cost[basis[r]] * t[r][j]).sum();
            cost[j] - z < -1e-12
        });
        let Some(j) = entering else { return };
        let mut best: Option<(usize, f64)> = None;
        for r in 0..n {
            if t[r][j] > 1e-12 {
                let ratio = t[r][last] / t[r][j];
                match best {
                    Some((br, bv)) if ratio > bv + 1e-15 || (ratio >= bv - 1e-15 && basis[r] > basis[br]) => {}
                    _ => best = Some((r, ratio)),
                }
            }
        }
        let Some((r, _)) = best else { return };
        pivot(t, r, j);
        basis[r] = j;
    }
}

impl RadialOracle for PolytopeOracle {
    fn dim(&self) -> usize {
        self.normals[0].len()
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for (a, b) in self.normals.iter().zip(&self.offsets) {
            let d = dot(a, xi);
            if d > 0.0 {
                best = best.min(b / d);
            }
        }
        best
    }

    fn gauge(&self, x: &[f64]) -> f64 {
        self.normals.iter().zip(&self.offsets).map(|(a, b)| dot(a, x) / b).fold(0.0, f64::max)
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64], reach: f64) -> f64 {
        let mut best = reach;
        for (a, b) in self.normals.iter().zip(&self.offsets) {
            let d = dot(a, dir);
            if d > 0.0 {
                best = best.min(((b - dot(a, origin)) / d).max(0.0));
            }
        }
        best
    }

    fn exit_facet(&self, origin: &[f64], dir: &[f64]) -> Option<usize> {
        let mut best = (f64::INFINITY, None);
        for (i, (a, b)) in self.normals.iter().zip(&self.offsets).enumerate() {
            let d = dot(a, dir);
            if d > 0.0 {
                let s = (b - dot(a, origin)) / d;
                if s < best.0 {
                    best = (s, Some(i));
                }
            }
        }
        best.1
    }

    fn support_exact(&self, xi: &[f64]) -> Option<(f64, Vec<f64>)> {
        if let Some(v) = &self.vertices {
            let (p, h) = v
                .iter()
                .map(|p| (p, dot(p, xi)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("bounded polytope has vertices");
            return Some((h, p.clone()));
        }
        let (h, facets) = self.support_lp(xi);
        Some((h, self.point_on_facets(&facets, xi, h)))
    }
}

#[derive(Debug, Clone)]
struct SeriesOracle {
    dim: usize,
    base: f64,
    terms: Vec<SeriesTerm>,
}

impl SeriesOracle {
    fn new(dim: usize, base: f64, terms: &[SeriesTerm]) -> Result<Self> {
        if !(base > 0.0) {
            return Err(Error::InvalidBody("radial series base must be positive".into()));
        }
        let probe = vec![0.0; dim].into_iter().enumerate().map(|(i, _)| if i == 0 { 1.0 } else { 0.0 }).collect::<Vec<_>>();
        for t in terms {
            basis_eval(dim, t.degree, t.index, &probe).map_err(|e| Error::InvalidBody(e.to_string()))?;
        }
        let o = SeriesOracle { dim, base, terms: terms.to_vec() };
        let q = sphere_grid(dim, 48)?;
        let sup = q.map_par(|x| (o.radial(x) - base).abs()).into_iter().fold(0.0, f64::max);
        if sup >= base {
            return Err(Error::InvalidBody(format!("radial series perturbation {sup} exceeds the base radius {base}")));
        }
        Ok(o)
    }

    /// Midpoint test on random chords between boundary points.
    fn convexity_certificate(&self, chords: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim;
        let mut unit = || -> Vec<f64> {
            loop {
                let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let l = norm(&v);
                if l > 1e-3 && l <= 1.0 {
                    return v.into_iter().map(|c| c / l).collect();
                }
            }
        };
        (0..chords).all(|_| {
            let a = unit();
            let b = unit();
            let (ra, rb) = (self.radial(&a), self.radial(&b));
            let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (ra * x + rb * y)).collect();
            self.gauge(&mid) <= 1.0 + 1e-9
        })
    }
}

impl RadialOracle for SeriesOracle {
    fn dim(&self) -> usize {
        self.dim
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        self.base + self.terms.iter().map(|t| t.coeff * harmonic_poly(self.dim, t.degree, t.index, xi)).sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_diagonal_radial_and_support() {
        let k = ConvexBodySpec::cube(3, 1.0, &[0.0; 3]).build().unwrap();
        let d = 1.0 / 3f64.sqrt();
        let xi = [d, d, d];
        assert!((k.radial_at(&xi) - 3f64.sqrt()).abs() < 1e-14);
        assert!((k.support(&xi).value - 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(k.inner_radius(), 1.0);
        assert!((k.outer_radius() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lp_support_matches_vertex_enumeration() {
        let spec = ConvexBodySpec::cube(3, 1.0, &[0.1, -0.2, 0.05]);
        let ConvexBodySpec::Polytope { normals, offsets } = &spec else { unreachable!() };
        let o = PolytopeOracle::new(normals, offsets).unwrap();
        for xi in [[0.6, 0.0, 0.8], [-0.48, 0.6, 0.64], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]] {
            let (hv, _) = o.support_exact(&xi).unwrap();
            let (hl, facets) = o.support_lp(&xi);
            assert!((hv - hl).abs() < 1e-12, "{hv} vs {hl}");
            let p = o.point_on_facets(&facets, &xi, hl);
            assert!((dot(&p, &xi) - hl).abs() < 1e-10);
            assert!(o.gauge(&p) <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn ellipsoid_axes() {
        let k = ConvexBodySpec::ellipsoid(vec![1.0, 2.0]).build().unwrap();
        assert!((k.radial_at(&[1.0, 0.0]) - 1.0).abs() < 1e-15);
        let e = ConvexBodySpec::ellipsoid(vec![1.0, 2.0, 3.0]).build().unwrap();
        assert!((e.support(&[0.0, 1.0, 0.0]).value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rotated_shifted_ellipsoid_support_point() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let spec = ConvexBodySpec::Ellipsoid {
            center: vec![0.1, -0.2],
            semi_axes: vec![1.0, 0.6],
            axes: vec![vec![c, s], vec![-s, c]],
        };
        let k = spec.build().unwrap();
        for phi in [0.0, 1.0, 2.5, 4.0] {
            let xi = [f64::cos(phi), f64::sin(phi)];
            let sp = k.support(&xi);
            assert!((k.gauge(&sp.point) - 1.0).abs() < 1e-12);
            assert!((dot(&sp.point, &xi) - sp.value).abs() < 1e-14);
            // Brute force over the boundary.
            let brute = (0..20000)
                .map(|j| {
                    let a = j as f64 * std::f64::consts::TAU / 20000.0;
                    let e = [a.cos(), a.sin()];
                    k.radial_at(&e) * dot(&e, &xi)
                })
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(sp.value >= brute - 1e-12 && sp.value - brute < 1e-6);
        }
    }

    #[test]
    fn reflected_spec_matches_reflected_body() {
        let specs = [
            ConvexBodySpec::ball(vec![0.2, 0.1, 0.0], 1.0),
            ConvexBodySpec::cube(3, 1.0, &[0.1, 0.0, 0.0]),
            ConvexBodySpec::RadialSeries {
                dim: 3,
                base: 1.0,
                terms: vec![SeriesTerm { degree: 1, index: 0, coeff: 0.05 }, SeriesTerm { degree: 2, index: 1, coeff: 0.03 }],
            },
        ];
        let q = sphere_grid(3, 12).unwrap();
        for s in &specs {
            let a = s.reflect().build().unwrap();
            let b = s.build().unwrap().reflect();
            for x in q.nodes() {
                assert!((a.radial_at(x) - b.radial_at(x)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ConvexBodySpec::ball(vec![1.5, 0.0], 1.0).build().is_err());
        assert!(ConvexBodySpec::Polytope { normals: vec![vec![1.0, 0.0], vec![0.0, 1.0]], offsets: vec![1.0, 1.0] }
            .build()
            .is_err());
        assert!(ConvexBodySpec::Polytope { normals: vec![vec![1.0, 0.0]], offsets: vec![-1.0] }.build().is_err());
        let big = ConvexBodySpec::RadialSeries { dim: 2, base: 1.0, terms: vec![SeriesTerm { degree: 3, index: 0, coeff: 5.0 }] };
        assert!(big.build().is_err());
    }

    #[test]
    fn series_convexity_certificate() {
        let small = ConvexBodySpec::RadialSeries { dim: 2, base: 1.0, terms: vec![SeriesTerm { degree: 2, index: 0, coeff: 0.05 }] };
        assert!(small.build().unwrap().is_convex());
        // A deep degree-6 ripple is star-shaped but not convex.
        let wavy = ConvexBodySpec::RadialSeries { dim: 2, base: 1.0, terms: vec![SeriesTerm { degree: 6, index: 0, coeff: 0.5 }] };
        assert!(!wavy.build().unwrap().is_convex());
    }
}
