//! Star bodies: a radial-function oracle plus certified inner and outer
//! radii.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::numeric::search::bracket_root;
use crate::numeric::{dot, norm, MAX_DIM};

use super::direction::{sphere_search, Direction};
use super::quadrature::{sphere_grid, SphereQuadrature};

/// Regularity class of a body's radial function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Polytope,
    C0,
    Cm(u32),
    Cinf,
}

impl Smoothness {
    /// Whether the radial function has at least `k` continuous derivatives.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Smoothness::Polytope | Smoothness::C0 => k == 0,
            Smoothness::Cm(m) => m >= k,
            Smoothness::Cinf => true,
        }
    }
}

/// Radial function of a star body with respect to the origin, together with
/// the derived gauge and ray queries used by the section code.
pub trait RadialOracle: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    /// `rho(xi) = max { a >= 0 : a xi in K }` for a unit vector `xi`.
    fn radial(&self, xi: &[f64]) -> f64;

    /// Minkowski functional `||x||_K = |x| / rho(x / |x|)`.
    fn gauge(&self, x: &[f64]) -> f64 {
        let len = norm(x);
        if len == 0.0 {
            return 0.0;
        }
        let mut buf = [0.0; MAX_DIM];
        let u = &mut buf[..x.len()];
        for (b, c) in u.iter_mut().zip(x) {
            *b = c / len;
        }
        len / self.radial(u)
    }

    /// Distance from the interior point `origin` to the boundary along the
    /// unit vector `dir`, searched in `[0, reach]`.
    fn ray_exit(&self, origin: &[f64], dir: &[f64], reach: f64) -> f64 {
        let n = origin.len();
        let g = |s: f64| {
            let mut p = [0.0; MAX_DIM];
            for i in 0..n {
                p[i] = origin[i] + s * dir[i];
            }
            self.gauge(&p[..n]) - 1.0
        };
        bracket_root(g, 0.0, reach, 1e-12 * reach.max(1e-300))
    }

    /// For polyhedral bodies, the index of the facet through which the ray
    /// from `origin` along `dir` leaves the body.
    fn exit_facet(&self, _origin: &[f64], _dir: &[f64]) -> Option<usize> {
        None
    }

    /// Exact support value and a maximizing boundary point, when the
    /// representation admits one.
    fn support_exact(&self, _xi: &[f64]) -> Option<(f64, Vec<f64>)> {
        None
    }
}

/// Support value `h_K(xi)` and a boundary point where it is attained.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPoint {
    pub value: f64,
    pub point: Vec<f64>,
}

/// A star body with certified radii `r <= rho <= R`.
#[derive(Clone)]
pub struct StarBody {
    oracle: Arc<dyn RadialOracle>,
    inner: f64,
    outer: f64,
    smoothness: Smoothness,
    convex: bool,
    boundary_cache: Arc<OnceLock<Vec<Vec<f64>>>>,
}

impl fmt::Debug for StarBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarBody")
            .field("oracle", &self.oracle)
            .field("inner", &self.inner)
            .field("outer", &self.outer)
            .field("smoothness", &self.smoothness)
            .field("convex", &self.convex)
            .finish()
    }
}

impl StarBody {
    pub fn new(
        oracle: Arc<dyn RadialOracle>,
        inner: f64,
        outer: f64,
        smoothness: Smoothness,
        convex: bool,
    ) -> Result<Self> {
        if !(inner > 0.0 && inner <= outer && outer.is_finite()) {
            return Err(Error::InvalidBody(format!("radii must satisfy 0 < r <= R, got r={inner}, R={outer}")));
        }
        Ok(StarBody { oracle, inner, outer, smoothness, convex, boundary_cache: Arc::new(OnceLock::new()) })
    }

    pub fn dim(&self) -> usize {
        self.oracle.dim()
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn oracle(&self) -> &Arc<dyn RadialOracle> {
        &self.oracle
    }

    pub fn radial(&self, xi: &Direction) -> f64 {
        self.oracle.radial(xi)
    }

    /// Radial function at a unit vector given as a raw slice.
    pub fn radial_at(&self, xi: &[f64]) -> f64 {
        self.oracle.radial(xi)
    }

    pub fn gauge(&self, x: &[f64]) -> f64 {
        self.oracle.gauge(x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.oracle.gauge(x) <= 1.0
    }

    /// Distance from an interior point to the boundary along a unit vector.
    pub fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> f64 {
        self.oracle.ray_exit(origin, dir, 2.0 * self.outer)
    }

    pub fn exit_facet(&self, origin: &[f64], dir: &[f64]) -> Option<usize> {
        self.oracle.exit_facet(origin, dir)
    }

    /// The body `-K`, with `rho_{-K}(xi) = rho_K(-xi)`.
    pub fn reflect(&self) -> StarBody {
        StarBody {
            oracle: Arc::new(Reflected(self.oracle.clone())),
            inner: self.inner,
            outer: self.outer,
            smoothness: self.smoothness,
            convex: self.convex,
            boundary_cache: Arc::new(OnceLock::new()),
        }
    }

    /// Support function and a maximizing boundary point. Exact for analytic
    /// representations; otherwise the maximum of `rho(eta) <eta, xi>` over a
    /// cached boundary sample refined by a local search on the sphere.
    pub fn support(&self, xi: &[f64]) -> SupportPoint {
        if let Some((value, point)) = self.oracle.support_exact(xi) {
            return SupportPoint { value, point };
        }
        let pts = self.boundary_cache.get_or_init(|| {
            let q = sphere_grid(self.dim(), 32).expect("valid grid");
            q.map_par(|eta| {
                let r = self.oracle.radial(eta);
                eta.iter().map(|c| c * r).collect()
            })
        });
        let (best, _) = pts
            .iter()
            .map(|p| (p, dot(p, xi)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty sample");
        let start: Vec<f64> = {
            let l = norm(best);
            best.iter().map(|c| c / l).collect()
        };
        let (eta, value) = sphere_search(|e| self.oracle.radial(e) * dot(e, xi), &start, 0.1, true);
        let r = self.oracle.radial(&eta);
        SupportPoint { value, point: eta.iter().map(|c| c * r).collect() }
    }

    /// Checks `r <= rho <= R` on every node of `quad`.
    pub fn check_radii(&self, quad: &SphereQuadrature) -> Result<()> {
        if quad.dim() != self.dim() {
            return Err(Error::DimError { expected: self.dim(), got: quad.dim() });
        }
        for x in quad.nodes() {
            let r = self.oracle.radial(x);
            if r < self.inner * (1.0 - 1e-12) || r > self.outer * (1.0 + 1e-12) {
                return Err(Error::InvalidBody(format!(
                    "radial value {r} outside certified [{}, {}]",
                    self.inner, self.outer
                )));
            }
        }
        Ok(())
    }

    pub fn require_convex(&self, what: &str) -> Result<()> {
        if self.convex {
            Ok(())
        } else {
            Err(Error::InvalidBody(format!("{what} requires a convex body")))
        }
    }
}

/// Minimum and maximum of the radial function, located on a grid and then
/// refined by local search. Used to certify `r` and `R`.
pub fn radial_extremes(oracle: &dyn RadialOracle, order: usize) -> (f64, f64) {
    let q = sphere_grid(oracle.dim(), order).expect("valid grid");
    let vals = q.map_par(|x| oracle.radial(x));
    let (imin, _) = vals.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nodes");
    let (imax, _) = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nodes");
    let step = std::f64::consts::PI / order as f64;
    let (_, lo) = sphere_search(|e| oracle.radial(e), q.node(imin), step, false);
    let (_, hi) = sphere_search(|e| oracle.radial(e), q.node(imax), step, true);
    (lo, hi)
}

#[derive(Debug)]
struct Reflected(Arc<dyn RadialOracle>);

fn negated(x: &[f64]) -> ([f64; MAX_DIM], usize) {
    let mut buf = [0.0; MAX_DIM];
    for (b, c) in buf.iter_mut().zip(x) {
        *b = -c;
    }
    (buf, x.len())
}

impl RadialOracle for Reflected {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn radial(&self, xi: &[f64]) -> f64 {
        let (b, n) = negated(xi);
        self.0.radial(&b[..n])
    }

    fn gauge(&self, x: &[f64]) -> f64 {
        let (b, n) = negated(x);
        self.0.gauge(&b[..n])
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64], reach: f64) -> f64 {
        let (o, n) = negated(origin);
        let (d, _) = negated(dir);
        self.0.ray_exit(&o[..n], &d[..n], reach)
    }

    fn exit_facet(&self, origin: &[f64], dir: &[f64]) -> Option<usize> {
        let (o, n) = negated(origin);
        let (d, _) = negated(dir);
        self.0.exit_facet(&o[..n], &d[..n])
    }

    fn support_exact(&self, xi: &[f64]) -> Option<(f64, Vec<f64>)> {
        let (b, n) = negated(xi);
        self.0.support_exact(&b[..n]).map(|(v, p)| (v, p.iter().map(|c| -c).collect()))
    }
}
