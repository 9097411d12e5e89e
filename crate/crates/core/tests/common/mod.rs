#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sectionlab::geometry::ConvexBodySpec;
use sectionlab::numeric::gauss::gauss_legendre;

pub fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let l = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if l > 1e-2 && l <= 1.0 {
            return v.into_iter().map(|c| c / l).collect();
        }
    }
}

/// Random orthonormal frame by Gram-Schmidt.
pub fn frame(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    while out.len() < n {
        let mut v = unit(rng, n);
        for b in &out {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let l = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if l > 1e-3 {
            out.push(v.into_iter().map(|c| c / l).collect());
        }
    }
    out
}

/// Random ball, ellipsoid or polytope containing the origin well inside.
pub fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> ConvexBodySpec {
    match rng.gen_range(0..3) {
        0 => {
            let radius = rng.gen_range(0.6..1.4);
            let c: Vec<f64> = unit(rng, n).into_iter().map(|x| x * radius * rng.gen_range(0.0..0.4)).collect();
            ConvexBodySpec::ball(c, radius)
        }
        1 => {
            let semi_axes: Vec<f64> = (0..n).map(|_| rng.gen_range(0.6..1.5)).collect();
            let axes = frame(rng, n);
            let small = semi_axes.iter().cloned().fold(f64::INFINITY, f64::min);
            let center: Vec<f64> = unit(rng, n).into_iter().map(|x| x * small * rng.gen_range(0.0..0.35)).collect();
            ConvexBodySpec::Ellipsoid { center, semi_axes, axes }
        }
        _ => {
            // A random cross-polytope of facets keeps the body bounded.
            let f = frame(rng, n);
            let mut normals = Vec::new();
            for v in &f {
                normals.push(v.clone());
                normals.push(v.iter().map(|c| -c).collect());
            }
            let extra = if n == 2 { rng.gen_range(1..5) } else { rng.gen_range(2..7) };
            for _ in 0..extra {
                normals.push(unit(rng, n));
            }
            let offsets = normals.iter().map(|_| rng.gen_range(0.5..1.5)).collect();
            ConvexBodySpec::Polytope { normals, offsets }
        }
    }
}

/// `int_0^1 g(t) t^{-p} dt` for `0 < p < 1` after `t = u^{1/(1-p)}`.
pub fn weakly_singular(g: impl Fn(f64) -> f64, p: f64, nodes: usize) -> f64 {
    let (u, w) = gauss_legendre(nodes, 0.0, 1.0);
    let a = 1.0 / (1.0 - p);
    u.iter().zip(&w).map(|(u, w)| w * g(u.powf(a))).sum::<f64>() * a
}
