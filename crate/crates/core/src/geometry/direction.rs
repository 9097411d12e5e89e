use std::ops::Deref;

use crate::error::{Error, Result};
use crate::numeric::{norm, MAX_DIM};

/// Unit vector on `S^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Accepts coordinates whose Euclidean norm is 1 within `1e-12`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_dim(coords.len())?;
        let len = norm(&coords);
        if (len - 1.0).abs() > 1e-12 {
            return Err(Error::RangeError(format!("direction has norm {len}, expected 1")));
        }
        Ok(Direction(coords))
    }

    /// Rescales a nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        check_dim(coords.len())?;
        let len = norm(&coords);
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::RangeError("cannot normalize a zero or non-finite vector".into()));
        }
        coords.iter_mut().for_each(|c| *c /= len);
        Ok(Direction(coords))
    }

    /// The `i`-th coordinate axis of `R^n`.
    pub fn axis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Direction(v)
    }

    /// Planar direction at angle `phi` from the positive first axis.
    pub fn from_angle(phi: f64) -> Self {
        Direction(vec![phi.cos(), phi.sin()])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Self {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Direction {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::RangeError(format!("dimension {n} outside 2..={MAX_DIM}")));
    }
    Ok(())
}

/// Orthonormal basis of the tangent space `xi^perp`, taken from the
/// Householder reflection that swaps `e_n` and `xi`. Deterministic in `xi`.
pub fn householder_frame(xi: &[f64]) -> Vec<Vec<f64>> {
    let n = xi.len();
    let mut v = xi.to_vec();
    v[n - 1] -= 1.0;
    let vv: f64 = v.iter().map(|c| c * c).sum();
    (0..n - 1)
        .map(|j| {
            let mut col = vec![0.0; n];
            col[j] = 1.0;
            if vv > 1e-30 {
                let s = 2.0 * v[j] / vv;
                for (c, vi) in col.iter_mut().zip(&v) {
                    *c -= s * vi;
                }
            }
            col
        })
        .collect()
}

/// Local search on the sphere for an extremum of `f`, starting at `start`
/// with initial step `step`. Returns the best point and value.
pub(crate) fn sphere_search<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    mut step: f64,
    maximize: bool,
) -> (Vec<f64>, f64) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let n = start.len();
    let mut best = start.to_vec();
    let mut best_val = sign * f(&best);
    let mut trial = [0.0; MAX_DIM];
    let mut iters = 0;
    while step > 1e-10 && iters < 2000 {
        iters += 1;
        let frame = householder_frame(&best);
        let mut moved = false;
        'dirs: for t in &frame {
            for s in [step, -step] {
                let p = &mut trial[..n];
                for i in 0..n {
                    p[i] = best[i] + s * t[i];
                }
                let len = norm(p);
                p.iter_mut().for_each(|c| *c /= len);
                let v = sign * f(p);
                if v > best_val {
                    best_val = v;
                    best.copy_from_slice(p);
                    moved = true;
                    break 'dirs;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (best, sign * best_val)
}
