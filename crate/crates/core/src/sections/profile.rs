//! Sampled section profiles with derivative and concavity diagnostics.

use std::io::Write;

use crate::error::Result;
use crate::geometry::body::StarBody;

use super::slice::{SliceRule, Slicer};

#[derive(Debug, Clone, PartialEq)]
pub struct SectionProfile {
    pub xi: Vec<f64>,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    /// `A'(t)`; `NaN` where the difference stencil leaves the window.
    pub derivative: Vec<f64>,
    /// `g(t_i)` minus the chord of `g` over `[t_{i-1}, t_{i+1}]`, with
    /// `g = A^{1/(n-1)}`; non-negative for concave `g`. `NaN` at the ends.
    pub concavity: Vec<f64>,
    pub window: (f64, f64),
}

impl SectionProfile {
    /// Smallest concavity residual.
    pub fn min_concavity(&self) -> f64 {
        self.concavity.iter().copied().filter(|v| !v.is_nan()).fold(f64::INFINITY, f64::min)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,A,A_prime,concavity_residual")?;
        for i in 0..self.t.len() {
            writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", self.t[i], self.values[i], self.derivative[i], self.concavity[i])?;
        }
        Ok(())
    }
}

/// Profile on `count` equally spaced points of the support window with the
/// outer 1% trimmed on each side.
pub fn section_profile(body: &StarBody, xi: &[f64], count: usize, rule: &SliceRule) -> Result<SectionProfile> {
    let s = Slicer::new(body, xi, rule.clone())?;
    let (lo, hi) = s.window();
    let pad = 0.01 * (hi - lo);
    let (a, b) = (lo + pad, hi - pad);
    let ts: Vec<f64> = if count < 2 {
        vec![0.5 * (a + b)]
    } else {
        (0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect()
    };
    Ok(profile_from(&s, ts))
}

/// Profile at the given abscissae (sorted internally).
pub fn profile_at(body: &StarBody, xi: &[f64], ts: &[f64], rule: &SliceRule) -> Result<SectionProfile> {
    let s = Slicer::new(body, xi, rule.clone())?;
    let mut ts = ts.to_vec();
    ts.sort_by(f64::total_cmp);
    Ok(profile_from(&s, ts))
}

fn profile_from(s: &Slicer, ts: Vec<f64>) -> SectionProfile {
    use rayon::prelude::*;
    let n = s.body().dim();
    let values: Vec<f64> = ts.par_iter().map(|t| s.area(*t)).collect();
    let derivative: Vec<f64> = ts.par_iter().map(|t| s.derivative(*t, 1, None).map_or(f64::NAN, |d| d.value)).collect();
    let e = 1.0 / (n as f64 - 1.0);
    let g: Vec<f64> = values.iter().map(|v| v.powf(e)).collect();
    let mut concavity = vec![f64::NAN; ts.len()];
    for i in 1..ts.len().saturating_sub(1) {
        let (t0, t1, t2) = (ts[i - 1], ts[i], ts[i + 1]);
        let chord = (g[i - 1] * (t2 - t1) + g[i + 1] * (t1 - t0)) / (t2 - t0);
        concavity[i] = g[i] - chord;
    }
    SectionProfile { xi: s.xi().to_vec(), t: ts, values, derivative, concavity, window: s.window() }
}
