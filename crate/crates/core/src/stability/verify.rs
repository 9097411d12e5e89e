//! Checks of the stability statements on concrete bodies.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fractional::section::frac_section;
use crate::geometry::body::StarBody;
use crate::geometry::metrics::radial_metric;
use crate::geometry::quadrature::SphereQuadrature;
use crate::numeric::special::lipschitz_constant;
use crate::sections::derivative::prime_at_zero_2d;
use crate::sections::slice::{SliceRule, Slicer};

use super::fit::{q_exponent, q_main2, ratio_value};
use super::report::{GateStatus, StabilityReport, Theorem, Verdict};

/// Absolute slack for comparisons against explicit bounds.
pub const BOUND_TOL: f64 = 1e-7;
/// Largest `rho(K, -K)` accepted as origin-symmetric.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// `eps` at or below this counts as zero.
pub const EPS_FLOOR: f64 = 1e-9;

/// Central sections, maximal sections and their positions on a grid.
#[derive(Debug, Clone)]
pub struct SectionScan {
    pub central: Vec<f64>,
    pub maximal: Vec<f64>,
    pub t_star: Vec<f64>,
}

impl SectionScan {
    /// `rho(CK, IK)` on the grid.
    pub fn rho_ck_ik(&self) -> f64 {
        self.central.iter().zip(&self.maximal).map(|(a, m)| (m - a).abs()).fold(0.0, f64::max)
    }

    pub fn max_t_star(&self) -> f64 {
        self.t_star.iter().map(|t| t.abs()).fold(0.0, f64::max)
    }
}

pub fn section_scan(body: &StarBody, quad: &SphereQuadrature) -> Result<SectionScan> {
    if quad.dim() != body.dim() {
        return Err(Error::DimError { expected: body.dim(), got: quad.dim() });
    }
    let rule = SliceRule::default_for(body);
    let rows: Result<Vec<(f64, f64, f64)>> = quad
        .map_par(|xi| {
            let s = Slicer::new(body, xi, rule.clone())?;
            let m = s.max_section();
            Ok((s.area(0.0), m.m, m.t_star))
        })
        .into_iter()
        .collect();
    let rows = rows?;
    Ok(SectionScan {
        central: rows.iter().map(|r| r.0).collect(),
        maximal: rows.iter().map(|r| r.1).collect(),
        t_star: rows.iter().map(|r| r.2).collect(),
    })
}

pub fn asymmetry(body: &StarBody, quad: &SphereQuadrature) -> Result<f64> {
    Ok(radial_metric(body, &body.reflect(), quad)?.value)
}

/// `min{(sqrt3 r / (6 sqrt3 pi r + 32 pi))^2, r^2/16}`.
pub fn main1_gate(r: f64) -> f64 {
    let s3 = 3f64.sqrt();
    (s3 * r / (6.0 * s3 * PI * r + 32.0 * PI)).powi(2).min(r * r / 16.0)
}

/// `(24 pi + 128 pi / (sqrt3 r)) R sqrt(eps)`.
pub fn main1_bound_2d(r: f64, big_r: f64, eps: f64) -> f64 {
    (24.0 * PI + 128.0 * PI / (3f64.sqrt() * r)) * big_r * eps.max(0.0).sqrt()
}

/// `min{r/2, 3r^3 / (L R^{n-1} (6 sqrt3 pi r + 32 pi)^2), r^3 / (16 L R^{n-1})}`.
pub fn cor1_gate(n: usize, r: f64, big_r: f64) -> f64 {
    let l = lipschitz_constant(n) * big_r.powi(n as i32 - 1);
    let d = 6.0 * 3f64.sqrt() * PI * r + 32.0 * PI;
    (r / 2.0).min(3.0 * r.powi(3) / (l * d * d)).min(r.powi(3) / (16.0 * l))
}

/// `(6 pi + 32 pi / (sqrt3 r)) sqrt(eps)`.
pub fn intparallel_bound_2d(r: f64, eps: f64) -> f64 {
    (6.0 * PI + 32.0 * PI / (3f64.sqrt() * r)) * eps.max(0.0).sqrt()
}

fn gate(eps: f64, limit: f64) -> GateStatus {
    if eps < limit {
        GateStatus::Met
    } else {
        GateStatus::NotMet
    }
}

/// Verdict for an explicit bound: failures only count as violations when the
/// hypotheses hold.
fn explicit_verdict(lhs: f64, bound: f64, gate: GateStatus) -> Verdict {
    let holds = lhs <= bound + BOUND_TOL * bound.max(1.0);
    match (holds, gate) {
        (true, GateStatus::NotMet) => Verdict::Consistent,
        (true, _) => Verdict::ProvedScale,
        (false, GateStatus::NotMet) => Verdict::Inconsistent,
        (false, _) => Verdict::Violated,
    }
}

/// Verdict for a rate with an abstract constant.
fn rate_verdict(eps: f64, dist: f64, q: f64, ratio_cap: Option<f64>) -> Verdict {
    if eps <= EPS_FLOOR {
        return if dist <= BOUND_TOL { Verdict::Consistent } else { Verdict::Inconsistent };
    }
    match ratio_cap {
        Some(cap) if dist > cap * eps.powf(q) * (1.0 + 1e-9) + BOUND_TOL => Verdict::Inconsistent,
        _ => Verdict::Consistent,
    }
}

const ABSTRACT_NOTE: &str = "constant C(n) is not numeric for n >= 3; verdict is rate consistency only";

/// `rho(CK, IK)` for an origin-symmetric body, which must vanish.
pub fn verify_mmo_forward(body: &StarBody, quad: &SphereQuadrature) -> Result<StabilityReport> {
    body.require_convex("verify_mmo_forward")?;
    let asym = asymmetry(body, quad)?;
    if asym >= SYMMETRY_TOL {
        return Err(Error::PreconditionError(format!("body is not origin-symmetric: rho(K, -K) = {asym:.3e}")));
    }
    let scan = section_scan(body, quad)?;
    let eps = scan.rho_ck_ik();
    let scale = scan.maximal.iter().cloned().fold(1.0, f64::max);
    let mut rep = StabilityReport::new(Theorem::MmoForward, body.dim(), body.inner_radius(), body.outer_radius(), quad.order());
    rep.epsilon = eps;
    rep.distance = asym;
    rep.bound = Some(1e-6 * scale);
    rep.q = 1.0;
    rep.verdict = if eps <= 1e-6 * scale { Verdict::ProvedScale } else { Verdict::Violated };
    rep.details.push(("max_t_star", scan.max_t_star()));
    Ok(rep)
}

pub fn verify_main1(body: &StarBody, quad: &SphereQuadrature) -> Result<StabilityReport> {
    verify_main1_with(body, quad, None)
}

/// As [`verify_main1`]; for `n >= 3` a `ratio_cap` turns the rate check
/// into `rho(K, -K) <= ratio_cap eps^q`.
pub fn verify_main1_with(body: &StarBody, quad: &SphereQuadrature, ratio_cap: Option<f64>) -> Result<StabilityReport> {
    body.require_convex("verify_main1")?;
    let n = body.dim();
    let (r, big_r) = (body.inner_radius(), body.outer_radius());
    let scan = section_scan(body, quad)?;
    let eps = scan.rho_ck_ik();
    let asym = asymmetry(body, quad)?;
    let mut rep = StabilityReport::new(Theorem::Main1, n, r, big_r, quad.order());
    rep.epsilon = eps;
    rep.distance = asym;
    rep.q = ratio_value(q_exponent(n));
    rep.gate_limit = Some(main1_gate(r));
    rep.gate = gate(eps, main1_gate(r));
    rep.details.push(("max_t_star", scan.max_t_star()));
    if n == 2 {
        let b = main1_bound_2d(r, big_r, eps);
        rep.bound = Some(b);
        rep.verdict = explicit_verdict(asym, b, rep.gate);
    } else {
        rep.verdict = rate_verdict(eps, asym, rep.q, ratio_cap);
        if let Some(c) = ratio_cap {
            rep.details.push(("ratio_cap", c));
        }
        rep.note = ABSTRACT_NOTE.into();
    }
    Ok(rep)
}

pub fn verify_cor1(body: &StarBody, quad: &SphereQuadrature) -> Result<StabilityReport> {
    verify_cor1_with(body, quad, None)
}

/// Maximizer offsets `eps~ = max |t_K(xi)|`, transferred to
/// `rho(CK, IK) <= L(n) R^{n-1} eps~ / r`.
///
/// The transfer is audited node-wise; a failure is a violation whenever the
/// offset lies in `[-r/2, r/2]`.
pub fn verify_cor1_with(body: &StarBody, quad: &SphereQuadrature, ratio_cap: Option<f64>) -> Result<StabilityReport> {
    body.require_convex("verify_cor1")?;
    let n = body.dim();
    let (r, big_r) = (body.inner_radius(), body.outer_radius());
    let scan = section_scan(body, quad)?;
    let slope = lipschitz_constant(n) * big_r.powi(n as i32 - 1) / r;
    let eps_t = scan.max_t_star();
    let transfer = slope * eps_t;
    let mut lipschitz_ok = true;
    for i in 0..scan.t_star.len() {
        let t = scan.t_star[i];
        let gap = (scan.maximal[i] - scan.central[i]).abs();
        if t.abs() <= r / 2.0 && gap > slope * t.abs() + BOUND_TOL * scan.maximal[i].max(1.0) {
            lipschitz_ok = false;
        }
    }
    let asym = asymmetry(body, quad)?;
    let mut rep = StabilityReport::new(Theorem::Cor1, n, r, big_r, quad.order());
    rep.epsilon = eps_t;
    rep.distance = asym;
    rep.q = ratio_value(q_exponent(n));
    rep.gate_limit = Some(cor1_gate(n, r, big_r));
    rep.gate = gate(eps_t, cor1_gate(n, r, big_r));
    rep.details.push(("transfer", transfer));
    rep.details.push(("rho_ck_ik", scan.rho_ck_ik()));
    rep.details.push(("lipschitz_ok", if lipschitz_ok { 1.0 } else { 0.0 }));
    rep.verdict = if n == 2 {
        let b = main1_bound_2d(r, big_r, transfer);
        rep.bound = Some(b);
        explicit_verdict(asym, b, rep.gate)
    } else {
        rep.note = ABSTRACT_NOTE.into();
        rate_verdict(eps_t, asym, rep.q, ratio_cap)
    };
    if !lipschitz_ok {
        rep.verdict = Verdict::Violated;
        rep.note = "Lipschitz transfer failed at some node".into();
    }
    Ok(rep)
}

pub fn verify_main2(k: &StarBody, l: &StarBody, p: f64, quad: &SphereQuadrature) -> Result<StabilityReport> {
    verify_main2_with(k, l, p, quad, None)
}

/// Largest gap between `A^{(p)}_{K,xi}(0)` and `A^{(p)}_{L,xi}(0)` over the
/// grid against `rho(K, L)`.
pub fn verify_main2_with(
    k: &StarBody,
    l: &StarBody,
    p: f64,
    quad: &SphereQuadrature,
    ratio_cap: Option<f64>,
) -> Result<StabilityReport> {
    let n = k.dim();
    if l.dim() != n || quad.dim() != n {
        return Err(Error::DimError { expected: n, got: if l.dim() != n { l.dim() } else { quad.dim() } });
    }
    if !(p > -1.0 && p < n as f64 - 1.0) || p == p.round() {
        return Err(Error::RangeError(format!("order p = {p} must be a non-integer in (-1, {})", n - 1)));
    }
    k.require_convex("verify_main2")?;
    l.require_convex("verify_main2")?;
    let (rk, rl) = (SliceRule::default_for(k), SliceRule::default_for(l));
    let gaps: Result<Vec<f64>> = quad
        .map_par(|xi| Ok((frac_section(k, xi, p, &rk)?.value - frac_section(l, xi, p, &rl)?.value).abs()))
        .into_iter()
        .collect();
    let eps = gaps?.into_iter().fold(0.0, f64::max);
    let dist = radial_metric(k, l, quad)?.value;
    let r = k.inner_radius().min(l.inner_radius());
    let big_r = k.outer_radius().max(l.outer_radius());
    let mut rep = StabilityReport::new(Theorem::Main2, n, r, big_r, quad.order());
    rep.epsilon = eps;
    rep.distance = dist;
    rep.q = q_main2(n, p);
    rep.gate_limit = Some(1.0);
    rep.gate = gate(eps, 1.0);
    rep.details.push(("p", p));
    if let Some(c) = ratio_cap {
        rep.details.push(("ratio_cap", c));
    }
    rep.verdict = rate_verdict(eps, dist, rep.q, ratio_cap);
    rep.note = "constant C(n,p,r,R) is not numeric; verdict is rate consistency only".into();
    Ok(rep)
}

/// Integral of `|A'_{K,xi}(0)|` (n = 2) or `|A'_{K,xi}(0)|^2` (n >= 3) over
/// the sphere against `rho(CK, IK)`.
pub fn verify_lemma_intparallel(body: &StarBody, quad: &SphereQuadrature) -> Result<StabilityReport> {
    body.require_convex("verify_lemma_intparallel")?;
    if !body.smoothness().at_least(1) {
        return Err(Error::SmoothnessError("the integral bound is stated for smooth bodies; mollify first".into()));
    }
    let n = body.dim();
    let (r, big_r) = (body.inner_radius(), body.outer_radius());
    let scan = section_scan(body, quad)?;
    let eps = scan.rho_ck_ik();
    let rule = SliceRule::default_for(body);
    let primes: Result<Vec<f64>> = quad
        .map_par(|xi| {
            if n == 2 {
                Ok(prime_at_zero_2d(body, xi[1].atan2(xi[0]))?.value)
            } else {
                Ok(Slicer::new(body, xi, rule.clone())?.derivative(0.0, 1, None)?.value)
            }
        })
        .into_iter()
        .collect();
    let primes = primes?;
    let power = if n == 2 { 1 } else { 2 };
    let lhs: f64 = primes.iter().zip(quad.weights()).map(|(d, w)| w * d.abs().powi(power)).sum();
    let mut rep = StabilityReport::new(Theorem::IntParallel, n, r, big_r, quad.order());
    rep.epsilon = eps;
    rep.distance = lhs;
    rep.q = 0.5;
    rep.gate_limit = Some(r * r / 16.0);
    rep.gate = gate(eps, r * r / 16.0);
    if n == 2 {
        let b = intparallel_bound_2d(r, eps);
        rep.bound = Some(b);
        rep.verdict = explicit_verdict(lhs, b, rep.gate);
    } else {
        let nf = n as i32;
        let bracket = (eps.sqrt() + big_r.powi(2 * nf - 4) / r + big_r.powi(3 * nf - 3) / r.powi(nf + 2)) * eps.sqrt();
        if bracket > 0.0 {
            rep.details.push(("implied_constant", lhs / bracket));
        }
        rep.verdict = rate_verdict(eps, lhs, 0.5, None);
        rep.note = ABSTRACT_NOTE.into();
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadrature::sphere_grid;
    use crate::geometry::spec::ConvexBodySpec;

    #[test]
    fn symmetric_bodies_have_equal_ck_ik() {
        let q = sphere_grid(3, 8).unwrap();
        let ball = ConvexBodySpec::unit_ball(3).build().unwrap();
        let rep = verify_mmo_forward(&ball, &q).unwrap();
        assert!(rep.epsilon <= 1e-8, "{rep:?}");
        assert_eq!(rep.verdict, Verdict::ProvedScale);
        let e = ConvexBodySpec::ellipsoid(vec![1.0, 1.3, 0.7]).build().unwrap();
        assert!(verify_mmo_forward(&e, &q).unwrap().epsilon <= 1e-6);
        let c = ConvexBodySpec::cube(3, 1.0, &[0.0; 3]).build().unwrap();
        assert!(verify_mmo_forward(&c, &q).unwrap().epsilon <= 1e-6);
        let s = ConvexBodySpec::shifted_ball(3, 0.1).build().unwrap();
        assert!(matches!(verify_mmo_forward(&s, &q), Err(Error::PreconditionError(_))));
    }

    #[test]
    fn shifted_disk_explicit_bound() {
        let s = 0.05;
        let k = ConvexBodySpec::shifted_ball(2, s).build().unwrap();
        let q = sphere_grid(2, 64).unwrap();
        let rep = verify_main1(&k, &q).unwrap();
        // Chord geometry: the central chord along e_1 has length 2 sqrt(1 - s^2).
        let eps = 2.0 * (1.0 - (1.0 - s * s).sqrt());
        assert!(rep.epsilon <= eps + 1e-9 && rep.epsilon > 0.95 * eps, "{} {eps}", rep.epsilon);
        assert!(rep.distance <= 2.0 * s + 1e-12 && rep.distance > 0.99 * 2.0 * s);
        assert_eq!(rep.gate, GateStatus::NotMet);
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert!(rep.bound.unwrap() > rep.distance);
    }

    #[test]
    fn cor1_shifted_ball_offset() {
        let s = 0.1;
        let k = ConvexBodySpec::shifted_ball(3, s).build().unwrap();
        let q = sphere_grid(3, 8).unwrap();
        let rep = verify_cor1(&k, &q).unwrap();
        let xmax = q.nodes().map(|x| x[0].abs()).fold(0.0, f64::max);
        assert!((rep.epsilon - s * xmax).abs() < 1e-8, "{}", rep.epsilon);
        assert_eq!(rep.detail("lipschitz_ok"), Some(1.0));
        assert!(rep.detail("rho_ck_ik").unwrap() <= rep.detail("transfer").unwrap());
    }

    #[test]
    fn intparallel_shifted_disk() {
        let s = 0.05;
        let k = ConvexBodySpec::shifted_ball(2, s).build().unwrap();
        let q = sphere_grid(2, 128).unwrap();
        let rep = verify_lemma_intparallel(&k, &q).unwrap();
        let oracle = crate::numeric::kronrod::integrate(
            |th: f64| 2.0 * s * th.cos().abs() / (1.0 - s * s * th.cos().powi(2)).sqrt(),
            0.0,
            2.0 * PI,
            Default::default(),
        )
        .value;
        assert!((rep.distance - oracle).abs() < 1e-3 * oracle, "{} {oracle}", rep.distance);
        assert_eq!(rep.gate, GateStatus::Met);
        assert_eq!(rep.verdict, Verdict::ProvedScale);
    }

    #[test]
    fn gates_shrink_to_zero() {
        assert!(main1_gate(1.0) > 0.0);
        assert!(main1_gate(0.5) < main1_gate(1.0));
        assert!(cor1_gate(3, 1.0, 1.0) < cor1_gate(2, 1.0, 1.0));
    }
}
