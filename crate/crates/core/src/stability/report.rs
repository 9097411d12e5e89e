//! Records produced by the verification harness.

use std::fmt;
use std::io::Write;

/// Which statement a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `K = -K` forces `CK = IK`.
    MmoForward,
    /// Asymmetry bounded by a power of `rho(CK, IK)`.
    Main1,
    /// Maximizers of sections near the origin force near-symmetry.
    Cor1,
    /// Body distance bounded by gaps between fractional section derivatives.
    Main2,
    /// Integral of `|A'_{K,xi}(0)|` bounded by `sqrt(rho(CK, IK))`.
    IntParallel,
    /// Body distance bounded by `||I_p (rho_K^{n-p} - rho_L^{n-p})||_2`.
    KeyLemma,
}

impl Theorem {
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::MmoForward => "mmo_forward",
            Theorem::Main1 => "main1",
            Theorem::Cor1 => "cor1",
            Theorem::Main2 => "main2",
            Theorem::IntParallel => "lemma_intparallel",
            Theorem::KeyLemma => "keylemma",
        }
    }
}

/// Outcome of a check.
///
/// `Violated` is reserved for bounds with explicit constants that fail by
/// more than the numerical tolerance. `Inconsistent` marks data that no
/// finite constant can reconcile with the claimed rate (a positive distance
/// at vanishing `eps`, a fitted exponent below the claimed one, or an
/// explicit bound failing outside its hypotheses).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ProvedScale,
    Consistent,
    Inconsistent,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ProvedScale => "proved-scale",
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Violated => "violated",
        })
    }
}

/// Whether the smallness hypothesis on `eps` was satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateStatus {
    Met,
    NotMet,
    NotApplicable,
}

impl fmt::Display for GateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateStatus::Met => "met",
            GateStatus::NotMet => "not-met",
            GateStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub theorem: Theorem,
    pub dim: usize,
    pub epsilon: f64,
    pub distance: f64,
    pub bound: Option<f64>,
    /// Claimed exponent `q` in `distance <= C eps^q`.
    pub q: f64,
    /// Slope from a family sweep, when the report belongs to one.
    pub fitted: Option<f64>,
    pub gate: GateStatus,
    /// Threshold `eps` must stay below.
    pub gate_limit: Option<f64>,
    pub verdict: Verdict,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub grid_order: usize,
    /// Further named quantities specific to the check.
    pub details: Vec<(&'static str, f64)>,
    pub note: String,
}

impl StabilityReport {
    pub(crate) fn new(theorem: Theorem, dim: usize, r: f64, big_r: f64, grid_order: usize) -> Self {
        StabilityReport {
            theorem,
            dim,
            epsilon: 0.0,
            distance: 0.0,
            bound: None,
            q: f64::NAN,
            fitted: None,
            gate: GateStatus::NotApplicable,
            gate_limit: None,
            verdict: Verdict::Consistent,
            inner_radius: r,
            outer_radius: big_r,
            grid_order,
            details: Vec::new(),
            note: String::new(),
        }
    }

    pub fn detail(&self, name: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }

    /// `distance / eps^q`, infinite when `eps` vanishes.
    pub fn ratio(&self) -> f64 {
        if self.epsilon > 0.0 {
            self.distance / self.epsilon.powf(self.q)
        } else if self.distance == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub const CSV_HEADER: &'static str =
        "theorem,dim,epsilon,distance,bound,q,fitted,gate,gate_limit,verdict,inner_radius,outer_radius,grid_order,details,note";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_f).unwrap_or_default();
        let details: Vec<String> = self.details.iter().map(|(k, v)| format!("{k}={}", fmt_f(*v))).collect();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\"",
            self.theorem.tag(),
            self.dim,
            fmt_f(self.epsilon),
            fmt_f(self.distance),
            opt(self.bound),
            fmt_f(self.q),
            opt(self.fitted),
            self.gate,
            opt(self.gate_limit),
            self.verdict,
            fmt_f(self.inner_radius),
            fmt_f(self.outer_radius),
            self.grid_order,
            details.join(";"),
            self.note.replace('"', "'"),
        )
    }
}

pub(crate) fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_reports<W: Write>(reports: &[StabilityReport], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{}", StabilityReport::CSV_HEADER)?;
    for r in reports {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}
