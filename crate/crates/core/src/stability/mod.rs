//! Empirical checks of the stability inequalities.
//!
//! Explicit constants exist only in the planar case and in the auxiliary
//! estimates; elsewhere the harness checks that measured distances decay at
//! least as fast as the claimed power of `eps` over shrinking families.

pub mod fit;
pub mod keylemma;
pub mod report;
pub mod sweep;
pub mod verify;

pub use fit::{exponent_fit, q_exponent, q_keylemma, q_main2, ExponentFit};
pub use keylemma::keylemma_bound;
pub use report::{write_reports, GateStatus, StabilityReport, Theorem, Verdict};
pub use sweep::{geometric_params, sweep_main1, sweep_main2, Family, Sweep};
pub use verify::{
    section_scan, verify_cor1, verify_lemma_intparallel, verify_main1, verify_main1_with, verify_main2,
    verify_main2_with, verify_mmo_forward, SectionScan,
};
