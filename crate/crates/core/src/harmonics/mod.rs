//! Real spherical harmonics, condensed expansions and the operator `I_p`.

pub mod basis;
pub mod eigen;
pub mod expansion;

pub use crate::stability::keylemma::keylemma_bound;
pub use basis::{basis_all, basis_eval, basis_len, harmonic_dim};
pub use eigen::{apply_ip, apply_ip_with, lambda_eigenvalue, lambda_with, FourierKernel};
pub use expansion::{expand, expand_values, gradient_norm_sq, ComplexExpansion, HarmonicExpansion};
