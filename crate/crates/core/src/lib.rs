//! Numerical toolkit for sections of convex bodies.
//!
//! The crate evaluates parallel section functions of star and convex bodies,
//! tabulates intersection and cross-section bodies, computes fractional
//! derivatives of section functions both directly and through spherical
//! harmonics, and runs empirical checks of stability inequalities that relate
//! the asymmetry of a body to how far its maximal sections sit from the
//! origin.

pub mod cli;
pub mod error;
pub mod fractional;
pub mod geometry;
pub mod harmonics;
pub mod numeric;
pub mod sections;
pub mod stability;

pub use error::{Error, Result};
