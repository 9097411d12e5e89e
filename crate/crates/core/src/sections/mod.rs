//! Parallel section functions, maximal sections and the bodies built from
//! them.

pub mod averaged;
pub mod bodies;
pub mod derivative;
pub mod maximal;
pub mod profile;
pub mod slice;

pub use averaged::{averaged_section, averaged_section_derivative, lipschitz_audit, lipschitz_audit_with, AveragedRoute, LipschitzAudit};
pub use bodies::{cross_section_body, cross_section_body_with, intersection_body, intersection_body_with, BodyTable};
pub use derivative::{prime_at_zero_2d, section_derivative, Derivative};
pub use maximal::{max_section, MaxSection};
pub use profile::{profile_at, section_profile, SectionProfile};
pub use slice::{parallel_section, slice_radial, SliceRule, Slicer};
