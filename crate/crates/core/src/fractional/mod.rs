//! Fractional derivatives at zero of section functions.

pub mod derivative;
pub mod section;

pub use derivative::{
    frac_derivative, frac_derivative_split, integer_limit_check, FracValue, FractionalOrder, LimitPoint, LineFunction,
};
pub use section::{fourier_pieces, frac_section, frac_section_fourier, ip_bound_check, FourierFrac, FourierPieces, IpBoundCheck};
