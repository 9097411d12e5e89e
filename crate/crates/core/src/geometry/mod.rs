//! Body representations, sphere quadrature and metrics between bodies.

pub mod body;
pub mod direction;
pub mod file;
pub mod metrics;
pub mod mollify;
pub mod quadrature;
pub mod spec;
pub mod tabulated;

pub use body::{RadialOracle, Smoothness, StarBody, SupportPoint};
pub use direction::{householder_frame, Direction};
pub use file::{load_body, BodyFile};
pub use metrics::{hausdorff_and_l2, radial_metric, radial_metric_refined, vitale_check, RadialDistance, SupportDistances, VitaleMode, VitaleReport};
pub use mollify::{mollify, mollify_with, ShellRule};
pub use quadrature::{sphere_grid, SphereQuadrature};
pub use spec::{ConvexBodySpec, SeriesTerm};
pub use tabulated::tabulated_body;
