//! Exact oscillatory integrals, the delta-method identity at desk scale, the
//! M/E1/E2 term split, and the linear-space extraction identity.

pub mod integral;
pub mod linspace;
pub mod verify;
pub mod weight;

pub use integral::{dual_vanishing_audit, integral_avg, integral_exact, vanishing_degree_bound, RatFn};
pub use linspace::{linspace_extract_check, sigma_l0, LinSpaceReport};
pub use verify::{delta_verify, term_split, DeltaReport, TermSplit};
pub use weight::WeightSpec;
