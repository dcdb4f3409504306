//! The diagonal cubic form and its differential geometry: gradient and dual
//! form F*, the planes Upsilon on the Fermat cubic, good/bad classification
//! of dual vectors, and exact sieve-style counting experiments.

pub mod dual;
pub mod goodness;
pub mod gradcheck;
pub mod multipoly;
pub mod planes;
pub mod sieve;

pub use dual::{dual_eval, dual_eval_with_grad, dual_symbolic, DiagonalCubic, DualPoly};
pub use goodness::{goodness, quadric_bundle, BinForm, GoodnessReport, QuadricBundle};
pub use gradcheck::grad_divisibility_check;
pub use multipoly::MultiPoly;
pub use planes::{plane_lattice_points, upsilon_enumerate, PlaneSpace};
pub use sieve::{sieve_counts, SieveRow};
