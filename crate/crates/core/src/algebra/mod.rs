//! Exact arithmetic in F_q and O = F_q[t]: field construction, traces,
//! polynomial arithmetic, factorization and the sq/cub/rad decompositions.

pub mod enumerate;
pub mod factor;
pub mod field;
pub mod poly;

pub use factor::{count_binfty_divisors, is_irreducible, poly_factor, poly_factor_seeded, sq_cub_rad, Factorization};
pub use field::{FieldElem, FieldSpec};
pub use poly::{resultant, Degree, Poly};
