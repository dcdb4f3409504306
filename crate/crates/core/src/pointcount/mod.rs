//! Point counts of the Fermat cubic fourfold and its hyperplane sections over
//! residue-field extensions; local L-factors with functional-equation and
//! GRH diagnostics; Dirichlet coefficient tables; Ratios statistics.

pub mod cache;
pub mod coeffs;
pub mod counts;
pub mod fields;
pub mod lfactor;
pub mod ratios;

pub use cache::{ext_count_table, ExtCountTable, JsonlCache};
pub use coeffs::{acoeffs, DirichletCoeffs, PrimeLocal};
pub use counts::{count_projective_v, count_projective_vc, e_c, e_f, projective_space_count, CountMethod};
pub use fields::ResidueTower;
pub use lfactor::{lambda_v, local_lfactor, zeta_coeff, LocalLFactor};
pub use ratios::{mubar_avg, ratios_constant, ratios_empirical, MubarReport, RatiosRow, SweepMode};
