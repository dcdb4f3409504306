//! Sums of three cubes over F_q[t]: linear (Vaserstein-style) solutions,
//! strict and monic representation searches by meet-in-the-middle, density
//! tables, and the boundary counting function N(P).

pub mod density;
pub mod np;
pub mod search;
pub mod vaserstein;

pub use density::{density_table, DensityRow};
pub use np::{count_np, NpReport};
pub use search::{strict_search, Representation};
pub use vaserstein::{vaserstein_solve, LinearSolution};
