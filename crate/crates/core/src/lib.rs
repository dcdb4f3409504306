//! Exact desk-scale computations for the function-field circle method on
//! sums of three cubes over F_q[t]: characters and Farey dissection of the
//! unit torus, complete exponential sums S_r(c) and their dual-form driven
//! vanishing rules, Hasse–Weil local factors from point counts, exact
//! oscillatory integrals and the delta-method identity, and representation
//! searches for x^3 + y^3 + z^3 = k.

pub mod algebra;
pub mod cubes;
pub mod expsum;
pub mod geometry;
pub mod localfield;
pub mod pointcount;
pub mod deltamethod;
pub mod error;
pub mod numeric;

pub use error::{Error, Result};

/// Explicit budgets for the expensive sweeps. Exceeding one is a hard,
/// distinguishable error, never a silent truncation.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Upper bound on character evaluations actually performed by a sum.
    pub max_char_evals: u64,
    /// Upper bound on quadrature cells per integral.
    pub max_cosets: u64,
    /// Upper bound on table entries held in memory (meet-in-the-middle etc).
    pub max_memory_items: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // sized for q <= 7, deg r <= 4, n <= 6
        Budget { max_char_evals: 100_000_000, max_cosets: 20_000_000, max_memory_items: 50_000_000 }
    }
}

impl Budget {
    pub fn check_char_evals(&self, need: u128, what: &str) -> Result<()> {
        if need > self.max_char_evals as u128 {
            return Err(Error::OverBudget(format!("{what}: {need} character evaluations > {}", self.max_char_evals)));
        }
        Ok(())
    }

    pub fn check_cosets(&self, need: u128, what: &str) -> Result<()> {
        if need > self.max_cosets as u128 {
            return Err(Error::OverBudget(format!("{what}: {need} quadrature cells > {}", self.max_cosets)));
        }
        Ok(())
    }

    pub fn check_memory(&self, need: u128, what: &str) -> Result<()> {
        if need > self.max_memory_items as u128 {
            return Err(Error::OverBudget(format!("{what}: {need} items > {}", self.max_memory_items)));
        }
        Ok(())
    }
}
