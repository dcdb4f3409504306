//! Representability density tables: for each degree d, the fraction of monic
//! k of degree d admitting a strict (or all-monic) representation as a sum of
//! three cubes.

use super::search::{build_pair_table, strict_cap, strict_search_with_table};
use crate::algebra::{enumerate, FieldSpec, Poly};
use crate::{Budget, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub d: usize,
    pub total: u64,
    pub representable: u64,
    pub fraction: f64,
}

/// Mode of the table: strict degree-cap representations by arbitrary x, y, z,
/// or representations with x, y, z all monic (any degrees; the monic leading
/// terms force max deg = d/3, so d must be divisible by 3 in char > 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    Strict,
    Monic,
}

pub fn density_table(
    d_max: usize,
    mode: DensityMode,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<Vec<DensityRow>> {
    let mut rows = vec![];
    for d in 0..=d_max {
        let cap = strict_cap(&Poly::t().pow(d as u64, fs));
        let table = build_pair_table(cap, fs, budget)?;
        let ks: Vec<Poly> = enumerate::monic_polys(d, fs).collect();
        budget.check_memory(ks.len() as u128, "density table degree sweep")?;
        let representable = ks
            .par_iter()
            .filter(|k| {
                let reps = strict_search_with_table(k, &table, fs);
                match mode {
                    DensityMode::Strict => !reps.is_empty(),
                    DensityMode::Monic => reps.iter().any(|r| r.monic),
                }
            })
            .count() as u64;
        let total = ks.len() as u64;
        rows.push(DensityRow { d, total, representable, fraction: representable as f64 / total as f64 });
    }
    Ok(rows)
}

/// In characteristic 3, x^3 + y^3 + z^3 = (x + y + z)^3, so the set of sums
/// of three cubes is exactly the set of cubes; used as a property check.
pub fn char3_cube_set_matches(d_max: usize, fs: &FieldSpec) -> bool {
    assert_eq!(fs.p(), 3);
    let count = (fs.q() as u128).pow(d_max as u32 + 1);
    let mut cubes = std::collections::BTreeSet::new();
    for i in 0..count {
        let c = Poly::from_index(i, fs).pow(3, fs);
        if c.deg_i() <= d_max as i64 {
            cubes.insert(c.to_index(fs));
        }
    }
    // sums x^3 + y^3 + z^3 of degree <= d_max, x,y,z of degree <= d_max
    let mut sums = std::collections::BTreeSet::new();
    for xi in 0..count {
        let x3 = Poly::from_index(xi, fs).pow(3, fs);
        for yi in 0..count {
            let y3 = Poly::from_index(yi, fs).pow(3, fs);
            let x3y3 = x3.add(&y3, fs);
            for zi in 0..count {
                let s = x3y3.add(&Poly::from_index(zi, fs).pow(3, fs), fs);
                if s.deg_i() <= d_max as i64 {
                    sums.insert(s.to_index(fs));
                }
            }
        }
    }
    cubes == sums
}
