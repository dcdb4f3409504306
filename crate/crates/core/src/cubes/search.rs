//! Meet-in-the-middle searches for x^3 + y^3 + z^3 = k with the strict
//! degree cap max deg <= ceil(deg k / 3). Collision buckets are verified
//! exactly, so the counts are exact.

use crate::algebra::{FieldSpec, Poly};
use crate::{Budget, Result};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    #[serde(serialize_with = "crate::expsum::ser_poly")]
    pub k: Poly,
    #[serde(serialize_with = "crate::expsum::ser_polys")]
    pub xyz: Vec<Poly>,
    pub strict: bool,
    pub monic: bool,
}

impl Representation {
    fn recompute_flags(k: &Poly, xyz: &[Poly; 3], fs: &FieldSpec) -> Representation {
        let cap = strict_cap(k);
        let strict = xyz.iter().all(|x| x.deg_i() <= cap);
        let monic = xyz.iter().all(|x| x.is_monic());
        let _ = fs;
        Representation { k: k.clone(), xyz: xyz.to_vec(), strict, monic }
    }
}

/// ceil(deg k / 3); deg 0 and the zero polynomial cap at 0.
pub fn strict_cap(k: &Poly) -> i64 {
    let d = k.deg_i().max(0);
    (d + 2) / 3
}

/// Pair table: x^3 + y^3 keyed by index, for all x, y of degree <= cap
/// (optionally +relax). Shared across probes of the same degree class.
pub struct PairTable {
    pub cap: i64,
    map: HashMap<u128, Vec<(u128, u128)>>,
}

pub fn build_pair_table(cap: i64, fs: &FieldSpec, budget: &Budget) -> Result<PairTable> {
    let coord = (fs.q() as u128).pow(cap as u32 + 1);
    budget.check_memory(coord * coord, "meet-in-the-middle pair table")?;
    let mut map: HashMap<u128, Vec<(u128, u128)>> = HashMap::new();
    let cubes: Vec<Poly> = (0..coord).map(|i| Poly::from_index(i, fs).pow(3, fs)).collect();
    for xi in 0..coord {
        for yi in xi..coord {
            let s = cubes[xi as usize].add(&cubes[yi as usize], fs);
            map.entry(s.to_index(fs)).or_default().push((xi, yi));
        }
    }
    Ok(PairTable { cap, map })
}

/// All strict representations of k, deduplicated up to permutation
/// (triples reported sorted by (degree, index)).
pub fn strict_search(k: &Poly, fs: &FieldSpec, budget: &Budget) -> Result<Vec<Representation>> {
    let cap = strict_cap(k);
    let table = build_pair_table(cap, fs, budget)?;
    Ok(strict_search_with_table(k, &table, fs))
}

pub fn strict_search_with_table(k: &Poly, table: &PairTable, fs: &FieldSpec) -> Vec<Representation> {
    let coord = (fs.q() as u128).pow(table.cap as u32 + 1);
    let mut seen: std::collections::BTreeSet<[u128; 3]> = Default::default();
    let mut out = vec![];
    for zi in 0..coord {
        let z = Poly::from_index(zi, fs);
        let target = k.sub(&z.pow(3, fs), fs);
        let Some(bucket) = table.map.get(&target.to_index(fs)) else { continue };
        for &(xi, yi) in bucket {
            let x = Poly::from_index(xi, fs);
            let y = Poly::from_index(yi, fs);
            // exact verification of the collision
            let sum = x.pow(3, fs).add(&y.pow(3, fs), fs).add(&z.pow(3, fs), fs);
            if &sum != k {
                continue;
            }
            let mut key = [xi, yi, zi];
            key.sort_unstable_by(|a, b| {
                let pa = Poly::from_index(*a, fs);
                let pb = Poly::from_index(*b, fs);
                pa.canonical_cmp(&pb)
            });
            if seen.insert(key) {
                let xyz = [
                    Poly::from_index(key[0], fs),
                    Poly::from_index(key[1], fs),
                    Poly::from_index(key[2], fs),
                ];
                out.push(Representation::recompute_flags(k, &xyz, fs));
            }
        }
    }
    out
}
