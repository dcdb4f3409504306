//! Exact sieve-style counting experiments: the square-free Ekedahl count,
//! square-full divisors of the dual form, and the exceptional locus of bad
//! dual vectors. All counts are exact over exhaustive boxes (with a seeded
//! sampling mode when a box would blow the budget).

use super::dual::{dual_eval, DiagonalCubic};
use super::goodness::{goodness, QuadricBundle};
use super::planes::PlaneSpace;
use crate::algebra::{poly_factor, FieldSpec, Poly};
use crate::{Budget, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SieveRow {
    pub experiment: String,
    pub params: String,
    pub total: u64,
    pub count: u64,
    pub bound_reference: String,
}

/// Count pairs (c1, c2) with deg <= z admitting a square-free monic r with
/// |r| = q^y dividing gcd(c1, c2). The Ekedahl-sieve shadow with
/// (H0, H1) = (c1, c2).
pub fn weird_eke_count(z: usize, y: usize, fs: &FieldSpec, budget: &Budget) -> Result<SieveRow> {
    let box_size = (fs.q() as u128).pow(z as u32 + 1);
    budget.check_memory(box_size * box_size, "weird-eke box")?;
    let mut count = 0u64;
    let mut total = 0u64;
    for i1 in 0..box_size {
        let c1 = Poly::from_index(i1, fs);
        for i2 in 0..box_size {
            let c2 = Poly::from_index(i2, fs);
            total += 1;
            let g = c1.gcd(&c2, fs);
            if g.is_zero() {
                // c = (0,0): every r divides; count if a square-free monic of
                // degree y exists at all
                if has_squarefree_monic_of_degree(y, fs) {
                    count += 1;
                }
                continue;
            }
            if g.deg_i() < y as i64 {
                continue;
            }
            if has_squarefree_divisor_of_degree(&g, y, fs)? {
                count += 1;
            }
        }
    }
    Ok(SieveRow {
        experiment: "weird-eke".into(),
        params: format!("z={z},y={y},q={}", fs.q()),
        total,
        count,
        bound_reference: "O_eps(q^(eps y) (T^n / q^y + T^(n-1))), n = 2".into(),
    })
}

fn has_squarefree_monic_of_degree(y: usize, fs: &FieldSpec) -> bool {
    // q^y - q^(y-1) > 0 square-free monics exist for every y >= 0 over F_q
    let _ = fs;
    let _ = y;
    true
}

fn has_squarefree_divisor_of_degree(g: &Poly, y: usize, fs: &FieldSpec) -> Result<bool> {
    if y == 0 {
        return Ok(true);
    }
    let fac = poly_factor(g, fs)?;
    // subset-sum over distinct prime degrees
    let degs: Vec<usize> = fac.factors.iter().map(|(p, _)| p.deg_i() as usize).collect();
    let mut reach = vec![false; y + 1];
    reach[0] = true;
    for d in degs {
        for k in (0..=y).rev() {
            if reach[k] && k + d <= y {
                reach[k + d] = true;
            }
        }
    }
    Ok(reach[y])
}

/// Count c in the dual lattice box (entries of degree <= z) whose dual form
/// value F*(c*) admits a square-full divisor of absolute value q^m. Exhaustive
/// when the box fits the budget, else seeded sampling.
pub fn squarefull_divisor_count(
    form: &DiagonalCubic,
    z: usize,
    m: usize,
    sample: Option<(u64, u64)>,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<SieveRow> {
    let coord = (fs.q() as u128).pow(z as u32 + 1);
    let box_size = coord.pow(3);
    let mut rng;
    let (iterations, sampled) = match sample {
        Some((n, seed)) => {
            rng = ChaCha8Rng::seed_from_u64(seed);
            (n as u128, true)
        }
        None => {
            budget.check_memory(box_size, "squarefull-divisor box")?;
            rng = ChaCha8Rng::seed_from_u64(0);
            (box_size, false)
        }
    };
    let mut count = 0u64;
    let mut total = 0u64;
    for it in 0..iterations {
        let cidx: [u128; 3] = if sampled {
            std::array::from_fn(|_| rng.random_range(0..coord))
        } else {
            [it % coord, (it / coord) % coord, it / (coord * coord)]
        };
        let c: Vec<Poly> = cidx.iter().map(|&i| Poly::from_index(i, fs)).collect();
        let c_star =
            vec![c[0].clone(), c[1].clone(), c[2].clone(), c[0].clone(), c[1].clone(), c[2].clone()];
        if c.iter().any(|ci| ci.is_zero()) {
            continue;
        }
        let fstar = dual_eval(form, &c_star, fs)?;
        if fstar.is_zero() {
            continue;
        }
        total += 1;
        if has_squarefull_divisor_of_degree(&fstar, m, fs)? {
            count += 1;
        }
    }
    Ok(SieveRow {
        experiment: "squarefull-divisor".into(),
        params: format!("z={z},m={m},q={},sampled={sampled}", fs.q()),
        total,
        count,
        bound_reference: "NQR-style rarity of large square-full divisors".into(),
    })
}

fn has_squarefull_divisor_of_degree(g: &Poly, m: usize, fs: &FieldSpec) -> Result<bool> {
    if m == 0 {
        return Ok(true);
    }
    let fac = poly_factor(g, fs)?;
    // achievable degrees from exponents >= 2 of each prime: per prime pi with
    // v_pi >= 2 can contribute any e in {0, 2..v} times deg pi
    let mut reach = vec![false; m + 1];
    reach[0] = true;
    for (pi, v) in &fac.factors {
        if *v < 2 {
            continue;
        }
        let d = pi.deg_i() as usize;
        let mut next = reach.clone();
        for e in 2..=*v as usize {
            let add = e * d;
            for k in 0..=m {
                if reach[k] && k + add <= m {
                    next[k + add] = true;
                }
            }
        }
        reach = next;
    }
    Ok(reach[m])
}

/// Exceptional locus: c in the dual lattice box with c1 c2 c3 disc(g_c) = 0.
pub fn exceptional_locus_count(
    form: &DiagonalCubic,
    bundle: &QuadricBundle,
    upsilon: &[PlaneSpace],
    z: usize,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<SieveRow> {
    let coord = (fs.q() as u128).pow(z as u32 + 1);
    let box_size = coord.pow(3);
    budget.check_memory(box_size, "exceptional-locus box")?;
    let mut count = 0u64;
    let mut total = 0u64;
    for it in 0..box_size {
        let cidx = [it % coord, (it / coord) % coord, it / (coord * coord)];
        let c: [Poly; 3] = std::array::from_fn(|k| Poly::from_index(cidx[k], fs));
        if c.iter().all(|ci| ci.is_zero()) {
            continue;
        }
        total += 1;
        if c.iter().any(|ci| ci.is_zero()) {
            count += 1;
            continue;
        }
        let rep = goodness(form, bundle, upsilon, &c, fs)?;
        if rep.disc.is_zero() {
            count += 1;
        }
    }
    Ok(SieveRow {
        experiment: "exceptional-locus".into(),
        params: format!("z={z},q={}", fs.q()),
        total,
        count,
        bound_reference: "O_eps(C^(2+eps)) over the box of size C^3".into(),
    })
}

/// Dispatch by experiment name (the CLI surface).
pub fn sieve_counts(
    name: &str,
    form: &DiagonalCubic,
    bundle: Option<&QuadricBundle>,
    upsilon: &[PlaneSpace],
    params: &std::collections::BTreeMap<String, u64>,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<SieveRow> {
    let get = |k: &str, d: u64| params.get(k).copied().unwrap_or(d);
    match name {
        "weird-eke" => weird_eke_count(get("z", 1) as usize, get("y", 1) as usize, fs, budget),
        "squarefull-divisor" => {
            let sample = params.get("sample").map(|&n| (n, get("seed", 0)));
            squarefull_divisor_count(form, get("z", 0) as usize, get("m", 2) as usize, sample, fs, budget)
        }
        "exceptional-locus" => {
            let bundle = bundle.ok_or_else(|| Error::DomainError("bundle required".into()))?;
            exceptional_locus_count(form, bundle, upsilon, get("z", 0) as usize, fs, budget)
        }
        other => Err(Error::UnknownExperiment(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weird_eke_tiny_cases() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let budget = Budget::default();
        // Y so large nothing qualifies
        let row = weird_eke_count(0, 4, &fs, &budget).unwrap();
        assert_eq!(row.count, 1); // only c = (0, 0) (gcd zero catches every r)
        // the spec instance: z = 1, y = 1: count pairs with a common monic
        // square-free divisor of degree 1; verified against a direct scan
        let row = weird_eke_count(1, 1, &fs, &budget).unwrap();
        let mut direct = 0u64;
        for i1 in 0..25u128 {
            for i2 in 0..25u128 {
                let c1 = Poly::from_index(i1, &fs);
                let c2 = Poly::from_index(i2, &fs);
                let mut found = false;
                for ridx in 0..5u128 {
                    let r = {
                        let mut p = Poly::from_index(ridx, &fs);
                        p = p.add(&Poly::t(), &fs);
                        p
                    };
                    if r.divides(&c1, &fs) && r.divides(&c2, &fs) {
                        found = true;
                        break;
                    }
                }
                if found {
                    direct += 1;
                }
            }
        }
        assert_eq!(row.count, direct);
    }

    #[test]
    fn squarefull_divisor_degenerate_box() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        let budget = Budget::default();
        // constants only: F*(c) is a unit, so no square-full divisor of size q^2
        let row = squarefull_divisor_count(&form, 0, 2, None, &fs, &budget).unwrap();
        assert_eq!(row.count, 0);
        // m = 0 counts everything with nonzero dual form
        let row0 = squarefull_divisor_count(&form, 0, 0, None, &fs, &budget).unwrap();
        assert_eq!(row0.count, row0.total);
    }
}
