//! Exact point counts of the Fermat cubic fourfold V and its hyperplane
//! sections V_c over finite fields, by brute force or by the character-sum
//! method.
//!
//! The charsum route expands the hyperplane/hypersurface indicators with
//! additive characters; for the diagonal form the x-sum factorizes per
//! coordinate into T_a(beta) = sum_x zeta^Tr(a x^3 + beta x), and the
//! (a, b)-double sum collapses along the orbits (a, b) ~ (a b^-3, b) of the
//! scaling action, leaving O(Q) evaluated T-products per count.

use crate::algebra::{FieldElem, FieldSpec};
use crate::localfield::CycInt;
use crate::{Budget, Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    Brute,
    Charsum,
}

/// #P^d(F_Q) = (Q^(d+1) - 1)/(Q - 1).
pub fn projective_space_count(q: u128, dim: u32) -> u128 {
    (q.pow(dim + 1) - 1) / (q - 1)
}

struct CubeTables {
    /// tr_cube[a][?]: not materialized; we keep cube[x] = x^3 and trace tables
    cube: Vec<FieldElem>,
}

fn cube_table(fs: &FieldSpec) -> CubeTables {
    let cube = fs.elements().map(|x| fs.mul(fs.mul(x, x), x)).collect();
    CubeTables { cube }
}

/// T_a(beta) for the handful of beta values needed at a fixed a, plus
/// T_a(0), accumulated as exact cyclotomic integers.
fn t_values(
    fs: &FieldSpec,
    tables: &CubeTables,
    a: FieldElem,
    betas: &[FieldElem],
) -> (CycInt, Vec<CycInt>) {
    let p = fs.p();
    let q = fs.q() as usize;
    // tr(a x^3) table once per a
    let mut tr_ax3 = vec![0u32; q];
    for x in 0..q {
        tr_ax3[x] = fs.trace_to_prime(fs.mul(a, tables.cube[x]));
    }
    let mut t0 = CycInt::zero(p);
    for x in 0..q {
        t0.bump(tr_ax3[x]);
    }
    let mut out = Vec::with_capacity(betas.len());
    for &beta in betas {
        let mut acc = CycInt::zero(p);
        if beta.is_zero() {
            out.push(t0.clone().into_canonical());
            continue;
        }
        for x in 0..q {
            let e = (tr_ax3[x] + fs.trace_to_prime(fs.mul(beta, FieldElem(x as u32)))) % p;
            acc.bump(e);
        }
        out.push(acc.into_canonical());
    }
    (t0.into_canonical(), out)
}

/// Affine count #{x in F_Q^6 : sum x_i^3 = 0} by character sums.
pub fn affine_count_v_charsum(fs: &FieldSpec, budget: &Budget) -> Result<u128> {
    let q = fs.q() as u128;
    budget.check_char_evals(q * q * 2, "affine_count_v_charsum")?;
    let tables = cube_table(fs);
    let mut total = CycInt::integer((q as i128).pow(6), fs.p());
    for a in fs.elements().skip(1) {
        let (t0, _) = t_values(fs, &tables, a, &[]);
        // T_a(0)^6
        let t2 = t0.mul(&t0);
        let t4 = t2.mul(&t2);
        total = total.add(&t4.mul(&t2));
    }
    let val = total.as_integer().ok_or_else(|| {
        Error::IntegralityFailure("V-count character sum is not an integer".into())
    })?;
    let q1 = q as i128;
    if val % q1 != 0 || val < 0 {
        return Err(Error::IntegralityFailure("V-count not divisible by Q".into()));
    }
    Ok((val / q1) as u128)
}

/// Affine count #{x in F_Q^6 : sum x_i^3 = 0, c.x = 0} by character sums.
pub fn affine_count_vc_charsum(fs: &FieldSpec, c: &[FieldElem; 6], budget: &Budget) -> Result<u128> {
    let q = fs.q() as u128;
    budget.check_char_evals(q * q * 8, "affine_count_vc_charsum")?;
    let tables = cube_table(fs);
    let c_zero = c.iter().all(|x| x.is_zero());
    let mut total = CycInt::integer((q as i128).pow(6), fs.p());
    if c_zero {
        total = total.mul_int(q as i128); // all b contribute when c = 0
    }
    let mut orbit_sum = CycInt::zero(fs.p());
    let mut b0_sum = CycInt::zero(fs.p());
    for a in fs.elements().skip(1) {
        let (t0, tc) = t_values(fs, &tables, a, c);
        let t2 = t0.mul(&t0);
        let t4 = t2.mul(&t2);
        b0_sum = b0_sum.add(&t4.mul(&t2));
        if !c_zero {
            let mut prod = tc[0].clone();
            for ti in &tc[1..] {
                prod = prod.mul(ti);
                if prod.is_zero() {
                    break;
                }
            }
            orbit_sum = orbit_sum.add(&prod);
        }
    }
    total = total.add(&b0_sum);
    if c_zero {
        total = total.add(&b0_sum.mul_int(q as i128 - 1));
    } else {
        total = total.add(&orbit_sum.mul_int(q as i128 - 1));
    }
    let val = total.as_integer().ok_or_else(|| {
        Error::IntegralityFailure("V_c-count character sum is not an integer".into())
    })?;
    let q2 = (q as i128).pow(2);
    if val % q2 != 0 || val < 0 {
        return Err(Error::IntegralityFailure("V_c-count not divisible by Q^2".into()));
    }
    Ok((val / q2) as u128)
}

/// Brute-force affine counts; the oracle for the charsum path.
pub fn affine_count_v_brute(fs: &FieldSpec, budget: &Budget) -> Result<u128> {
    let q = fs.q() as u128;
    budget.check_char_evals(q.pow(6), "affine_count_v_brute")?;
    let tables = cube_table(fs);
    let q_us = fs.q() as usize;
    // meet in the middle over 3 + 3 coordinates: N = sum_s n3(s) n3(-s)
    let mut n3 = vec![0u64; q_us];
    for x in 0..q_us {
        for y in 0..q_us {
            for z in 0..q_us {
                let s = fs.add(
                    fs.add(tables.cube[x], tables.cube[y]),
                    tables.cube[z],
                );
                n3[s.0 as usize] += 1;
            }
        }
    }
    let mut total = 0u128;
    for s in fs.elements() {
        let neg = fs.neg(s);
        total += n3[s.0 as usize] as u128 * n3[neg.0 as usize] as u128;
    }
    Ok(total)
}

pub fn affine_count_vc_brute(fs: &FieldSpec, c: &[FieldElem; 6], budget: &Budget) -> Result<u128> {
    let q = fs.q() as u128;
    budget.check_char_evals(q.pow(6), "affine_count_vc_brute")?;
    let q_us = fs.q() as usize;
    let tables = cube_table(fs);
    // split coordinates 0..3 and 3..6: key (cube-sum, linear-sum)
    let mut half = vec![0u64; q_us * q_us];
    for x in 0..q_us {
        for y in 0..q_us {
            for z in 0..q_us {
                let s = fs.add(fs.add(tables.cube[x], tables.cube[y]), tables.cube[z]);
                let l = fs.add(
                    fs.add(
                        fs.mul(c[0], FieldElem(x as u32)),
                        fs.mul(c[1], FieldElem(y as u32)),
                    ),
                    fs.mul(c[2], FieldElem(z as u32)),
                );
                half[s.0 as usize * q_us + l.0 as usize] += 1;
            }
        }
    }
    let mut half2 = vec![0u64; q_us * q_us];
    for x in 0..q_us {
        for y in 0..q_us {
            for z in 0..q_us {
                let s = fs.add(fs.add(tables.cube[x], tables.cube[y]), tables.cube[z]);
                let l = fs.add(
                    fs.add(
                        fs.mul(c[3], FieldElem(x as u32)),
                        fs.mul(c[4], FieldElem(y as u32)),
                    ),
                    fs.mul(c[5], FieldElem(z as u32)),
                );
                half2[s.0 as usize * q_us + l.0 as usize] += 1;
            }
        }
    }
    let mut total = 0u128;
    for s in 0..q_us {
        let ns = fs.neg(FieldElem(s as u32)).0 as usize;
        for l in 0..q_us {
            let nl = fs.neg(FieldElem(l as u32)).0 as usize;
            total += half[s * q_us + l] as u128 * half2[ns * q_us + nl] as u128;
        }
    }
    Ok(total)
}

/// Projective count of a cone: (affine - 1)/(Q - 1), with integrality check.
fn cone_to_projective(affine: u128, q: u128) -> Result<u128> {
    if affine == 0 || (affine - 1) % (q - 1) != 0 {
        return Err(Error::IntegralityFailure("cone count not congruent to 1 mod Q-1".into()));
    }
    Ok((affine - 1) / (q - 1))
}

/// Exact projective count of V (the Fermat cubic fourfold) over F_Q.
pub fn count_projective_v(fs: &FieldSpec, method: CountMethod, budget: &Budget) -> Result<u128> {
    let affine = match method {
        CountMethod::Brute => affine_count_v_brute(fs, budget)?,
        CountMethod::Charsum => affine_count_v_charsum(fs, budget)?,
    };
    cone_to_projective(affine, fs.q() as u128)
}

/// Exact projective count of the hyperplane section V_c over F_Q; c must be
/// nonzero for V_c to be a threefold.
pub fn count_projective_vc(
    fs: &FieldSpec,
    c: &[FieldElem; 6],
    method: CountMethod,
    budget: &Budget,
) -> Result<u128> {
    let affine = match method {
        CountMethod::Brute => affine_count_vc_brute(fs, c, budget)?,
        CountMethod::Charsum => affine_count_vc_charsum(fs, c, budget)?,
    };
    cone_to_projective(affine, fs.q() as u128)
}

/// Point-count errors E and their exact normalized forms.
#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub j: u32,
    pub n_projective: u128,
    pub e: i128,
}

impl CountRow {
    /// E^nat as a float diagnostic; exactness lives in `e`.
    pub fn enorm(&self, q_level: u128, weight_half: u32) -> f64 {
        self.e as f64 / (q_level as f64).powf(weight_half as f64 / 2.0)
    }
}

/// E_F(F_Q) = #V(F_Q) - #P^4(F_Q).
pub fn e_f(fs: &FieldSpec, method: CountMethod, budget: &Budget) -> Result<i128> {
    let n = count_projective_v(fs, method, budget)?;
    Ok(n as i128 - projective_space_count(fs.q() as u128, 4) as i128)
}

/// E_c(F_Q) = #V_c(F_Q) - #P^3(F_Q).
pub fn e_c(fs: &FieldSpec, c: &[FieldElem; 6], method: CountMethod, budget: &Budget) -> Result<i128> {
    let n = count_projective_vc(fs, c, method, budget)?;
    Ok(n as i128 - projective_space_count(fs.q() as u128, 3) as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_counts() {
        assert_eq!(projective_space_count(5, 4), 781);
        assert_eq!(projective_space_count(5, 3), 156);
    }

    #[test]
    fn v_count_brute_equals_charsum() {
        let budget = Budget::default();
        for q in [5u32, 7] {
            let fs = FieldSpec::make(q, 1, None).unwrap();
            let b = count_projective_v(&fs, CountMethod::Brute, &budget).unwrap();
            let c = count_projective_v(&fs, CountMethod::Charsum, &budget).unwrap();
            assert_eq!(b, c);
        }
        // extension field F_25 too (the brute precondition q^6 needs a wider budget)
        let fs = FieldSpec::make(5, 2, None).unwrap();
        let mut big = Budget::default();
        big.max_char_evals = 500_000_000;
        let b = count_projective_v(&fs, CountMethod::Brute, &big).unwrap();
        let c = count_projective_v(&fs, CountMethod::Charsum, &big).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn vc_count_brute_equals_charsum_f5() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let budget = Budget::default();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let c: [FieldElem; 6] = std::array::from_fn(|_| FieldElem(rng.random_range(0..5)));
            let b = affine_count_vc_brute(&fs, &c, &budget).unwrap();
            let ch = affine_count_vc_charsum(&fs, &c, &budget).unwrap();
            assert_eq!(b, ch, "c = {c:?}");
        }
        // the all-ones hyperplane over F_25 (spec example j = 2)
        let fs25 = FieldSpec::make(5, 2, None).unwrap();
        let ones = [FieldElem::ONE; 6];
        let mut big = Budget::default();
        big.max_char_evals = 500_000_000;
        let b = affine_count_vc_brute(&fs25, &ones, &big).unwrap();
        let ch = affine_count_vc_charsum(&fs25, &ones, &big).unwrap();
        assert_eq!(b, ch);
    }

    #[test]
    fn ramanujan_bounds_at_good_primes() {
        // |E_c| <= 10 Q^(3/2) and |E_F| <= 22 Q^2 for smooth sections, i.e.
        // when the dual form does not vanish; exact integer inequalities.
        use crate::algebra::Poly;
        use crate::geometry::{dual_eval, DiagonalCubic};
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let budget = Budget::default();
        let form = DiagonalCubic::fermat(6);
        let ef = e_f(&fs, CountMethod::Charsum, &budget).unwrap();
        assert!(ef * ef <= 22 * 22 * 5i128.pow(4));
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let mut good = 0;
        while good < 80 {
            let c: [FieldElem; 6] = std::array::from_fn(|_| FieldElem(rng.random_range(0..5)));
            let cp: Vec<Poly> = c.iter().map(|&x| Poly::constant(x)).collect();
            if dual_eval(&form, &cp, &fs).unwrap().is_zero() {
                continue;
            }
            good += 1;
            let ec = e_c(&fs, &c, CountMethod::Charsum, &budget).unwrap();
            assert!(ec * ec <= 100 * 5i128.pow(3), "c = {c:?}");
        }
    }
}
