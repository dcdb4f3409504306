//! The bias-corrected coefficients S_{r,0}(c): the r-th coefficients of
//! Phi(c, s) / Psi(s), computed through the divisor convolution
//! S_{r,0}(c) = sum_{d0 d1 d2 = r} mu(d0) |d0|^(1/2) |d1|^(-1/2) S^nat_{d2}(c).

use super::eval::expsum_direct;
use crate::algebra::{poly_factor, FieldSpec, Poly};
use crate::geometry::DiagonalCubic;
use crate::numeric::SqrtQVal;
use crate::{Budget, Result};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct BiasRecord {
    pub r: Poly,
    pub c: [Poly; 3],
    /// exact value of S_{r,0}(c*)
    pub value: SqrtQVal,
    /// number of divisor triples in the convolution
    pub triples: usize,
}

/// All monic divisors of r from its factorization.
pub fn divisors(r: &Poly, fs: &FieldSpec) -> Result<Vec<Poly>> {
    let fac = poly_factor(r, fs)?;
    let mut divs = vec![Poly::one()];
    for (pi, e) in &fac.factors {
        let mut next = vec![];
        let mut power = Poly::one();
        for _ in 0..=*e {
            for d in &divs {
                next.push(d.mul(&power, fs));
            }
            power = power.mul(pi, fs);
        }
        divs = next;
    }
    Ok(divs)
}

fn moebius_k(d: &Poly, fs: &FieldSpec) -> Result<i128> {
    if d.is_one() {
        return Ok(1);
    }
    let fac = poly_factor(d, fs)?;
    if fac.factors.iter().any(|(_, e)| *e >= 2) {
        return Ok(0);
    }
    Ok(if fac.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// S_{r,0}(c) for c = (c1, c2, c3) representing c* = (c1,c2,c3,c1,c2,c3).
pub fn s_r0(r: &Poly, c: &[Poly; 3], fs: &FieldSpec, budget: &Budget) -> Result<BiasRecord> {
    let form = DiagonalCubic::fermat(6);
    let c_star =
        vec![c[0].clone(), c[1].clone(), c[2].clone(), c[0].clone(), c[1].clone(), c[2].clone()];
    let divs = divisors(r, fs)?;
    // memoized normalized sums per divisor
    let mut snat: BTreeMap<u128, SqrtQVal> = BTreeMap::new();
    for d in &divs {
        let rec = expsum_direct(d, &c_star, &form, fs, budget)?;
        snat.insert(d.to_index(fs), rec.normalized_exact(fs));
    }
    let mut total = SqrtQVal::zero(fs.q());
    let mut triples = 0usize;
    for d0 in &divs {
        let mu = moebius_k(d0, fs)?;
        if mu == 0 {
            continue;
        }
        let (rest, rem) = r.divrem(d0, fs);
        debug_assert!(rem.is_zero());
        for d2 in divisors(&rest, fs)? {
            let d1 = rest.divrem(&d2, fs).0;
            triples += 1;
            // mu(d0) |d0|^(1/2) |d1|^(-1/2) S^nat_{d2}
            let term = snat[&d2.to_index(fs)]
                .scale_qhalf(d0.deg_i().max(0) - d1.deg_i().max(0))
                .mul_int(mu);
            total = total.add(&term);
        }
    }
    Ok(BiasRecord { r: r.clone(), c: c.clone(), value: total, triples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate;

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn s_r0_of_one_is_one() {
        let fs = f5();
        let c = [Poly::one(), Poly::t(), Poly::parse("t+1", &fs).unwrap()];
        let rec = s_r0(&Poly::one(), &c, &fs, &Budget::default()).unwrap();
        assert!(rec.value.eq_exact(&SqrtQVal::one(5)));
    }

    #[test]
    fn prime_formula() {
        // S_{pi,0}(c) = -|pi|^(1/2) + |pi|^(-1/2) + S^nat_pi(c)
        let fs = f5();
        let budget = Budget::default();
        let form = DiagonalCubic::fermat(6);
        let pi = Poly::t();
        let c = [Poly::one(), Poly::parse("t+2", &fs).unwrap(), Poly::parse("2", &fs).unwrap()];
        let c_star = vec![c[0].clone(), c[1].clone(), c[2].clone(), c[0].clone(), c[1].clone(), c[2].clone()];
        let rec = s_r0(&pi, &c, &fs, &budget).unwrap();
        let snat = expsum_direct(&pi, &c_star, &form, &fs, &budget).unwrap().normalized_exact(&fs);
        let expect = SqrtQVal::int_qhalf(-1, 1, 5)
            .add(&SqrtQVal::int_qhalf(1, -1, 5))
            .add(&snat);
        assert!(rec.value.eq_exact(&expect));
    }

    #[test]
    fn multiplicative_and_residue_dependent() {
        let fs = f5();
        let budget = Budget::default();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..12 {
            let r1 = Poly::parse("t", &fs).unwrap();
            let r2 = Poly::parse("t+1", &fs).unwrap();
            let r = r1.mul(&r2, &fs);
            let c: [Poly; 3] = std::array::from_fn(|_| Poly::from_index(rng.random_range(0..125), &fs));
            let v = s_r0(&r, &c, &fs, &budget).unwrap().value;
            let v1 = s_r0(&r1, &c, &fs, &budget).unwrap().value;
            let v2 = s_r0(&r2, &c, &fs, &budget).unwrap().value;
            assert!(v.eq_exact(&v1.mul(&v2)), "multiplicativity");
            // shift c by r * k: S_{r,0} unchanged
            let k: [Poly; 3] = std::array::from_fn(|_| Poly::from_index(rng.random_range(0..25), &fs));
            let shifted: [Poly; 3] = std::array::from_fn(|i| c[i].add(&r.mul(&k[i], &fs), &fs));
            let vs = s_r0(&r, &shifted, &fs, &budget).unwrap().value;
            assert!(v.eq_exact(&vs), "dependence on c mod r only");
        }
    }

    #[test]
    fn mean_zero_over_dual_residues_degree_one() {
        // E_{c in Lambda0^perp / pi} [S_{pi,0}(c)] = 0 for every deg-1 prime
        let fs = f5();
        let budget = Budget::default();
        for pi in enumerate::irreducible_polys(1, &fs) {
            let mut acc = SqrtQVal::zero(5);
            for idx in 0..125u128 {
                let c = [
                    Poly::from_index(idx % 5, &fs),
                    Poly::from_index(idx / 5 % 5, &fs),
                    Poly::from_index(idx / 25, &fs),
                ];
                acc = acc.add(&s_r0(&pi, &c, &fs, &budget).unwrap().value);
            }
            assert!(acc.is_zero(), "mean-zero fails at pi = {}", pi.display("t"));
        }
    }
}
