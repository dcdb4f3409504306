//! Dirichlet coefficient tables: mu_c and lambda_c from the local factors,
//! and the three-way factorization a_(c,1), a_(c,2), a_(c,3) of the good-part
//! generating series Phi^G(c, s). All coefficients are exact elements of
//! Z[sqrt(q)] with q-power denominators.
//!
//! At primes of bad reduction the inertia-invariant local factor is not
//! computed; the convention L_pi(s, c) = 1 keeps the triple product equal to
//! Phi^G exactly (whose bad local factors are 1 by definition).

use super::counts::{e_c, e_f, CountMethod};
use super::fields::ResidueTower;
use super::lfactor::elementary_from_power_sums;
use crate::algebra::{enumerate, FieldElem, FieldSpec, Poly};
use crate::expsum::expsum_direct;
use crate::geometry::{dual_eval, DiagonalCubic};
use crate::numeric::SqrtQVal;
use crate::{Budget, Result};
use std::collections::BTreeMap;

/// Exact power series in x = |pi|^(-s), truncated; entry k is the x^k
/// coefficient. All series here have constant term 1.
pub type Series = Vec<SqrtQVal>;

fn series_one(depth: usize, q: u32) -> Series {
    let mut s = vec![SqrtQVal::zero(q); depth + 1];
    s[0] = SqrtQVal::one(q);
    s
}

pub fn series_mul(a: &Series, b: &Series, depth: usize, q: u32) -> Series {
    let mut out = vec![SqrtQVal::zero(q); depth + 1];
    for i in 0..=depth.min(a.len() - 1) {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(depth - i).min(b.len() - 1) {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

pub fn series_inv(a: &Series, depth: usize, q: u32) -> Series {
    debug_assert!(a[0].eq_exact(&SqrtQVal::one(q)));
    let mut out = vec![SqrtQVal::zero(q); depth + 1];
    out[0] = SqrtQVal::one(q);
    for k in 1..=depth {
        let mut acc = SqrtQVal::zero(q);
        for l in 1..=k.min(a.len() - 1) {
            acc = acc.add(&a[l].mul(&out[k - l]));
        }
        out[k] = acc.neg();
    }
    out
}

/// Local data at one prime for the coefficient tables.
pub struct PrimeLocal {
    pub pi: Poly,
    pub deg: u32,
    pub good: bool,
    pub depth: usize,
    pub mu: Series,
    pub lambda_c: Series,
    pub a1: Series,
    pub a2: Series,
    pub a3: Series,
    pub phi_g: Series,
}

fn sign(k: usize) -> i128 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// E_F power sums over the extension tower of degree `deg`, j = 1..depth.
pub fn v_power_sums(deg: u32, depth: usize, fs: &FieldSpec, budget: &Budget) -> Result<Vec<i128>> {
    let mut p = vec![0i128; depth + 1];
    for j in 1..=depth {
        let kf = FieldSpec::make(fs.p(), fs.m() * deg * j as u32, None)?;
        p[j] = e_f(&kf, CountMethod::Charsum, budget)?;
    }
    Ok(p)
}

impl PrimeLocal {
    pub fn build(
        pi: &Poly,
        c: &[Poly; 6],
        form: &DiagonalCubic,
        depth: usize,
        fs: &FieldSpec,
        budget: &Budget,
    ) -> Result<PrimeLocal> {
        let q = fs.q();
        let deg = pi.deg_i() as u32;
        let fstar = dual_eval(form, c, fs)?;
        let good = !fstar.is_zero() && !pi.divides(&fstar, fs);

        // V-side series, needed for both good and bad primes
        let pv = v_power_sums(deg, depth, fs, budget)?;
        let ev = elementary_from_power_sums(&pv, depth)?;
        // L_pi(1/2 + s, V)^(-1): x^k coefficient (-1)^k e_k(alpha_V) |pi|^(-k/2)
        let v_inv: Series = (0..=depth)
            .map(|k| SqrtQVal::int_qhalf(sign(k) * ev[k], -5 * k as i64 * deg as i64, q))
            .collect();
        let v_fwd = series_inv(&v_inv, depth, q);
        // zeta_pi(2s) = sum x^(2k) and its inverse 1 - x^2
        let mut zeta2 = vec![SqrtQVal::zero(q); depth + 1];
        for k in (0..=depth).step_by(2) {
            zeta2[k] = SqrtQVal::one(q);
        }
        let mut zeta2_inv = series_one(depth, q);
        if depth >= 2 {
            zeta2_inv[2] = SqrtQVal::integer(-1, q);
        }

        if !good {
            let a1 = series_mul(&zeta2_inv, &v_inv, depth, q);
            let a2 = series_one(depth, q);
            let a3 = series_mul(&v_fwd, &zeta2, depth, q);
            return Ok(PrimeLocal {
                pi: pi.clone(),
                deg,
                good,
                depth,
                mu: series_one(depth, q),
                lambda_c: series_one(depth, q),
                a1,
                a2,
                a3,
                phi_g: series_one(depth, q),
            });
        }

        // c-side power sums from hyperplane-section counts
        let tower = ResidueTower::new(pi, fs, depth as u32)?;
        let mut p = vec![0i128; depth + 1];
        for j in 1..=depth {
            let level = tower.level(j as u32);
            let cred: [FieldElem; 6] =
                std::array::from_fn(|i| tower.reduce_into(&c[i], j as u32, fs));
            p[j] = -e_c(&level.field, &cred, CountMethod::Charsum, budget)?;
        }
        let e = elementary_from_power_sums(&p, depth)?;
        // mu series: b_l = (-1)^l e_l, normalized by |pi|^(-3l/2)
        let mu: Series = (0..=depth)
            .map(|l| SqrtQVal::int_qhalf(sign(l) * e[l], -3 * l as i64 * deg as i64, q))
            .collect();
        let lambda_c = series_inv(&mu, depth, q);

        // exterior-square inverse on squares: pair power sums
        // PP_k = (p_k^2 - p_(2k))/2 through Newton on the full p-range
        let depth2 = depth / 2;
        let mut wedge_inv = series_one(depth, q);
        if depth2 >= 1 {
            // extend p to 2*depth2 via the available range (p has depth >= 2*depth2)
            let mut pp = vec![0i128; depth2 + 1];
            for k in 1..=depth2 {
                let s = p[k] * p[k] - p[2 * k];
                debug_assert!(s % 2 == 0);
                pp[k] = s / 2;
            }
            let epairs = elementary_from_power_sums(&pp, depth2)?;
            for k in 1..=depth2 {
                wedge_inv[2 * k] =
                    SqrtQVal::int_qhalf(sign(k) * epairs[k], -6 * k as i64 * deg as i64, q);
            }
        }
        let wedge_fwd = series_inv(&wedge_inv, depth, q);

        // Phi^G local: 1 + S^nat_pi(c) x exactly (smooth vanishing above x^1)
        let mut phi_g = series_one(depth, q);
        if depth >= 1 {
            let s = expsum_direct(pi, c, form, fs, budget)?;
            phi_g[1] = SqrtQVal::int_qhalf(s.real_value, -7 * deg as i64, q);
        }

        let a1 = series_mul(&series_mul(&zeta2_inv, &v_inv, depth, q), &mu, depth, q);
        let a2 = series_mul(&zeta2, &wedge_inv, depth, q);
        // a3 = Phi^G * L(s,c) * L(1/2+s, V) * L(2s, c, wedge^2)
        let a3 = series_mul(
            &series_mul(&phi_g, &lambda_c, depth, q),
            &series_mul(&v_fwd, &wedge_fwd, depth, q),
            depth,
            q,
        );
        Ok(PrimeLocal { pi: pi.clone(), deg, good, depth, mu, lambda_c, a1, a2, a3, phi_g })
    }
}

/// Multiplicative tables over monic moduli |r| <= q^R.
pub struct DirichletCoeffs {
    pub c: [Poly; 6],
    pub r_bound: usize,
    pub lambda: BTreeMap<u128, SqrtQVal>,
    pub mu: BTreeMap<u128, SqrtQVal>,
    pub a1: BTreeMap<u128, SqrtQVal>,
    pub a2: BTreeMap<u128, SqrtQVal>,
    pub a3: BTreeMap<u128, SqrtQVal>,
    pub locals: Vec<PrimeLocal>,
}

pub fn acoeffs(
    c: &[Poly; 6],
    r_bound: usize,
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<DirichletCoeffs> {
    let mut locals = vec![];
    for d in 1..=r_bound {
        for pi in enumerate::irreducible_polys(d, fs) {
            let depth = r_bound / d;
            locals.push(PrimeLocal::build(&pi, c, form, depth, fs, budget)?);
        }
    }
    let by_pi: BTreeMap<u128, &PrimeLocal> =
        locals.iter().map(|pl| (pl.pi.to_index(fs), pl)).collect();
    let mut tables = DirichletCoeffs {
        c: c.clone(),
        r_bound,
        lambda: BTreeMap::new(),
        mu: BTreeMap::new(),
        a1: BTreeMap::new(),
        a2: BTreeMap::new(),
        a3: BTreeMap::new(),
        locals: vec![],
    };
    let q = fs.q();
    for r in enumerate::monic_polys_upto(r_bound, fs) {
        let fac = crate::algebra::poly_factor(&r, fs)?;
        let mut vals = [SqrtQVal::one(q); 5];
        for (pi, epow) in &fac.factors {
            let pl = by_pi[&pi.to_index(fs)];
            let l = *epow as usize;
            let local = [&pl.lambda_c[l], &pl.mu[l], &pl.a1[l], &pl.a2[l], &pl.a3[l]];
            for (v, loc) in vals.iter_mut().zip(local) {
                *v = v.mul(loc);
            }
        }
        let idx = r.to_index(fs);
        tables.lambda.insert(idx, vals[0]);
        tables.mu.insert(idx, vals[1]);
        tables.a1.insert(idx, vals[2]);
        tables.a2.insert(idx, vals[3]);
        tables.a3.insert(idx, vals[4]);
    }
    tables.locals = locals;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::expsum_crt;

    fn setup() -> (FieldSpec, DiagonalCubic, Budget) {
        (FieldSpec::make(5, 1, None).unwrap(), DiagonalCubic::fermat(6), Budget::default())
    }

    fn sample_c(fs: &FieldSpec) -> [Poly; 6] {
        [
            Poly::one(),
            Poly::parse("2", fs).unwrap(),
            Poly::parse("t+1", fs).unwrap(),
            Poly::parse("3", fs).unwrap(),
            Poly::parse("t", fs).unwrap(),
            Poly::parse("4", fs).unwrap(),
        ]
    }

    #[test]
    fn a1_at_unit_modulus_and_good_prime_identities() {
        let (fs, form, budget) = setup();
        let c = sample_c(&fs);
        let tables = acoeffs(&c, 1, &form, &fs, &budget).unwrap();
        // a_(c,1)(1) = 1
        assert!(tables.a1[&Poly::one().to_index(&fs)].eq_exact(&SqrtQVal::one(5)));
        for pl in &tables.locals {
            if !pl.good {
                continue;
            }
            // a_(c,1)(pi) = mu_c(pi) - lambda_V(pi) |pi|^(-1/2)
            let lv = super::super::lfactor::lambda_v(pl.deg, &fs, &budget).unwrap();
            let expect = pl.mu[1].sub(&lv.scale_qhalf(-(pl.deg as i64)));
            assert!(pl.a1[1].eq_exact(&expect), "pi = {}", pl.pi.display("t"));
            // a_(c,3)(pi) = 0 exactly at good primes
            assert!(pl.a3[1].is_zero(), "a3(pi) != 0 at {}", pl.pi.display("t"));
        }
    }

    #[test]
    fn a2_supported_on_squares_and_triple_product_is_phi_g() {
        let (fs, form, budget) = setup();
        let c = sample_c(&fs);
        let tables = acoeffs(&c, 2, &form, &fs, &budget).unwrap();
        for pl in &tables.locals {
            // odd coefficients of a2 vanish
            for k in (1..=pl.depth).step_by(2) {
                assert!(pl.a2[k].is_zero());
            }
            // product of the three local series equals Phi^G locally
            let prod = series_mul(
                &series_mul(&pl.a1, &pl.a2, pl.depth, 5),
                &pl.a3,
                pl.depth,
                5,
            );
            for k in 0..=pl.depth {
                assert!(prod[k].eq_exact(&pl.phi_g[k]), "k={k} pi={}", pl.pi.display("t"));
            }
        }
    }

    #[test]
    fn good_part_reassembly_identity() {
        // sum over good r with |r| = q^R of S^nat_r(c) equals the triple
        // convolution of the a_(c,j) tables at that depth
        let (fs, form, budget) = setup();
        let c = sample_c(&fs);
        let r_bound = 2usize;
        let tables = acoeffs(&c, r_bound, &form, &fs, &budget).unwrap();
        let fstar = dual_eval(&form, &c, &fs).unwrap();
        for big_r in 1..=r_bound {
            let mut lhs = SqrtQVal::zero(5);
            for r in enumerate::monic_polys(big_r, &fs) {
                if !r.gcd(&fstar, &fs).is_one() {
                    continue;
                }
                let rec = expsum_crt(&r, &c, &form, &fs, &budget).unwrap();
                lhs = lhs.add(&rec.normalized_exact(&fs));
            }
            let mut rhs = SqrtQVal::zero(5);
            for r1 in 0..=big_r {
                for r2 in 0..=(big_r - r1) {
                    let r3 = big_r - r1 - r2;
                    let s1 = sum_table_at(&tables.a1, r1, &fs);
                    let s2 = sum_table_at(&tables.a2, r2, &fs);
                    let s3 = sum_table_at(&tables.a3, r3, &fs);
                    rhs = rhs.add(&s1.mul(&s2).mul(&s3));
                }
            }
            assert!(lhs.eq_exact(&rhs), "depth {big_r}: lhs != rhs");
        }
    }

    fn sum_table_at(table: &BTreeMap<u128, SqrtQVal>, deg: usize, fs: &FieldSpec) -> SqrtQVal {
        let mut acc = SqrtQVal::zero(fs.q());
        for r in enumerate::monic_polys(deg, fs) {
            acc = acc.add(&table[&r.to_index(fs)]);
        }
        acc
    }
}
