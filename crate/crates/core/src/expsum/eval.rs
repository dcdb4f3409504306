//! Exact evaluation of the complete exponential sums
//! S_r(c) = sum'_a sum_{x mod r} psi((a F(x) - c.x)/r) for diagonal F.
//!
//! The x-sum factors through the coordinates, so the cost is
//! phi(r) * n * |r| character evaluations instead of phi(r) * |r|^n; the
//! budget counts the evaluations actually performed.

use crate::algebra::{poly_factor, FieldSpec, Poly};
use crate::geometry::DiagonalCubic;
use crate::localfield::{CycInt, PsiTable};
use crate::numeric::SqrtQVal;
use crate::{Budget, Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Direct,
    Crt,
    PointCount,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpSumRecord {
    #[serde(serialize_with = "crate::expsum::ser_poly")]
    pub r: Poly,
    #[serde(serialize_with = "crate::expsum::ser_polys")]
    pub c: Vec<Poly>,
    pub n: usize,
    #[serde(skip)]
    pub value: CycInt,
    /// the sum collapses to a rational integer (Galois invariance)
    pub real_value: i128,
    /// |r|^(-(n+1)/2) * real_value, float diagnostic
    pub normalized: f64,
    pub method: Method,
}

impl ExpSumRecord {
    fn from_value(r: &Poly, c: &[Poly], value: CycInt, method: Method, fs: &FieldSpec) -> Result<ExpSumRecord> {
        if !value.is_real() {
            return Err(Error::RealnessFailure(format!(
                "S_r(c) failed the conjugation-palindrome test: r = {}",
                r.display("t")
            )));
        }
        let real_value = value.as_integer().ok_or_else(|| {
            Error::RealnessFailure(format!(
                "S_r(c) is real but not a rational integer: r = {}",
                r.display("t")
            ))
        })?;
        let nn = c.len();
        let normalized = self_normalized(real_value, r, nn, fs).to_f64();
        Ok(ExpSumRecord { r: r.clone(), c: c.to_vec(), n: nn, value, real_value, normalized, method })
    }

    /// Exact normalized value S^nat = real_value * q^(-(n+1) deg r / 2).
    pub fn normalized_exact(&self, fs: &FieldSpec) -> SqrtQVal {
        self_normalized(self.real_value, &self.r, self.n, fs)
    }
}

fn self_normalized(real_value: i128, r: &Poly, n: usize, fs: &FieldSpec) -> SqrtQVal {
    SqrtQVal::int_qhalf(real_value, -((n as i64 + 1) * r.deg_i().max(0)), fs.q())
}

/// Direct evaluation over all coprime a and all residues x, per coordinate.
pub fn expsum_direct(
    r: &Poly,
    c: &[Poly],
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<ExpSumRecord> {
    assert_eq!(c.len(), form.n);
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if !r.is_monic() {
        return Err(Error::DomainError("modulus must be monic".into()));
    }
    let size_u = r.abs(fs);
    budget.check_memory(size_u * 8, "expsum residue tables")?;
    let size = size_u as usize;
    let p = fs.p();

    // evaluations actually performed: one per (a, i, x) plus table builds
    let phi_bound = size_u; // phi(r) <= |r|
    budget.check_char_evals(phi_bound * size_u * (form.n as u128 + 2), "expsum_direct")?;

    let tau = PsiTable::build(r, fs)?;

    // residue arithmetic through indices
    let residues: Vec<Poly> = (0..size as u128).map(|i| Poly::from_index(i, fs)).collect();
    let mulmod_idx =
        |x: &Poly, y: &Poly| -> usize { x.mul(y, fs).rem(r, fs).to_index(fs) as usize };

    // cube tables per distinct diagonal coefficient
    let mut cube_by_coeff: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for &a in &form.coeffs {
        cube_by_coeff.entry(a.0).or_insert_with(|| {
            residues
                .iter()
                .map(|x| {
                    let x3 = x.mul(x, fs).rem(r, fs).mul(x, fs).rem(r, fs);
                    mulmod_idx(&x3, &Poly::constant(crate::algebra::FieldElem(a.0)))
                })
                .collect()
        });
    }
    // minus-c_i-times-x exponent tables
    let tauc: Vec<Vec<u32>> = (0..form.n)
        .map(|i| {
            let ci = c[i].rem(r, fs);
            residues.iter().map(|x| tau.exp_of_index(mulmod_idx(&ci, x))).collect()
        })
        .collect();

    let coprime: Vec<usize> = (0..size)
        .filter(|&ai| residues[ai].gcd(r, fs).is_one())
        .collect();

    let mut total = CycInt::zero(p);
    let mut tau_a_cube: Vec<u32> = vec![0; size];
    for &ai in &coprime {
        let a = &residues[ai];
        let mut product = CycInt::one(p);
        let mut last_coeff = u32::MAX;
        for i in 0..form.n {
            let coeff = form.coeffs[i].0;
            if coeff != last_coeff {
                let cube = &cube_by_coeff[&coeff];
                for x in 0..size {
                    tau_a_cube[x] = tau.exp_of_index(mulmod_idx(a, &residues[cube[x]]));
                }
                last_coeff = coeff;
            }
            let mut inner = CycInt::zero(p);
            let tci = &tauc[i];
            for x in 0..size {
                let e = (tau_a_cube[x] + p - tci[x]) % p;
                inner.bump(e);
            }
            product = product.mul(&inner.into_canonical());
            if product.is_zero() {
                break;
            }
        }
        total = total.add(&product);
    }
    ExpSumRecord::from_value(r, c, total, Method::Direct, fs)
}

/// Multiplicative evaluation: factor r and take the product over prime powers.
pub fn expsum_crt(
    r: &Poly,
    c: &[Poly],
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<ExpSumRecord> {
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let fac = poly_factor(r, fs)?;
    let mut value: i128 = 1;
    for (pi, e) in &fac.factors {
        let pe = pi.pow(*e as u64, fs);
        let rec = expsum_direct(&pe, c, form, fs, budget)?;
        value = value
            .checked_mul(rec.real_value)
            .ok_or_else(|| Error::IntegralityFailure("CRT product overflow".into()))?;
        if value == 0 {
            break;
        }
    }
    let cyc = CycInt::integer(value, fs.p());
    ExpSumRecord::from_value(r, c, cyc, Method::Crt, fs)
}

/// The size functional T_r(c) = prod over prime powers pi^e || r of
/// max(1, |S^nat| / |pi^e|^(1/2)).
pub fn t_r(r: &Poly, c: &[Poly], form: &DiagonalCubic, fs: &FieldSpec, budget: &Budget) -> Result<f64> {
    let fac = poly_factor(r, fs)?;
    let mut acc = 1.0f64;
    for (pi, e) in &fac.factors {
        let pe = pi.pow(*e as u64, fs);
        let rec = expsum_direct(&pe, c, form, fs, budget)?;
        let ratio = rec.normalized.abs() / (pe.abs(fs) as f64).sqrt();
        acc *= ratio.max(1.0);
    }
    Ok(acc)
}

/// S_pi(c) through point counts of the hyperplane section: for primes with
/// pi not dividing c (n = 6),
/// S_pi(c) = |pi|^2 E_c(k_pi) - |pi| E_F(k_pi), an exact integer identity.
pub fn expsum_prime_via_counts(
    pi: &Poly,
    c: &[Poly],
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<ExpSumRecord> {
    use crate::pointcount::{e_c, e_f, CountMethod, ResidueTower};
    assert_eq!(c.len(), 6, "the point-count bridge is for the senary Fermat form");
    if c.iter().all(|ci| pi.divides(ci, fs)) {
        return Err(Error::PrimeDividesC);
    }
    let tower = ResidueTower::new(pi, fs, 1)?;
    let level = tower.level(1);
    let cred: [crate::algebra::FieldElem; 6] =
        std::array::from_fn(|i| tower.reduce_into(&c[i], 1, fs));
    let ec = e_c(&level.field, &cred, CountMethod::Charsum, budget)?;
    let ef = e_f(&level.field, CountMethod::Charsum, budget)?;
    let np = pi.abs(fs) as i128;
    let value = np * np * ec - np * ef;
    let cyc = CycInt::integer(value, fs.p());
    ExpSumRecord::from_value(pi, c, cyc, Method::PointCount, fs)
}

/// A test-only reference evaluator: the literal double sum, exponentially
/// slow but independent of the factored fast path.
pub fn expsum_naive(
    r: &Poly,
    c: &[Poly],
    form: &DiagonalCubic,
    fs: &FieldSpec,
) -> Result<CycInt> {
    use crate::localfield::char_fraction_exponent;
    let size = r.abs(fs);
    let p = fs.p();
    let mut total = CycInt::zero(p);
    for ai in 0..size {
        let a = Poly::from_index(ai, fs);
        if !a.gcd(r, fs).is_one() {
            continue;
        }
        let mut xs = vec![0u128; form.n];
        loop {
            let x: Vec<Poly> = xs.iter().map(|&i| Poly::from_index(i, fs)).collect();
            let mut num = form.eval_polys(&x, fs).mul(&a, fs);
            for i in 0..form.n {
                num = num.sub(&c[i].mul(&x[i], fs), fs);
            }
            total.bump(char_fraction_exponent(&num, r, fs)?);
            // odometer
            let mut done = true;
            for xi in xs.iter_mut() {
                *xi += 1;
                if *xi < size {
                    done = false;
                    break;
                }
                *xi = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(total.into_canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn s_one_is_one() {
        let fs = f5();
        let form = DiagonalCubic::fermat(3);
        let c = vec![Poly::zero(), Poly::zero(), Poly::zero()];
        let rec = expsum_direct(&Poly::one(), &c, &form, &fs, &Budget::default()).unwrap();
        assert_eq!(rec.real_value, 1);
    }

    #[test]
    fn fast_path_matches_naive_small() {
        let fs = f5();
        let budget = Budget::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        // n = 1 and n = 2 keep the naive path cheap
        for n in [1usize, 2] {
            let form = DiagonalCubic::fermat(n);
            for _ in 0..8 {
                let r = loop {
                    let r = Poly::from_index(rng.random_range(5..125), &fs);
                    if r.is_monic() && r.deg_i() >= 1 {
                        break r;
                    }
                };
                let c: Vec<Poly> =
                    (0..n).map(|_| Poly::from_index(rng.random_range(0..25), &fs)).collect();
                let fast = expsum_direct(&r, &c, &form, &fs, &budget).unwrap();
                let naive = expsum_naive(&r, &c, &form, &fs).unwrap();
                assert_eq!(fast.value, naive, "r={} c={:?}", r.display("t"), c);
            }
        }
    }

    #[test]
    fn cubing_bijection_kills_n1_sum() {
        // q = 5: x -> x^3 is a bijection on F_5, so S_t(0) = 0 for n = 1
        let fs = f5();
        let form = DiagonalCubic::fermat(1);
        let rec = expsum_direct(&Poly::t(), &[Poly::zero()], &form, &fs, &Budget::default()).unwrap();
        assert_eq!(rec.real_value, 0);
    }

    #[test]
    fn n6_center_value_from_affine_count() {
        // S_t(0) = |t| N_aff - |t|^6 where N_aff = #{x in F_5^6 : sum x_i^3 = 0}
        let fs = f5();
        let form = DiagonalCubic::fermat(6);
        let c = vec![Poly::zero(); 6];
        let rec = expsum_direct(&Poly::t(), &c, &form, &fs, &Budget::default()).unwrap();
        let mut n_aff: i128 = 0;
        for idx in 0..5u64.pow(6) {
            let mut sum = 0u32;
            let mut k = idx;
            for _ in 0..6 {
                let x = (k % 5) as u32;
                sum = (sum + x * x * x) % 5;
                k /= 5;
            }
            if sum == 0 {
                n_aff += 1;
            }
        }
        assert_eq!(rec.real_value, 5 * n_aff - 5i128.pow(6));
    }

    #[test]
    fn crt_equals_direct() {
        let fs = f5();
        let budget = Budget::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for n in [3usize, 6] {
            let form = DiagonalCubic::fermat(n);
            for _ in 0..10 {
                let r = loop {
                    let r = Poly::from_index(rng.random_range(25..625), &fs);
                    if r.is_monic() {
                        break r;
                    }
                };
                let c: Vec<Poly> =
                    (0..n).map(|_| Poly::from_index(rng.random_range(0..125), &fs)).collect();
                let direct = expsum_direct(&r, &c, &form, &fs, &budget).unwrap();
                let crt = expsum_crt(&r, &c, &form, &fs, &budget).unwrap();
                assert_eq!(direct.real_value, crt.real_value);
            }
        }
    }

    #[test]
    fn point_count_bridge_matches_direct() {
        let fs = f5();
        let form = DiagonalCubic::fermat(6);
        let budget = Budget::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for pi in crate::algebra::enumerate::irreducible_polys(1, &fs) {
            for _ in 0..5 {
                let c: Vec<Poly> =
                    (0..6).map(|_| Poly::from_index(rng.random_range(0..125), &fs)).collect();
                if c.iter().all(|ci| pi.divides(ci, &fs)) {
                    continue;
                }
                let via = expsum_prime_via_counts(&pi, &c, &fs, &budget).unwrap();
                let direct = expsum_direct(&pi, &c, &form, &fs, &budget).unwrap();
                assert_eq!(via.real_value, direct.real_value, "pi={}", pi.display("t"));
            }
        }
        // the spec's named instances
        let e1: Vec<Poly> = (0..6)
            .map(|i| if i == 0 { Poly::one() } else { Poly::zero() })
            .collect();
        let via = expsum_prime_via_counts(&Poly::t(), &e1, &fs, &budget).unwrap();
        let direct = expsum_direct(&Poly::t(), &e1, &form, &fs, &budget).unwrap();
        assert_eq!(via.real_value, direct.real_value);
        let ones: Vec<Poly> = (0..6).map(|_| Poly::one()).collect();
        let via = expsum_prime_via_counts(&Poly::t(), &ones, &fs, &budget).unwrap();
        let direct = expsum_direct(&Poly::t(), &ones, &form, &fs, &budget).unwrap();
        assert_eq!(via.real_value, direct.real_value);
        // precondition: pi | c rejected
        let tc: Vec<Poly> = (0..6).map(|_| Poly::t()).collect();
        assert!(matches!(
            expsum_prime_via_counts(&Poly::t(), &tc, &fs, &budget),
            Err(Error::PrimeDividesC)
        ));
    }

    #[test]
    fn t_r_examples() {
        let fs = f5();
        let form = DiagonalCubic::fermat(6);
        let budget = Budget::default();
        let c: Vec<Poly> = (1..=6u128).map(|i| Poly::from_index(i, &fs)).collect();
        assert_eq!(t_r(&Poly::one(), &c, &form, &fs, &budget).unwrap(), 1.0);
    }
}
