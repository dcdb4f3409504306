//! Polynomial factorization over F_q: distinct-degree then equal-degree
//! splitting (Cantor–Zassenhaus), with a fixed recorded seed so that outputs
//! are bit-stable across runs.

use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for the equal-degree splitting; recorded in the output.
pub const FACTOR_SEED: u64 = 0x3c0be5;

/// Exact factorization f = unit * prod factors[i].0 ^ factors[i].1, with
/// monic irreducible factors sorted by (degree, coefficient index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
    pub seed: u64,
}

impl Factorization {
    pub fn product(&self, fs: &FieldSpec) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, e) in &self.factors {
            acc = acc.mul(&p.pow(*e as u64, fs), fs);
        }
        acc
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Valuation v_pi(f) for a monic irreducible pi.
    pub fn valuation(&self, pi: &Poly) -> u32 {
        self.factors.iter().find(|(p, _)| p == pi).map(|(_, e)| *e).unwrap_or(0)
    }
}

pub fn is_irreducible(f: &Poly, fs: &FieldSpec) -> bool {
    let n = f.deg_i();
    if n <= 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let n = n as usize;
    let q = fs.q() as u128;
    let x = Poly::t();
    // x^(q^n) == x mod f
    let mut xq = x.clone();
    for _ in 0..n {
        xq = xq.pow_mod(q, f, fs);
    }
    if xq.sub(&x, fs).rem(f, fs) != Poly::zero() {
        return false;
    }
    for l in prime_divisors(n) {
        let k = n / l;
        let mut xk = x.clone();
        for _ in 0..k {
            xk = xk.pow_mod(q, f, fs);
        }
        if xk.sub(&x, fs).gcd(f, fs).deg_i() != 0 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Complete factorization with the default recorded seed.
pub fn poly_factor(f: &Poly, fs: &FieldSpec) -> Result<Factorization> {
    poly_factor_seeded(f, fs, FACTOR_SEED)
}

pub fn poly_factor_seeded(f: &Poly, fs: &FieldSpec, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (monic, unit) = f.monic(fs);
    let mut factors: Vec<(Poly, u32)> = vec![];
    // square-free decomposition first, then DDF/EDF on each square-free part
    for (g, mult) in squarefree_decomposition(&monic, fs) {
        for (h, d) in distinct_degree(&g, fs) {
            for irr in equal_degree(&h, d, fs, seed) {
                factors.push((irr, mult));
            }
        }
    }
    // merge duplicates (cannot happen for distinct multiplicities, but keep it robust)
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut merged: Vec<(Poly, u32)> = vec![];
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    let out = Factorization { unit, factors: merged, seed };
    debug_assert_eq!(out.product(fs), *f);
    Ok(out)
}

/// Yates square-free decomposition, char-p aware: returns (g_i, i) with
/// f = prod g_i^i and each g_i square-free, g_i pairwise coprime.
fn squarefree_decomposition(f: &Poly, fs: &FieldSpec) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = vec![];
    sqfree_rec(f, 1, fs, &mut out);
    out
}

fn sqfree_rec(f: &Poly, outer: u32, fs: &FieldSpec, out: &mut Vec<(Poly, u32)>) {
    if f.deg_i() <= 0 {
        return;
    }
    let p = fs.p();
    let df = f.derivative(fs);
    if df.is_zero() {
        // f = g(t^p); take p-th roots of coefficients
        let mut coeffs = vec![];
        for i in (0..f.coeffs.len()).step_by(p as usize) {
            coeffs.push(fs.pth_root(f.coeff(i)));
        }
        let g = Poly::from_coeffs(coeffs);
        sqfree_rec(&g, outer * p, fs, out);
        return;
    }
    let mut c = f.gcd(&df, fs);
    let mut w = f.divrem(&c, fs).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c, fs);
        let fac = w.divrem(&y, fs).0;
        if fac.deg_i() > 0 {
            out.push((fac, i * outer));
        }
        w = y.clone();
        c = c.divrem(&y, fs).0;
        i += 1;
    }
    if c.deg_i() > 0 {
        // remaining part is a p-th power
        sqfree_rec(&c, outer, fs, out);
    }
}

/// Distinct-degree factorization of a square-free monic f: returns pairs
/// (product of all irreducible factors of degree d, d).
fn distinct_degree(f: &Poly, fs: &FieldSpec) -> Vec<(Poly, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let q = fs.q() as u128;
    let mut d = 0usize;
    let mut xq = Poly::t();
    while f.deg_i() > 0 && 2 * (d + 1) as i64 <= f.deg_i() {
        d += 1;
        xq = xq.pow_mod(q, &f, fs);
        let g = xq.sub(&Poly::t(), fs).gcd(&f, fs);
        if g.deg_i() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g, fs).0;
            xq = xq.rem(&f, fs);
        }
    }
    if f.deg_i() > 0 {
        let d = f.deg_i() as usize;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting: f is monic square-free, all factors of degree d.
fn equal_degree(f: &Poly, d: usize, fs: &FieldSpec, seed: u64) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![f.clone()];
    let mut out = vec![];
    while let Some(g) = stack.pop() {
        if g.deg_i() as usize == d {
            out.push(g);
            continue;
        }
        let split = loop {
            let h = random_poly_below(g.deg_i() as usize, fs, &mut rng);
            if h.deg_i() < 1 {
                continue;
            }
            let s = if fs.p() == 2 {
                // trace map T(h) = h + h^2 + ... + h^(2^(k*d - 1)) mod g
                let k = (fs.q() as f64).log2() as u32;
                let mut acc = Poly::zero();
                let mut cur = h.rem(&g, fs);
                for _ in 0..(k as usize * d) {
                    acc = acc.add(&cur, fs);
                    cur = cur.mul(&cur, fs).rem(&g, fs);
                }
                acc
            } else {
                let e = ((fs.q() as u128).pow(d as u32) - 1) / 2;
                h.pow_mod(e, &g, fs).sub(&Poly::one(), fs)
            };
            let w = s.gcd(&g, fs);
            if w.deg_i() > 0 && w.deg_i() < g.deg_i() {
                break w;
            }
        };
        let other = g.divrem(&split, fs).0;
        stack.push(split);
        stack.push(other);
    }
    out
}

fn random_poly_below(deg: usize, fs: &FieldSpec, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..deg).map(|_| FieldElem(rng.random_range(0..fs.q()))).collect();
    Poly::from_coeffs(coeffs)
}

/// Square-full part, cube-full part, radical and omega of f.
///
/// sq(f) = prod_{pi^2 | f} pi^v, cub(f) = prod_{pi^3 | f} pi^v, rad(f) = prod pi.
/// For f = 0 the convention sq(0) = cub(0) = 0 applies (rad(0) = 0, omega = 0).
pub fn sq_cub_rad(f: &Poly, fs: &FieldSpec) -> Result<(Poly, Poly, Poly, usize)> {
    if f.is_zero() {
        return Ok((Poly::zero(), Poly::zero(), Poly::zero(), 0));
    }
    let fac = poly_factor(f, fs)?;
    let mut sq = Poly::one();
    let mut cub = Poly::one();
    let mut rad = Poly::one();
    for (pi, e) in &fac.factors {
        rad = rad.mul(pi, fs);
        if *e >= 2 {
            sq = sq.mul(&pi.pow(*e as u64, fs), fs);
        }
        if *e >= 3 {
            cub = cub.mul(&pi.pow(*e as u64, fs), fs);
        }
    }
    Ok((sq, cub, rad, fac.omega()))
}

/// Count monic r with rad(r) | B and |r| = q^R, by dynamic programming over
/// the degrees of the distinct prime factors of B.
pub fn count_binfty_divisors(b: &Poly, r_deg: usize, fs: &FieldSpec) -> Result<u128> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = poly_factor(b, fs)?;
    let degs: Vec<usize> = fac.factors.iter().map(|(p, _)| p.deg_i() as usize).collect();
    // unbounded coin counting: number of (e_i >= 0) with sum e_i * deg_i = r_deg
    let mut dp = vec![0u128; r_deg + 1];
    dp[0] = 1;
    for d in degs {
        for k in d..=r_deg {
            dp[k] += dp[k - d];
        }
    }
    Ok(dp[r_deg])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn factor_spec_examples() {
        let fs = f5();
        // t^2 + 1 = (t+2)(t+3) over F_5
        let f = Poly::parse("t^2+1", &fs).unwrap();
        let fac = poly_factor(&f, &fs).unwrap();
        let expect: Vec<Poly> =
            vec![Poly::parse("t+2", &fs).unwrap(), Poly::parse("t+3", &fs).unwrap()];
        assert_eq!(fac.factors.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(), expect);
        // t irreducible
        assert!(is_irreducible(&Poly::t(), &fs));
        // t^2 + 2 irreducible (3 is a non-square mod 5)
        assert!(is_irreducible(&Poly::parse("t^2+2", &fs).unwrap(), &fs));
        assert!(!is_irreducible(&Poly::parse("t^2+1", &fs).unwrap(), &fs));
    }

    #[test]
    fn factor_merges_products() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let d1 = rng.random_range(0..=5);
            let d2 = rng.random_range(0..=5);
            let f = Poly::from_coeffs((0..=d1).map(|_| FieldElem(rng.random_range(0..5))).collect());
            let g = Poly::from_coeffs((0..=d2).map(|_| FieldElem(rng.random_range(0..5))).collect());
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let ff = poly_factor(&f, &fs).unwrap();
            let fg = poly_factor(&g, &fs).unwrap();
            let ffg = poly_factor(&f.mul(&g, &fs), &fs).unwrap();
            // merge the two factorizations
            let mut merged: std::collections::BTreeMap<Poly, u32> = Default::default();
            for (p, e) in ff.factors.iter().chain(fg.factors.iter()) {
                *merged.entry(p.clone()).or_insert(0) += e;
            }
            let got: std::collections::BTreeMap<Poly, u32> = ffg.factors.iter().cloned().collect();
            assert_eq!(merged, got);
            assert_eq!(fs.mul(ff.unit, fg.unit), ffg.unit);
        }
    }

    #[test]
    fn factor_char2_and_extension() {
        let f4 = FieldSpec::make(2, 2, None).unwrap();
        let f = Poly::parse("t^4+t^2+1", &f4).unwrap();
        let fac = poly_factor(&f, &f4).unwrap();
        assert_eq!(fac.product(&f4), f);
        let f25 = FieldSpec::make(5, 2, None).unwrap();
        let g = Poly::parse("t^6+3t^2+7", &f25).unwrap();
        let fac = poly_factor(&g, &f25).unwrap();
        assert_eq!(fac.product(&f25), g);
    }

    #[test]
    fn sq_cub_rad_examples() {
        let fs = f5();
        // f = t^2 (t+1)
        let f = Poly::parse("t^2", &fs).unwrap().mul(&Poly::parse("t+1", &fs).unwrap(), &fs);
        let (sq, cub, rad, omega) = sq_cub_rad(&f, &fs).unwrap();
        assert_eq!(sq, Poly::parse("t^2", &fs).unwrap());
        assert_eq!(cub, Poly::one());
        assert_eq!(rad, Poly::parse("t^2+t", &fs).unwrap());
        assert_eq!(omega, 2);
        // f = 1 and f = 0
        assert_eq!(sq_cub_rad(&Poly::one(), &fs).unwrap(), (Poly::one(), Poly::one(), Poly::one(), 0));
        let z = sq_cub_rad(&Poly::zero(), &fs).unwrap();
        assert_eq!((z.0.clone(), z.1.clone()), (Poly::zero(), Poly::zero()));
    }

    #[test]
    fn sq_cub_rad_consistency_random() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let d = rng.random_range(0..=10);
            let f = Poly::from_coeffs((0..=d).map(|_| FieldElem(rng.random_range(0..5))).collect());
            if f.is_zero() {
                continue;
            }
            let (sq, cub, rad, _) = sq_cub_rad(&f, &fs).unwrap();
            assert!(cub.divides(&sq, &fs));
            assert!(sq.divides(&f, &fs));
            assert!(rad.divides(&f, &fs));
            // f / sq is square-free
            let rest = f.divrem(&sq, &fs).0;
            let fac = poly_factor(&rest, &fs).unwrap();
            assert!(fac.factors.iter().all(|(_, e)| *e == 1));
        }
    }

    #[test]
    fn binfty_divisor_counts() {
        let fs = f5();
        assert_eq!(count_binfty_divisors(&Poly::t(), 3, &fs).unwrap(), 1);
        let b = Poly::t().mul(&Poly::parse("t+1", &fs).unwrap(), &fs);
        assert_eq!(count_binfty_divisors(&b, 2, &fs).unwrap(), 3);
        assert_eq!(count_binfty_divisors(&Poly::one(), 1, &fs).unwrap(), 0);
        assert_eq!(count_binfty_divisors(&Poly::one(), 0, &fs).unwrap(), 1);
    }

    #[test]
    fn binfty_matches_exhaustive_enumeration() {
        let fs = f5();
        // precompute radicals of all monic r with deg <= 6 once
        let mut rads: Vec<Vec<Poly>> = vec![];
        for r_deg in 0..=6usize {
            rads.push(
                super::super::enumerate::monic_polys(r_deg, &fs)
                    .map(|r| sq_cub_rad(&r, &fs).unwrap().2)
                    .collect(),
            );
        }
        for bidx in 1..(5u128).pow(4) {
            let b = Poly::from_index(bidx, &fs);
            if b.is_zero() {
                continue;
            }
            for r_deg in 0..=6usize {
                let expect = rads[r_deg].iter().filter(|rad| rad.divides(&b, &fs)).count() as u128;
                assert_eq!(
                    count_binfty_divisors(&b, r_deg, &fs).unwrap(),
                    expect,
                    "B={} R={}",
                    b.display("t"),
                    r_deg
                );
            }
        }
    }
}
