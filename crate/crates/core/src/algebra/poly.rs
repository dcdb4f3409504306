//! Polynomials over F_q: the ring O = F_q[t] with |f| = q^deg(f).

use super::field::{FieldElem, FieldSpec};
use crate::{Error, Result};

/// An element of O = F_q[t]. Coefficients are little-endian with no trailing
/// zeros; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    pub coeffs: Vec<FieldElem>,
}

/// Degree of a polynomial; the zero polynomial gets the NEG_INF sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Of(i64),
}

impl Degree {
    pub fn unwrap(self) -> i64 {
        match self {
            Degree::NegInf => panic!("degree of the zero polynomial"),
            Degree::Of(d) => d,
        }
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElem::ONE] }
    }

    pub fn constant(c: FieldElem) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The monomial t.
    pub fn t() -> Poly {
        Poly { coeffs: vec![FieldElem::ZERO, FieldElem::ONE] }
    }

    /// c * t^k.
    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last() == Some(&FieldElem::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Of(self.coeffs.len() as i64 - 1)
        }
    }

    /// deg(f) as i64 with deg(0) = -1; convenient for loops.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// |f| = q^deg(f), |0| = 0. Exact in u128 (desk-scale degrees only).
    pub fn abs(&self, fs: &FieldSpec) -> u128 {
        match self.degree() {
            Degree::NegInf => 0,
            Degree::Of(d) => (fs.q() as u128).pow(d as u32),
        }
    }

    pub fn leading(&self) -> FieldElem {
        *self.coeffs.last().unwrap_or(&FieldElem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    pub fn add(&self, rhs: &Poly, fs: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fs.add(self.coeff(i), rhs.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, fs: &FieldSpec) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| fs.neg(c)).collect() }
    }

    pub fn sub(&self, rhs: &Poly, fs: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fs.sub(self.coeff(i), rhs.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, rhs: &Poly, fs: &FieldSpec) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = fs.add(out[i + j], fs.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: FieldElem, fs: &FieldSpec) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| fs.mul(a, c)).collect() }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Euclidean division: self = q * rhs + r with deg r < deg rhs.
    pub fn divrem(&self, rhs: &Poly, fs: &FieldSpec) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.deg_i() < rhs.deg_i() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = fs.inv(rhs.leading());
        let d = rhs.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElem::ZERO; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = fs.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - d] = c;
            for i in 0..=d {
                rem[k - d + i] = fs.sub(rem[k - d + i], fs.mul(c, rhs.coeffs[i]));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, rhs: &Poly, fs: &FieldSpec) -> Poly {
        self.divrem(rhs, fs).1
    }

    pub fn divides(&self, other: &Poly, fs: &FieldSpec) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self, fs).is_zero()
    }

    /// Make monic; returns (monic, former leading coefficient).
    pub fn monic(&self, fs: &FieldSpec) -> (Poly, FieldElem) {
        if self.is_zero() {
            return (Poly::zero(), FieldElem::ONE);
        }
        let lc = self.leading();
        (self.mul_scalar(fs.inv(lc), fs), lc)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Poly, fs: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fs);
            a = b;
            b = r;
        }
        a.monic(fs).0
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*rhs = g, g monic (or zero).
    pub fn xgcd(&self, rhs: &Poly, fs: &FieldSpec) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fs);
            let s = s0.sub(&q.mul(&s1, fs), fs);
            let t = t0.sub(&q.mul(&t1, fs), fs);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (Poly::zero(), s0, t0);
        }
        let lc = r0.leading();
        let inv = fs.inv(lc);
        (r0.mul_scalar(inv, fs), s0.mul_scalar(inv, fs), t0.mul_scalar(inv, fs))
    }

    pub fn pow(&self, mut e: u64, fs: &FieldSpec) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fs);
            }
            base = base.mul(&base, fs);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Poly, fs: &FieldSpec) -> Poly {
        let mut base = self.rem(modulus, fs);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fs).rem(modulus, fs);
            }
            base = base.mul(&base, fs).rem(modulus, fs);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: FieldElem, fs: &FieldSpec) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = fs.add(fs.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, fs: &FieldSpec) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(fs.mul(c, fs.scalar(i as u64)));
        }
        Poly::from_coeffs(out)
    }

    /// Canonical total order: by degree, then coefficients compared from the
    /// leading term down. Used wherever factor lists must be deterministic.
    pub fn canonical_cmp(&self, other: &Poly) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Index of the polynomial in the deterministic enumeration of all
    /// polynomials of degree < d (coefficients as base-q digits).
    pub fn to_index(&self, fs: &FieldSpec) -> u128 {
        let mut idx = 0u128;
        for &c in self.coeffs.iter().rev() {
            idx = idx * fs.q() as u128 + c.0 as u128;
        }
        idx
    }

    pub fn from_index(mut idx: u128, fs: &FieldSpec) -> Poly {
        let mut coeffs = vec![];
        while idx > 0 {
            coeffs.push(FieldElem((idx % fs.q() as u128) as u32));
            idx /= fs.q() as u128;
        }
        Poly { coeffs }
    }

    /// Substitution f(g(t)).
    pub fn compose(&self, g: &Poly, fs: &FieldSpec) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g, fs).add(&Poly::constant(c), fs);
        }
        acc
    }

    /// Display with an arbitrary variable name.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = match (i, c.0) {
                (0, v) => format!("{v}"),
                (1, 1) => var.to_string(),
                (1, v) => format!("{v}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, v) => format!("{v}{var}^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }

    /// Parse expressions like "t^3+2t+4", "2*t^2", "0". Coefficients are
    /// element indices in [0, q).
    pub fn parse(s: &str, fs: &FieldSpec) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParseError("empty polynomial".into()));
        }
        let normalized = compact.replace('-', "+-");
        let mut acc = Poly::zero();
        for term in normalized.split('+') {
            if term.is_empty() {
                continue;
            }
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (true, t),
                None => (false, term),
            };
            if term.is_empty() {
                return Err(Error::ParseError(format!("bad term in {s:?}")));
            }
            let (coeff_str, pow): (&str, usize) = if let Some(pos) = term.find('t') {
                let coeff = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let pow = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>().map_err(|_| Error::ParseError(format!("bad exponent in {s:?}")))?
                } else {
                    return Err(Error::ParseError(format!("bad term in {s:?}")));
                };
                (coeff, pow)
            } else {
                (term, 0)
            };
            let c: u64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| Error::ParseError(format!("bad coefficient in {s:?}")))?
            };
            if c >= fs.q() as u64 {
                return Err(Error::ParseError(format!("coefficient {c} out of range for q = {}", fs.q())));
            }
            let mut e = FieldElem(c as u32);
            if neg {
                e = fs.neg(e);
            }
            acc = acc.add(&Poly::monomial(e, pow), fs);
        }
        Ok(acc)
    }
}

/// Resultant of f and g via a Sylvester-matrix determinant. Degrees in this
/// artifact are tiny, so O(n^3) elimination is plenty.
pub fn resultant(f: &Poly, g: &Poly, fs: &FieldSpec) -> FieldElem {
    if f.is_zero() || g.is_zero() {
        return FieldElem::ZERO;
    }
    let n = f.deg_i() as usize;
    let m = g.deg_i() as usize;
    if n == 0 {
        return fs.pow(f.coeffs[0], m as u64);
    }
    if m == 0 {
        return fs.pow(g.coeffs[0], n as u64);
    }
    let size = n + m;
    let mut mat = vec![vec![FieldElem::ZERO; size]; size];
    for row in 0..m {
        for (k, &c) in f.coeffs.iter().rev().enumerate() {
            mat[row][row + k] = c;
        }
    }
    for row in 0..n {
        for (k, &c) in g.coeffs.iter().rev().enumerate() {
            mat[m + row][row + k] = c;
        }
    }
    // Gaussian elimination, tracking sign via row swaps.
    let mut det = FieldElem::ONE;
    for col in 0..size {
        let pivot = (col..size).find(|&r| !mat[r][col].is_zero());
        let Some(pr) = pivot else { return FieldElem::ZERO };
        if pr != col {
            mat.swap(pr, col);
            det = fs.neg(det);
        }
        let pv = mat[col][col];
        det = fs.mul(det, pv);
        let inv = fs.inv(pv);
        for r in col + 1..size {
            let factor = fs.mul(mat[r][col], inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let sub = fs.mul(factor, mat[col][c]);
                mat[r][c] = fs.sub(mat[r][c], sub);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    fn random_poly(rng: &mut impl Rng, max_deg: usize, fs: &FieldSpec) -> Poly {
        let d = rng.random_range(0..=max_deg);
        Poly::from_coeffs((0..=d).map(|_| FieldElem(rng.random_range(0..fs.q()))).collect())
    }

    #[test]
    fn abs_multiplicative() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let f = random_poly(&mut rng, 10, &fs);
            let g = random_poly(&mut rng, 10, &fs);
            assert_eq!(f.mul(&g, &fs).abs(&fs), f.abs(&fs) * g.abs(&fs));
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let f = random_poly(&mut rng, 12, &fs);
            let g = random_poly(&mut rng, 6, &fs);
            if g.is_zero() {
                continue;
            }
            let (q, r) = f.divrem(&g, &fs);
            assert!(r.deg_i() < g.deg_i());
            assert_eq!(q.mul(&g, &fs).add(&r, &fs), f);
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        let fs = f5();
        for s in ["t^3+2t+4", "0", "4", "t", "2t^2+1"] {
            let p = Poly::parse(s, &fs).unwrap();
            let p2 = Poly::parse(&p.display("t"), &fs).unwrap();
            assert_eq!(p, p2);
        }
        assert_eq!(Poly::parse("t^2-1", &fs).unwrap(), Poly::parse("t^2+4", &fs).unwrap());
    }

    #[test]
    fn xgcd_bezout() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let f = random_poly(&mut rng, 8, &fs);
            let g = random_poly(&mut rng, 8, &fs);
            let (d, s, t) = f.xgcd(&g, &fs);
            assert_eq!(s.mul(&f, &fs).add(&t.mul(&g, &fs), &fs), d);
            if !d.is_zero() {
                assert!(d.divides(&f, &fs) && d.divides(&g, &fs));
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        let fs = f5();
        // (t+1)(t+2) and (t+2)(t+3) share a root
        let f = Poly::parse("t+1", &fs).unwrap().mul(&Poly::parse("t+2", &fs).unwrap(), &fs);
        let g = Poly::parse("t+2", &fs).unwrap().mul(&Poly::parse("t+3", &fs).unwrap(), &fs);
        assert_eq!(resultant(&f, &g, &fs), FieldElem::ZERO);
        let h = Poly::parse("t+3", &fs).unwrap().mul(&Poly::parse("t+4", &fs).unwrap(), &fs);
        assert_ne!(resultant(&f, &h, &fs), FieldElem::ZERO);
    }
}
