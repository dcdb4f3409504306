//! The finite field F_q = F_p[u]/(h), q = p^m, with table-driven arithmetic.
//!
//! Elements are stored as dense indices in [0, q): the index encodes the
//! coordinate vector over Z/p in base p, so x = sum_i d_i u^i has index
//! sum_i d_i p^i. Multiplication goes through discrete exp/log tables with
//! respect to a fixed generator; addition is digit-wise mod p.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// An element of F_q, stored as its index in [0, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest supported field size; tables are O(q).
pub const MAX_Q: u64 = 1 << 21;

/// A concrete finite field F_q with q = p^m, built over an explicit modulus.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus of degree m over Z/p, coefficients little-endian.
    modulus: Vec<u32>,
    generator: u32,
    /// exp[i] = g^i for i in [0, 2(q-1)), so products of two logs index safely.
    exp: Vec<u32>,
    /// log[x] for x in [1, q); log[0] is a sentinel.
    log: Vec<u32>,
    /// trace[x] = Tr_{F_q/F_p}(x) in [0, p).
    trace: Vec<u32>,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Raw polynomial helpers over Z/p, used only during construction.
mod zp {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of a by the monic modulus h.
    pub fn rem(a: &[u32], h: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let d = h.len() - 1;
        while r.len() > d {
            let lead = r[r.len() - 1] as u64;
            let shift = r.len() - 1 - d;
            for i in 0..=d {
                let idx = shift + i;
                let sub = lead * h[i] as u64 % p as u64;
                let cur = r[idx] as u64;
                r[idx] = ((cur + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn pow_mod(base: &[u32], mut e: u128, h: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, h, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), h, p);
            }
            b = rem(&mul(&b, &b, p), h, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic to reuse rem()
            let inv = mod_inv(b[b.len() - 1], p);
            let bm: Vec<u32> = b.iter().map(|&c| (c as u64 * inv as u64 % p as u64) as u32).collect();
            let r = rem(&a, &bm, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mod_inv(a: u32, p: u32) -> u32 {
        // p is prime, a != 0
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Rabin irreducibility test for a monic polynomial of degree >= 1 over Z/p.
    pub fn is_irreducible(h: &[u32], p: u32) -> bool {
        let n = h.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        // x^(p^n) == x mod h
        let mut xp = x.clone();
        for _ in 0..n {
            xp = pow_mod(&xp, p as u128, h, p);
        }
        let diff = sub(&xp, &x, p);
        if !diff.is_empty() {
            return false;
        }
        // for each prime l | n: gcd(x^(p^(n/l)) - x, h) == const
        let mut n_rem = n;
        let mut l = 2usize;
        let mut prime_divs = vec![];
        while l * l <= n_rem {
            if n_rem % l == 0 {
                prime_divs.push(l);
                while n_rem % l == 0 {
                    n_rem /= l;
                }
            }
            l += 1;
        }
        if n_rem > 1 {
            prime_divs.push(n_rem);
        }
        for l in prime_divs {
            let k = n / l;
            let mut xk = x.clone();
            for _ in 0..k {
                xk = pow_mod(&xk, p as u128, h, p);
            }
            let d = gcd(&sub(&xk, &x, p), h, p);
            if d.len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }
}

impl FieldSpec {
    /// Build F_q = F_p[u]/(modulus). If no modulus is given and m > 1, the
    /// lexicographically least irreducible monic polynomial of degree m is
    /// used (non-leading coefficients read as a base-p integer, smallest
    /// first), so construction is reproducible.
    pub fn make(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime_u64(p as u64) {
            return Err(Error::NonPrimeP(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { got: 0, want: 1 });
        }
        let q128 = (p as u128).pow(m);
        if q128 > MAX_Q as u128 {
            return Err(Error::OverBudget(format!("q = p^m = {q128} exceeds table limit {MAX_Q}")));
        }
        let q = q128 as u32;

        let h: Vec<u32> = match modulus {
            Some(h) => {
                let mut h: Vec<u32> = h.iter().map(|&c| c % p).collect();
                zp::trim(&mut h);
                if h.len() != m as usize + 1 {
                    return Err(Error::DegreeMismatch { got: h.len().saturating_sub(1), want: m as usize });
                }
                if h[m as usize] != 1 {
                    return Err(Error::ReducibleModulus(p)); // non-monic rejected
                }
                if m > 1 && !zp::is_irreducible(&h, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                h
            }
            None => {
                if m == 1 {
                    vec![0, 1]
                } else {
                    let mut found = None;
                    for idx in 0..q {
                        let mut h = index_digits(idx, p, m);
                        h.push(1);
                        if zp::is_irreducible(&h, p) {
                            found = Some(h);
                            break;
                        }
                    }
                    found.expect("an irreducible polynomial of every degree exists")
                }
            }
        };

        let mut fs = FieldSpec {
            p,
            m,
            q,
            modulus: h,
            generator: 0,
            exp: vec![],
            log: vec![],
            trace: vec![],
        };
        fs.build_tables();
        Ok(fs)
    }

    fn build_tables(&mut self) {
        let (p, q) = (self.p, self.q);
        let order = q as u64 - 1;
        // prime factors of q - 1
        let mut fac = vec![];
        let mut n = order;
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                fac.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            fac.push(n);
        }

        let raw_mul = |a: u32, b: u32| -> u32 {
            let va = index_digits(a, p, self.m);
            let vb = index_digits(b, p, self.m);
            let prod = zp::rem(&zp::mul(&va, &vb, p), &self.modulus, p);
            digits_index(&prod, p)
        };
        let raw_pow = |mut base: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                e >>= 1;
            }
            acc
        };

        // smallest generator of F_q^*
        let mut g = 0u32;
        'outer: for cand in 2..q.max(3) {
            if cand >= q {
                break;
            }
            for &l in &fac {
                if raw_pow(cand, order / l) == 1 {
                    continue 'outer;
                }
            }
            g = cand;
            break;
        }
        if q == 2 {
            g = 1;
        }
        assert!(g != 0, "no generator found");
        self.generator = g;

        let mut exp = vec![0u32; (2 * order).max(1) as usize + 1];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..order {
            exp[i as usize] = acc;
            log[acc as usize] = i as u32;
            acc = raw_mul(acc, g);
        }
        debug_assert_eq!(acc, 1);
        for i in order..=2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }
        self.exp = exp;
        self.log = log;

        // trace table: Tr(x) = x + x^p + ... + x^(p^(m-1))
        let mut trace = vec![0u32; q as usize];
        for x in 0..q {
            let mut s = 0u32;
            let mut t = x;
            for _ in 0..self.m {
                s = self.raw_add(s, t);
                t = raw_pow(t, p as u64);
            }
            debug_assert!(s < p, "trace must land in the prime subfield");
            trace[x as usize] = s;
        }
        self.trace = trace;
    }

    fn raw_add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut mult, mut a, mut b) = (0u32, 1u32, a, b);
        for _ in 0..self.m {
            let da = a % self.p;
            let db = b % self.p;
            out += ((da + db) % self.p) * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.generator)
    }

    /// The vertical period T = 2*pi/ln(q) of q^s.
    pub fn vertical_period(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.q as f64).ln()
    }

    pub fn char_gt_3(&self) -> Result<()> {
        if self.p <= 3 {
            Err(Error::CharThreeRejected)
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.raw_add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.m == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut out, mut mult, mut x) = (0u32, 1u32, a.0);
        for _ in 0..self.m {
            let d = x % self.p;
            out += (if d == 0 { 0 } else { self.p - d }) * mult;
            mult *= self.p;
            x /= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(a.0 != 0, "inverse of zero");
        let order = self.q - 1;
        FieldElem(self.exp[(order - self.log[a.0 as usize]) as usize])
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { FieldElem(1) } else { FieldElem(0) };
        }
        let order = (self.q - 1) as u64;
        let k = self.log[a.0 as usize] as u64 * (e % order) % order;
        FieldElem(self.exp[k as usize])
    }

    /// Tr_{F_q/F_p}(x), in [0, p).
    #[inline]
    pub fn trace_to_prime(&self, x: FieldElem) -> u32 {
        self.trace[x.0 as usize]
    }

    /// The scalar c mod p embedded into F_q.
    pub fn scalar(&self, c: u64) -> FieldElem {
        FieldElem((c % self.p as u64) as u32)
    }

    /// Coordinates of x over Z/p (little-endian, length m).
    pub fn coords(&self, x: FieldElem) -> Vec<u32> {
        index_digits(x.0, self.p, self.m)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElem {
        let mut v: Vec<u32> = coords.iter().map(|&c| c % self.p).collect();
        v.truncate(self.m as usize);
        FieldElem(digits_index(&v, self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// All cube roots of unity in F_q (1 or 3 of them).
    pub fn cube_roots_of_unity(&self) -> Vec<FieldElem> {
        self.elements()
            .filter(|&w| !w.is_zero() && self.pow(w, 3) == FieldElem(1))
            .collect()
    }

    /// p-th root (the inverse of Frobenius), total on F_q.
    pub fn pth_root(&self, a: FieldElem) -> FieldElem {
        if self.m == 1 {
            return a;
        }
        let e = (self.q as u64 / self.p as u64) % (self.q as u64 - 1);
        // a^(p^(m-1)) since p^m = q and a^q = a
        self.pow(a, if e == 0 { 1 } else { e })
    }
}

pub(crate) fn index_digits(mut idx: u32, p: u32, m: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(m as usize);
    for _ in 0..m {
        v.push(idx % p);
        idx /= p;
    }
    v
}

pub(crate) fn digits_index(digits: &[u32], p: u32) -> u32 {
    let mut idx = 0u64;
    for &d in digits.iter().rev() {
        idx = idx * p as u64 + d as u64;
    }
    idx as u32
}
