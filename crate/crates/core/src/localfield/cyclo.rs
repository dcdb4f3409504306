//! Exact arithmetic in Z[zeta_p]: the value ring of the additive character
//! and of every character sum in this crate.
//!
//! An element is a length-p integer vector of counts, x = sum_j counts[j] *
//! zeta^j. The relation 1 + zeta + ... + zeta^(p-1) = 0 makes the all-ones
//! vector zero, so the canonical form subtracts the minimum entry; equality
//! is then component-wise and exact.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycInt {
    /// counts[j] multiplies zeta_p^j; always canonical (min entry = 0).
    counts: Vec<i128>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt { counts: vec![0; p as usize] }
    }

    pub fn one(p: u32) -> CycInt {
        CycInt::integer(1, p)
    }

    pub fn integer(n: i128, p: u32) -> CycInt {
        let mut counts = vec![0i128; p as usize];
        counts[0] = n;
        let mut v = CycInt { counts };
        v.canonicalize();
        v
    }

    /// zeta_p^j.
    pub fn zeta_pow(j: u32, p: u32) -> CycInt {
        let mut counts = vec![0i128; p as usize];
        counts[(j % p) as usize] = 1;
        CycInt { counts }
    }

    pub fn from_counts(counts: Vec<i128>) -> CycInt {
        let mut v = CycInt { counts };
        v.canonicalize();
        v
    }

    pub fn p(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    fn canonicalize(&mut self) {
        let min = *self.counts.iter().min().expect("non-empty");
        if min != 0 {
            for c in &mut self.counts {
                *c -= min;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add(&self, rhs: &CycInt) -> CycInt {
        debug_assert_eq!(self.p(), rhs.p());
        let counts = self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect();
        CycInt::from_counts(counts)
    }

    pub fn sub(&self, rhs: &CycInt) -> CycInt {
        debug_assert_eq!(self.p(), rhs.p());
        let counts = self.counts.iter().zip(&rhs.counts).map(|(a, b)| a - b).collect();
        CycInt::from_counts(counts)
    }

    pub fn neg(&self) -> CycInt {
        CycInt::from_counts(self.counts.iter().map(|&c| -c).collect())
    }

    /// Cyclic convolution: (zeta^i)(zeta^j) = zeta^(i+j mod p).
    pub fn mul(&self, rhs: &CycInt) -> CycInt {
        let p = self.counts.len();
        debug_assert_eq!(p, rhs.counts.len());
        let mut out = vec![0i128; p];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.counts.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = i + j;
                out[if k >= p { k - p } else { k }] += a * b;
            }
        }
        CycInt::from_counts(out)
    }

    pub fn mul_int(&self, n: i128) -> CycInt {
        CycInt::from_counts(self.counts.iter().map(|&c| c * n).collect())
    }

    /// Increment the count of zeta^j; used by character-sum accumulators.
    /// The result is left non-canonical; call `into_canonical` when done.
    pub fn bump(&mut self, j: u32) {
        self.counts[j as usize] += 1;
    }

    pub fn into_canonical(mut self) -> CycInt {
        self.canonicalize();
        self
    }

    /// Complex conjugation zeta -> zeta^(-1).
    pub fn conj(&self) -> CycInt {
        let p = self.counts.len();
        let mut out = vec![0i128; p];
        for (j, &c) in self.counts.iter().enumerate() {
            out[if j == 0 { 0 } else { p - j }] = c;
        }
        CycInt::from_counts(out)
    }

    /// Galois twist zeta -> zeta^k, gcd(k, p) = 1.
    pub fn galois(&self, k: u32) -> CycInt {
        let p = self.counts.len() as u32;
        let mut out = vec![0i128; p as usize];
        for (j, &c) in self.counts.iter().enumerate() {
            out[((j as u64 * k as u64) % p as u64) as usize] = c;
        }
        CycInt::from_counts(out)
    }

    /// Fixed by conjugation, i.e. lies in the real subfield.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Collapses to a rational integer iff counts[1..] are all equal
    /// (in canonical form), in which case the value is counts[0] - counts[1].
    pub fn as_integer(&self) -> Option<i128> {
        if self.counts.len() == 1 {
            return Some(self.counts[0]);
        }
        let c1 = self.counts[1];
        if self.counts[1..].iter().all(|&c| c == c1) {
            Some(self.counts[0] - c1)
        } else {
            None
        }
    }

    /// Float diagnostic only; all equality tests are exact.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.counts.len() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.counts.iter().enumerate() {
            let arg = 2.0 * std::f64::consts::PI * j as f64 / p;
            re += c as f64 * arg.cos();
            im += c as f64 * arg.sin();
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn all_ones_is_zero() {
        let v = CycInt::from_counts(vec![1, 1, 1, 1, 1]);
        assert!(v.is_zero());
        assert_eq!(v, CycInt::zero(5));
    }

    #[test]
    fn negative_integer_canonical_form() {
        let v = CycInt::integer(-3, 5);
        assert_eq!(v.counts(), &[0, 3, 3, 3, 3]);
        assert_eq!(v.as_integer(), Some(-3));
    }

    #[test]
    fn zeta_relations() {
        let p = 5;
        let z = CycInt::zeta_pow(1, p);
        let mut prod = CycInt::one(p);
        let mut sum = CycInt::zero(p);
        for _ in 0..p {
            sum = sum.add(&prod);
            prod = prod.mul(&z);
        }
        assert_eq!(prod, CycInt::one(p)); // zeta^p = 1
        assert!(sum.is_zero()); // 1 + zeta + ... + zeta^(p-1) = 0
    }

    #[test]
    fn canonicalization_idempotent_and_real_test() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let counts: Vec<i128> = (0..7).map(|_| rng.random_range(-50..50)).collect();
            let v = CycInt::from_counts(counts);
            let w = CycInt::from_counts(v.counts().to_vec());
            assert_eq!(v, w);
            // realness agrees with the float diagnostic
            let (_, im) = v.to_complex();
            if v.is_real() {
                assert!(im.abs() < 1e-10);
            } else {
                assert!(im.abs() > 1e-10);
            }
        }
    }

    #[test]
    fn conjugation_is_ring_map() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let a = CycInt::from_counts((0..5).map(|_| rng.random_range(-9..9)).collect());
            let b = CycInt::from_counts((0..5).map(|_| rng.random_range(-9..9)).collect());
            assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        }
    }
}
