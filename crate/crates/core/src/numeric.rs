//! Exact scaled values (a + b sqrt(q)) / q^k, closed under ring operations.
//! Everything with half-integral q-power weights (normalized exponential
//! sums, local L-coefficients, S_{r,0}) lives here so comparisons stay exact.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SqrtQVal {
    pub a: i128,
    pub b: i128,
    /// denominator exponent: value = (a + b sqrt(q)) / q^k
    pub k: u32,
    pub q: u32,
}

impl SqrtQVal {
    pub fn zero(q: u32) -> SqrtQVal {
        SqrtQVal { a: 0, b: 0, k: 0, q }
    }

    pub fn one(q: u32) -> SqrtQVal {
        SqrtQVal { a: 1, b: 0, k: 0, q }
    }

    pub fn integer(n: i128, q: u32) -> SqrtQVal {
        SqrtQVal { a: n, b: 0, k: 0, q }
    }

    /// n * q^(half/2) for any integer half (positive or negative).
    pub fn int_qhalf(n: i128, half: i64, q: u32) -> SqrtQVal {
        if n == 0 {
            return SqrtQVal::zero(q);
        }
        let mut k = 0i64;
        let mut h = half;
        while h < 0 {
            h += 2;
            k += 1;
        }
        // value = n q^(h/2) / q^k with h >= 0
        let (a, b) = if h % 2 == 0 {
            (n * (q as i128).pow((h / 2) as u32), 0)
        } else {
            (0, n * (q as i128).pow(((h - 1) / 2) as u32))
        };
        SqrtQVal { a, b, k: k as u32, q }.reduced()
    }

    fn reduced(mut self) -> SqrtQVal {
        let q = self.q as i128;
        while self.k > 0 && self.a % q == 0 && self.b % q == 0 {
            self.a /= q;
            self.b /= q;
            self.k -= 1;
        }
        if self.a == 0 && self.b == 0 {
            self.k = 0;
        }
        self
    }

    fn align(&self, other: &SqrtQVal) -> (i128, i128, i128, i128, u32) {
        debug_assert_eq!(self.q, other.q);
        let q = self.q as i128;
        let k = self.k.max(other.k);
        let s = q.pow(k - self.k);
        let t = q.pow(k - other.k);
        (self.a * s, self.b * s, other.a * t, other.b * t, k)
    }

    pub fn add(&self, other: &SqrtQVal) -> SqrtQVal {
        let (a1, b1, a2, b2, k) = self.align(other);
        SqrtQVal { a: a1 + a2, b: b1 + b2, k, q: self.q }.reduced()
    }

    pub fn sub(&self, other: &SqrtQVal) -> SqrtQVal {
        let (a1, b1, a2, b2, k) = self.align(other);
        SqrtQVal { a: a1 - a2, b: b1 - b2, k, q: self.q }.reduced()
    }

    pub fn neg(&self) -> SqrtQVal {
        SqrtQVal { a: -self.a, b: -self.b, k: self.k, q: self.q }
    }

    pub fn mul(&self, other: &SqrtQVal) -> SqrtQVal {
        debug_assert_eq!(self.q, other.q);
        let q = self.q as i128;
        SqrtQVal {
            a: self.a * other.a + self.b * other.b * q,
            b: self.a * other.b + self.b * other.a,
            k: self.k + other.k,
            q: self.q,
        }
        .reduced()
    }

    pub fn mul_int(&self, n: i128) -> SqrtQVal {
        SqrtQVal { a: self.a * n, b: self.b * n, k: self.k, q: self.q }.reduced()
    }

    /// Multiply by q^(half/2).
    pub fn scale_qhalf(&self, half: i64) -> SqrtQVal {
        self.mul(&SqrtQVal::int_qhalf(1, half, self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn eq_exact(&self, other: &SqrtQVal) -> bool {
        let (a1, b1, a2, b2, _) = self.align(other);
        a1 == a2 && b1 == b2
    }

    /// Exact rational part check: Some(n, k) when b = 0.
    pub fn rational_part(&self) -> Option<(i128, u32)> {
        if self.b == 0 {
            Some((self.a, self.k))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.q as f64;
        (self.a as f64 + self.b as f64 * q.sqrt()) / q.powi(self.k as i32)
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}
