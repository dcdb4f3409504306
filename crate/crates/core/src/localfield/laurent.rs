//! Truncated elements of K_inf = F_q((t^-1)) with certified-exact windows.
//!
//! Every value tracks the lowest exponent whose coefficient is certified;
//! reading below that window is a hard error, never a silent truncation.
//! A value produced from a polynomial (or a terminating expansion) is flagged
//! exact_below and behaves like an ordinary Laurent polynomial.

use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentNum {
    /// window[k] is the coefficient of t^(low + k); the top entry is nonzero
    /// unless the window is empty.
    window: Vec<FieldElem>,
    /// Lowest certified exponent. Irrelevant when exact_below holds and the
    /// window is empty (the exact zero).
    low: i64,
    /// All coefficients below the window are provably zero.
    exact_below: bool,
}

impl LaurentNum {
    pub fn zero() -> LaurentNum {
        LaurentNum { window: vec![], low: 0, exact_below: true }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.window.is_empty() && self.exact_below
    }

    fn normalize(mut self) -> LaurentNum {
        while self.window.last() == Some(&FieldElem::ZERO) {
            self.window.pop();
        }
        if self.window.is_empty() && self.exact_below {
            self.low = 0;
        }
        self
    }

    pub fn from_parts(low: i64, window: Vec<FieldElem>, exact_below: bool) -> LaurentNum {
        LaurentNum { window, low, exact_below }.normalize()
    }

    /// Exact embedding of a polynomial in t.
    pub fn from_poly(p: &Poly) -> LaurentNum {
        LaurentNum { window: p.coeffs.clone(), low: 0, exact_below: true }.normalize()
    }

    /// c * t^e, exact.
    pub fn monomial(c: FieldElem, e: i64) -> LaurentNum {
        LaurentNum { window: vec![c], low: e, exact_below: true }.normalize()
    }

    /// The top exponent, when the value is certified nonzero.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.window.is_empty() {
            None
        } else {
            Some(self.low + self.window.len() as i64 - 1)
        }
    }

    /// An upper bound on the top exponent, valid even for the uncertified
    /// all-zero window (where only |x| < q^low is known).
    pub fn top_bound(&self) -> Option<i64> {
        match self.top_exponent() {
            Some(t) => Some(t),
            None if self.exact_below => None, // exact zero: |x| = 0
            None => Some(self.low - 1),
        }
    }

    pub fn exact_below(&self) -> bool {
        self.exact_below
    }

    pub fn low_exponent(&self) -> i64 {
        self.low
    }

    /// |x| = q^top as an exponent; None = exact zero; Err when the magnitude
    /// is not certified (all certified coefficients vanish but lower ones are
    /// unknown).
    pub fn abs_exponent(&self) -> Result<Option<i64>> {
        if self.is_exact_zero() {
            return Ok(None);
        }
        match self.top_exponent() {
            Some(t) => Ok(Some(t)),
            None => Err(Error::InsufficientPrecision(self.low - 1)),
        }
    }

    pub fn coeff(&self, e: i64) -> Result<FieldElem> {
        match self.top_exponent() {
            Some(top) if e > top => Ok(FieldElem::ZERO),
            Some(_) if e >= self.low => Ok(self.window[(e - self.low) as usize]),
            _ if self.exact_below => Ok(FieldElem::ZERO),
            _ if e >= self.low => Ok(FieldElem::ZERO), // empty uncertified window, within certified zeros
            _ => Err(Error::InsufficientPrecision(e)),
        }
    }

    pub fn add(&self, rhs: &LaurentNum, fs: &FieldSpec) -> LaurentNum {
        if self.is_exact_zero() {
            return rhs.clone();
        }
        if rhs.is_exact_zero() {
            return self.clone();
        }
        let exact = self.exact_below && rhs.exact_below;
        let low = if exact {
            self.low.min(rhs.low)
        } else if self.exact_below {
            rhs.low
        } else if rhs.exact_below {
            self.low
        } else {
            self.low.max(rhs.low)
        };
        let top = self
            .top_bound()
            .unwrap_or(low - 1)
            .max(rhs.top_bound().unwrap_or(low - 1))
            .max(low - 1);
        let mut window = Vec::with_capacity((top - low + 1).max(0) as usize);
        for e in low..=top {
            let a = self.coeff(e).unwrap_or(FieldElem::ZERO);
            let b = rhs.coeff(e).unwrap_or(FieldElem::ZERO);
            window.push(fs.add(a, b));
        }
        LaurentNum { window, low, exact_below: exact }.normalize()
    }

    pub fn neg(&self, fs: &FieldSpec) -> LaurentNum {
        LaurentNum {
            window: self.window.iter().map(|&c| fs.neg(c)).collect(),
            low: self.low,
            exact_below: self.exact_below,
        }
    }

    pub fn sub(&self, rhs: &LaurentNum, fs: &FieldSpec) -> LaurentNum {
        self.add(&rhs.neg(fs), fs)
    }

    pub fn mul(&self, rhs: &LaurentNum, fs: &FieldSpec) -> LaurentNum {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return LaurentNum::zero();
        }
        let a_top = self.top_bound().expect("nonzero");
        let b_top = rhs.top_bound().expect("nonzero");
        let exact = self.exact_below && rhs.exact_below;
        let low = if exact {
            self.low + rhs.low
        } else if self.exact_below {
            rhs.low + a_top
        } else if rhs.exact_below {
            self.low + b_top
        } else {
            (self.low + b_top).max(rhs.low + a_top)
        };
        let top = a_top + b_top;
        let mut window = vec![FieldElem::ZERO; (top - low + 1).max(0) as usize];
        for (i, &a) in self.window.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.low + i as i64;
            for (j, &b) in rhs.window.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + rhs.low + j as i64;
                if e >= low {
                    let k = (e - low) as usize;
                    window[k] = fs.add(window[k], fs.mul(a, b));
                }
            }
        }
        LaurentNum { window, low, exact_below: exact }.normalize()
    }

    /// Multiply by t^k (exact shift).
    pub fn shift(&self, k: i64) -> LaurentNum {
        if self.is_exact_zero() {
            return LaurentNum::zero();
        }
        LaurentNum { window: self.window.clone(), low: self.low + k, exact_below: self.exact_below }
    }

    /// The polynomial part (coefficients of t^e, e >= 0), which requires the
    /// window to certify everything down to exponent 0.
    pub fn poly_part(&self) -> Result<Poly> {
        let top = match self.top_bound() {
            None => return Ok(Poly::zero()),
            Some(t) => t,
        };
        if top < 0 {
            return Ok(Poly::zero());
        }
        if !self.exact_below && self.low > 0 {
            return Err(Error::InsufficientPrecision(0));
        }
        let mut coeffs = vec![FieldElem::ZERO; top as usize + 1];
        for e in 0..=top {
            coeffs[e as usize] = self.coeff(e)?;
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    /// True iff |x| < q^(bound_exp), certifiably: all coefficients at
    /// exponents >= bound_exp vanish.
    pub fn abs_below(&self, bound_exp: i64) -> Result<bool> {
        match self.top_bound() {
            None => Ok(true),
            Some(t) if t < bound_exp => Ok(true),
            Some(_) if self.window.is_empty() => {
                // only |x| < q^low is known; a strictly smaller bound is
                // outside the certified window
                Err(Error::InsufficientPrecision(bound_exp))
            }
            Some(_) => Ok(false),
        }
    }
}

/// The Laurent expansion of f/r at infinity, certified down to exponent
/// low_exp: divide f * t^k by r for k = max(0, -low_exp); the quotient gives
/// every coefficient at exponents >= -k and the expansion is exact iff the
/// remainder vanishes.
pub fn expand_fraction(f: &Poly, r: &Poly, low_exp: i64, fs: &FieldSpec) -> Result<LaurentNum> {
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if f.is_zero() {
        return Ok(LaurentNum::zero());
    }
    let k = (-low_exp).max(0) as usize;
    let (quot, rem) = f.shift(k).divrem(r, fs);
    let exact = rem.is_zero();
    let top = f.deg_i() - r.deg_i();
    let mut window = vec![FieldElem::ZERO; (top - low_exp + 1).max(0) as usize];
    for (i, &c) in quot.coeffs.iter().enumerate() {
        let e = i as i64 - k as i64;
        if e >= low_exp {
            window[(e - low_exp) as usize] = c;
        }
    }
    Ok(LaurentNum::from_parts(low_exp, window, exact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn expansion_of_one_over_t() {
        let fs = f5();
        let x = expand_fraction(&Poly::one(), &Poly::t(), -3, &fs).unwrap();
        // 1/t = t^-1 exactly
        assert!(x.exact_below());
        assert_eq!(x.top_exponent(), Some(-1));
        assert_eq!(x.coeff(-1).unwrap(), FieldElem::ONE);
    }

    #[test]
    fn expansion_t_over_t2_plus_1() {
        let fs = f5();
        // t/(t^2+1) = t^-1 - t^-3 + t^-5 - ...
        let f = Poly::t();
        let r = Poly::parse("t^2+1", &fs).unwrap();
        let x = expand_fraction(&f, &r, -5, &fs).unwrap();
        assert!(!x.exact_below());
        assert_eq!(x.coeff(-1).unwrap(), FieldElem(1));
        assert_eq!(x.coeff(-2).unwrap(), FieldElem(0));
        assert_eq!(x.coeff(-3).unwrap(), FieldElem(4));
        assert_eq!(x.coeff(-4).unwrap(), FieldElem(0));
        assert_eq!(x.coeff(-5).unwrap(), FieldElem(1));
        assert!(x.coeff(-6).is_err());
    }

    #[test]
    fn mul_certification_tracks_windows() {
        let fs = f5();
        let a = expand_fraction(&Poly::one(), &Poly::t(), -4, &fs).unwrap(); // t^-1 exact
        let b = expand_fraction(&Poly::t(), &Poly::parse("t^2+1", &fs).unwrap(), -4, &fs).unwrap();
        let prod = a.mul(&b, &fs);
        // product top = -2; b certified to -4 and a = t^-1 exact, so product
        // certified down to -5
        assert_eq!(prod.top_exponent(), Some(-2));
        assert_eq!(prod.coeff(-5).unwrap(), FieldElem(0));
        assert!(prod.coeff(-6).is_err());
    }

    #[test]
    fn poly_part_roundtrip() {
        let fs = f5();
        let f = Poly::parse("t^3+2t+4", &fs).unwrap();
        let r = Poly::parse("t^2+2", &fs).unwrap();
        // f/r expanded; poly part should equal the Euclidean quotient
        let x = expand_fraction(&f, &r, -6, &fs).unwrap();
        let (q, _) = f.divrem(&r, &fs);
        assert_eq!(x.poly_part().unwrap(), q);
    }

    #[test]
    fn verify_expansion_by_multiplying_back() {
        let fs = f5();
        for fi in 0..125u128 {
            let f = Poly::from_index(fi, &fs);
            for ri in 1..125u128 {
                let r = Poly::from_index(ri, &fs);
                if r.is_zero() {
                    continue;
                }
                let x = expand_fraction(&f, &r, -6, &fs).unwrap();
                // r * (f/r) - f must be certifiably small
                let back = x.mul(&LaurentNum::from_poly(&r), &fs);
                let diff = back.sub(&LaurentNum::from_poly(&f), &fs);
                let bound = r.deg_i() - 6; // r * O(q^(-7)) error from truncation
                assert!(diff.abs_below(bound.max(-6 + r.deg_i())).unwrap(), "f={fi} r={ri}");
            }
        }
    }
}
