//! Minimal sparse multivariate polynomials over F_q, just enough for the
//! symbolic checks in this module (plane verification, quadric bundles,
//! dual-form divisibility). Degrees in play are tiny.

use crate::algebra::{FieldElem, FieldSpec, Poly};
use std::collections::BTreeMap;

/// Sparse multivariate polynomial; keys are exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u16>, FieldElem>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> MultiPoly {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem, vars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        if !c.is_zero() {
            out.terms.insert(vec![0; vars], c);
        }
        out
    }

    pub fn var(i: usize, vars: usize) -> MultiPoly {
        let mut e = vec![0u16; vars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, FieldElem::ONE);
        MultiPoly { vars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, exps: Vec<u16>, c: FieldElem, fs: &FieldSpec) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = fs.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly, fs: &FieldSpec) -> MultiPoly {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.insert(e.clone(), c, fs);
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly, fs: &FieldSpec) -> MultiPoly {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.insert(e.clone(), fs.neg(c), fs);
        }
        out
    }

    pub fn neg(&self, fs: &FieldSpec) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, &c) in &self.terms {
            out.terms.insert(e.clone(), fs.neg(c));
        }
        out
    }

    pub fn mul(&self, rhs: &MultiPoly, fs: &FieldSpec) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &rhs.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, fs.mul(c1, c2), fs);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: FieldElem, fs: &FieldSpec) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, &a) in &self.terms {
            out.terms.insert(e.clone(), fs.mul(a, c));
        }
        out
    }

    pub fn pow(&self, e: u32, fs: &FieldSpec) -> MultiPoly {
        let mut acc = MultiPoly::constant(FieldElem::ONE, self.vars);
        for _ in 0..e {
            acc = acc.mul(self, fs);
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem], fs: &FieldSpec) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for (e, &c) in &self.terms {
            let mut term = c;
            for (i, &ei) in e.iter().enumerate() {
                term = fs.mul(term, fs.pow(point[i], ei as u64));
            }
            acc = fs.add(acc, term);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficient of var^k as a polynomial in the remaining variables
    /// (exponent of `var` set to zero in the keys).
    pub fn coeff_of(&self, var: usize, k: u16) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, &c) in &self.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.terms.insert(e2, c);
            }
        }
        out
    }

    /// Exact division with remainder by a divisor monic-in-`var` up to a unit
    /// leading coefficient (the leading coefficient in `var` must be a
    /// nonzero constant). Returns (quotient, remainder).
    pub fn divrem_in(&self, divisor: &MultiPoly, var: usize, fs: &FieldSpec) -> (MultiPoly, MultiPoly) {
        let d = divisor.degree_in(var);
        let lead = divisor.coeff_of(var, d);
        assert_eq!(lead.total_degree(), Some(0), "divisor leading coefficient must be constant");
        let lc = *lead.terms.values().next().unwrap();
        let lc_inv = fs.inv(lc);
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.vars);
        loop {
            let dr = rem.degree_in(var);
            if rem.is_zero() || dr < d {
                return (quot, rem);
            }
            // peel the top var-degree slice
            let top = rem.coeff_of(var, dr);
            let mut shift = top.mul_scalar(lc_inv, fs);
            // multiply by var^(dr - d)
            let mut shifted = MultiPoly::zero(self.vars);
            for (e, &c) in &shift.terms {
                let mut e2 = e.clone();
                e2[var] += dr - d;
                shifted.terms.insert(e2, c);
            }
            shift = shifted;
            quot = quot.add(&shift, fs);
            rem = rem.sub(&shift.mul(divisor, fs), fs);
        }
    }

    /// Substitute each variable by a univariate polynomial in t, yielding an
    /// element of O.
    pub fn eval_polys(&self, point: &[Poly], fs: &FieldSpec) -> Poly {
        let mut acc = Poly::zero();
        for (e, &c) in &self.terms {
            let mut term = Poly::constant(c);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&point[i].pow(ei as u64, fs), fs);
                }
            }
            acc = acc.add(&term, fs);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_in_main_variable() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        // f = (x0^3 + x1^3 + x2^3), g = x2 + x0: f mod g should vanish at x2 = -x0... no:
        // check f = q*g + r and deg_x2(r) < 1
        let x0 = MultiPoly::var(0, 3);
        let x1 = MultiPoly::var(1, 3);
        let x2 = MultiPoly::var(2, 3);
        let f = x0.pow(3, &fs).add(&x1.pow(3, &fs), &fs).add(&x2.pow(3, &fs), &fs);
        let g = x2.add(&x0, &fs);
        let (q, r) = f.divrem_in(&g, 2, &fs);
        assert!(r.degree_in(2) == 0);
        assert_eq!(q.mul(&g, &fs).add(&r, &fs), f);
        // x0^3 + x1^3 + x2^3 = (x2 + x0)(...) + (x1^3) since x2^3 + x0^3 = (x2+x0)(..)
        let x1cubed = x1.pow(3, &fs);
        assert_eq!(r, x1cubed);
    }
}
