//! Linear solutions of x^3 + y^3 + z^3 = k: triples (a_i k + b_i) whose
//! coefficient identities make the representation hold identically in k.

use crate::algebra::{FieldElem, FieldSpec};
use crate::geometry::MultiPoly;
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSolution {
    /// pairs (a_i, b_i), i = 1..3, as element indices
    pub pairs: [(u32, u32); 3],
}

impl LinearSolution {
    /// The four coefficient identities: sum a^3 = 0, 3 sum a^2 b = 0,
    /// 3 sum a b^2 = 1, sum b^3 = 0.
    pub fn verify_coefficients(&self, fs: &FieldSpec) -> bool {
        let three = fs.scalar(3);
        let mut s30 = FieldElem::ZERO;
        let mut s21 = FieldElem::ZERO;
        let mut s12 = FieldElem::ZERO;
        let mut s03 = FieldElem::ZERO;
        for &(a, b) in &self.pairs {
            let a = FieldElem(a);
            let b = FieldElem(b);
            s30 = fs.add(s30, fs.pow(a, 3));
            s21 = fs.add(s21, fs.mul(fs.mul(a, a), b));
            s12 = fs.add(s12, fs.mul(a, fs.mul(b, b)));
            s03 = fs.add(s03, fs.pow(b, 3));
        }
        s30.is_zero()
            && fs.mul(three, s21).is_zero()
            && fs.mul(three, s12) == FieldElem::ONE
            && s03.is_zero()
    }

    /// Symbolic verification: sum (a_i k + b_i)^3 = k identically in F_q[k].
    pub fn verify_symbolic(&self, fs: &FieldSpec) -> bool {
        let k = MultiPoly::var(0, 1);
        let mut acc = MultiPoly::zero(1);
        for &(a, b) in &self.pairs {
            let lin = k
                .mul_scalar(FieldElem(a), fs)
                .add(&MultiPoly::constant(FieldElem(b), 1), fs);
            acc = acc.add(&lin.pow(3, fs), fs);
        }
        acc == k
    }
}

/// Exhaustive deterministic search for a linear solution over F_q. The search
/// records found/not-found without interpreting a miss; characteristic 3 is
/// rejected (there x^3 + y^3 + z^3 = (x+y+z)^3 collapses).
pub fn vaserstein_solve(fs: &FieldSpec) -> Result<Option<LinearSolution>> {
    if fs.p() == 3 {
        return Err(Error::CharThreeRejected);
    }
    let q = fs.q();
    let three_inv = if fs.p() == 2 { None } else { Some(fs.inv(fs.scalar(3))) };
    let _ = three_inv;
    // order: (a1, a2, a3, b1, b2) lexicographic, b3 solved where possible or
    // scanned; smallest solution wins
    for a1 in 0..q {
        for a2 in 0..q {
            for a3 in 0..q {
                let a = [FieldElem(a1), FieldElem(a2), FieldElem(a3)];
                if a.iter().any(|x| x.is_zero()) {
                    // a_i in F_q^x per the construction
                    continue;
                }
                let s30 = a.iter().fold(FieldElem::ZERO, |s, &x| fs.add(s, fs.pow(x, 3)));
                if !s30.is_zero() {
                    continue;
                }
                // b3 is pinned by the linear identity sum a_i^2 b_i = 0
                let a3sq_inv = fs.inv(fs.mul(a[2], a[2]));
                for b1 in 0..q {
                    for b2 in 0..q {
                        let partial = fs.add(
                            fs.mul(fs.mul(a[0], a[0]), FieldElem(b1)),
                            fs.mul(fs.mul(a[1], a[1]), FieldElem(b2)),
                        );
                        let b3 = fs.neg(fs.mul(partial, a3sq_inv));
                        let cand = LinearSolution { pairs: [(a1, b1), (a2, b2), (a3, b3.0)] };
                        if cand.verify_coefficients(fs) {
                            debug_assert!(cand.verify_symbolic(fs));
                            return Ok(Some(cand));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
