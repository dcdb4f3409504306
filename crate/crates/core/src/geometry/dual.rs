//! The dual form F* of a diagonal cubic, evaluated through the sign algebra
//! R[y_1..y_n]/(y_i^2 - c_i^3/a_i): the product of the 2^(n-1) linear forms
//! y_1 +- y_2 +- ... +- y_n lands in the scalar component, which doubles as a
//! self-check. This avoids ever expanding the 2.9M-monomial senary form.

use super::multipoly::MultiPoly;
use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::{Error, Result};

/// The diagonal cubic F(x) = sum a_i x_i^3 with unit coefficients.
#[derive(Clone, Debug)]
pub struct DiagonalCubic {
    pub n: usize,
    pub coeffs: Vec<FieldElem>,
}

impl DiagonalCubic {
    pub fn fermat(n: usize) -> DiagonalCubic {
        DiagonalCubic { n, coeffs: vec![FieldElem::ONE; n] }
    }

    pub fn new(coeffs: Vec<FieldElem>) -> Result<DiagonalCubic> {
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::DomainError("diagonal coefficients must be units".into()));
        }
        Ok(DiagonalCubic { n: coeffs.len(), coeffs })
    }

    pub fn eval(&self, x: &[FieldElem], fs: &FieldSpec) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            acc = fs.add(acc, fs.mul(self.coeffs[i], fs.pow(xi, 3)));
        }
        acc
    }

    pub fn eval_polys(&self, x: &[Poly], fs: &FieldSpec) -> Poly {
        let mut acc = Poly::zero();
        for (i, xi) in x.iter().enumerate() {
            acc = acc.add(&xi.pow(3, fs).mul_scalar(self.coeffs[i], fs), fs);
        }
        acc
    }

    /// grad F = (3 a_i x_i^2).
    pub fn grad_polys(&self, x: &[Poly], fs: &FieldSpec) -> Vec<Poly> {
        let three = fs.scalar(3);
        x.iter()
            .enumerate()
            .map(|(i, xi)| xi.mul(xi, fs).mul_scalar(fs.mul(three, self.coeffs[i]), fs))
            .collect()
    }

    /// deg F* = 3 * 2^(n-2).
    pub fn dual_degree(&self) -> u32 {
        3 * (1u32 << (self.n - 2))
    }
}

/// Ring operations needed by the sign algebra; implemented for O, for dual
/// numbers over O (gradients), and for multivariate polynomials (symbolic
/// identities).
pub trait SignRing: Clone {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn ring_add(&self, o: &Self, fs: &FieldSpec) -> Self;
    fn ring_mul(&self, o: &Self, fs: &FieldSpec) -> Self;
    fn ring_neg(&self, fs: &FieldSpec) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl SignRing for Poly {
    fn ring_zero(&self) -> Poly {
        Poly::zero()
    }
    fn ring_one(&self) -> Poly {
        Poly::one()
    }
    fn ring_add(&self, o: &Poly, fs: &FieldSpec) -> Poly {
        self.add(o, fs)
    }
    fn ring_mul(&self, o: &Poly, fs: &FieldSpec) -> Poly {
        self.mul(o, fs)
    }
    fn ring_neg(&self, fs: &FieldSpec) -> Poly {
        self.neg(fs)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Dual numbers a + b*eps over O, eps^2 = 0; carries first derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoly {
    pub a: Poly,
    pub b: Poly,
}

impl SignRing for DualPoly {
    fn ring_zero(&self) -> DualPoly {
        DualPoly { a: Poly::zero(), b: Poly::zero() }
    }
    fn ring_one(&self) -> DualPoly {
        DualPoly { a: Poly::one(), b: Poly::zero() }
    }
    fn ring_add(&self, o: &DualPoly, fs: &FieldSpec) -> DualPoly {
        DualPoly { a: self.a.add(&o.a, fs), b: self.b.add(&o.b, fs) }
    }
    fn ring_mul(&self, o: &DualPoly, fs: &FieldSpec) -> DualPoly {
        DualPoly {
            a: self.a.mul(&o.a, fs),
            b: self.a.mul(&o.b, fs).add(&self.b.mul(&o.a, fs), fs),
        }
    }
    fn ring_neg(&self, fs: &FieldSpec) -> DualPoly {
        DualPoly { a: self.a.neg(fs), b: self.b.neg(fs) }
    }
    fn ring_is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl SignRing for MultiPoly {
    fn ring_zero(&self) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn ring_one(&self) -> MultiPoly {
        MultiPoly::constant(FieldElem::ONE, self.vars)
    }
    fn ring_add(&self, o: &MultiPoly, fs: &FieldSpec) -> MultiPoly {
        self.add(o, fs)
    }
    fn ring_mul(&self, o: &MultiPoly, fs: &FieldSpec) -> MultiPoly {
        self.mul(o, fs)
    }
    fn ring_neg(&self, fs: &FieldSpec) -> MultiPoly {
        self.neg(fs)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Core of the dual form: given squares[i] = y_i^2 in the ring R, multiply
/// out prod over sign patterns (eps_1 = +1) of sum_i eps_i y_i and return the
/// scalar component, asserting every other component cancels.
pub fn sign_algebra_product<R: SignRing>(squares: &[R], fs: &FieldSpec) -> Result<R> {
    let n = squares.len();
    let zero = squares[0].ring_zero();
    let one = squares[0].ring_one();
    let mut comp: Vec<R> = vec![zero.clone(); 1 << n];
    comp[0] = one.clone();
    for pattern in 0..(1u32 << (n - 1)) {
        let mut next: Vec<R> = vec![zero.clone(); 1 << n];
        // multiply comp by (y_0 + sum_i eps_i y_i)
        for mask in 0..(1usize << n) {
            if comp[mask].ring_is_zero() {
                continue;
            }
            for i in 0..n {
                let neg = i > 0 && (pattern >> (i - 1)) & 1 == 1;
                let bit = 1usize << i;
                let (tmask, term) = if mask & bit == 0 {
                    (mask | bit, comp[mask].clone())
                } else {
                    (mask & !bit, comp[mask].ring_mul(&squares[i], fs))
                };
                let term = if neg { term.ring_neg(fs) } else { term };
                next[tmask] = next[tmask].ring_add(&term, fs);
            }
        }
        comp = next;
    }
    for (mask, c) in comp.iter().enumerate() {
        if mask != 0 && !c.ring_is_zero() {
            return Err(Error::DomainError(
                "sign-algebra product failed to land in the scalar component".into(),
            ));
        }
    }
    Ok(comp[0].clone())
}

/// F*(c) for c in O^n, exact. Characteristic > 3 required.
pub fn dual_eval(form: &DiagonalCubic, c: &[Poly], fs: &FieldSpec) -> Result<Poly> {
    fs.char_gt_3()?;
    assert_eq!(c.len(), form.n);
    let squares: Vec<Poly> = c
        .iter()
        .enumerate()
        .map(|(i, ci)| ci.pow(3, fs).mul_scalar(fs.inv(form.coeffs[i]), fs))
        .collect();
    sign_algebra_product(&squares, fs)
}

/// (F*(c), grad F*(c)) via dual numbers, one pass per coordinate.
pub fn dual_eval_with_grad(form: &DiagonalCubic, c: &[Poly], fs: &FieldSpec) -> Result<(Poly, Vec<Poly>)> {
    fs.char_gt_3()?;
    let value = dual_eval(form, c, fs)?;
    let three = fs.scalar(3);
    let mut grad = Vec::with_capacity(form.n);
    for j in 0..form.n {
        let squares: Vec<DualPoly> = c
            .iter()
            .enumerate()
            .map(|(i, ci)| {
                let ai_inv = fs.inv(form.coeffs[i]);
                let a = ci.pow(3, fs).mul_scalar(ai_inv, fs);
                let b = if i == j {
                    // d/dc_j (c_j^3/a_j) = 3 c_j^2 / a_j
                    ci.mul(ci, fs).mul_scalar(fs.mul(three, ai_inv), fs)
                } else {
                    Poly::zero()
                };
                DualPoly { a, b }
            })
            .collect();
        let out = sign_algebra_product(&squares, fs)?;
        debug_assert_eq!(out.a, value);
        grad.push(out.b);
    }
    Ok((value, grad))
}

/// Symbolic F* for small n: c_i are the variables of a MultiPoly ring.
pub fn dual_symbolic(form: &DiagonalCubic, fs: &FieldSpec) -> Result<MultiPoly> {
    fs.char_gt_3()?;
    let n = form.n;
    let squares: Vec<MultiPoly> = (0..n)
        .map(|i| MultiPoly::var(i, n).pow(3, fs).mul_scalar(fs.inv(form.coeffs[i]), fs))
        .collect();
    sign_algebra_product(&squares, fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn dual_n3_ternary_examples() {
        let fs = f5();
        let form = DiagonalCubic::fermat(3);
        // c = (1,1,1): (1 + 1 - 1)^2 - 4 = -3
        let c = vec![Poly::one(), Poly::one(), Poly::one()];
        let v = dual_eval(&form, &c, &fs).unwrap();
        assert_eq!(v, Poly::constant(fs.neg(FieldElem(3))));
        // c = (1,1,0): a sign factor vanishes
        let c = vec![Poly::one(), Poly::one(), Poly::zero()];
        assert!(dual_eval(&form, &c, &fs).unwrap().is_zero());
    }

    #[test]
    fn dual_matches_closed_form_n3() {
        let fs = f5();
        let form = DiagonalCubic::fermat(3);
        // closed form (c1^3 + c2^3 - c3^3)^2 - 4 c1^3 c2^3
        for idx in 0..125u128 {
            let c1 = Poly::from_index(idx % 5, &fs);
            let c2 = Poly::from_index((idx / 5) % 5 + 5, &fs);
            let c3 = Poly::from_index(idx / 25 % 5 * 3 + 1, &fs);
            let v = dual_eval(&form, &[c1.clone(), c2.clone(), c3.clone()], &fs).unwrap();
            let s = c1.pow(3, &fs).add(&c2.pow(3, &fs), &fs).sub(&c3.pow(3, &fs), &fs);
            let closed = s.mul(&s, &fs).sub(
                &c1.pow(3, &fs).mul(&c2.pow(3, &fs), &fs).mul_scalar(FieldElem(4), &fs),
                &fs,
            );
            assert_eq!(v, closed);
        }
    }

    #[test]
    fn dual_homogeneity_n6() {
        let fs = f5();
        let form = DiagonalCubic::fermat(6);
        let c: Vec<Poly> = (1..=6u128).map(|i| Poly::from_index(i * 7 + 1, &fs)).collect();
        let v = dual_eval(&form, &c, &fs).unwrap();
        // scale by lambda = t: F*(t c) = t^48 F*(c)
        let tc: Vec<Poly> = c.iter().map(|ci| ci.mul(&Poly::t(), &fs)).collect();
        let vt = dual_eval(&form, &tc, &fs).unwrap();
        assert_eq!(vt, v.shift(48));
        assert_eq!(form.dual_degree(), 48);
    }

    #[test]
    fn dual_symmetric_under_permutations() {
        let fs = f5();
        let form = DiagonalCubic::fermat(6);
        let c: Vec<Poly> = vec![
            Poly::parse("t", &fs).unwrap(),
            Poly::parse("t+1", &fs).unwrap(),
            Poly::parse("2", &fs).unwrap(),
            Poly::parse("t+3", &fs).unwrap(),
            Poly::parse("1", &fs).unwrap(),
            Poly::parse("3t", &fs).unwrap(),
        ];
        let v = dual_eval(&form, &c, &fs).unwrap();
        let mut perm = c.clone();
        perm.swap(0, 4);
        perm.swap(2, 5);
        assert_eq!(dual_eval(&form, &perm, &fs).unwrap(), v);
    }

    #[test]
    fn gradient_matches_symbolic_n3() {
        let fs = f5();
        let form = DiagonalCubic::fermat(3);
        let sym = dual_symbolic(&form, &fs).unwrap();
        let c = vec![
            Poly::parse("t+1", &fs).unwrap(),
            Poly::parse("2t", &fs).unwrap(),
            Poly::parse("3", &fs).unwrap(),
        ];
        let (v, grad) = dual_eval_with_grad(&form, &c, &fs).unwrap();
        assert_eq!(v, sym.eval_polys(&c, &fs));
        // compare with symbolic partials
        for j in 0..3 {
            let mut dj = MultiPoly::zero(3);
            for (e, &coef) in &sym.terms {
                if e[j] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                dj.insert(e2, fs.mul(coef, fs.scalar(e[j] as u64)), &fs);
            }
            assert_eq!(grad[j], dj.eval_polys(&c, &fs), "partial {j}");
        }
    }
}
