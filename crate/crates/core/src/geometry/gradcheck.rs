//! The Gauss-map divisibility F(x) | F*(grad F(x)): proven by exact
//! multivariate division for n = 3, and audited on found zeros of F for n = 6.

use super::dual::{dual_eval, dual_symbolic, DiagonalCubic};
use super::multipoly::MultiPoly;
use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::{Error, Result};

#[derive(Debug)]
pub struct GradDivisibilityReport {
    pub n: usize,
    /// symbolic quotient F*(grad F)/F when n = 3
    pub symbolic_quotient: Option<MultiPoly>,
    /// number of zeros x of F that were checked (n = 6 path)
    pub zeros_checked: usize,
    pub violations: usize,
}

pub fn grad_divisibility_check(form: &DiagonalCubic, fs: &FieldSpec) -> Result<GradDivisibilityReport> {
    fs.char_gt_3()?;
    match form.n {
        3 => {
            let n = 3;
            // F and grad F symbolically
            let f: MultiPoly = (0..n).fold(MultiPoly::zero(n), |acc, i| {
                acc.add(&MultiPoly::var(i, n).pow(3, fs).mul_scalar(form.coeffs[i], fs), fs)
            });
            let three = fs.scalar(3);
            let grads: Vec<MultiPoly> = (0..n)
                .map(|i| MultiPoly::var(i, n).pow(2, fs).mul_scalar(fs.mul(three, form.coeffs[i]), fs))
                .collect();
            // F*(grad F) by substituting into the symbolic dual form
            let dual = dual_symbolic(form, fs)?;
            let mut composed = MultiPoly::zero(n);
            for (e, &c) in &dual.terms {
                let mut term = MultiPoly::constant(c, n);
                for (i, &ei) in e.iter().enumerate() {
                    term = term.mul(&grads[i].pow(ei as u32, fs), fs);
                }
                composed = composed.add(&term, fs);
            }
            // divide by F in the last variable (F is monic there up to a unit)
            let (q, r) = composed.divrem_in(&f, n - 1, fs);
            if !r.is_zero() {
                return Err(Error::DomainError("F does not divide F*(grad F) symbolically".into()));
            }
            Ok(GradDivisibilityReport { n, symbolic_quotient: Some(q), zeros_checked: 0, violations: 0 })
        }
        6 => {
            // evaluation audit over all F_q-zeros with a t-linear twist
            let mut zeros_checked = 0;
            let mut violations = 0;
            for idx in 0..(fs.q() as u64).pow(6) {
                let mut x = [FieldElem::ZERO; 6];
                let mut k = idx;
                for xi in &mut x {
                    *xi = FieldElem((k % fs.q() as u64) as u32);
                    k /= fs.q() as u64;
                }
                if form.eval(&x, fs) != FieldElem::ZERO {
                    continue;
                }
                zeros_checked += 1;
                let xp: Vec<Poly> = x.iter().map(|&c| Poly::constant(c)).collect();
                let grad = form.grad_polys(&xp, fs);
                let dual_at_grad = dual_eval(form, &grad, fs)?;
                if !dual_at_grad.is_zero() {
                    violations += 1;
                }
                if zeros_checked >= 2000 {
                    break;
                }
            }
            Ok(GradDivisibilityReport { n: 6, symbolic_quotient: None, zeros_checked, violations })
        }
        n => Err(Error::DomainError(format!("grad divisibility check supports n in {{3, 6}}, got {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_division_n3() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(3);
        let rep = grad_divisibility_check(&form, &fs).unwrap();
        let q = rep.symbolic_quotient.unwrap();
        // quotient of a degree-12 by a degree-3 form
        assert_eq!(q.total_degree(), Some(9));
    }

    #[test]
    fn spec_point_examples_n3() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(3);
        // x = (1, -1, 0): F = 0 and F*(grad F) = 0
        for x in [[1u32, 4, 0], [1, 1, 2]] {
            let xe = [FieldElem(x[0]), FieldElem(x[1]), FieldElem(x[2])];
            assert_eq!(form.eval(&xe, &fs), FieldElem::ZERO);
            let xp: Vec<Poly> = xe.iter().map(|&c| Poly::constant(c)).collect();
            let grad = form.grad_polys(&xp, &fs);
            assert!(dual_eval(&form, &grad, &fs).unwrap().is_zero());
        }
    }

    #[test]
    fn evaluation_audit_n6() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        let rep = grad_divisibility_check(&form, &fs).unwrap();
        assert!(rep.zeros_checked > 0);
        assert_eq!(rep.violations, 0);
    }
}
