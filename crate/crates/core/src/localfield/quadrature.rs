//! Haar-measure quadrature for locally constant integrands on product boxes.
//!
//! The caller must certify a constancy scale m: the integrand is constant on
//! cosets of radius q^-m inside the box. The quadrature then evaluates one
//! representative per coset and the result q^(-m*dim) * sum is exact, never a
//! float approximation. Refusing heuristic scales is the anti-drift core of
//! the delta-method verifier.

use super::cyclo::CycInt;
use super::laurent::LaurentNum;
use crate::algebra::{FieldElem, FieldSpec};
use crate::{Budget, Error, Result};

/// An exact value c * q^(-neg_exp) with c in Z[zeta_p].
#[derive(Clone, Debug)]
pub struct QScaled {
    pub cyc: CycInt,
    pub neg_exp: i64,
}

impl QScaled {
    pub fn zero(p: u32) -> QScaled {
        QScaled { cyc: CycInt::zero(p), neg_exp: 0 }
    }

    pub fn integer(n: i128, p: u32) -> QScaled {
        QScaled { cyc: CycInt::integer(n, p), neg_exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.cyc.is_zero()
    }

    fn aligned(&self, other: &QScaled, q: u32) -> (CycInt, CycInt, i64) {
        let e = self.neg_exp.max(other.neg_exp);
        let a = self.cyc.mul_int((q as i128).pow((e - self.neg_exp) as u32));
        let b = other.cyc.mul_int((q as i128).pow((e - other.neg_exp) as u32));
        (a, b, e)
    }

    pub fn add(&self, other: &QScaled, q: u32) -> QScaled {
        let (a, b, e) = self.aligned(other, q);
        QScaled { cyc: a.add(&b), neg_exp: e }
    }

    pub fn sub(&self, other: &QScaled, q: u32) -> QScaled {
        let (a, b, e) = self.aligned(other, q);
        QScaled { cyc: a.sub(&b), neg_exp: e }
    }

    pub fn mul(&self, other: &QScaled) -> QScaled {
        QScaled { cyc: self.cyc.mul(&other.cyc), neg_exp: self.neg_exp + other.neg_exp }
    }

    pub fn mul_int(&self, n: i128) -> QScaled {
        QScaled { cyc: self.cyc.mul_int(n), neg_exp: self.neg_exp }
    }

    /// Scale by q^k (k may be negative).
    pub fn scale_qpow(&self, k: i64, q: u32) -> QScaled {
        if k <= 0 {
            QScaled { cyc: self.cyc.clone(), neg_exp: self.neg_exp - k }
        } else {
            QScaled { cyc: self.cyc.mul_int((q as i128).pow(k as u32)), neg_exp: self.neg_exp }
        }
    }

    pub fn eq_exact(&self, other: &QScaled, q: u32) -> bool {
        let (a, b, _) = self.aligned(other, q);
        a == b
    }

    /// Collapse to a rational number num / q^neg_exp when the cyclotomic part
    /// is a rational integer.
    pub fn as_rational(&self) -> Option<(i128, i64)> {
        self.cyc.as_integer().map(|n| (n, self.neg_exp))
    }

    pub fn to_f64(&self, q: u32) -> f64 {
        let (re, _) = self.cyc.to_complex();
        re / (q as f64).powi(self.neg_exp as i32)
    }
}

/// One coordinate of an integration box: the ball |x - center| < q^radius_exp.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: LaurentNum,
    pub radius_exp: i64,
}

impl Ball {
    pub fn measure_exponent(&self) -> i64 {
        self.radius_exp
    }
}

/// Exact integral over a product of balls of an integrand certified constant
/// on cosets of radius q^-m: q^(-m*dim) * sum over representatives.
///
/// The caller certifies m; cells with radius exponent -m must refine every
/// ball (m >= -radius_exp). Errors: UncertifiedScale if the scale does not
/// refine the box, OverBudget if the coset count exceeds the budget.
pub fn haar_quadrature<F>(
    box_: &[Ball],
    m: i64,
    budget: &Budget,
    fs: &FieldSpec,
    mut integrand: F,
) -> Result<QScaled>
where
    F: FnMut(&[LaurentNum]) -> Result<CycInt>,
{
    let dim = box_.len();
    let q = fs.q() as u128;
    let mut cells_per_dim = Vec::with_capacity(dim);
    let mut total: u128 = 1;
    for b in box_ {
        if m < -b.radius_exp {
            return Err(Error::UncertifiedScale(format!(
                "scale q^-{m} does not refine ball of radius exponent {}",
                b.radius_exp
            )));
        }
        let k = (b.radius_exp + m) as u32; // digits per coordinate
        let cells = q.pow(k);
        total = total.saturating_mul(cells);
        cells_per_dim.push(k);
    }
    budget.check_cosets(total, "haar_quadrature")?;

    let mut acc = CycInt::zero(fs.p());
    let mut point: Vec<LaurentNum> = box_.iter().map(|b| b.center.clone()).collect();
    // odometer over all cells, coordinate digits at exponents
    // [-m, center_radius_exp - 1]
    let mut digit_state: Vec<Vec<u32>> = cells_per_dim.iter().map(|&k| vec![0u32; k as usize]).collect();
    loop {
        for (i, b) in box_.iter().enumerate() {
            let k = cells_per_dim[i] as usize;
            if k == 0 {
                continue;
            }
            // delta = sum_j digit[j] * t^(-m + j)
            let window: Vec<FieldElem> = digit_state[i].iter().map(|&d| FieldElem(d)).collect();
            let delta = LaurentNum::from_parts(-m, window, true);
            point[i] = b.center.add(&delta, fs);
        }
        acc = acc.add(&integrand(&point)?);
        // increment odometer
        let mut carry = true;
        'outer: for st in digit_state.iter_mut() {
            for d in st.iter_mut() {
                *d += 1;
                if *d < fs.q() {
                    carry = false;
                    break 'outer;
                }
                *d = 0;
            }
        }
        if carry {
            break;
        }
    }
    Ok(QScaled { cyc: acc, neg_exp: m * dim as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::psi::psi;
    use crate::algebra::Poly;

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    fn torus() -> Ball {
        Ball { center: LaurentNum::zero(), radius_exp: 0 }
    }

    #[test]
    fn orthogonality_over_torus() {
        let fs = f5();
        let budget = Budget::default();
        // int_T psi(alpha * 0) = 1
        let v = haar_quadrature(&[torus()], 1, &budget, &fs, |x| {
            let prod = x[0].mul(&LaurentNum::from_poly(&Poly::zero()), &fs);
            psi(&prod, &fs)
        })
        .unwrap();
        assert!(v.eq_exact(&QScaled::integer(1, 5), 5));
        // int_T psi(alpha * t) = 0; phase alpha*t needs scale m = 2
        let v = haar_quadrature(&[torus()], 2, &budget, &fs, |x| {
            let prod = x[0].mul(&LaurentNum::from_poly(&Poly::t()), &fs);
            psi(&prod, &fs)
        })
        .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn small_ball_indicator() {
        let fs = f5();
        let budget = Budget::default();
        // int_{|alpha| < q^-2} psi(alpha t) = q^-2
        let ball = Ball { center: LaurentNum::zero(), radius_exp: -2 };
        let v = haar_quadrature(&[ball], 3, &budget, &fs, |x| {
            let prod = x[0].mul(&LaurentNum::from_poly(&Poly::t()), &fs);
            psi(&prod, &fs)
        })
        .unwrap();
        let expect = QScaled { cyc: CycInt::one(5), neg_exp: 2 };
        assert!(v.eq_exact(&expect, 5));
    }

    #[test]
    fn refinement_stability() {
        let fs = f5();
        let budget = Budget::default();
        let f = Poly::parse("t^2+3t", &fs).unwrap();
        for m in 3..=5i64 {
            let v = haar_quadrature(&[torus()], m, &budget, &fs, |x| {
                let prod = x[0].mul(&LaurentNum::from_poly(&f), &fs);
                psi(&prod, &fs)
            })
            .unwrap();
            let v3 = haar_quadrature(&[torus()], 3, &budget, &fs, |x| {
                let prod = x[0].mul(&LaurentNum::from_poly(&f), &fs);
                psi(&prod, &fs)
            })
            .unwrap();
            assert!(v.eq_exact(&v3, 5));
        }
    }

    #[test]
    fn uncertified_scale_is_rejected() {
        let fs = f5();
        let ball = Ball { center: LaurentNum::zero(), radius_exp: -2 };
        let r = haar_quadrature(&[ball], 1, &Budget::default(), &fs, |_| Ok(CycInt::one(5)));
        assert!(matches!(r, Err(Error::UncertifiedScale(_))));
        let over = haar_quadrature(
            &[torus()],
            20,
            &Budget::default(),
            &fs,
            |_| Ok(CycInt::one(5)),
        );
        assert!(matches!(over, Err(Error::OverBudget(_))));
    }
}
