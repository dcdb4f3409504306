//! The indicator weights of the counting problem: w(x) = 1 iff
//! |x - x_0| < q^(-L), centered at a point with unit coordinates so the
//! Hessian is invertible on the support.

use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::localfield::{Ball, LaurentNum};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct WeightSpec {
    pub n: usize,
    pub x0: Vec<FieldElem>,
    /// radius exponent: the support is the product of balls of radius q^(-l)
    pub l: i64,
    /// whether F(x0) = 0 (informational; the delta identity is exact either way)
    pub centered_on_zero: bool,
}

impl WeightSpec {
    pub fn new(x0: Vec<FieldElem>, l: i64, f_at_x0: FieldElem) -> Result<WeightSpec> {
        if x0.iter().any(|c| c.is_zero()) {
            return Err(Error::DomainError(
                "weight centers need unit coordinates (Hessian condition)".into(),
            ));
        }
        if l < 0 {
            return Err(Error::DomainError("radius parameter L must be >= 0".into()));
        }
        Ok(WeightSpec { n: x0.len(), x0, l, centered_on_zero: f_at_x0.is_zero() })
    }

    /// The support ball of coordinate i.
    pub fn ball(&self, i: usize) -> Ball {
        Ball {
            center: LaurentNum::from_poly(&Poly::constant(self.x0[i])),
            radius_exp: -self.l,
        }
    }

    /// Exact membership of a point of K_inf^n.
    pub fn contains(&self, x: &[LaurentNum], fs: &FieldSpec) -> Result<bool> {
        for i in 0..self.n {
            let diff = x[i].sub(&self.ball(i).center, fs);
            if !diff.abs_below(-self.l)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice points x in O^n with w(x / P) = 1: x = P x0 + e with
    /// |e_i| < |P| q^(-L), enumerated deterministically.
    pub fn lattice_points(&self, p: &Poly, fs: &FieldSpec) -> Vec<Vec<Poly>> {
        let free = (p.deg_i() - self.l).max(0) as u32; // e_i has degree < free
        let count = (fs.q() as u128).pow(free);
        let mut out = Vec::new();
        let mut idx = vec![0u128; self.n];
        loop {
            let x: Vec<Poly> = (0..self.n)
                .map(|i| {
                    let e = Poly::from_index(idx[i], fs);
                    p.mul_scalar(self.x0[i], fs).add(&e, fs)
                })
                .collect();
            out.push(x);
            let mut done = true;
            for v in idx.iter_mut() {
                *v += 1;
                if *v < count {
                    done = false;
                    break;
                }
                *v = 0;
            }
            if done {
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_points_at_p_equals_t() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        // x0 = (1, 1, 2): F(x0) = 1 + 1 + 8 = 10 = 0 mod 5
        let w = WeightSpec::new(vec![FieldElem(1), FieldElem(1), FieldElem(2)], 0, FieldElem::ZERO)
            .unwrap();
        let pts = w.lattice_points(&Poly::t(), &fs);
        assert_eq!(pts.len(), 125);
        // each point is x0 t + constant
        for x in &pts {
            assert!(x.iter().all(|xi| xi.deg_i() == 1));
        }
        // P = 1: only the center
        let pts = w.lattice_points(&Poly::one(), &fs);
        assert_eq!(pts.len(), 1);
    }

    #[test]
    fn zero_coordinate_rejected() {
        assert!(WeightSpec::new(vec![FieldElem(1), FieldElem(0)], 0, FieldElem::ZERO).is_err());
    }
}
