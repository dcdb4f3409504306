//! The Farey dissection of the unit torus T = {|alpha| < 1}: the exact
//! partition into balls |r*alpha - a| < q^-Q indexed by coprime (a, r) with
//! r monic, |r| <= q^Q, |a| < |r|.

use super::laurent::LaurentNum;
use crate::algebra::{enumerate, FieldElem, FieldSpec, Poly};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyBall {
    pub r: Poly,
    pub a: Poly,
    /// cutoff degree Q; the ball is {alpha in T : |r alpha - a| < q^-Q}.
    pub q_cutoff: i64,
}

impl FareyBall {
    /// Haar measure as a power of q: q^-(Q + deg r).
    pub fn measure_exponent(&self) -> i64 {
        -(self.q_cutoff + self.r.deg_i())
    }

    /// Exact membership test; alpha must be certified deep enough.
    pub fn contains(&self, alpha: &LaurentNum, fs: &FieldSpec) -> Result<bool> {
        let ra = LaurentNum::from_poly(&self.r).mul(alpha, fs);
        let diff = ra.sub(&LaurentNum::from_poly(&self.a), fs);
        diff.abs_below(-self.q_cutoff)
    }
}

/// All Farey balls at cutoff Q, ordered by (deg r, index r, index a);
/// the a = 0 term appears exactly once, for r = 1 (gcd(0, 1) = 1).
pub fn farey_dissection(q_cutoff: i64, fs: &FieldSpec) -> Vec<FareyBall> {
    let mut balls = vec![];
    for r in enumerate::monic_polys_upto(q_cutoff.max(0) as usize, fs) {
        let size = r.abs(fs);
        for aidx in 0..size {
            let a = Poly::from_index(aidx, fs);
            if a.gcd(&r, fs).is_one() {
                balls.push(FareyBall { r: r.clone(), a, q_cutoff });
            }
        }
    }
    balls
}

/// Sum of ball measures, exactly, as numerator over q^(2 Q).
pub fn measure_sum_exact(balls: &[FareyBall], fs: &FieldSpec) -> (u128, i64) {
    let q = fs.q() as u128;
    let qq = balls.iter().map(|b| b.q_cutoff).max().unwrap_or(0);
    let denom_exp = 2 * qq;
    let mut num = 0u128;
    for b in balls {
        let e = denom_exp + b.measure_exponent();
        assert!(e >= 0, "ball finer than the common denominator");
        num += q.pow(e as u32);
    }
    (num, denom_exp)
}

/// Locate the unique ball containing alpha by scanning moduli: for each
/// monic r the candidate a is the polynomial part of r*alpha, and membership
/// is |r alpha - a| < q^-Q with gcd(a, r) = 1.
pub fn locate_ball(alpha: &LaurentNum, q_cutoff: i64, fs: &FieldSpec) -> Result<Vec<FareyBall>> {
    let mut hits = vec![];
    for r in enumerate::monic_polys_upto(q_cutoff.max(0) as usize, fs) {
        let ra = LaurentNum::from_poly(&r).mul(alpha, fs);
        let a = ra.poly_part()?;
        if a.deg_i() >= r.deg_i() {
            continue; // |a| < |r| fails, alpha outside T for this r
        }
        let diff = ra.sub(&LaurentNum::from_poly(&a), fs);
        if diff.abs_below(-q_cutoff)? && a.gcd(&r, fs).is_one() {
            hits.push(FareyBall { r: r.clone(), a, q_cutoff });
        }
    }
    Ok(hits)
}

/// A deterministic sample point of T at resolution q^-depth: a Laurent tail
/// with coefficients drawn from the given digits.
pub fn sample_point(digits: &[u32], fs: &FieldSpec) -> LaurentNum {
    let window: Vec<FieldElem> = digits.iter().rev().map(|&d| FieldElem(d % fs.q())).collect();
    LaurentNum::from_parts(-(digits.len() as i64), window, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1, None).unwrap()
    }

    #[test]
    fn dissection_counts_and_measure() {
        let fs = f5();
        let balls = farey_dissection(0, &fs);
        assert_eq!(balls.len(), 1);
        assert_eq!(balls[0].r, Poly::one());
        assert_eq!(balls[0].a, Poly::zero());
        assert_eq!(balls[0].measure_exponent(), 0);

        let balls = farey_dissection(1, &fs);
        assert_eq!(balls.len(), 21); // 1 + 5 * 4
        let (num, exp) = measure_sum_exact(&balls, &fs);
        assert_eq!(num, (fs.q() as u128).pow(exp as u32)); // sum = 1 exactly
    }

    #[test]
    fn membership_is_a_partition_on_samples() {
        let fs = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for q_cutoff in 0..=3i64 {
            for _ in 0..500 {
                let depth = (2 * q_cutoff + 1).max(1) as usize;
                let digits: Vec<u32> = (0..depth).map(|_| rng.random_range(0..5)).collect();
                let alpha = sample_point(&digits, &fs);
                let hits = locate_ball(&alpha, q_cutoff, &fs).unwrap();
                assert_eq!(hits.len(), 1, "alpha must lie in exactly one ball");
            }
        }
    }

    #[test]
    fn spec_membership_example() {
        let fs = f5();
        // alpha = 2 t^-1 lies in the ball of (r, a) = (t, 2) at Q = 1
        let alpha = sample_point(&[2], &fs);
        let hits = locate_ball(&alpha, 1, &fs).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].r, Poly::t());
        assert_eq!(hits[0].a, Poly::constant(FieldElem(2)));
    }
}
