//! The linear-space density sigma_(L0,w) and the extraction identity: for
//! r = r0 r1 with |r1| large, the full frequency sum of I_r(theta, c0* + r0 c*)
//! collapses to sigma_(L0,w) (|r1|/|P|)^3 exactly.

use super::integral::{integral_exact, vanishing_degree_bound, RatFn};
use super::weight::WeightSpec;
use crate::algebra::{FieldSpec, Poly};
use crate::geometry::DiagonalCubic;
use crate::localfield::{haar_quadrature, Ball, CycInt, LaurentNum, QScaled};
use crate::{Budget, Error, Result};
use serde::Serialize;

/// sigma_(L0,w) = int w(z1, z2, z3, -z1, -z2, -z3) dz, by exact quadrature on
/// the z-slice. n = 6 weights only.
pub fn sigma_l0(w: &WeightSpec, fs: &FieldSpec) -> Result<QScaled> {
    if w.n != 6 {
        return Err(Error::DomainError("sigma_(L0,w) needs a senary weight".into()));
    }
    let budget = Budget::default();
    let mut acc = QScaled::integer(1, fs.p());
    for i in 0..3 {
        // measure of {z : |z - x0_i| < q^-L and |-z - x0_(i+3)| < q^-L}
        let ball = w.ball(i);
        let m = w.l + 1;
        let v = haar_quadrature(&[ball], m, &budget, fs, |pt| {
            let neg = pt[0].neg(fs);
            let minus_center = LaurentNum::from_poly(&Poly::constant(w.x0[i + 3]));
            let diff = neg.sub(&minus_center, fs);
            Ok(if diff.abs_below(-w.l)? { CycInt::one(fs.p()) } else { CycInt::zero(fs.p()) })
        })?;
        acc = acc.mul(&v);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct LinSpaceReport {
    pub r0: String,
    pub r1: String,
    pub c0: Vec<String>,
    pub in_threshold: bool,
    pub lhs: (i128, i64),
    pub rhs: (i128, i64),
    pub equal: bool,
    pub c_terms: usize,
}

/// The smallest |r1|/|P| ratio exponent guaranteeing w(M(r1 b / P, z)) = 0
/// for all b != 0, from the support geometry: along pair i the y-coordinate
/// equals x_i + x_(i+3), which on the support has absolute value below
/// max(q^(-L), |x0_i + x0_(i+3)|).
pub fn extraction_threshold(w: &WeightSpec, fs: &FieldSpec) -> i64 {
    let mut max_allowed = -(w.l); // |y| < q^(-L)
    for i in 0..3 {
        let s = fs.add(w.x0[i], w.x0[i + 3]);
        if !s.is_zero() {
            max_allowed = max_allowed.max(1); // |y| can reach q^0 = 1, need strict >
        }
    }
    // need |r1| / |P| > q^(max_allowed - 1) i.e. >= q^(max_allowed),
    // and |y| < q^(-L) is a strict bound so |r1|/|P| >= q^(-L) suffices;
    // return the exponent C with the guarantee |r1| >= q^C |P|
    max_allowed
}

/// Check the extraction identity
/// sum over c in O^3 of I_(r0 r1)(theta, c0* + r0 c*) =
/// sigma_(L0,w) (|r1| / |P|)^3, exactly. Below threshold, both sides are
/// reported without assertion.
pub fn linspace_extract_check(
    r0: &Poly,
    r1: &Poly,
    c0: &[Poly; 3],
    theta: &RatFn,
    w: &WeightSpec,
    p: &Poly,
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<LinSpaceReport> {
    if w.n != 6 || form.n != 6 {
        return Err(Error::DomainError("linear-space extraction needs n = 6".into()));
    }
    let r = r0.mul(r1, fs);
    let in_threshold = r1.deg_i() - p.deg_i() >= extraction_threshold(w, fs);

    // the frequency sum factors over the three pairs: for each i the factor is
    // sum over c_i in O of J_i(d_i) J_(i+3)(d_i) with d_i = c0_i + r0 c_i
    let theta_sup = theta.abs_exponent();
    let bound = vanishing_degree_bound(theta_sup, p, r.deg_i(), w.l);
    let mut lhs = QScaled::integer(1, fs.p());
    let mut c_terms = 0usize;
    for i in 0..3 {
        let mut factor = QScaled::zero(fs.p());
        // d_i = c0_i + r0 c_i must satisfy deg d_i <= bound for a nonzero
        // integral; enumerate c_i accordingly (plus a guard shell)
        let c_deg_bound = (bound - r0.deg_i()).max(c0[i].deg_i() - r0.deg_i()).max(-1) + 1;
        let count = (fs.q() as u128).pow((c_deg_bound + 1).max(0) as u32);
        for idx in 0..count {
            let ci = Poly::from_index(idx, fs);
            let di = c0[i].add(&r0.mul(&ci, fs), fs);
            let c6: Vec<Poly> = (0..6)
                .map(|k| if k % 3 == i { di.clone() } else { Poly::zero() })
                .collect();
            // product of the two paired coordinate factors J_i J_(i+3):
            // evaluate the full 6-dim integral with the other pairs' c = 0 and
            // divide out their (c = 0) factors; cheaper: compute the two
            // 1-dim factors directly through integral_exact on a 2-dim weight
            let w2 = WeightSpec::new(vec![w.x0[i], w.x0[i + 3]], w.l, crate::algebra::FieldElem::ONE)
                .unwrap_or_else(|_| w.clone());
            let form2 = DiagonalCubic::new(vec![form.coeffs[i], form.coeffs[i + 3]])?;
            let v = integral_exact(
                &r,
                theta,
                &[di.clone(), di.clone()],
                &w2,
                p,
                &form2,
                fs,
                budget,
            )?;
            let _ = c6;
            if !v.is_zero() {
                c_terms += 1;
                factor = factor.add(&v, fs.q());
            }
        }
        lhs = lhs.mul(&factor);
    }

    // rhs = sigma_(L0,w) (|r1|/|P|)^3
    let sigma = sigma_l0(w, fs)?;
    let rhs = sigma.scale_qpow(3 * (r1.deg_i() - p.deg_i()), fs.q());
    let equal = lhs.eq_exact(&rhs, fs.q());
    Ok(LinSpaceReport {
        r0: r0.display("t"),
        r1: r1.display("t"),
        c0: c0.iter().map(|x| x.display("t")).collect(),
        in_threshold,
        lhs: rational(&lhs),
        rhs: rational(&rhs),
        equal,
        c_terms,
    })
}

fn rational(v: &QScaled) -> (i128, i64) {
    v.cyc.as_integer().map(|n| (n, v.neg_exp)).unwrap_or((i128::MIN, v.neg_exp))
}
