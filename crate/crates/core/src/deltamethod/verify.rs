//! The delta-method identity at desk scale: the weighted lattice count on the
//! left, the full (r, c)-sum of S_r(c) I_r(c) on the right, compared exactly.
//! This equality holding on every in-budget instance is the repository's
//! flagship exactness property.

use super::integral::{integral_avg, vanishing_degree_bound};
use super::weight::WeightSpec;
use crate::algebra::{enumerate, FieldSpec, Poly};
use crate::expsum::expsum_direct;
use crate::geometry::{dual_eval, plane_lattice_points, upsilon_enumerate, DiagonalCubic};
use crate::localfield::QScaled;
use crate::{Budget, Result};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub q: u32,
    pub n: usize,
    pub p: String,
    pub q_cutoff: i64,
    pub lhs: u128,
    /// rhs as an exact rational: numerator over q^k
    pub rhs_num: i128,
    pub rhs_den_exp: i64,
    pub equal: bool,
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermSplit {
    pub report: DeltaReport,
    /// exact rationals num / q^k for the three classes
    pub m_term: (i128, i64),
    pub e1_term: (i128, i64),
    pub e2_term: (i128, i64),
    /// the partition M + E1 + E2 = lhs, checked exactly
    pub partition_exact: bool,
    /// lattice count on the union of Upsilon planes (n = 6 only)
    pub upsilon_lattice_count: Option<u128>,
    /// sigma_(L0,w) as an exact rational (n = 6 only)
    pub sigma_l0: Option<(i128, i64)>,
}

/// Enumerate the frequency box for a given |r|-class: all c with each
/// coordinate degree within the exact vanishing bound.
fn frequency_box(bound: i64, n: usize, fs: &FieldSpec) -> Vec<Vec<Poly>> {
    if bound < -1 {
        return vec![];
    }
    let coord = (fs.q() as u128).pow((bound + 1) as u32);
    let mut out = vec![];
    let mut idx = vec![0u128; n];
    loop {
        out.push(idx.iter().map(|&i| Poly::from_index(i, fs)).collect());
        let mut done = true;
        for v in idx.iter_mut() {
            *v += 1;
            if *v < coord {
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

/// Both sides of the delta identity, exactly. Returns (lhs, rhs, per-class
/// partial sums) where the classes split c by the dual form: 0 for c = 0,
/// 1 for F*(c) != 0, 2 for the dual variety.
fn delta_sides(
    p: &Poly,
    w: &WeightSpec,
    q_cutoff: i64,
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<(u128, QScaled, [QScaled; 3])> {
    let n = w.n;
    let candidates = w.lattice_points(p, fs);
    budget.check_memory(candidates.len() as u128, "delta_verify lattice side")?;
    let lhs = candidates.iter().filter(|x| form.eval_polys(x, fs).is_zero()).count() as u128;

    // rhs: |P|^n sum over r. The averaged integral depends on r only through
    // |r| when L = 0; for L > 0 fall back to per-r integrals.
    let q = fs.q();
    let mut rhs = QScaled::zero(fs.p());
    let mut classes = [QScaled::zero(fs.p()), QScaled::zero(fs.p()), QScaled::zero(fs.p())];
    for r_deg in 0..=q_cutoff {
        let theta_sup = Some(-(q_cutoff + r_deg) - 1);
        let bound = vanishing_degree_bound(theta_sup, p, r_deg, w.l);
        let cbox = frequency_box(bound, n, fs);
        if cbox.is_empty() {
            continue;
        }
        let class_rep = Poly::t().pow(r_deg as u64, fs);
        let mut integral_cache: BTreeMap<Vec<u128>, QScaled> = BTreeMap::new();
        for r in enumerate::monic_polys(r_deg as usize, fs) {
            for c in &cbox {
                let key: Vec<u128> = c.iter().map(|ci| ci.to_index(fs)).collect();
                let int_val = if w.l == 0 {
                    match integral_cache.entry(key) {
                        std::collections::btree_map::Entry::Occupied(o) => o.get().clone(),
                        std::collections::btree_map::Entry::Vacant(v) => v
                            .insert(integral_avg(&class_rep, c, w, p, q_cutoff, form, fs, budget)?)
                            .clone(),
                    }
                } else {
                    integral_avg(&r, c, w, p, q_cutoff, form, fs, budget)?
                };
                if int_val.is_zero() {
                    continue;
                }
                let s = expsum_direct(&r, c, form, fs, budget)?;
                if s.real_value == 0 {
                    continue;
                }
                // |P|^n |r|^(-n) S_r(c) I_r(c)
                let scale_exp = n as i64 * (p.deg_i() - r_deg);
                let term = int_val.mul_int(s.real_value).scale_qpow(scale_exp, q);
                rhs = rhs.add(&term, q);
                let class = if c.iter().all(|ci| ci.is_zero()) {
                    0
                } else if dual_eval(form, c, fs)?.is_zero() {
                    2
                } else {
                    1
                };
                classes[class] = classes[class].add(&term, q);
            }
        }
    }
    Ok((lhs, rhs, classes))
}

fn qscaled_to_rational(v: &QScaled) -> (i128, i64) {
    let n = v.cyc.as_integer().expect("delta-method terms collapse to rationals");
    (n, v.neg_exp)
}

pub fn delta_verify(
    p: &Poly,
    w: &WeightSpec,
    q_cutoff: i64,
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<DeltaReport> {
    let t0 = std::time::Instant::now();
    let (lhs, rhs, _) = delta_sides(p, w, q_cutoff, form, fs, budget)?;
    let equal = rhs.eq_exact(&QScaled::integer(lhs as i128, fs.p()), fs.q());
    let (rhs_num, rhs_den_exp) = qscaled_to_rational(&rhs);
    Ok(DeltaReport {
        q: fs.q(),
        n: w.n,
        p: p.display("t"),
        q_cutoff,
        lhs,
        rhs_num,
        rhs_den_exp,
        equal,
        runtime_ms: t0.elapsed().as_millis(),
    })
}

/// The cutoff |P|^(3/2) ~ q^Q; both rounding conventions are admissible (the
/// identity is exact for every Q >= 0).
pub fn default_cutoff(p: &Poly, ceil: bool) -> i64 {
    let d = 3 * p.deg_i();
    if ceil {
        (d + 1) / 2
    } else {
        d / 2
    }
}

pub fn term_split(
    p: &Poly,
    w: &WeightSpec,
    q_cutoff: i64,
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<TermSplit> {
    let t0 = std::time::Instant::now();
    let (lhs, rhs, classes) = delta_sides(p, w, q_cutoff, form, fs, budget)?;
    let equal = rhs.eq_exact(&QScaled::integer(lhs as i128, fs.p()), fs.q());
    let total = classes[0].add(&classes[1], fs.q()).add(&classes[2], fs.q());
    let partition_exact = total.eq_exact(&QScaled::integer(lhs as i128, fs.p()), fs.q());

    let (upsilon_lattice_count, sigma) = if w.n == 6 {
        let planes = upsilon_enumerate(form, fs)?;
        let mut points: std::collections::BTreeSet<Vec<Poly>> = Default::default();
        // lattice points on the planes with w(x/P) = 1; parameters of degree
        // <= deg P cover every candidate since each coordinate is a unit
        // multiple of a parameter
        let count = (fs.q() as u128).pow(p.deg_i() as u32 + 1);
        for plane in &planes {
            for x in plane_lattice_points(plane, 0..count, fs) {
                let inside = x.iter().enumerate().all(|(i, xi)| {
                    let diff = xi.sub(&p.mul_scalar(w.x0[i], fs), fs);
                    diff.is_zero() || diff.deg_i() < p.deg_i() - w.l
                });
                if inside {
                    points.insert(x.to_vec());
                }
            }
        }
        let sig = super::linspace::sigma_l0(w, fs)?;
        (Some(points.len() as u128), Some(qscaled_to_rational(&sig)))
    } else {
        (None, None)
    };

    let (rhs_num, rhs_den_exp) = qscaled_to_rational(&rhs);
    Ok(TermSplit {
        report: DeltaReport {
            q: fs.q(),
            n: w.n,
            p: p.display("t"),
            q_cutoff,
            lhs,
            rhs_num,
            rhs_den_exp,
            equal,
            runtime_ms: t0.elapsed().as_millis(),
        },
        m_term: qscaled_to_rational(&classes[0]),
        e1_term: qscaled_to_rational(&classes[1]),
        e2_term: qscaled_to_rational(&classes[2]),
        partition_exact,
        upsilon_lattice_count,
        sigma_l0: sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldElem;

    #[test]
    fn delta_identity_trivial_p_one() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(3);
        let w = WeightSpec::new(vec![FieldElem(1), FieldElem(1), FieldElem(2)], 0, FieldElem::ZERO)
            .unwrap();
        let rep = delta_verify(&Poly::one(), &w, 0, &form, &fs, &Budget::default()).unwrap();
        assert_eq!(rep.lhs, 1); // the center itself solves F = 0
        assert!(rep.equal, "rhs = {}/q^{}", rep.rhs_num, rep.rhs_den_exp);
    }

    #[test]
    fn delta_identity_q5_p_t() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(3);
        let w = WeightSpec::new(vec![FieldElem(1), FieldElem(1), FieldElem(2)], 0, FieldElem::ZERO)
            .unwrap();
        let rep = delta_verify(&Poly::t(), &w, default_cutoff(&Poly::t(), true), &form, &fs, &Budget::default())
            .unwrap();
        assert!(rep.equal, "lhs = {}, rhs = {}/q^{}", rep.lhs, rep.rhs_num, rep.rhs_den_exp);
        assert!(rep.lhs > 0);
    }

    #[test]
    fn term_split_partitions_exactly() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(3);
        let w = WeightSpec::new(vec![FieldElem(1), FieldElem(1), FieldElem(2)], 0, FieldElem::ZERO)
            .unwrap();
        let split = term_split(&Poly::t(), &w, 2, &form, &fs, &Budget::default()).unwrap();
        assert!(split.report.equal);
        assert!(split.partition_exact);
    }
}
