//! The finite set Upsilon of 3-dimensional linear spaces on the Fermat-type
//! cubic in 6 variables: pairing-type spaces x_i + w x_j = 0 with w^3 = a_j/a_i,
//! each verified symbolically.

use super::dual::DiagonalCubic;
use super::multipoly::MultiPoly;
use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::Result;

/// A plane given by three disjoint coordinate pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSpace {
    /// (i, j, w): the constraint x_i + w x_j = 0 with i < j.
    pub pairs: [(usize, usize, FieldElem); 3],
    /// 3x6 basis over F_q; row k spans the free parameter of pair k.
    pub basis: [[FieldElem; 6]; 3],
}

impl PlaneSpace {
    fn from_pairs(pairs: [(usize, usize, FieldElem); 3], fs: &FieldSpec) -> PlaneSpace {
        let mut basis = [[FieldElem::ZERO; 6]; 3];
        for (k, &(i, j, w)) in pairs.iter().enumerate() {
            // x_j free = 1, x_i = -w
            basis[k][j] = FieldElem::ONE;
            basis[k][i] = fs.neg(w);
        }
        PlaneSpace { pairs, basis }
    }

    /// Verify F restricted to the span vanishes identically, by expanding
    /// F(sum_k lambda_k b_k) as a cubic in the three parameters.
    pub fn verify(&self, form: &DiagonalCubic, fs: &FieldSpec) -> bool {
        let mut coords: Vec<MultiPoly> = vec![MultiPoly::zero(3); 6];
        for (k, row) in self.basis.iter().enumerate() {
            for (m, &c) in row.iter().enumerate() {
                coords[m] = coords[m].add(&MultiPoly::var(k, 3).mul_scalar(c, fs), fs);
            }
        }
        let mut f_restricted = MultiPoly::zero(3);
        for (m, coord) in coords.iter().enumerate() {
            f_restricted = f_restricted.add(&coord.pow(3, fs).mul_scalar(form.coeffs[m], fs), fs);
        }
        f_restricted.is_zero()
    }

    /// Is the canonical space L0: x_1 + x_4 = x_2 + x_5 = x_3 + x_6 = 0?
    pub fn is_l0(&self) -> bool {
        self.pairs == [(0, 3, FieldElem::ONE), (1, 4, FieldElem::ONE), (2, 5, FieldElem::ONE)]
    }

    /// c* o v for all basis rows v: zero iff c* is orthogonal to the plane.
    pub fn pairing(&self, c_star: &[Poly; 6], fs: &FieldSpec) -> [Poly; 3] {
        let mut out = [Poly::zero(), Poly::zero(), Poly::zero()];
        for (k, row) in self.basis.iter().enumerate() {
            let mut acc = Poly::zero();
            for (m, &b) in row.iter().enumerate() {
                acc = acc.add(&c_star[m].mul_scalar(b, fs), fs);
            }
            out[k] = acc;
        }
        out
    }

    pub fn contains_dual(&self, c_star: &[Poly; 6], fs: &FieldSpec) -> bool {
        self.pairing(c_star, fs).iter().all(|p| p.is_zero())
    }
}

/// All pairing-type planes on the diagonal cubic, each verified symbolically.
/// Includes L0 for the Fermat form. Characteristic > 3 required.
pub fn upsilon_enumerate(form: &DiagonalCubic, fs: &FieldSpec) -> Result<Vec<PlaneSpace>> {
    fs.char_gt_3()?;
    assert_eq!(form.n, 6);
    let mut out = vec![];
    // perfect matchings of {0..5}: fix the smallest unused index each time
    let matchings = perfect_matchings();
    for m in matchings {
        // choices of w per pair with w^3 = a_j / a_i
        let mut options: Vec<Vec<FieldElem>> = vec![];
        for &(i, j) in &m {
            let target = fs.div(form.coeffs[j], form.coeffs[i]);
            let ws: Vec<FieldElem> =
                fs.elements().filter(|&w| !w.is_zero() && fs.pow(w, 3) == target).collect();
            options.push(ws);
        }
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        for w0 in &options[0] {
            for w1 in &options[1] {
                for w2 in &options[2] {
                    let plane = PlaneSpace::from_pairs(
                        [(m[0].0, m[0].1, *w0), (m[1].0, m[1].1, *w1), (m[2].0, m[2].1, *w2)],
                        fs,
                    );
                    assert!(plane.verify(form, fs), "pairing plane must satisfy F|_L = 0");
                    out.push(plane);
                }
            }
        }
    }
    Ok(out)
}

fn perfect_matchings() -> Vec<[(usize, usize); 3]> {
    let mut out = vec![];
    let all: Vec<usize> = (0..6).collect();
    // first pair starts at 0
    for &j in &all[1..] {
        let rest: Vec<usize> = all[1..].iter().copied().filter(|&x| x != j).collect();
        let i2 = rest[0];
        for &j2 in &rest[1..] {
            let rest2: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != j2).collect();
            out.push([(0, j), (i2, j2), (rest2[0], rest2[1])]);
        }
    }
    out
}

/// Integer points of the plane with every coordinate of degree bound < dmax
/// coefficients... enumerate lattice points x = sum lambda_k b_k with each
/// lambda_k a polynomial from the given index range.
pub fn plane_lattice_points(
    plane: &PlaneSpace,
    param_indices: impl Iterator<Item = u128> + Clone,
    fs: &FieldSpec,
) -> Vec<[Poly; 6]> {
    let mut out = vec![];
    for i0 in param_indices.clone() {
        let l0 = Poly::from_index(i0, fs);
        for i1 in param_indices.clone() {
            let l1 = Poly::from_index(i1, fs);
            for i2 in param_indices.clone() {
                let l2 = Poly::from_index(i2, fs);
                let lams = [&l0, &l1, &l2];
                let mut x: [Poly; 6] = Default::default();
                for k in 0..3 {
                    for m in 0..6 {
                        if !plane.basis[k][m].is_zero() {
                            x[m] = x[m].add(&lams[k].mul_scalar(plane.basis[k][m], fs), fs);
                        }
                    }
                }
                out.push(x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_planes_over_f5() {
        // 5 = 2 mod 3: only w = 1, so exactly the 15 perfect matchings
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        let planes = upsilon_enumerate(&form, &fs).unwrap();
        assert_eq!(planes.len(), 15);
        assert!(planes.iter().any(|p| p.is_l0()));
    }

    #[test]
    fn many_planes_over_f7() {
        // 7 = 1 mod 3: three cube roots per pair, 15 * 27 = 405
        let fs = FieldSpec::make(7, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        let planes = upsilon_enumerate(&form, &fs).unwrap();
        assert_eq!(planes.len(), 405);
        assert!(planes.iter().any(|p| p.is_l0()));
    }

    #[test]
    fn l0_dual_membership() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        let planes = upsilon_enumerate(&form, &fs).unwrap();
        let l0 = planes.iter().find(|p| p.is_l0()).unwrap();
        // c* = (c1,c2,c3,c1,c2,c3) is orthogonal to L0
        let c1 = Poly::parse("t", &fs).unwrap();
        let c2 = Poly::parse("t+1", &fs).unwrap();
        let c3 = Poly::parse("2", &fs).unwrap();
        let c_star = [c1.clone(), c2.clone(), c3.clone(), c1, c2, c3];
        assert!(l0.contains_dual(&c_star, &fs));
    }

    #[test]
    fn char3_rejected() {
        let fs = FieldSpec::make(3, 1, None).unwrap();
        let form = DiagonalCubic::fermat(6);
        assert!(upsilon_enumerate(&form, &fs).is_err());
    }
}
