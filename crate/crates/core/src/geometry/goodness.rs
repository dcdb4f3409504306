//! Good/bad classification of c in the dual lattice of L0: the quadric
//! bundle of the pencil attached to (L0, c), the binary sextic cutting out
//! its degenerate fibres, and the three goodness flags. The concrete
//! certificate (a nonzero element of O whose primes are the bad primes)
//! stands in for the abstract form B(c), whose existence the theory asserts
//! without a formula.

use super::dual::DiagonalCubic;
use super::multipoly::MultiPoly;
use super::planes::PlaneSpace;
use crate::algebra::{poly_factor, FieldSpec, Poly};
#[cfg(test)]
use crate::algebra::FieldElem;
use crate::{Error, Result};

/// Binary form of degree d over O: coeffs[i] multiplies sigma^i tau^(d-i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinForm {
    pub coeffs: Vec<Poly>,
}

impl BinForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Formal partial derivatives, as forms of degree d-1.
    pub fn d_sigma(&self, fs: &FieldSpec) -> BinForm {
        let d = self.degree();
        let mut out = vec![Poly::zero(); d];
        for i in 1..=d {
            out[i - 1] = self.coeffs[i].mul_scalar(fs.scalar(i as u64), fs);
        }
        BinForm { coeffs: out }
    }

    pub fn d_tau(&self, fs: &FieldSpec) -> BinForm {
        let d = self.degree();
        let mut out = vec![Poly::zero(); d];
        for i in 0..d {
            out[i] = self.coeffs[i].mul_scalar(fs.scalar((d - i) as u64), fs);
        }
        BinForm { coeffs: out }
    }

    pub fn eval(&self, sigma: &Poly, tau: &Poly, fs: &FieldSpec) -> Poly {
        let d = self.degree();
        let mut acc = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c.mul(&sigma.pow(i as u64, fs), fs).mul(&tau.pow((d - i) as u64, fs), fs);
            acc = acc.add(&term, fs);
        }
        acc
    }
}

/// Determinant of a square matrix over O by fraction-free Gaussian
/// elimination (Bareiss); exact in the integral domain.
pub fn poly_mat_det(mat: &mut Vec<Vec<Poly>>, fs: &FieldSpec) -> Poly {
    let n = mat.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !mat[r][k].is_zero());
            match swap {
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[i][j].mul(&mat[k][k], fs).sub(&mat[i][k].mul(&mat[k][j], fs), fs);
                let (q, r) = num.divrem(&prev, fs);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                mat[i][j] = q;
            }
            mat[i][k] = Poly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        det.neg(fs)
    } else {
        det
    }
}

/// Homogeneous resultant of two binary forms of formal degrees (deg f, deg g)
/// via the Sylvester matrix over O.
pub fn binform_resultant(f: &BinForm, g: &BinForm, fs: &FieldSpec) -> Poly {
    let m = f.degree();
    let n = g.degree();
    let size = m + n;
    if size == 0 {
        return Poly::one();
    }
    let mut mat = vec![vec![Poly::zero(); size]; size];
    // rows of f-coefficients (descending in sigma: coeffs[m], ..., coeffs[0])
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = f.coeffs[m - k].clone();
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = g.coeffs[n - k].clone();
        }
    }
    poly_mat_det(&mut mat, fs)
}

/// Discriminant-style separability certificate for a binary form:
/// Res(dB/dsigma, dB/dtau). Nonzero iff B of degree d has d distinct
/// projective roots (char does not divide d here).
pub fn binform_disc(b: &BinForm, fs: &FieldSpec) -> Poly {
    binform_resultant(&b.d_sigma(fs), &b.d_tau(fs), fs)
}

/// The quadric-bundle data of (F, L0): the symmetric 4x4 matrix M(s) of the
/// residual quadric in (u, z), entries polynomial in s = (s1, s2, s3), plus
/// the 3x3 conic matrix N(s) of the fibres of the conic bundle W.
pub struct QuadricBundle {
    /// entries m[j][k] are MultiPoly in vars (s1, s2, s3).
    pub m: [[MultiPoly; 4]; 4],
    pub n_conic: [[MultiPoly; 3]; 3],
    /// det M(s), the sextic form cutting out the degeneracy curve C.
    pub sextic: MultiPoly,
    /// det N(s), the cubic cutting out the curve D of the conic bundle.
    pub conic_det: MultiPoly,
}

/// Build the bundle for a diagonal form with a_i = a_(i+3) (so that L0 lies
/// on the hypersurface). Characteristic > 3 required.
pub fn quadric_bundle(form: &DiagonalCubic, fs: &FieldSpec) -> Result<QuadricBundle> {
    fs.char_gt_3()?;
    assert_eq!(form.n, 6);
    for i in 0..3 {
        if form.coeffs[i] != form.coeffs[i + 3] {
            return Err(Error::DomainError("L0 lies on the form only when a_i = a_(i+3)".into()));
        }
    }
    // vars: 0..3 = s1,s2,s3; 3 = u; 4..7 = z1,z2,z3
    let vars = 7;
    let half = fs.inv(fs.scalar(2));
    let mut f_sub = MultiPoly::zero(vars);
    for i in 0..3 {
        // x_i = (u s_i + z_i)/2, x_(i+3) = (u s_i - z_i)/2
        let us = MultiPoly::var(3, vars).mul(&MultiPoly::var(i, vars), fs);
        let z = MultiPoly::var(4 + i, vars);
        let xi = us.add(&z, fs).mul_scalar(half, fs);
        let xi3 = us.sub(&z, fs).mul_scalar(half, fs);
        f_sub = f_sub.add(&xi.pow(3, fs).mul_scalar(form.coeffs[i], fs), fs);
        f_sub = f_sub.add(&xi3.pow(3, fs).mul_scalar(form.coeffs[i + 3], fs), fs);
    }
    // q(u, z; s) = F(x(u, s, z)) / u
    let mut q = MultiPoly::zero(vars);
    for (e, &c) in &f_sub.terms {
        if e[3] == 0 {
            return Err(Error::DomainError("residual quadric: F(us, z) not divisible by u".into()));
        }
        let mut e2 = e.clone();
        e2[3] -= 1;
        q.terms.insert(e2, c);
    }
    // extract the symmetric matrix in coordinates v = (u, z1, z2, z3)
    let coord = |k: usize| if k == 0 { 3 } else { 3 + k };
    let mut m: [[MultiPoly; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero(3)));
    for j in 0..4 {
        for k in j..4 {
            let mut target = vec![0u16; vars];
            target[coord(j)] += 1;
            target[coord(k)] += 1;
            let mut entry = MultiPoly::zero(3);
            for (e, &c) in &q.terms {
                if e[3..] == target[3..] {
                    entry.insert(e[..3].to_vec(), c, fs);
                }
            }
            if j != k {
                entry = entry.mul_scalar(half, fs);
            }
            m[j][k] = entry.clone();
            m[k][j] = entry;
        }
    }
    let sextic = det4(&m, fs);
    // conic matrices: z-part at u = 0 (entries m[j][k] for j,k >= 1)
    let mut n_conic: [[MultiPoly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero(3)));
    for j in 0..3 {
        for k in 0..3 {
            n_conic[j][k] = m[j + 1][k + 1].clone();
        }
    }
    let conic_det = det3(&n_conic, fs);
    Ok(QuadricBundle { m, n_conic, sextic, conic_det })
}

fn det3(m: &[[MultiPoly; 3]; 3], fs: &FieldSpec) -> MultiPoly {
    let mut acc = MultiPoly::zero(3);
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([0, 2, 1], true),
        ([1, 0, 2], true),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([2, 1, 0], true),
    ];
    for (p, odd) in perms {
        let mut term = m[0][p[0]].mul(&m[1][p[1]], fs).mul(&m[2][p[2]], fs);
        if odd {
            term = term.neg(fs);
        }
        acc = acc.add(&term, fs);
    }
    acc
}

fn det4(m: &[[MultiPoly; 4]; 4], fs: &FieldSpec) -> MultiPoly {
    // cofactor expansion along the first row
    let mut acc = MultiPoly::zero(3);
    for col in 0..4 {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: [[MultiPoly; 3]; 3] = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let cc = if c < col { c } else { c + 1 };
                m[r + 1][cc].clone()
            })
        });
        let mut term = m[0][col].mul(&det3(&minor, fs), fs);
        if col % 2 == 1 {
            term = term.neg(fs);
        }
        acc = acc.add(&term, fs);
    }
    acc
}

/// Restrict a form in s = (s1, s2, s3) to the line c.s = 0, using the pivot
/// parameterisation: the largest k with c_k != 0 takes the balancing slot,
/// the remaining coordinates take c_k * sigma and c_k * tau.
pub fn restrict_to_line(g: &MultiPoly, c: &[Poly; 3], fs: &FieldSpec) -> Result<BinForm> {
    let pivot = (0..3).rev().find(|&k| !c[k].is_zero()).ok_or(Error::ZeroC)?;
    let others: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
    // s_(others[0]) = c_pivot * sigma; s_(others[1]) = c_pivot * tau;
    // s_pivot = -(c_(others[0]) sigma + c_(others[1]) tau)
    let d = g.total_degree().unwrap_or(0) as usize;
    let mut out = vec![Poly::zero(); d + 1];
    for (e, &coef) in &g.terms {
        // expand prod_k s_k^(e_k) as a binary form
        // start from the scalar coefficient
        let mut form: Vec<Poly> = vec![Poly::constant(coef)];
        let lin = |form: &Vec<Poly>, a: &Poly, b: &Poly| -> Vec<Poly> {
            // multiply the binary form by (a*sigma + b*tau)
            let mut next = vec![Poly::zero(); form.len() + 1];
            for (i, f) in form.iter().enumerate() {
                // f * sigma^i tau^(len-1-i)
                next[i + 1] = next[i + 1].add(&f.mul(a, fs), fs);
                next[i] = next[i].add(&f.mul(b, fs), fs);
            }
            next
        };
        for k in 0..3 {
            for _ in 0..e[k] {
                form = if k == pivot {
                    let a = c[others[0]].neg(fs);
                    let b = c[others[1]].neg(fs);
                    lin(&form, &a, &b)
                } else if k == others[0] {
                    lin(&form, &c[pivot], &Poly::zero())
                } else {
                    lin(&form, &Poly::zero(), &c[pivot])
                };
            }
        }
        debug_assert_eq!(form.len(), d + 1, "restriction input must be homogeneous");
        for (i, f) in form.into_iter().enumerate() {
            if !f.is_zero() {
                out[i] = out[i].add(&f, fs);
            }
        }
    }
    Ok(BinForm { coeffs: out })
}

/// The goodness report for c = (c1, c2, c3) representing c* in the dual
/// lattice of L0.
#[derive(Clone, Debug)]
pub struct GoodnessReport {
    pub c: [Poly; 3],
    /// the binary sextic g_c cutting out the degenerate quadrics over H'_c
    pub sextic: BinForm,
    /// disc-style certificate for flag (i); zero iff flag_i is false
    pub disc: Poly,
    /// (i) C_c smooth of dimension 0
    pub flag_smooth_sextic: bool,
    /// (ii) H_c contains no plane of Upsilon other than L0
    pub flag_no_second_plane: bool,
    /// (iii) H'_c is not a component of the conic-bundle curve D
    pub flag_line_not_in_d: bool,
    /// primes dividing the goodness certificate (only when all flags hold)
    pub bad_primes: Vec<Poly>,
    /// the certificate itself
    pub certificate: Option<Poly>,
}

impl GoodnessReport {
    pub fn is_good(&self) -> bool {
        self.flag_smooth_sextic && self.flag_no_second_plane && self.flag_line_not_in_d
    }
}

/// Classify c; upsilon is the precomputed plane list (so sweeps can share it).
pub fn goodness(
    form: &DiagonalCubic,
    bundle: &QuadricBundle,
    upsilon: &[PlaneSpace],
    c: &[Poly; 3],
    fs: &FieldSpec,
) -> Result<GoodnessReport> {
    fs.char_gt_3()?;
    if c.iter().all(|ci| ci.is_zero()) {
        return Err(Error::ZeroC);
    }
    let _ = form;
    let sextic = restrict_to_line(&bundle.sextic, c, fs)?;
    let disc = binform_disc(&sextic, fs);
    let flag_smooth_sextic = !disc.is_zero();

    let c_star =
        [c[0].clone(), c[1].clone(), c[2].clone(), c[0].clone(), c[1].clone(), c[2].clone()];
    let mut plane_cert = Poly::one();
    let mut flag_no_second_plane = true;
    for plane in upsilon {
        if plane.is_l0() {
            continue;
        }
        let pairing = plane.pairing(&c_star, fs);
        match pairing.iter().find(|p| !p.is_zero()) {
            Some(first_nonzero) => {
                plane_cert = plane_cert.mul(first_nonzero, fs);
            }
            None => {
                flag_no_second_plane = false;
            }
        }
    }

    let d_restricted = restrict_to_line(&bundle.conic_det, c, fs)?;
    let flag_line_not_in_d = !d_restricted.is_zero();

    let (certificate, bad_primes) = if flag_smooth_sextic && flag_no_second_plane && flag_line_not_in_d {
        let lead = d_restricted.coeffs.iter().find(|p| !p.is_zero()).unwrap();
        let cert = disc.mul(&plane_cert, fs).mul(lead, fs);
        let fac = poly_factor(&cert, fs)?;
        (Some(cert), fac.factors.into_iter().map(|(p, _)| p).collect())
    } else {
        (None, vec![])
    };

    Ok(GoodnessReport {
        c: c.clone(),
        sextic,
        disc,
        flag_smooth_sextic,
        flag_no_second_plane,
        flag_line_not_in_d,
        bad_primes,
        certificate,
    })
}
