//! The standard additive character psi of K_inf, with exact values in
//! Z[zeta_p]: psi(alpha) = zeta_p^Tr(a_-1), psi(0) = 1.

use super::cyclo::CycInt;
use super::laurent::{expand_fraction, LaurentNum};
use crate::algebra::{FieldSpec, Poly};
use crate::Result;

/// psi(alpha); requires the coefficient of t^-1 to be certified.
pub fn psi(alpha: &LaurentNum, fs: &FieldSpec) -> Result<CycInt> {
    let a = alpha.coeff(-1)?;
    Ok(CycInt::zeta_pow(fs.trace_to_prime(a), fs.p()))
}

/// The exponent of psi(alpha) in Z/p, i.e. Tr(a_-1).
pub fn psi_exponent(alpha: &LaurentNum, fs: &FieldSpec) -> Result<u32> {
    Ok(fs.trace_to_prime(alpha.coeff(-1)?))
}

/// psi(f/r), computed exactly by expanding f/r to one coefficient below the
/// constant term.
pub fn char_fraction(f: &Poly, r: &Poly, fs: &FieldSpec) -> Result<CycInt> {
    let x = expand_fraction(f, r, -1, fs)?;
    psi(&x, fs)
}

pub fn char_fraction_exponent(f: &Poly, r: &Poly, fs: &FieldSpec) -> Result<u32> {
    let x = expand_fraction(f, r, -1, fs)?;
    psi_exponent(&x, fs)
}

/// The F_p-linear functional tau(g) = Tr(a_-1(g/r)) on residues mod r,
/// tabulated by residue index. This is the workhorse behind every complete
/// exponential sum: psi((g)/r) = zeta_p^tau(g mod r), and tau is additive.
pub struct PsiTable {
    pub r: Poly,
    /// exponent table indexed by residue index; length |r|.
    pub exps: Vec<u8>,
    pub p: u32,
}

impl PsiTable {
    pub fn build(r: &Poly, fs: &FieldSpec) -> Result<PsiTable> {
        if r.is_zero() {
            return Err(crate::Error::ZeroModulus);
        }
        let d = r.deg_i();
        let size = r.abs(fs) as usize;
        // w_j = coefficient of t^(-1) in t^j / r = coefficient of t^(-1-j) in 1/r
        let inv = expand_fraction(&Poly::one(), r, -d.max(1), fs)?;
        let mut w = vec![];
        for j in 0..d.max(0) {
            w.push(inv.coeff(-1 - j)?);
        }
        let q = fs.q() as usize;
        let mut exps = vec![0u8; size];
        // tau is linear: build by base-q digit increments
        for idx in 1..size {
            // lowest nonzero digit trick: tau(idx) = tau(idx - digit*q^pos) + digit*tau(q^pos-monomial)
            let mut rem = idx;
            let mut pos = 0usize;
            while rem % q == 0 {
                rem /= q;
                pos += 1;
            }
            let digit = (rem % q) as u32;
            let prev = idx - digit as usize * q.pow(pos as u32) as usize;
            let contrib = fs.trace_to_prime(fs.mul(crate::algebra::FieldElem(digit), w[pos]));
            exps[idx] = ((exps[prev] as u32 + contrib) % fs.p()) as u8;
        }
        Ok(PsiTable { r: r.clone(), exps, p: fs.p() })
    }

    /// tau(g) for a residue given by index.
    #[inline]
    pub fn exp_of_index(&self, idx: usize) -> u32 {
        self.exps[idx] as u32
    }

    pub fn exp_of_poly(&self, g: &Poly, fs: &FieldSpec) -> u32 {
        let red = g.rem(&self.r, fs);
        self.exps[red.to_index(fs) as usize] as u32
    }
}
