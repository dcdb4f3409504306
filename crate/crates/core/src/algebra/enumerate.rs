//! Deterministic enumeration of polynomials: monic of fixed degree,
//! irreducible monic, and residues mod r, all in lexicographic (index) order.

use super::factor::is_irreducible;
use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use crate::{Error, Result};

/// All monic polynomials of degree d, in index order; q^d of them.
pub fn monic_polys<'a>(d: usize, fs: &'a FieldSpec) -> impl Iterator<Item = Poly> + 'a {
    let count = (fs.q() as u128).pow(d as u32);
    (0..count).map(move |idx| {
        let mut p = Poly::from_index(idx, fs);
        let mut coeffs = std::mem::take(&mut p.coeffs);
        coeffs.resize(d + 1, FieldElem::ZERO);
        coeffs[d] = FieldElem::ONE;
        Poly::from_coeffs(coeffs)
    })
}

/// All monic polynomials of degree <= d, in (degree, index) order.
pub fn monic_polys_upto<'a>(d: usize, fs: &'a FieldSpec) -> impl Iterator<Item = Poly> + 'a {
    (0..=d).flat_map(move |k| monic_polys(k, fs))
}

/// All monic irreducible polynomials of degree d.
pub fn irreducible_polys<'a>(d: usize, fs: &'a FieldSpec) -> impl Iterator<Item = Poly> + 'a {
    monic_polys(d, fs).filter(move |p| is_irreducible(p, fs))
}

/// All residues mod r (every polynomial of degree < deg r), |r| of them.
pub fn residues<'a>(r: &Poly, fs: &'a FieldSpec) -> Result<impl Iterator<Item = Poly> + 'a> {
    if r.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let count = r.abs(fs);
    Ok((0..count).map(move |idx| Poly::from_index(idx, fs)))
}

/// Number of monic irreducibles of degree d via the necklace formula
/// (1/d) sum_{e | d} mu(e) q^(d/e); used as an independent oracle in tests.
pub fn irreducible_count(d: usize, q: u64) -> u128 {
    if d == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mu = moebius(e as u64);
        if mu == 0 {
            continue;
        }
        total += mu as i128 * (q as i128).pow((d / e) as u32);
    }
    (total / d as i128) as u128
}

fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_over_f5() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        assert_eq!(monic_polys(2, &fs).count(), 25);
        // all degree-1 monics are irreducible
        assert_eq!(irreducible_polys(1, &fs).count(), 5);
        // (q^2 - q)/2 = 10
        assert_eq!(irreducible_polys(2, &fs).count(), 10);
        assert_eq!(irreducible_count(2, 5), 10);
        assert_eq!(irreducible_polys(3, &fs).count() as u128, irreducible_count(3, 5));
        let r = Poly::parse("t^2+1", &fs).unwrap();
        assert_eq!(residues(&r, &fs).unwrap().count(), 25);
        assert!(residues(&Poly::zero(), &fs).is_err());
    }

    #[test]
    fn monic_enumeration_is_lexicographic_and_monic() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let all: Vec<Poly> = monic_polys(2, &fs).collect();
        assert!(all.iter().all(|p| p.is_monic() && p.deg_i() == 2));
        let mut sorted = all.clone();
        sorted.sort_by_key(|p| p.to_index(&fs));
        assert_eq!(all, sorted);
    }
}
