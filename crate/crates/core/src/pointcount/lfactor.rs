//! Local Hasse-Weil factors at primes of good reduction: the degree-10
//! integer characteristic polynomial of Frobenius on the middle cohomology of
//! the hyperplane section, assembled from point counts over five extensions
//! via Newton's identities, with the symplectic functional equation supplying
//! the top half and a root-modulus diagnostic standing in for GRH.

use super::counts::{e_c, e_f, CountMethod};
use super::fields::ResidueTower;
use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::geometry::{dual_eval, DiagonalCubic};
use crate::numeric::SqrtQVal;
use crate::{Budget, Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct LocalLFactor {
    #[serde(serialize_with = "crate::expsum::ser_poly")]
    pub pi: Poly,
    #[serde(serialize_with = "crate::expsum::ser_polys")]
    pub c: Vec<Poly>,
    /// |pi| = q^deg(pi)
    pub norm: u128,
    /// b_0..b_10 of det(1 - Frob u | H^3), unnormalized integers
    pub coeffs: [i128; 11],
    /// |root| * |pi|^(3/2) for the 10 complex roots (diagnostic only)
    pub normalized_root_moduli: Vec<f64>,
}

impl LocalLFactor {
    /// mu_c(pi^l): the |pi|^(-ls) coefficient of L_pi(s, c)^(-1), exact.
    pub fn mu(&self, l: usize, fs: &FieldSpec) -> SqrtQVal {
        if l > 10 {
            return SqrtQVal::zero(fs.q());
        }
        let deg = self.pi.deg_i();
        SqrtQVal::int_qhalf(self.coeffs[l], -3 * l as i64 * deg, fs.q())
    }

    /// Power sums of the unnormalized inverse roots, extended to any order
    /// via Newton's identities from the full coefficient vector.
    pub fn power_sums(&self, upto: usize) -> Vec<i128> {
        let e: Vec<i128> = (0..=10).map(|k| sign(k) * self.coeffs[k]).collect();
        let mut p = vec![0i128; upto + 1];
        for j in 1..=upto {
            // p_j = (-1)^(j-1) j e_j + sum_{i=1}^{j-1} (-1)^(j-1+i) e_(j-i) p_i
            let mut acc: i128 = 0;
            if j <= 10 {
                acc += sign(j - 1) * j as i128 * e[j];
            }
            for i in 1..j {
                if j - i <= 10 {
                    acc += sign(j - 1 + i) * e[j - i] * p[i];
                }
            }
            p[j] = acc;
        }
        p
    }

    pub fn functional_equation_holds(&self) -> bool {
        let np = self.norm as i128;
        (0..=4).all(|k| {
            let scale = np.pow(3 * (5 - k));
            self.coeffs[(10 - k) as usize] == scale * self.coeffs[k as usize]
        })
    }
}

fn sign(k: usize) -> i128 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Newton: e_k from power sums p_1..p_k, exactly (k! divisions are exact for
/// symmetric functions of algebraic integers).
pub fn elementary_from_power_sums(p: &[i128], upto: usize) -> Result<Vec<i128>> {
    let mut e = vec![0i128; upto + 1];
    e[0] = 1;
    for k in 1..=upto {
        let mut acc: i128 = 0;
        for i in 1..=k {
            acc += sign(i - 1) * e[k - i] * p[i];
        }
        if acc % k as i128 != 0 {
            return Err(Error::IntegralityFailure(format!(
                "Newton identity division by {k} is not exact"
            )));
        }
        e[k] = acc / k as i128;
    }
    Ok(e)
}

/// Durand-Kerner root finder for real-coefficient polynomials; plenty for the
/// well-separated Weil polynomials here. Returns the complex roots.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |re: f64, im: f64| -> (f64, f64) {
        let mut r = 0.0f64;
        let mut i = 0.0f64;
        for &c in monic.iter().rev() {
            let nr = r * re - i * im + c;
            let ni = r * im + i * re;
            r = nr;
            i = ni;
        }
        (r, i)
    };
    // initial guesses on a slightly irrational circle
    let radius = monic[..n].iter().map(|c| c.abs()).fold(1.0, f64::max).powf(1.0 / n as f64) + 0.5;
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (radius * ang.cos(), radius * ang.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (pr, pi_) = eval(roots[k].0, roots[k].1);
            // denominator: product of (x_k - x_j)
            let mut dr = 1.0f64;
            let mut di = 0.0f64;
            for j in 0..n {
                if j == k {
                    continue;
                }
                let ar = roots[k].0 - roots[j].0;
                let ai = roots[k].1 - roots[j].1;
                let nr = dr * ar - di * ai;
                let ni = dr * ai + di * ar;
                dr = nr;
                di = ni;
            }
            let den = dr * dr + di * di;
            if den == 0.0 {
                continue;
            }
            let sr = (pr * dr + pi_ * di) / den;
            let si = (pi_ * dr - pr * di) / den;
            roots[k].0 -= sr;
            roots[k].1 -= si;
            max_step = max_step.max((sr * sr + si * si).sqrt());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}

/// The local factor at a prime of good reduction: counts over k_(pi,j) for
/// j = 1..5 give the power sums; the functional equation supplies b_6..b_10.
pub fn local_lfactor(
    pi: &Poly,
    c: &[Poly; 6],
    form: &DiagonalCubic,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<LocalLFactor> {
    let fstar = dual_eval(form, c, fs)?;
    if fstar.is_zero() || pi.divides(&fstar, fs) {
        return Err(Error::BadReduction(format!("{} divides F*(c)", pi.display("t"))));
    }
    let tower = ResidueTower::new(pi, fs, 5)?;
    let np = pi.abs(fs);
    let mut p = vec![0i128; 6];
    for j in 1..=5u32 {
        let level = tower.level(j);
        let cred: [FieldElem; 6] = std::array::from_fn(|i| tower.reduce_into(&c[i], j, fs));
        let ec = e_c(&level.field, &cred, CountMethod::Charsum, budget)?;
        p[j as usize] = -ec;
    }
    let e = elementary_from_power_sums(&p, 5)?;
    let mut coeffs = [0i128; 11];
    for k in 0..=5 {
        coeffs[k] = sign(k) * e[k];
    }
    for k in 0..=4 {
        coeffs[10 - k] = (np as i128).pow(3 * (5 - k as u32)) * coeffs[k];
    }
    // diagnostics: all roots on |u| = |pi|^(-3/2)
    let float_coeffs: Vec<f64> = coeffs.iter().map(|&b| b as f64).collect();
    let roots = polynomial_roots(&float_coeffs);
    let scale = (np as f64).powf(1.5);
    let normalized_root_moduli: Vec<f64> =
        roots.iter().map(|(re, im)| (re * re + im * im).sqrt() * scale).collect();
    let out = LocalLFactor { pi: pi.clone(), c: c.to_vec(), norm: np, coeffs, normalized_root_moduli };
    if !out.functional_equation_holds() {
        return Err(Error::IntegralityFailure("self-reciprocity violated".into()));
    }
    Ok(out)
}

/// lambda_V(pi) = E^nat_F(k_pi), exact as E_F / |pi|^2.
pub fn lambda_v(pi_deg: u32, fs: &FieldSpec, budget: &Budget) -> Result<SqrtQVal> {
    let kf = FieldSpec::make(fs.p(), fs.m() * pi_deg, None)?;
    let ef = e_f(&kf, CountMethod::Charsum, budget)?;
    Ok(SqrtQVal::int_qhalf(ef, -4 * pi_deg as i64, fs.q()))
}

/// zeta_K coefficient: the number of monic polynomials of degree d.
pub fn zeta_coeff(d: u32, fs: &FieldSpec) -> u128 {
    (fs.q() as u128).pow(d)
}
