//! Residue fields of primes of O and their extension towers: k_pi = O/pi
//! realized as F_(p^(m e)), with deterministic embeddings for each level
//! k_(pi,j) = F_(p^(m e j)).

use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::{Error, Result};

/// One extension level k_(pi,j), with the data to move c in O into it.
pub struct TowerLevel {
    pub j: u32,
    /// the field F_(p^(m e j))
    pub field: FieldSpec,
    /// embedding table F_q -> field (index-indexed, q entries)
    pub base_embed: Vec<FieldElem>,
    /// powers tau^0 .. tau^(e-1) of the chosen root of pi
    pub tau_pows: Vec<FieldElem>,
}

impl TowerLevel {
    /// Reduce c in O at pi and view it in this level's field.
    pub fn reduce(&self, c_mod_pi: &Poly, base: &FieldSpec) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for (i, &coef) in c_mod_pi.coeffs.iter().enumerate() {
            let _ = base;
            let term = self.field.mul(self.base_embed[coef.0 as usize], self.tau_pows[i]);
            acc = self.field.add(acc, term);
        }
        acc
    }

}

/// The tower over a fixed monic irreducible pi.
pub struct ResidueTower {
    pub pi: Poly,
    pub e: u32,
    levels: Vec<TowerLevel>,
    /// embedding tables from level 1 into level j (index by level then element)
    level1_embeds: Vec<Vec<FieldElem>>,
}

fn find_root(coeffs: &[FieldElem], fs: &FieldSpec) -> Result<FieldElem> {
    for x in fs.elements() {
        let mut acc = FieldElem::ZERO;
        for &c in coeffs.iter().rev() {
            acc = fs.add(fs.mul(acc, x), c);
        }
        if acc.is_zero() {
            return Ok(x);
        }
    }
    Err(Error::DomainError("no root found in the extension".into()))
}

impl ResidueTower {
    pub fn new(pi: &Poly, base: &FieldSpec, max_level: u32) -> Result<ResidueTower> {
        if !crate::algebra::is_irreducible(pi, base) {
            return Err(Error::DomainError(format!("{} is not irreducible", pi.display("t"))));
        }
        let e = pi.deg_i() as u32;
        let mut levels = vec![];
        let mut level1_embeds = vec![];
        for j in 1..=max_level {
            let field = FieldSpec::make(base.p(), base.m() * e * j, None)?;
            // embed F_q: find the least root of the base modulus in `field`
            let base_mod: Vec<FieldElem> =
                base.modulus().iter().map(|&c| FieldElem(c)).collect();
            let alpha = find_root(&base_mod, &field)?;
            let mut base_embed = Vec::with_capacity(base.q() as usize);
            for x in 0..base.q() {
                let digits = base.coords(FieldElem(x));
                let mut acc = FieldElem::ZERO;
                let mut pow = FieldElem::ONE;
                for &d in &digits {
                    acc = field.add(acc, field.mul(FieldElem(d), pow));
                    pow = field.mul(pow, alpha);
                }
                base_embed.push(acc);
            }
            // tau = least root of pi (coefficients embedded) in `field`
            let pi_embedded: Vec<FieldElem> =
                pi.coeffs.iter().map(|&c| base_embed[c.0 as usize]).collect();
            let tau = find_root(&pi_embedded, &field)?;
            let mut tau_pows = Vec::with_capacity(e as usize);
            let mut pow = FieldElem::ONE;
            for _ in 0..e {
                tau_pows.push(pow);
                pow = field.mul(pow, tau);
            }
            levels.push(TowerLevel { j, field, base_embed, tau_pows });
            level1_embeds.push(vec![]);
        }
        let mut tower = ResidueTower { pi: pi.clone(), e, levels, level1_embeds };
        tower.build_level1_embeds()?;
        Ok(tower)
    }

    fn build_level1_embeds(&mut self) -> Result<()> {
        let k1 = &self.levels[0].field;
        for (idx, lvl) in self.levels.iter().enumerate() {
            if idx == 0 {
                self.level1_embeds[0] = k1.elements().collect();
                continue;
            }
            // least root of k1's modulus (prime-field coefficients) in lvl
            let k1_mod: Vec<FieldElem> = k1.modulus().iter().map(|&c| FieldElem(c)).collect();
            let beta = find_root(&k1_mod, &lvl.field)?;
            let mut table = Vec::with_capacity(k1.q() as usize);
            for x in 0..k1.q() {
                let digits = k1.coords(FieldElem(x));
                let mut acc = FieldElem::ZERO;
                let mut pow = FieldElem::ONE;
                for &d in &digits {
                    acc = lvl.field.add(acc, lvl.field.mul(FieldElem(d), pow));
                    pow = lvl.field.mul(pow, beta);
                }
                table.push(acc);
            }
            self.level1_embeds[idx] = table;
        }
        Ok(())
    }

    pub fn level(&self, j: u32) -> &TowerLevel {
        &self.levels[(j - 1) as usize]
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Reduce c mod pi into the level-j field.
    pub fn reduce_into(&self, c: &Poly, j: u32, base: &FieldSpec) -> FieldElem {
        let red = c.rem(&self.pi, base);
        self.level(j).reduce(&red, base)
    }

    /// Embed a level-1 element into level j.
    pub fn embed_level1(&self, x: FieldElem, j: u32) -> FieldElem {
        self.level1_embeds[(j - 1) as usize][x.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_a_ring_map() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let pi = Poly::parse("t^2+2", &fs).unwrap();
        let tower = ResidueTower::new(&pi, &fs, 2).unwrap();
        assert_eq!(tower.level(1).field.q(), 25);
        assert_eq!(tower.level(2).field.q(), 625);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for j in 1..=2u32 {
            let kf = &tower.level(j).field;
            for _ in 0..200 {
                let a = Poly::from_index(rng.random_range(0..3125), &fs);
                let b = Poly::from_index(rng.random_range(0..3125), &fs);
                let ra = tower.reduce_into(&a, j, &fs);
                let rb = tower.reduce_into(&b, j, &fs);
                assert_eq!(tower.reduce_into(&a.add(&b, &fs), j, &fs), kf.add(ra, rb));
                assert_eq!(tower.reduce_into(&a.mul(&b, &fs), j, &fs), kf.mul(ra, rb));
            }
            // pi itself reduces to zero
            assert!(tower.reduce_into(&pi, j, &fs).is_zero());
        }
    }

    #[test]
    fn level1_embedding_is_a_field_map() {
        let fs = FieldSpec::make(5, 1, None).unwrap();
        let pi = Poly::t();
        let tower = ResidueTower::new(&pi, &fs, 3).unwrap();
        let k1 = &tower.level(1).field;
        for j in 2..=3u32 {
            let kj = &tower.level(j).field;
            for a in k1.elements() {
                for b in k1.elements().take(7) {
                    let ea = tower.embed_level1(a, j);
                    let eb = tower.embed_level1(b, j);
                    assert_eq!(tower.embed_level1(k1.add(a, b), j), kj.add(ea, eb));
                    assert_eq!(tower.embed_level1(k1.mul(a, b), j), kj.mul(ea, eb));
                }
            }
        }
    }
}
