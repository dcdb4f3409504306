//! Persistent JSON-lines cache for extension count tables and local
//! L-factors, keyed by (q, pi, c). Records are serialized with a stable field
//! order, so cache hits are byte-identical to recomputation.

use super::counts::{e_c, e_f, CountMethod, CountRow};
use super::fields::ResidueTower;
use super::lfactor::{local_lfactor, LocalLFactor};
use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::geometry::DiagonalCubic;
use crate::{Budget, Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Debug, Serialize)]
pub struct ExtCountTable {
    pub q: u32,
    #[serde(serialize_with = "crate::expsum::ser_poly")]
    pub pi: Poly,
    /// None counts V itself; Some(c) counts the hyperplane section V_c
    pub c: Option<Vec<String>>,
    pub rows: Vec<CountRow>,
}

/// Exact projective counts and errors over k_(pi,j) for j = 1..levels.
pub fn ext_count_table(
    pi: &Poly,
    c: Option<&[Poly; 6]>,
    levels: u32,
    fs: &FieldSpec,
    budget: &Budget,
) -> Result<ExtCountTable> {
    let tower = ResidueTower::new(pi, fs, levels)?;
    let mut rows = vec![];
    for j in 1..=levels {
        let level = tower.level(j);
        let (n, e) = match c {
            None => {
                let e = e_f(&level.field, CountMethod::Charsum, budget)?;
                let n = (e + super::counts::projective_space_count(level.field.q() as u128, 4) as i128) as u128;
                (n, e)
            }
            Some(c) => {
                let cred: [FieldElem; 6] = std::array::from_fn(|i| tower.reduce_into(&c[i], j, fs));
                let e = e_c(&level.field, &cred, CountMethod::Charsum, budget)?;
                let n = (e + super::counts::projective_space_count(level.field.q() as u128, 3) as i128) as u128;
                (n, e)
            }
        };
        rows.push(CountRow { j, n_projective: n, e });
    }
    Ok(ExtCountTable {
        q: fs.q(),
        pi: pi.clone(),
        c: c.map(|c| c.iter().map(|p| p.display("t")).collect()),
        rows,
    })
}

/// Append-only JSON-lines cache over a directory.
pub struct JsonlCache {
    dir: PathBuf,
    counts: BTreeMap<String, String>,
    lfactors: BTreeMap<String, String>,
}

fn key(q: u32, pi: &Poly, c: Option<&[Poly; 6]>) -> String {
    let cs = match c {
        None => "V".to_string(),
        Some(c) => c.iter().map(|p| p.display("t")).collect::<Vec<_>>().join(","),
    };
    format!("q={q};pi={};c={cs}", pi.display("t"))
}

impl JsonlCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<JsonlCache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)
            .map_err(|e| Error::DomainError(format!("cache dir: {e}")))?;
        let mut cache = JsonlCache { dir, counts: BTreeMap::new(), lfactors: BTreeMap::new() };
        cache.counts = cache.load("counts.jsonl")?;
        cache.lfactors = cache.load("lfactors.jsonl")?;
        Ok(cache)
    }

    fn load(&self, name: &str) -> Result<BTreeMap<String, String>> {
        let path = self.dir.join(name);
        let mut map = BTreeMap::new();
        if let Ok(text) = std::fs::read_to_string(&path) {
            for line in text.lines() {
                if let Some((k, v)) = line.split_once('\x1f') {
                    map.insert(k.to_string(), v.to_string());
                }
            }
        }
        Ok(map)
    }

    fn append(&self, name: &str, k: &str, v: &str) -> Result<()> {
        let path = self.dir.join(name);
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::DomainError(format!("cache append: {e}")))?;
        writeln!(f, "{k}\x1f{v}").map_err(|e| Error::DomainError(format!("cache write: {e}")))?;
        Ok(())
    }

    /// Cached count table; on a hit the stored line is returned verbatim, so
    /// repeated runs are byte-identical.
    pub fn count_table_json(
        &mut self,
        pi: &Poly,
        c: Option<&[Poly; 6]>,
        levels: u32,
        fs: &FieldSpec,
        budget: &Budget,
    ) -> Result<String> {
        let k = format!("{};levels={levels}", key(fs.q(), pi, c));
        if let Some(v) = self.counts.get(&k) {
            return Ok(v.clone());
        }
        let table = ext_count_table(pi, c, levels, fs, budget)?;
        let v = serde_json::to_string(&table).map_err(|e| Error::DomainError(e.to_string()))?;
        self.append("counts.jsonl", &k, &v)?;
        self.counts.insert(k, v.clone());
        Ok(v)
    }

    pub fn lfactor_json(
        &mut self,
        pi: &Poly,
        c: &[Poly; 6],
        form: &DiagonalCubic,
        fs: &FieldSpec,
        budget: &Budget,
    ) -> Result<(String, LocalLFactor)> {
        let k = key(fs.q(), pi, Some(c));
        let lf = local_lfactor(pi, c, form, fs, budget)?;
        let v = serde_json::to_string(&lf).map_err(|e| Error::DomainError(e.to_string()))?;
        if let Some(stored) = self.lfactors.get(&k) {
            return Ok((stored.clone(), lf));
        }
        self.append("lfactors.jsonl", &k, &v)?;
        self.lfactors.insert(k, v.clone());
        Ok((v, lf))
    }
}
