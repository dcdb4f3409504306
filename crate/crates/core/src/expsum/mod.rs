//! Exact evaluation of complete exponential sums S_r(c), their normalization,
//! the bias-corrected S_{r,0}, the size functional T_r, and exhaustive audits
//! of the exact vanishing and recursion rules.

pub mod audit;
pub mod bias;
pub mod eval;

pub use audit::{vanishing_audit, AuditRecord, AuditReport};
pub use bias::{divisors, s_r0, BiasRecord};
pub use eval::{expsum_crt, expsum_direct, expsum_naive, t_r, ExpSumRecord, Method};

use crate::algebra::Poly;
use serde::Serializer;

pub(crate) fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.display("t"))
}

pub(crate) fn ser_polys<S: Serializer>(ps: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(ps.len()))?;
    for p in ps {
        seq.serialize_element(&p.display("t"))?;
    }
    seq.end()
}
