//! The final equality verdict for one bundle: every weight cell of the
//! localization table must be matched from below by the candidate ring's
//! rank certificate. Containment gives rank <= dimension a priori, so a
//! certified rank >= dimension pins the graded piece exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::enumerate::enumerate_graded_monomials;
use super::gens::GeneratorTable;
use super::rank::{rank_certificate, DenseBi, RankCertificate};
use crate::gitquot::WeightTable;
use crate::modp::EmbeddingPrime;
use crate::poly::Weight;

#[derive(Clone, Debug)]
pub struct CellVerdict {
    pub bundle: Weight,
    pub weight: Weight,
    pub expected: u64,
    pub certificate: RankCertificate,
    pub pass: bool,
}

/// Verifies one bundle against its localization table on every cell with
/// `ell(w) <= bound`, serially. Callers wanting parallelism fan out over
/// `verify_cell` themselves.
pub fn verify_bundle_cells(
    table: &GeneratorTable,
    compiled: &[(EmbeddingPrime, BTreeMap<String, DenseBi>)],
    bundle: Weight,
    lrr: &WeightTable,
    ell: Weight,
    bound: i64,
) -> Vec<CellVerdict> {
    lrr.iter()
        .filter(|(w, _)| ell.0 * w.0 + ell.1 * w.1 <= bound)
        .map(|(&w, &dim)| verify_cell(table, compiled, bundle, w, dim))
        .collect()
}

/// One cell: enumerate, certify, compare.
pub fn verify_cell(
    table: &GeneratorTable,
    compiled: &[(EmbeddingPrime, BTreeMap<String, DenseBi>)],
    bundle: Weight,
    w: Weight,
    expected: u64,
) -> CellVerdict {
    let monomials = enumerate_graded_monomials(&table.degrees, bundle, w);
    let certificate = rank_certificate(&monomials, compiled, w, Some(expected));
    let pass = certificate.lower_bound >= expected;
    CellVerdict {
        bundle,
        weight: w,
        expected,
        certificate,
        pass,
    }
}
