//! Semistability for a torus action: a point with a given set of
//! nonvanishing coordinates is semistable for the character `chi` iff `chi`
//! lies in the cone spanned by the class-group weights of that set.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::DegreeTable;
use crate::lattice::{dd_dual, dot, IVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemistabilityVerdict {
    pub semistable: bool,
    /// True when `chi` sits on the boundary of the weight cone, in which
    /// case the chamber structure, not this verdict, is the signal.
    pub on_boundary: bool,
}

/// Exact rational cone membership; the weight cone need not be pointed.
pub fn is_semistable_support(
    support: &BTreeSet<String>,
    chi: (i64, i64),
    degrees: &DegreeTable,
) -> SemistabilityVerdict {
    let weights: Vec<IVec> = support
        .iter()
        .map(|g| {
            let (a, b) = degrees.pic(g).expect("support uses known generators");
            vec![a, b]
        })
        .collect();
    let chi = vec![chi.0, chi.1];
    if weights.is_empty() {
        let zero = chi.iter().all(|&x| x == 0);
        return SemistabilityVerdict {
            semistable: zero,
            on_boundary: zero,
        };
    }
    let (lines, rays) = dd_dual(&weights, 2);
    let inside = lines.iter().all(|l| dot(l, &chi) == 0)
        && rays.iter().all(|r| dot(r, &chi) >= 0);
    let on_boundary = inside
        && !rays.is_empty()
        && rays.iter().any(|r| dot(r, &chi) == 0);
    SemistabilityVerdict {
        semistable: inside,
        on_boundary,
    }
}
