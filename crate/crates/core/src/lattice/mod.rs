//! Exact lattice geometry in rank <= 4: rational polyhedral cones with
//! double-description duals, face lattices, Hilbert bases, affine
//! semigroups, a per-orbit normality test and two-dimensional fans.

mod cone;
mod fan;
mod hilbert;

pub use cone::{dd_dual, face_duality, Cone, ConeError, HRep};
pub use fan::{fan_isomorphism, fan_isomorphisms, fan_maps_onto, hirzebruch_fan, orbit_face_of_vanishing, Fan, FanError};
pub use hilbert::{hilbert_basis, orbit_is_normal, semigroup_member, AffineSemigroup, SemigroupError};

use alloc::vec::Vec;

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides out the gcd of the entries; the zero vector stays zero.
pub fn primitive(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

pub fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn add_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[i64], k: i64) -> IVec {
    a.iter().map(|&x| x * k).collect()
}

pub fn neg_vec(a: &[i64]) -> IVec {
    a.iter().map(|&x| -x).collect()
}

/// Integer rank of a set of vectors via fraction-free elimination.
pub fn rank_of(vectors: &[IVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = crate::intmat::IntMatrix::from_rows_i64(vectors);
    m.snf().rank()
}
