//! Finite matrix groups over `Q(z)`: breadth-first enumeration, conjugacy
//! classes, commutator subgroup and abelianization, and symplectic
//! reflections with their fixed planes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cycmat::{CycMatrix, SolveOutcome};
use crate::cyclotomic::CycNum;
use crate::intmat::IntMatrix;

/// A square matrix over the cyclotomic field with total ordering, so group
/// elements can key ordered sets without floating-point fingerprints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupMat {
    pub n: usize,
    data: Vec<CycNum>,
}

impl GroupMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![CycNum::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = CycNum::one();
        }
        GroupMat { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "square matrix required");
            data.extend(r);
        }
        GroupMat { n, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut data = vec![CycNum::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    data[i * n + j] += &(a * b);
                }
            }
        }
        GroupMat { n, data }
    }

    pub fn det(&self) -> CycNum {
        det_minor(&self.data, self.n, &(0..self.n).collect::<Vec<_>>())
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let a = CycMatrix::from_rows(self.rows());
        let mut cols = Vec::new();
        for j in 0..n {
            let mut e = vec![CycNum::zero(); n];
            e[j] = CycNum::one();
            match a.solve(&e) {
                SolveOutcome::Solution { x, rank } if rank == n => cols.push(x),
                _ => return None,
            }
        }
        let mut data = vec![CycNum::zero(); n * n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                data[i * n + j] = col[i].clone();
            }
        }
        Some(GroupMat { n, data })
    }

    /// Basis of the fixed space `ker(self - id)`.
    pub fn fixed_space(&self) -> Vec<Vec<CycNum>> {
        let mut rows = self.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= &CycNum::one();
        }
        CycMatrix::from_rows(rows).right_kernel()
    }
}

fn det_minor(data: &[CycNum], n: usize, cols: &[usize]) -> CycNum {
    let row = n - cols.len();
    if cols.is_empty() {
        return CycNum::one();
    }
    let mut acc = CycNum::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = &data[row * n + c];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&x| x != c)
            .collect();
        let sub = det_minor(data, n, &rest);
        let signed = if k % 2 == 0 { a * &sub } else { -(a * &sub) };
        acc += &signed;
    }
    acc
}

impl fmt::Debug for GroupMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{}, ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NotInvertible,
    CapExceeded { cap: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotInvertible => write!(f, "generator is not invertible"),
            GroupError::CapExceeded { cap } => {
                write!(f, "group enumeration exceeded cap of {cap} elements")
            }
        }
    }
}

/// A fully enumerated finite matrix group. `elements[0]` is the identity.
#[derive(Clone, Debug)]
pub struct MatGroup {
    pub generators: Vec<GroupMat>,
    pub elements: Vec<GroupMat>,
    index: BTreeMap<GroupMat, usize>,
}

impl MatGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &GroupMat) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let id = GroupMat::identity(g.n);
        let mut acc = g.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.mul(g);
            k += 1;
        }
        k
    }
}

/// Breadth-first closure of the generated group. A finite set closed under
/// multiplication inside a group is a subgroup, so right-multiplication by
/// generators suffices; closure under inverses is asserted afterwards.
pub fn enumerate_group(generators: &[GroupMat], cap: usize) -> Result<MatGroup, GroupError> {
    let n = generators.first().map(|g| g.n).unwrap_or(4);
    for g in generators {
        if g.inverse().is_none() {
            return Err(GroupError::NotInvertible);
        }
    }
    let id = GroupMat::identity(n);
    let mut index = BTreeMap::new();
    let mut elements = vec![id.clone()];
    index.insert(id, 0usize);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let cur = elements[i].clone();
        for g in generators {
            let next = cur.mul(g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(GroupError::CapExceeded { cap });
            }
            index.insert(next.clone(), elements.len());
            frontier.push(elements.len());
            elements.push(next);
        }
    }
    let group = MatGroup {
        generators: generators.to_vec(),
        elements,
        index,
    };
    debug_assert!(group
        .elements
        .iter()
        .all(|g| group.index_of(&g.inverse().unwrap()).is_some()));
    Ok(group)
}

/// Orbits of the conjugation action, each sorted by element index; classes
/// are ordered by their smallest member.
pub fn conjugacy_classes(group: &MatGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for i in 0..group.order() {
        if seen[i] {
            continue;
        }
        let mut class = BTreeSet::new();
        for h in &group.elements {
            let conj = h.mul(&group.elements[i]).mul(&h.inverse().unwrap());
            class.insert(group.index_of(&conj).expect("closed under conjugation"));
        }
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// Element indices of the commutator subgroup: closure of all commutators.
pub fn commutator_subgroup(group: &MatGroup) -> Vec<usize> {
    let mut comms = BTreeSet::new();
    for g in &group.elements {
        for h in &group.elements {
            let c = g
                .inverse()
                .unwrap()
                .mul(&h.inverse().unwrap())
                .mul(g)
                .mul(h);
            comms.insert(group.index_of(&c).unwrap());
        }
    }
    // Closure under multiplication.
    loop {
        let mut added = false;
        let cur: Vec<usize> = comms.iter().copied().collect();
        for &a in &cur {
            for &b in &cur {
                let prod = group.elements[a].mul(&group.elements[b]);
                if comms.insert(group.index_of(&prod).unwrap()) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    comms.into_iter().collect()
}

/// Invariant factors of the abelianization, computed from the relation
/// lattice of the generator images in the quotient by the commutator
/// subgroup (Smith normal form of the relations).
pub fn abelianization_invariant_factors(group: &MatGroup, commutator: &[usize]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let comm: BTreeSet<usize> = commutator.iter().copied().collect();
    // Coset id: smallest element index in g * [G,G].
    let coset_of = |i: usize| -> usize {
        comm.iter()
            .map(|&c| {
                group
                    .index_of(&group.elements[i].mul(&group.elements[c]))
                    .unwrap()
            })
            .min()
            .unwrap()
    };
    let gen_cosets: Vec<usize> = group
        .generators
        .iter()
        .map(|g| coset_of(group.index_of(g).unwrap()))
        .collect();
    let id_coset = coset_of(0);
    // Orders of the generator images.
    let mut orders = Vec::new();
    for &gc in &gen_cosets {
        let mut acc = gc;
        let mut k = 1usize;
        while acc != id_coset {
            acc = coset_of(
                group
                    .index_of(&group.elements[acc].mul(&group.elements[gc]))
                    .unwrap(),
            );
            k += 1;
        }
        orders.push(k as i64);
    }
    // Relation lattice: all exponent vectors in the order box that map to
    // the identity coset, plus the order relations themselves.
    let k = gen_cosets.len();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut r = vec![0i64; k];
        r[i] = o;
        relations.push(r);
    }
    let mut exps = vec![0i64; k];
    loop {
        // Evaluate the word for the current exponent vector.
        let mut acc = id_coset;
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                acc = coset_of(
                    group
                        .index_of(&group.elements[acc].mul(&group.elements[gen_cosets[i]]))
                        .unwrap(),
                );
            }
        }
        if acc == id_coset && exps.iter().any(|&e| e != 0) {
            relations.push(exps.clone());
        }
        // Next vector in the box.
        let mut pos = 0;
        loop {
            if pos == k {
                let m = IntMatrix::from_rows_i64(&relations);
                let snf = m.snf();
                return snf
                    .diagonal()
                    .iter()
                    .filter_map(|d| d.to_i64())
                    .filter(|&d| d > 1)
                    .collect();
            }
            exps[pos] += 1;
            if exps[pos] < orders[pos] {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// True for groups of order 8 with a unique involution that are not
/// abelian, which pins down the quaternion group.
pub fn is_quaternion_group(group: &MatGroup, subgroup: &[usize]) -> bool {
    if subgroup.len() != 8 {
        return false;
    }
    let involutions = subgroup
        .iter()
        .filter(|&&i| i != 0 && group.element_order(i) == 2)
        .count();
    let abelian = subgroup.iter().all(|&a| {
        subgroup.iter().all(|&b| {
            group.elements[a].mul(&group.elements[b]) == group.elements[b].mul(&group.elements[a])
        })
    });
    involutions == 1 && !abelian
}

/// A plane through the origin, keyed by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Plane {
    pub basis: Vec<Vec<CycNum>>,
}

impl Plane {
    /// Canonicalises a spanning set via RREF.
    pub fn from_span(vectors: Vec<Vec<CycNum>>) -> Self {
        let m = CycMatrix::from_rows(vectors);
        let (rref, pivots) = m.rref();
        let basis = pivots
            .iter()
            .map(|&(r, _)| (0..m.cols).map(|j| rref.at(r, j).clone()).collect())
            .collect();
        Plane { basis }
    }
}

/// All non-identity elements with a two-dimensional fixed space, together
/// with their (deduplicated) fixed planes.
pub fn reflections_and_planes(group: &MatGroup) -> (Vec<(usize, Plane)>, Vec<Plane>) {
    let mut pairs = Vec::new();
    let mut planes: Vec<Plane> = Vec::new();
    for (i, g) in group.elements.iter().enumerate() {
        if i == 0 {
            continue;
        }
        let fix = g.fixed_space();
        if fix.len() == 2 {
            let plane = Plane::from_span(fix);
            if !planes.contains(&plane) {
                planes.push(plane.clone());
            }
            pairs.push((i, plane));
        }
    }
    planes.sort();
    (pairs, planes)
}

/// Orbits of the group acting on a set of planes by matrix image; returns
/// the orbit partition (indices into `planes`).
pub fn plane_orbits(group: &MatGroup, planes: &[Plane]) -> Vec<Vec<usize>> {
    let image = |g: &GroupMat, p: &Plane| -> Plane {
        let moved: Vec<Vec<CycNum>> = p
            .basis
            .iter()
            .map(|v| {
                (0..g.n)
                    .map(|i| {
                        (0..g.n).fold(CycNum::zero(), |acc, j| acc + g.at(i, j) * &v[j])
                    })
                    .collect()
            })
            .collect();
        Plane::from_span(moved)
    };
    let mut seen = vec![false; planes.len()];
    let mut orbits = Vec::new();
    for start in 0..planes.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in &group.elements {
            let img = image(g, &planes[start]);
            if let Some(k) = planes.iter().position(|p| *p == img) {
                orbit.insert(k);
            }
        }
        for &k in &orbit {
            seen[k] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i() -> GroupMat {
        let i = CycNum::i();
        let d = [i.clone(), -i.clone(), i.clone(), -i];
        GroupMat::from_rows(
            (0..4)
                .map(|r| {
                    (0..4)
                        .map(|c| if r == c { d[r].clone() } else { CycNum::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn trivial_group() {
        let g = enumerate_group(&[GroupMat::identity(4)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(conjugacy_classes(&g).len(), 1);
        assert!(commutator_subgroup(&g) == vec![0]);
    }

    #[test]
    fn cyclic_of_order_four() {
        let g = enumerate_group(&[diag_i()], 100).unwrap();
        assert_eq!(g.order(), 4);
        // Abelian: trivial commutator, 4 classes.
        assert_eq!(commutator_subgroup(&g), vec![0]);
        assert_eq!(conjugacy_classes(&g).len(), 4);
        let ab = abelianization_invariant_factors(&g, &[0]);
        assert_eq!(ab, vec![4]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_group(&[diag_i()], 3).unwrap_err(),
            GroupError::CapExceeded { cap: 3 }
        );
    }

    #[test]
    fn fixed_space_of_identity_like() {
        let mut rows = GroupMat::identity(4).rows();
        rows[3][3] = -CycNum::one();
        let g = GroupMat::from_rows(rows);
        assert_eq!(g.fixed_space().len(), 3);
    }
}

