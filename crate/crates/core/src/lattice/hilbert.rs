//! Hilbert bases of pointed cones, affine semigroups and the per-orbit
//! normality test for not-necessarily-saturated semigroups.
//!
//! The Hilbert basis is computed by triangulating the cone and enumerating
//! the lattice points of each fundamental parallelepiped, then discarding
//! reducible candidates. Adequate at rank <= 4 with small generator entries.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use super::{add_vec, dot, is_zero_vec, Cone, ConeError, IVec};
use crate::cycmat::{CycMatrix, SolveOutcome};
use crate::cyclotomic::CycNum;
use crate::intmat::IntMatrix;
use crate::rational::as_i64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    Cone(ConeError),
    NotAFace,
    NotPointed,
}

impl fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupError::Cone(e) => write!(f, "{e}"),
            SemigroupError::NotAFace => write!(f, "input is not a face of the semigroup cone"),
            SemigroupError::NotPointed => write!(f, "semigroup cone is not pointed"),
        }
    }
}

impl From<ConeError> for SemigroupError {
    fn from(e: ConeError) -> Self {
        SemigroupError::Cone(e)
    }
}

/// A finitely generated subsemigroup of a lattice, given by its generators.
/// Saturation is a computed property, not an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    pub gens: Vec<IVec>,
    pub ambient: usize,
}

impl AffineSemigroup {
    pub fn new(ambient: usize, gens: Vec<IVec>) -> Self {
        let mut gens: Vec<IVec> = gens.into_iter().filter(|g| !is_zero_vec(g)).collect();
        gens.sort();
        gens.dedup();
        AffineSemigroup { gens, ambient }
    }

    pub fn cone(&self) -> Result<Cone, ConeError> {
        Cone::new(self.ambient, self.gens.clone())
    }
}

/// The unique minimal generating set of the saturated semigroup `M & c`.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IVec>, SemigroupError> {
    if c.is_zero_cone() {
        return Ok(Vec::new());
    }
    let n = c.ambient();
    let d = c.dim();
    if d < n {
        // Work inside the saturated lattice spanned by the cone.
        let h = c.hrep();
        let eqs = IntMatrix::from_rows_i64(&h.equalities);
        let basis = eqs.right_kernel_basis();
        debug_assert_eq!(basis.cols, d);
        let in_coords: Vec<IVec> = c
            .rays()
            .iter()
            .map(|r| express_in_lattice_basis(&basis, r))
            .collect();
        let sub = Cone::new(d, in_coords)?;
        let hb = hilbert_basis(&sub)?;
        return Ok(hb
            .into_iter()
            .map(|v| apply_basis(&basis, &v))
            .collect());
    }

    // Candidate points: ray generators plus the lattice points of the
    // fundamental parallelepiped of every simplicial piece.
    let mut candidates: BTreeSet<IVec> = c.rays().iter().cloned().collect();
    for simplex in triangulate(c) {
        for p in parallelepiped_points(&simplex) {
            if !is_zero_vec(&p) {
                candidates.insert(p);
            }
        }
    }
    // Positive functional on the cone: the sum of all facet normals.
    let hrep = c.hrep();
    let mut w = vec![0i64; n];
    for ineq in &hrep.inequalities {
        w = add_vec(&w, ineq);
    }
    let mut sorted: Vec<IVec> = candidates.into_iter().collect();
    sorted.sort_by_key(|v| dot(&w, v));
    let mut basis: Vec<IVec> = Vec::new();
    'next: for h in sorted {
        for r in &basis {
            let diff: IVec = h.iter().zip(r).map(|(a, b)| a - b).collect();
            if !is_zero_vec(&diff) && c.contains(&diff) {
                continue 'next;
            }
        }
        basis.push(h);
    }
    basis.sort();
    Ok(basis)
}

/// Splits a full-dimensional pointed cone into simplicial subcones by
/// placing from the first ray.
fn triangulate(c: &Cone) -> Vec<Vec<IVec>> {
    let d = c.dim();
    if c.rays().len() == d {
        return vec![c.rays().to_vec()];
    }
    let apex = &c.rays()[0];
    let mut out = Vec::new();
    for facet in c.faces() {
        if facet.dim() + 1 != d || facet.contains(apex) {
            continue;
        }
        for mut simplex in triangulate(&facet) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Lattice points in `{sum li ri : 0 <= li < 1}` for linearly independent
/// `ri`, one per coset of the sublattice they span.
fn parallelepiped_points(rays: &[IVec]) -> Vec<IVec> {
    let n = rays[0].len();
    let d = rays.len();
    assert_eq!(d, n, "parallelepiped enumeration expects a full-rank simplex");
    let cols: Vec<IVec> = rays.to_vec();
    let mut mat = IntMatrix::zero(n, d);
    for (j, cvec) in cols.iter().enumerate() {
        for i in 0..n {
            *mat.at_mut(i, j) = cvec[i].into();
        }
    }
    let snf = mat.snf();
    let diag: Vec<i64> = snf
        .diagonal()
        .iter()
        .map(|x| x.to_i64().expect("small determinant"))
        .collect();
    // Coset representatives y, mapped back through u^-1 by solving u x = y.
    let mut reps: Vec<IVec> = vec![vec![0; n]];
    for (i, &di) in diag.iter().enumerate() {
        let mut next = Vec::new();
        for rep in &reps {
            for k in 0..di {
                let mut r = rep.clone();
                r[i] = k;
                next.push(r);
            }
        }
        reps = next;
    }
    let u_rows: Vec<IVec> = (0..snf.u.rows)
        .map(|i| snf.u.row_i64(i).expect("unimodular entries fit"))
        .collect();
    let u_mat = rows_to_cycmatrix(&u_rows);
    let mut out = Vec::new();
    for y in reps {
        let rhs: Vec<CycNum> = y.iter().map(|&v| CycNum::from_int(v)).collect();
        let SolveOutcome::Solution { x, .. } = u_mat.solve(&rhs) else {
            unreachable!("u is unimodular")
        };
        let xc: IVec = x
            .iter()
            .map(|c| as_i64(c.as_rational().expect("integral")).expect("fits"))
            .collect();
        // Reduce xc into the parallelepiped: x - cols * floor(cols^-1 x).
        out.push(reduce_into_parallelepiped(&cols, &xc));
    }
    out
}

fn reduce_into_parallelepiped(cols: &[IVec], x: &IVec) -> IVec {
    let d = cols.len();
    let n = cols[0].len();
    let mut m = CycMatrix::zero(n, d);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            *m.at_mut(i, j) = CycNum::from_int(c[i]);
        }
    }
    let rhs: Vec<CycNum> = x.iter().map(|&v| CycNum::from_int(v)).collect();
    let SolveOutcome::Solution { x: t, .. } = m.solve(&rhs) else {
        unreachable!("independent columns span the point")
    };
    let mut out = x.clone();
    for (j, tj) in t.iter().enumerate() {
        let r = tj.as_rational().expect("rational coordinates");
        let fl = r.floor();
        let f = as_i64(&fl).expect("small coordinates");
        if f != 0 {
            for i in 0..n {
                out[i] -= f * cols[j][i];
            }
        }
    }
    out
}

fn rows_to_cycmatrix(rows: &[IVec]) -> CycMatrix {
    CycMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect(),
    )
}

/// Writes `v` in the columns of `basis` (a saturated lattice basis),
/// asserting integrality.
fn express_in_lattice_basis(basis: &IntMatrix, v: &IVec) -> IVec {
    let rows: Vec<IVec> = (0..basis.rows)
        .map(|i| basis.row_i64(i).expect("small entries"))
        .collect();
    let m = rows_to_cycmatrix(&rows);
    let rhs: Vec<CycNum> = v.iter().map(|&x| CycNum::from_int(x)).collect();
    match m.solve(&rhs) {
        SolveOutcome::Solution { x, .. } => x
            .iter()
            .map(|c| as_i64(c.as_rational().expect("rational")).expect("integral coordinates"))
            .collect(),
        SolveOutcome::Inconsistent { .. } => panic!("vector outside lattice span"),
    }
}

fn apply_basis(basis: &IntMatrix, coords: &IVec) -> IVec {
    (0..basis.rows)
        .map(|i| {
            (0..basis.cols)
                .map(|j| basis.at(i, j).to_i64().expect("small entries") * coords[j])
                .sum()
        })
        .collect()
}

/// Membership of `m` in the (not necessarily saturated) semigroup generated
/// by `s.gens`, by depth-first search over a strictly decreasing positive
/// functional.
pub fn semigroup_member(s: &AffineSemigroup, m: &IVec) -> Result<bool, SemigroupError> {
    if is_zero_vec(m) {
        return Ok(true);
    }
    if s.gens.is_empty() {
        return Ok(false);
    }
    let cone = s.cone().map_err(|_| SemigroupError::NotPointed)?;
    if !cone.contains(m) {
        return Ok(false);
    }
    let hrep = cone.hrep();
    let mut w = vec![0i64; s.ambient];
    for ineq in &hrep.inequalities {
        w = add_vec(&w, ineq);
    }
    debug_assert!(s.gens.iter().all(|g| dot(&w, g) > 0));
    let mut dead: BTreeSet<IVec> = BTreeSet::new();
    Ok(search(s, &cone, m, &mut dead))
}

fn search(s: &AffineSemigroup, cone: &Cone, r: &IVec, dead: &mut BTreeSet<IVec>) -> bool {
    if is_zero_vec(r) {
        return true;
    }
    if dead.contains(r) {
        return false;
    }
    for g in &s.gens {
        let diff: IVec = r.iter().zip(g).map(|(a, b)| a - b).collect();
        if cone.contains(&diff) && search(s, cone, &diff, dead) {
            return true;
        }
    }
    dead.insert(r.clone());
    false
}

/// Per-orbit normality: the orbit attached to the face `face` of
/// `cone(s.gens)` consists of normal points iff
/// `M & span(face) + S  =  M & span(face) + M & cone(S)`.
///
/// The test is decided exactly by passing to the quotient lattice
/// `M / (M & span(face))`, where the image cone is again pointed, so the
/// membership search terminates with a definite answer.
pub fn orbit_is_normal(s: &AffineSemigroup, face: &Cone) -> Result<bool, SemigroupError> {
    let cone_s = s.cone()?;
    if !face.is_face_of(&cone_s) {
        return Err(SemigroupError::NotAFace);
    }
    let hb = hilbert_basis(&cone_s)?;
    // Quotient projection killing the saturated span of the face.
    let proj: Option<IntMatrix> = if face.is_zero_cone() {
        None
    } else {
        let mut mat = IntMatrix::zero(s.ambient, face.rays().len());
        for (j, r) in face.rays().iter().enumerate() {
            for i in 0..s.ambient {
                *mat.at_mut(i, j) = r[i].into();
            }
        }
        // Saturate: kernel-of-kernel gives the saturated column lattice.
        let kt = mat.transpose().right_kernel_basis();
        let eqs: Vec<IVec> = (0..kt.cols)
            .map(|j| {
                (0..kt.rows)
                    .map(|i| kt.at(i, j).to_i64().expect("small"))
                    .collect()
            })
            .collect();
        let sat_basis = if eqs.is_empty() {
            IntMatrix::identity(s.ambient)
        } else {
            IntMatrix::from_rows_i64(&eqs).right_kernel_basis()
        };
        Some(
            sat_basis
                .cokernel_free_projection()
                .expect("saturated sublattice has free quotient"),
        )
    };
    let project = |v: &IVec| -> IVec {
        match &proj {
            None => v.clone(),
            Some(p) => (0..p.rows)
                .map(|i| {
                    (0..p.cols)
                        .map(|j| p.at(i, j).to_i64().expect("small") * v[j])
                        .sum()
                })
                .collect(),
        }
    };
    let quotient_dim = match &proj {
        None => s.ambient,
        Some(p) => p.rows,
    };
    if quotient_dim == 0 {
        return Ok(true);
    }
    let image = AffineSemigroup::new(quotient_dim, s.gens.iter().map(&project).collect());
    for h in &hb {
        let hbar = project(h);
        if !semigroup_member(&image, &hbar)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone2(rays: &[[i64; 2]]) -> Cone {
        Cone::new(2, rays.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Independent brute-force oracle: all lattice points of the cone in a
    /// box, greedily reduced to the minimal generating set.
    fn brute_force_hb_2d(c: &Cone, bound: i64) -> Vec<IVec> {
        let mut points = Vec::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                let v = vec![x, y];
                if !is_zero_vec(&v) && c.contains(&v) {
                    points.push(v);
                }
            }
        }
        let mut basis: Vec<IVec> = Vec::new();
        points.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<i64>());
        'next: for p in points {
            for b in &basis {
                let d: IVec = p.iter().zip(b).map(|(a, x)| a - x).collect();
                if is_zero_vec(&d) || c.contains(&d) {
                    continue 'next;
                }
            }
            basis.push(p);
        }
        basis.sort();
        basis
    }

    #[test]
    fn quadrant_basis() {
        let c = cone2(&[[1, 0], [0, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn singular_cone_bases() {
        let c = cone2(&[[1, 0], [1, 2]]);
        let expect = brute_force_hb_2d(&c, 6);
        assert_eq!(expect, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(hilbert_basis(&c).unwrap(), expect);

        let c6 = cone2(&[[1, 0], [1, 6]]);
        let hb = hilbert_basis(&c6).unwrap();
        assert_eq!(hb.len(), 7);
        assert_eq!(hb, (0..=6).map(|k| vec![1, k]).collect::<Vec<_>>());
        assert_eq!(hb, brute_force_hb_2d(&c6, 8));
    }

    #[test]
    fn lower_dimensional_cone() {
        let ray = Cone::new(3, vec![vec![2, 4, 6]]).unwrap();
        assert_eq!(hilbert_basis(&ray).unwrap(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn membership_examples() {
        let s = AffineSemigroup::new(2, vec![vec![1, 0], vec![1, 2]]);
        assert!(semigroup_member(&s, &vec![0, 0]).unwrap());
        assert!(!semigroup_member(&s, &vec![1, 1]).unwrap());
        assert!(semigroup_member(&s, &vec![2, 2]).unwrap());
    }

    #[test]
    fn saturated_semigroup_is_normal_everywhere() {
        let s = AffineSemigroup::new(2, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        let cone = s.cone().unwrap();
        for f in cone.faces() {
            assert!(orbit_is_normal(&s, &f).unwrap());
        }
    }

    #[test]
    fn non_saturated_at_the_origin_orbit() {
        // <(1,0),(1,2)> misses (1,1): not normal at the fixed point, but
        // normal along the dense orbit.
        let s = AffineSemigroup::new(2, vec![vec![1, 0], vec![1, 2]]);
        let cone = s.cone().unwrap();
        assert!(!orbit_is_normal(&s, &Cone::zero(2)).unwrap());
        assert!(orbit_is_normal(&s, &cone).unwrap());
    }
}
