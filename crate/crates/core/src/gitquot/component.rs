//! Central-fibre components: seed equations, rescaling binomial ideals to
//! toric form, lattice points of the toric model and the two embedding
//! matrices derived from the grading data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use super::DegreeTable;
use crate::cycmat::{CycMatrix, SolveOutcome};
use crate::cyclotomic::CycNum;
use crate::intmat::IntMatrix;
use crate::lattice::{is_zero_vec, rank_of, Cone, IVec};
use crate::poly::{LaurentPoly, Monomial};
use crate::radical::{solve_multiplicative, Radical};
use crate::rational::as_i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// Cut out by coordinate equations only.
    Plane,
    /// Binomial relations; rescales to a toric variety.
    Toric,
    /// A single non-binomial relation.
    Hypersurface,
}

/// Seed description of one component of the fibre over the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub name: String,
    pub kind: ComponentKind,
    pub zeros: BTreeSet<String>,
    pub relations: Vec<LaurentPoly>,
    /// Optional seeded lattice points for the surviving coordinates.
    pub lattice_seed: Vec<(String, IVec)>,
}

impl ComponentData {
    /// Surviving coordinates in degree-table order.
    pub fn survivors(&self, degrees: &DegreeTable) -> Vec<String> {
        degrees
            .names()
            .iter()
            .filter(|n| !self.zeros.contains(*n))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentError {
    UnknownCoordinate(String),
    NotBinomial(String),
    RescalingUnsolvable,
    RescalingInvalid,
    LatticeTorsion,
    SeedLatticeInconsistent(String),
    GradingNotIntegral,
    ConeNotPointed,
}

impl fmt::Display for ComponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentError::UnknownCoordinate(n) => write!(f, "unknown coordinate {n}"),
            ComponentError::NotBinomial(r) => write!(f, "relation is not a binomial: {r}"),
            ComponentError::RescalingUnsolvable => {
                write!(f, "no torus point solves the rescaling system")
            }
            ComponentError::RescalingInvalid => {
                write!(f, "solved rescaling point fails a relation")
            }
            ComponentError::LatticeTorsion => {
                write!(f, "exponent lattice is not saturated (torsion quotient)")
            }
            ComponentError::SeedLatticeInconsistent(why) => {
                write!(f, "seeded lattice points inconsistent: {why}")
            }
            ComponentError::GradingNotIntegral => {
                write!(f, "grading matrices are not integral on the lattice")
            }
            ComponentError::ConeNotPointed => write!(f, "semigroup cone is not pointed"),
        }
    }
}

/// The toric model of a binomial component: surviving coordinates, their
/// lattice points in `M = Z^d`, and the class-group / torus embeddings.
#[derive(Clone, Debug)]
pub struct ToricModel {
    pub name: String,
    pub coords: Vec<String>,
    /// Lattice point of each coordinate, parallel to `coords`.
    pub points: Vec<IVec>,
    pub ambient: usize,
    /// 2 x d class-group weight matrix: `pic(coord) = p * point`.
    pub pic_matrix: Vec<IVec>,
    /// 2 x d torus weight matrix: `torus(coord) = j * point`.
    pub torus_matrix: Vec<IVec>,
    /// Cone spanned by the lattice points (the dual-side cone in `M`).
    pub dual_cone: Cone,
    /// Its dual in `N`, whose faces index the torus orbits.
    pub sigma: Cone,
    /// The rescaling point exhibiting the toric coordinates.
    pub rescale: Vec<(String, CycNum)>,
}

impl ToricModel {
    pub fn point_of(&self, coord: &str) -> Option<&IVec> {
        self.coords
            .iter()
            .position(|c| c == coord)
            .map(|i| &self.points[i])
    }

    pub fn labelled_points(&self) -> Vec<(String, IVec)> {
        self.coords
            .iter()
            .cloned()
            .zip(self.points.iter().cloned())
            .collect()
    }

    pub fn apply_pic(&self, m: &IVec) -> (i64, i64) {
        (
            crate::lattice::dot(&self.pic_matrix[0], m),
            crate::lattice::dot(&self.pic_matrix[1], m),
        )
    }

    pub fn apply_torus(&self, m: &IVec) -> (i64, i64) {
        (
            crate::lattice::dot(&self.torus_matrix[0], m),
            crate::lattice::dot(&self.torus_matrix[1], m),
        )
    }
}

/// Exponent-difference vector of a binomial relation over the given
/// coordinate order, with the coefficient ratio `-c2/c1`.
fn binomial_data(
    rel: &LaurentPoly,
    coords: &[String],
) -> Result<(IVec, CycNum), ComponentError> {
    use alloc::format;
    let terms: Vec<(&Monomial, &CycNum)> = rel.terms().collect();
    if terms.len() != 2 {
        return Err(ComponentError::NotBinomial(format!("{rel}")));
    }
    let (m1, c1) = terms[0];
    let (m2, c2) = terms[1];
    let mut d = vec![0i64; coords.len()];
    for (v, e) in m1.exps() {
        let Some(i) = coords.iter().position(|c| c == v) else {
            return Err(ComponentError::UnknownCoordinate(v.to_string()));
        };
        d[i] += e;
    }
    for (v, e) in m2.exps() {
        let Some(i) = coords.iter().position(|c| c == v) else {
            return Err(ComponentError::UnknownCoordinate(v.to_string()));
        };
        d[i] -= e;
    }
    let lambda = -(c2.checked_div(c1).expect("nonzero leading coefficient"));
    Ok((d, lambda))
}

/// Builds the toric model of a binomial component: solves the rescaling
/// system exactly, derives the character lattice as the free quotient by the
/// exponent lattice (or validates the seeded points), and solves for the
/// grading matrices.
pub fn build_toric_model(
    c: &ComponentData,
    degrees: &DegreeTable,
) -> Result<ToricModel, ComponentError> {
    let coords = c.survivors(degrees);
    let n = coords.len();

    // Exponent vectors and coefficient ratios of the binomials.
    let mut diffs: Vec<IVec> = Vec::new();
    let mut lambdas: Vec<Radical> = Vec::new();
    for rel in &c.relations {
        let (d, lam) = binomial_data(rel, &coords)?;
        let rad = Radical::from_cycnum(&lam).ok_or(ComponentError::RescalingUnsolvable)?;
        diffs.push(d);
        lambdas.push(rad);
    }

    // Rescaling point: a^diffs = lambda, all entries nonzero.
    let rescale: Vec<(String, CycNum)> = if diffs.is_empty() {
        coords.iter().map(|c| (c.clone(), CycNum::one())).collect()
    } else {
        let a = solve_multiplicative(&diffs, &lambdas)
            .ok_or(ComponentError::RescalingUnsolvable)?;
        coords
            .iter()
            .zip(a.iter())
            .map(|(c, r)| (c.clone(), r.to_cycnum()))
            .collect()
    };
    // Validate by substitution into every relation.
    let point: BTreeMap<String, CycNum> = rescale.iter().cloned().collect();
    for rel in &c.relations {
        let v = rel.evaluate(&point).expect("polynomial relations");
        if !v.is_zero() {
            return Err(ComponentError::RescalingInvalid);
        }
    }

    // Character lattice: free quotient of Z^n by the exponent lattice.
    let rank_l = rank_of(&diffs);
    let d = n - rank_l;
    let points: Vec<IVec> = if !c.lattice_seed.is_empty() {
        // Validate the seeded points: correct labels, kill the exponent
        // lattice, span Z^d, and leave exactly the right rank.
        let mut pts = Vec::new();
        for name in &coords {
            let Some((_, v)) = c.lattice_seed.iter().find(|(l, _)| l == name) else {
                return Err(ComponentError::SeedLatticeInconsistent(name.clone()));
            };
            pts.push(v.clone());
        }
        for diff in &diffs {
            let mut img = vec![0i64; d];
            for (i, coef) in diff.iter().enumerate() {
                for (k, x) in pts[i].iter().enumerate() {
                    img[k] += coef * x;
                }
            }
            if !is_zero_vec(&img) {
                return Err(ComponentError::SeedLatticeInconsistent(
                    "exponent lattice not annihilated".to_string(),
                ));
            }
        }
        if rank_of(&pts) != d {
            return Err(ComponentError::SeedLatticeInconsistent(
                "points do not span the quotient".to_string(),
            ));
        }
        // Surjectivity onto Z^d.
        let m = IntMatrix::from_rows_i64(&pts);
        if m.snf().diagonal().iter().any(|x| x.to_i64() != Some(1)) {
            return Err(ComponentError::SeedLatticeInconsistent(
                "points generate a proper sublattice".to_string(),
            ));
        }
        pts
    } else {
        // phi = free cokernel projection of the diff columns.
        let mut mat = IntMatrix::zero(n, diffs.len().max(1));
        for (j, diff) in diffs.iter().enumerate() {
            for i in 0..n {
                *mat.at_mut(i, j) = diff[i].into();
            }
        }
        let proj = mat
            .cokernel_free_projection()
            .map_err(|_| ComponentError::LatticeTorsion)?;
        debug_assert_eq!(proj.rows, d);
        (0..n)
            .map(|g| {
                (0..d)
                    .map(|i| proj.at(i, g).to_i64().expect("small entries"))
                    .collect()
            })
            .collect()
    };

    // Grading matrices: solve row-wise, then verify on every coordinate.
    let pic_rows: Vec<(i64, i64)> = coords
        .iter()
        .map(|g| degrees.pic(g).expect("graded coordinate"))
        .collect();
    let torus_rows: Vec<(i64, i64)> = coords
        .iter()
        .map(|g| degrees.torus(g).expect("graded coordinate"))
        .collect();
    let pic_matrix = solve_grading(&points, &pic_rows, d)?;
    let torus_matrix = solve_grading(&points, &torus_rows, d)?;

    let dual_cone =
        Cone::new(d, points.clone()).map_err(|_| ComponentError::ConeNotPointed)?;
    let sigma = dual_cone
        .dual()
        .map_err(|_| ComponentError::ConeNotPointed)?;

    Ok(ToricModel {
        name: c.name.clone(),
        coords,
        points,
        ambient: d,
        pic_matrix,
        torus_matrix,
        dual_cone,
        sigma,
        rescale,
    })
}

/// Solves `w_g = m * v_g` for the 2 x d integer matrix `m`.
fn solve_grading(
    points: &[IVec],
    weights: &[(i64, i64)],
    d: usize,
) -> Result<Vec<IVec>, ComponentError> {
    let a = CycMatrix::from_rows(
        points
            .iter()
            .map(|v| v.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect(),
    );
    let mut rows = Vec::new();
    for pick in 0..2 {
        let rhs: Vec<CycNum> = weights
            .iter()
            .map(|w| CycNum::from_int(if pick == 0 { w.0 } else { w.1 }))
            .collect();
        match a.solve(&rhs) {
            SolveOutcome::Solution { x, .. } => {
                let mut row = Vec::with_capacity(d);
                for c in &x {
                    let r = c.as_rational().ok_or(ComponentError::GradingNotIntegral)?;
                    row.push(as_i64(r).ok_or(ComponentError::GradingNotIntegral)?);
                }
                rows.push(row);
            }
            SolveOutcome::Inconsistent { .. } => return Err(ComponentError::GradingNotIntegral),
        }
    }
    // Verify on all coordinates.
    for (v, w) in points.iter().zip(weights) {
        let got = (
            crate::lattice::dot(&rows[0], v),
            crate::lattice::dot(&rows[1], v),
        );
        if got != *w {
            return Err(ComponentError::GradingNotIntegral);
        }
    }
    Ok(rows)
}
