//! Pointed rational polyhedral cones with exact duals and face lattices.
//!
//! Duality runs the double-description method over the integers: the dual
//! starts as all of space (a basis of lines) and each generator of the
//! primal cuts it by a halfspace. Adjacency of rays is decided by an exact
//! rank test, so no redundant dual generators survive.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{dot, is_zero_vec, neg_vec, primitive, rank_of, scale_vec, sub_vec, IVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeError {
    ZeroGenerator,
    NotPointed,
    DualNotPointed,
    MixedDimensions,
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::ZeroGenerator => write!(f, "cone generator is the zero vector"),
            ConeError::NotPointed => write!(f, "cone is not pointed"),
            ConeError::DualNotPointed => {
                write!(f, "dual is not pointed (input cone not full-dimensional)")
            }
            ConeError::MixedDimensions => write!(f, "generators of different lengths"),
        }
    }
}

/// A pointed cone, stored by its (primitive, sorted, irredundant) generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IVec>,
}

/// Halfspace description: `x` lies in the cone iff it vanishes on all
/// `equalities` and is nonnegative on all `inequalities`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equalities: Vec<IVec>,
    pub inequalities: Vec<IVec>,
}

impl Cone {
    /// The zero cone in the given ambient rank.
    pub fn zero(ambient: usize) -> Self {
        Cone {
            ambient,
            rays: Vec::new(),
        }
    }

    /// Builds a pointed cone; generator lists are primitivised, deduplicated
    /// and reduced to extreme rays.
    pub fn new(ambient: usize, generators: Vec<IVec>) -> Result<Self, ConeError> {
        let mut rays = Vec::new();
        for g in &generators {
            if g.len() != ambient {
                return Err(ConeError::MixedDimensions);
            }
            if is_zero_vec(g) {
                return Err(ConeError::ZeroGenerator);
            }
            let p = primitive(g);
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        // Pointedness: the dual must span the ambient space.
        let (lines, dual_rays) = dd_dual(&rays, ambient);
        let mut span: Vec<IVec> = lines.clone();
        span.extend(dual_rays.iter().cloned());
        if rank_of(&span) != ambient {
            return Err(ConeError::NotPointed);
        }
        // Drop non-extreme generators: a generator is extreme iff the dual
        // constraints tight at it cut down to a one-dimensional face.
        let hrep = HRep {
            equalities: lines,
            inequalities: dual_rays,
        };
        let mut extreme = Vec::new();
        for r in &rays {
            let mut tight: Vec<IVec> = hrep.equalities.clone();
            for n in &hrep.inequalities {
                if dot(n, r) == 0 {
                    tight.push(n.clone());
                }
            }
            if rank_of(&tight) == ambient - 1 || rays.len() == 1 {
                extreme.push(r.clone());
            }
        }
        extreme.sort();
        Ok(Cone {
            ambient,
            rays: extreme,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.rays)
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty()
    }

    /// Halfspace description (exact; valid for lower-dimensional cones).
    pub fn hrep(&self) -> HRep {
        let (equalities, inequalities) = dd_dual(&self.rays, self.ambient);
        HRep {
            equalities,
            inequalities,
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let h = self.hrep();
        h.equalities.iter().all(|e| dot(e, x) == 0)
            && h.inequalities.iter().all(|n| dot(n, x) >= 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    pub fn equals_as_cone(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    /// The dual cone; errors when the input is not full-dimensional (the
    /// dual would then fail to be pointed).
    pub fn dual(&self) -> Result<Cone, ConeError> {
        let (lines, rays) = dd_dual(&self.rays, self.ambient);
        if !lines.is_empty() {
            return Err(ConeError::DualNotPointed);
        }
        let mut rays = rays;
        rays.sort();
        Ok(Cone {
            ambient: self.ambient,
            rays,
        })
    }

    /// All faces, including the zero cone and the cone itself. Every face of
    /// a pointed cone is an intersection of facets and is generated by the
    /// rays it contains.
    pub fn faces(&self) -> Vec<Cone> {
        let h = self.hrep();
        let normals = &h.inequalities;
        let mut seen: Vec<Vec<IVec>> = Vec::new();
        let mut out = Vec::new();
        let n_facets = normals.len();
        assert!(n_facets < 22, "face enumeration is exponential in facets");
        for mask in 0u32..(1u32 << n_facets) {
            let mut face_rays = Vec::new();
            for r in &self.rays {
                let tight = (0..n_facets)
                    .all(|k| (mask >> k) & 1 == 0 || dot(&normals[k], r) == 0);
                if tight {
                    face_rays.push(r.clone());
                }
            }
            face_rays.sort();
            if seen.contains(&face_rays) {
                continue;
            }
            seen.push(face_rays.clone());
            out.push(Cone {
                ambient: self.ambient,
                rays: face_rays,
            });
        }
        // The zero face can be missed when there are no facets at all.
        if !seen.contains(&Vec::new()) {
            out.push(Cone::zero(self.ambient));
        }
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.faces().iter().any(|f| f.equals_as_cone(self))
    }

    /// Intersection of two pointed cones in the same ambient space.
    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        let ha = self.hrep();
        let hb = other.hrep();
        let mut constraints = Vec::new();
        for e in ha.equalities.iter().chain(hb.equalities.iter()) {
            constraints.push(e.clone());
            constraints.push(neg_vec(e));
        }
        constraints.extend(ha.inequalities.iter().cloned());
        constraints.extend(hb.inequalities.iter().cloned());
        let (lines, rays) = dd_dual(&constraints, self.ambient);
        debug_assert!(lines.is_empty(), "intersection of pointed cones is pointed");
        Cone::new(self.ambient, rays)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.rays)
    }
}

/// The face of the dual cone matching a face of the primal: `sigma_dual
/// intersect tau_perp`. The map is an inclusion-reversing bijection between
/// the two face lattices.
pub fn face_duality(sigma: &Cone, tau: &Cone) -> Result<Cone, ConeError> {
    let dual = sigma.dual()?;
    let rays: Vec<IVec> = dual
        .rays()
        .iter()
        .filter(|u| tau.rays().iter().all(|r| dot(u, r) == 0))
        .cloned()
        .collect();
    if rays.is_empty() {
        return Ok(Cone::zero(sigma.ambient()));
    }
    Cone::new(sigma.ambient(), rays)
}

/// Double description: returns (lines, rays) generating
/// `{u : <u, g> >= 0 for all g in generators}`.
pub fn dd_dual(generators: &[IVec], ambient: usize) -> (Vec<IVec>, Vec<IVec>) {
    #[derive(Clone)]
    struct Ray {
        v: IVec,
        tight: Vec<usize>,
    }
    let mut lines: Vec<IVec> = (0..ambient)
        .map(|i| {
            let mut e = vec![0i64; ambient];
            e[i] = 1;
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    // Minimal-face adjacency: two rays are adjacent iff no third ray is
    // tight on every constraint they are both tight on, measured by rank.
    let adjacent = |rays: &[Ray], lines: &[IVec], i: usize, j: usize| -> bool {
        let t: Vec<usize> = rays[i]
            .tight
            .iter()
            .filter(|x| rays[j].tight.contains(x))
            .cloned()
            .collect();
        let mut span: Vec<IVec> = lines.to_vec();
        for (m, r) in rays.iter().enumerate() {
            if m == i || m == j || t.iter().all(|c| r.tight.contains(c)) {
                span.push(r.v.clone());
            }
        }
        rank_of(&span) <= lines.len() + 2
    };

    for (k, g) in generators.iter().enumerate() {
        if is_zero_vec(g) {
            continue;
        }
        // Line phase: if some line sees the constraint, split it off.
        if let Some(pos) = lines.iter().position(|l| dot(l, g) != 0) {
            let mut l0 = lines.remove(pos);
            if dot(&l0, g) < 0 {
                l0 = neg_vec(&l0);
            }
            let d0 = dot(&l0, g);
            for l in lines.iter_mut() {
                let c = dot(l, g);
                if c != 0 {
                    *l = primitive(&sub_vec(&scale_vec(l, d0), &scale_vec(&l0, c)));
                }
            }
            for r in rays.iter_mut() {
                let c = dot(&r.v, g);
                if c != 0 {
                    r.v = primitive(&sub_vec(&scale_vec(&r.v, d0), &scale_vec(&l0, c)));
                }
                r.tight.push(k);
            }
            rays.push(Ray {
                v: primitive(&l0),
                tight: (0..k).collect(),
            });
            continue;
        }
        // Ray phase.
        let values: Vec<i64> = rays.iter().map(|r| dot(&r.v, g)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if values[i] > 0 {
                next.push(r.clone());
            } else if values[i] == 0 {
                let mut t = r.tight.clone();
                t.push(k);
                next.push(Ray { v: r.v.clone(), tight: t });
            }
        }
        for (i, ri) in rays.iter().enumerate() {
            if values[i] <= 0 {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if values[j] >= 0 {
                    continue;
                }
                if !adjacent(&rays, &lines, i, j) {
                    continue;
                }
                // values[i] * rj - values[j] * ri vanishes on g.
                let v = primitive(&sub_vec(
                    &scale_vec(&rj.v, values[i]),
                    &scale_vec(&ri.v, values[j]),
                ));
                if is_zero_vec(&v) {
                    continue;
                }
                let mut t: Vec<usize> = ri
                    .tight
                    .iter()
                    .filter(|x| rj.tight.contains(x))
                    .cloned()
                    .collect();
                t.push(k);
                if next.iter().any(|r| r.v == v) {
                    continue;
                }
                next.push(Ray { v, tight: t });
            }
        }
        rays = next;
    }

    let mut out_rays: Vec<IVec> = rays.into_iter().map(|r| r.v).collect();
    out_rays.sort();
    out_rays.dedup();
    (lines, out_rays)
}
