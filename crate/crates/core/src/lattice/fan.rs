//! Two-dimensional fans, unimodular fan isomorphism, and the face of a cone
//! matching a prescribed coordinate-vanishing pattern.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{dot, Cone, ConeError, IVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanError {
    Cone(ConeError),
    BadIntersection { a: usize, b: usize },
    NoMatchingFace,
    AmbiguousFace,
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::Cone(e) => write!(f, "{e}"),
            FanError::BadIntersection { a, b } => {
                write!(f, "cones {a} and {b} do not intersect in a common face")
            }
            FanError::NoMatchingFace => write!(f, "no face realises the vanishing pattern"),
            FanError::AmbiguousFace => write!(f, "several faces realise the vanishing pattern"),
        }
    }
}

impl From<ConeError> for FanError {
    fn from(e: ConeError) -> Self {
        FanError::Cone(e)
    }
}

/// A fan given by its maximal cones; construction checks that pairwise
/// intersections are faces of both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    max_cones: Vec<Cone>,
}

impl Fan {
    pub fn new(ambient: usize, max_cones: Vec<Cone>) -> Result<Self, FanError> {
        for (a, ca) in max_cones.iter().enumerate() {
            for (b, cb) in max_cones.iter().enumerate().skip(a + 1) {
                let i = ca.intersect(cb)?;
                if !i.is_face_of(ca) || !i.is_face_of(cb) {
                    return Err(FanError::BadIntersection { a, b });
                }
            }
        }
        Ok(Fan { ambient, max_cones })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Primitive ray generators, sorted and deduplicated.
    pub fn rays(&self) -> Vec<IVec> {
        let set: BTreeSet<IVec> = self
            .max_cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.max_cones
            .iter()
            .any(|m| m.equals_as_cone(c) || c.is_face_of(m))
    }

    /// Applies a 2x2 matrix to every ray and cone.
    pub fn transform(&self, m: &[[i64; 2]; 2]) -> Result<Fan, FanError> {
        let mut cones = Vec::new();
        for c in &self.max_cones {
            let rays: Vec<IVec> = c.rays().iter().map(|r| apply2(m, r)).collect();
            cones.push(Cone::new(2, rays)?);
        }
        Fan::new(2, cones)
    }
}

fn apply2(m: &[[i64; 2]; 2], v: &[i64]) -> IVec {
    vec![
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn det2(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Searches for a unimodular map carrying `f1` onto `f2` (rays to rays,
/// cones to cones) by enumerating the images of one adjacent ray pair.
pub fn fan_isomorphism(f1: &Fan, f2: &Fan) -> Option<[[i64; 2]; 2]> {
    fan_isomorphisms(f1, f2).into_iter().next()
}

/// Every unimodular map carrying `f1` onto `f2`.
pub fn fan_isomorphisms(f1: &Fan, f2: &Fan) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    if f1.max_cones().is_empty() || f1.max_cones().len() != f2.max_cones().len() {
        return out;
    }
    let c1 = &f1.max_cones()[0];
    let [r1, r2] = c1.rays() else {
        return out;
    };
    let d = r1[0] * r2[1] - r1[1] * r2[0];
    for c2 in f2.max_cones() {
        let [s1, s2] = c2.rays() else { continue };
        for (a, b) in [(s1, s2), (s2, s1)] {
            // Solve m * r1 = a, m * r2 = b: m = [a b] * [r1 r2]^-1.
            // [r1 r2]^-1 = adj / d.
            let adj = [[r2[1], -r2[0]], [-r1[1], r1[0]]];
            let raw = [
                [
                    a[0] * adj[0][0] + b[0] * adj[1][0],
                    a[0] * adj[0][1] + b[0] * adj[1][1],
                ],
                [
                    a[1] * adj[0][0] + b[1] * adj[1][0],
                    a[1] * adj[0][1] + b[1] * adj[1][1],
                ],
            ];
            if raw.iter().flatten().any(|x| x % d != 0) {
                continue;
            }
            let m = [
                [raw[0][0] / d, raw[0][1] / d],
                [raw[1][0] / d, raw[1][1] / d],
            ];
            if det2(&m).abs() != 1 {
                continue;
            }
            if fan_maps_onto(f1, f2, &m) && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Re-checks independently that `m` maps every maximal cone of `f1` onto a
/// maximal cone of `f2`, bijectively.
pub fn fan_maps_onto(f1: &Fan, f2: &Fan, m: &[[i64; 2]; 2]) -> bool {
    if det2(m).abs() != 1 || f1.max_cones().len() != f2.max_cones().len() {
        return false;
    }
    let mut used = vec![false; f2.max_cones().len()];
    for c in f1.max_cones() {
        let image_rays: Vec<IVec> = c.rays().iter().map(|r| apply2(m, r)).collect();
        let Ok(image) = Cone::new(2, image_rays) else {
            return false;
        };
        let Some(idx) = f2
            .max_cones()
            .iter()
            .position(|t| t.equals_as_cone(&image))
        else {
            return false;
        };
        if used[idx] {
            return false;
        }
        used[idx] = true;
    }
    true
}

/// The standard complete fan of the ruled surface over P^1 with twist `n`:
/// rays (1,0), (0,1), (-1,n), (0,-1).
pub fn hirzebruch_fan(n: i64) -> Fan {
    let rays = [vec![1, 0], vec![0, 1], vec![-1, n], vec![0, -1]];
    let cones = (0..4)
        .map(|k| Cone::new(2, vec![rays[k].clone(), rays[(k + 1) % 4].clone()]).unwrap())
        .collect();
    Fan::new(2, cones).expect("standard fan is a fan")
}

/// Finds the unique face `tau` of `sigma` such that the coordinate with
/// label `m` vanishes on the associated orbit iff `m` is not orthogonal to
/// `tau`; the prescribed vanishing label set must match exactly.
pub fn orbit_face_of_vanishing(
    dual_gens: &[(String, IVec)],
    vanishing: &BTreeSet<String>,
    sigma: &Cone,
) -> Result<Cone, FanError> {
    let mut found: Option<Cone> = None;
    for face in sigma.faces() {
        let pattern: BTreeSet<String> = dual_gens
            .iter()
            .filter(|(_, v)| face.rays().iter().any(|r| dot(v, r) != 0))
            .map(|(l, _)| l.clone())
            .collect();
        if &pattern == vanishing {
            match found {
                // Distinct faces can share a pattern only through ties that
                // never arise from genuine orbit data; flag them.
                Some(ref prev) if !prev.equals_as_cone(&face) => {
                    return Err(FanError::AmbiguousFace)
                }
                _ => found = Some(face),
            }
        }
    }
    found.ok_or(FanError::NoMatchingFace)
}
