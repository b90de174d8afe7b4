//! Compasses of torus-fixed points, assembled from the component weight
//! tables: hull vertices give the fixed points, vertex semigroups give the
//! known tangent weights, and the homothety pairing plus the sign-balance
//! rule complete each compass to four vectors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gitquot::WeightTable;
use crate::lattice::{dd_dual, dot, AffineSemigroup, IVec};
use crate::poly::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompassError {
    Underdetermined { known: Vec<Weight> },
    NoCompletion { known: Vec<Weight> },
    Ambiguous { candidates: Vec<Vec<Weight>> },
    TooManyKnown { known: Vec<Weight> },
    SignBalance { compass: Vec<Weight> },
    PairingFails { compass: Vec<Weight> },
    VertexConeNotPointed { vertex: Weight },
    BundleWeightAmbiguous { vertex: Weight },
    BundleWeightMissing { vertex: Weight },
    BundleWeightMismatch { vertex: Weight },
    ProjectiveTableNotCollinear,
}

impl fmt::Display for CompassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompassError::Underdetermined { known } => {
                write!(f, "fewer than two known weights: {known:?}")
            }
            CompassError::NoCompletion { known } => {
                write!(f, "no axis-aligned completion balances {known:?}")
            }
            CompassError::Ambiguous { candidates } => {
                write!(f, "several completions survive: {candidates:?}")
            }
            CompassError::TooManyKnown { known } => {
                write!(f, "more than four distinct known weights: {known:?}")
            }
            CompassError::SignBalance { compass } => {
                write!(f, "compass fails the two-in-two-out rule: {compass:?}")
            }
            CompassError::PairingFails { compass } => {
                write!(f, "homothety weights do not pair to 2: {compass:?}")
            }
            CompassError::VertexConeNotPointed { vertex } => {
                write!(f, "vertex cone at {vertex:?} is not pointed")
            }
            CompassError::BundleWeightAmbiguous { vertex } => {
                write!(f, "several bundle weights match the vertex cone at {vertex:?}")
            }
            CompassError::BundleWeightMissing { vertex } => {
                write!(f, "no bundle weight matches the vertex cone at {vertex:?}")
            }
            CompassError::BundleWeightMismatch { vertex } => {
                write!(f, "components disagree on the bundle weight at {vertex:?}")
            }
            CompassError::ProjectiveTableNotCollinear => {
                write!(f, "projective component weights are not collinear")
            }
        }
    }
}

/// Extreme points of `conv(support) + positive quadrant`, sorted by first
/// coordinate.
pub fn tail_hull_vertices(support: &BTreeSet<Weight>) -> Vec<Weight> {
    // Pareto-minimal points first; dominated points are never extreme.
    let mut pareto: Vec<Weight> = support
        .iter()
        .filter(|p| {
            !support
                .iter()
                .any(|q| q != *p && q.0 <= p.0 && q.1 <= p.1)
        })
        .copied()
        .collect();
    pareto.sort();
    // Convex chain with strictly decreasing slopes; collinear middles drop.
    let mut chain: Vec<Weight> = Vec::new();
    for p in pareto {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - b.1) - (b.1 - a.1) * (p.0 - b.0);
            if cross <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain
}

/// Minimal generators of the semigroup spanned by `support - v`; these are
/// the tangent weights the component contributes at its fixed point `v`.
pub fn vertex_semigroup_generators(
    support: &BTreeSet<Weight>,
    v: Weight,
) -> Result<Vec<Weight>, CompassError> {
    let diffs: Vec<IVec> = support
        .iter()
        .filter(|p| **p != v)
        .map(|p| vec![p.0 - v.0, p.1 - v.1])
        .collect();
    let semigroup = AffineSemigroup::new(2, diffs.clone());
    // Pointedness guard: a line in the differences would make minimal
    // generators meaningless.
    if semigroup.cone().is_err() {
        return Err(CompassError::VertexConeNotPointed { vertex: v });
    }
    let mut gens = Vec::new();
    'next: for g in &semigroup.gens {
        for d in &semigroup.gens {
            let rest = vec![g[0] - d[0], g[1] - d[1]];
            if rest == vec![0, 0] {
                continue;
            }
            if crate::lattice::semigroup_member(&semigroup, &rest).unwrap_or(false) {
                continue 'next;
            }
        }
        gens.push((g[0], g[1]));
    }
    gens.sort();
    Ok(gens)
}

fn ell0(v: Weight) -> i64 {
    v.0 - v.1
}

/// Completes a set of known tangent weights to a full compass of four,
/// using the homothety pairing (coordinate sums pair to 2), axis-alignment
/// of the unknown entries, and the sign balance two-in-two-out rule. Errors
/// unless exactly one completion survives.
pub fn assemble_compass(known: &[Weight]) -> Result<Vec<Weight>, CompassError> {
    let known: Vec<Weight> = {
        let mut k: Vec<Weight> = known.to_vec();
        k.sort();
        k.dedup();
        k
    };
    let k = known.len();
    if k > 4 {
        return Err(CompassError::TooManyKnown { known });
    }
    if k < 2 {
        return Err(CompassError::Underdetermined { known });
    }
    let validate = |compass: &[Weight]| -> Result<(), CompassError> {
        // Perfect matching into pairs of homothety weight 2.
        let h: Vec<i64> = compass.iter().map(|v| v.0 + v.1).collect();
        let pairings = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
        if !pairings
            .iter()
            .any(|p| h[p[0]] + h[p[1]] == 2 && h[p[2]] + h[p[3]] == 2)
        {
            return Err(CompassError::PairingFails {
                compass: compass.to_vec(),
            });
        }
        let pos = compass.iter().filter(|v| ell0(**v) > 0).count();
        let neg = compass.iter().filter(|v| ell0(**v) < 0).count();
        if pos != 2 || neg != 2 {
            return Err(CompassError::SignBalance {
                compass: compass.to_vec(),
            });
        }
        Ok(())
    };
    if k == 4 {
        validate(&known)?;
        return Ok(known);
    }
    // Slots 0..3 carry the compass; enumerate matchings and placements.
    let missing = 4 - k;
    let pairings = [[0usize, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let mut completions: BTreeSet<Vec<Weight>> = BTreeSet::new();
    let mut saw_free_pair = false;
    let placements = placements_of(k);
    for placement in &placements {
        for pairing in &pairings {
            // slot -> known weight, where placed.
            let mut slot: [Option<Weight>; 4] = [None; 4];
            for (ki, &si) in placement.iter().enumerate() {
                slot[si] = Some(known[ki]);
            }
            // Resolve unknown slots through their pairing partner.
            let partner = |s: usize| -> usize {
                let p = pairing;
                if p[0] == s {
                    p[1]
                } else if p[1] == s {
                    p[0]
                } else if p[2] == s {
                    p[3]
                } else {
                    p[2]
                }
            };
            let unknown_slots: Vec<usize> =
                (0..4).filter(|s| slot[*s].is_none()).collect();
            debug_assert_eq!(unknown_slots.len(), missing);
            if unknown_slots.iter().any(|&s| slot[partner(s)].is_none()) {
                // An unknown pairs with an unknown: its homothety weight is
                // a free parameter, so this schema cannot pin a completion.
                saw_free_pair = true;
                continue;
            }
            // Each unknown slot gets h = 2 - h(partner) and must be
            // axis-aligned; branch over the two axes.
            let mut branches: Vec<Vec<Weight>> = vec![Vec::new()];
            for &s in &unknown_slots {
                let h = 2 - {
                    let w = slot[partner(s)].unwrap();
                    w.0 + w.1
                };
                if h == 0 {
                    branches.clear();
                    break;
                }
                let mut next = Vec::new();
                for b in &branches {
                    for cand in [(h, 0), (0, h)] {
                        let mut nb = b.clone();
                        nb.push(cand);
                        next.push(nb);
                    }
                }
                branches = next;
            }
            for branch in branches {
                let mut compass: Vec<Weight> = known.clone();
                compass.extend(branch);
                compass.sort();
                if validate(&compass).is_ok() {
                    completions.insert(compass);
                }
            }
        }
    }
    match completions.len() {
        1 => Ok(completions.into_iter().next().unwrap()),
        0 if saw_free_pair => Err(CompassError::Underdetermined { known }),
        0 => Err(CompassError::NoCompletion { known }),
        _ => {
            // A free pair alongside a unique pinned completion still means
            // the data did not determine the compass.
            if saw_free_pair {
                return Err(CompassError::Underdetermined { known });
            }
            Err(CompassError::Ambiguous {
                candidates: completions.into_iter().collect(),
            })
        }
    }
}

fn placements_of(k: usize) -> Vec<Vec<usize>> {
    // Injective maps {0..k} -> {0..4}.
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in 0..4 {
            if !cur.contains(&s) {
                cur.push(s);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentGeometry {
    Toric,
    /// Projective-space component: the torus acts through a one-dimensional
    /// quotient, so its weight tables are collinear and every support point
    /// is a fixed point.
    Projective,
}

/// Weight tables of one component for the three bundles the compass and
/// bundle-weight assembly consume.
#[derive(Clone, Debug)]
pub struct ComponentTables {
    pub name: String,
    pub geometry: ComponentGeometry,
    /// Table for the relatively ample bundle fixing the fixed-point set.
    pub ample: WeightTable,
    pub l1: WeightTable,
    pub l1l2: WeightTable,
}

/// One torus-fixed point with its bundle weights and compass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub label: String,
    pub vertex: Weight,
    pub mu_l1: Weight,
    pub mu_l1l2: Weight,
    pub compass: Vec<Weight>,
}

impl FixedPointDatum {
    pub fn mu_l2(&self) -> Weight {
        (self.mu_l1l2.0 - self.mu_l1.0, self.mu_l1l2.1 - self.mu_l1.1)
    }

    /// Weight on the fibre of `p L1 + q L2` by linearity.
    pub fn mu_of(&self, p: i64, q: i64) -> Weight {
        let l2 = self.mu_l2();
        (p * self.mu_l1.0 + q * l2.0, p * self.mu_l1.1 + q * l2.1)
    }
}

fn support(t: &WeightTable) -> BTreeSet<Weight> {
    t.keys().copied().collect()
}

/// The unique weight of `table` whose difference cone sits inside the
/// vertex cone of the fixed point (used to transport bundle weights from
/// the ample bundle to the degenerate ones).
fn matched_bundle_weight(
    table: &WeightTable,
    vertex_cone_gens: &[Weight],
    vertex: Weight,
) -> Result<Weight, CompassError> {
    let gens: Vec<IVec> = vertex_cone_gens.iter().map(|w| vec![w.0, w.1]).collect();
    let (lines, rays) = dd_dual(&gens, 2);
    let in_cone = |v: Weight| -> bool {
        let x = vec![v.0, v.1];
        lines.iter().all(|l| dot(l, &x) == 0) && rays.iter().all(|r| dot(r, &x) >= 0)
    };
    let mut found = None;
    'outer: for w in table.keys() {
        for other in table.keys() {
            if !in_cone((other.0 - w.0, other.1 - w.1)) {
                continue 'outer;
            }
        }
        if found.is_some() {
            return Err(CompassError::BundleWeightAmbiguous { vertex });
        }
        found = Some(*w);
    }
    found.ok_or(CompassError::BundleWeightMissing { vertex })
}

/// Assembles the full fixed-point table from per-component weight tables:
/// fixed points are the tail-hull vertices of the ample tables (every
/// support point, for a projective component), known tangent weights come
/// from vertex semigroups, compasses are completed by `assemble_compass`,
/// and the bundle weights are transported and cross-checked across all
/// components meeting each point.
pub fn fixed_point_data(
    tables: &[ComponentTables],
) -> Result<Vec<FixedPointDatum>, CompassError> {
    struct Anchor {
        knowns: Vec<Weight>,
        mu_l1: Weight,
        mu_l1l2: Weight,
    }
    // vertex -> anchors from each incident component.
    let mut anchors: BTreeMap<Weight, Vec<Anchor>> = BTreeMap::new();
    for ct in tables {
        let amp = support(&ct.ample);
        match ct.geometry {
            ComponentGeometry::Toric => {
                for v in tail_hull_vertices(&amp) {
                    let knowns = vertex_semigroup_generators(&amp, v)?;
                    let mu_l1 = matched_bundle_weight(&ct.l1, &knowns, v)?;
                    let mu_l1l2 = matched_bundle_weight(&ct.l1l2, &knowns, v)?;
                    anchors.entry(v).or_default().push(Anchor {
                        knowns,
                        mu_l1,
                        mu_l1l2,
                    });
                }
            }
            ComponentGeometry::Projective => {
                // All support points are fixed; tables are collinear and
                // match positionally after sorting.
                let pts: Vec<Weight> = amp.iter().copied().collect();
                for w in window_collinear(&pts) {
                    if !w {
                        return Err(CompassError::ProjectiveTableNotCollinear);
                    }
                }
                // A degree-zero twist restricts trivially: its single
                // weight is the bundle weight at every fixed point.
                let spread = |t: &WeightTable| -> Result<Vec<Weight>, CompassError> {
                    let s: Vec<Weight> = support(t).iter().copied().collect();
                    if s.len() == 1 {
                        Ok(alloc::vec![s[0]; pts.len()])
                    } else if s.len() == pts.len() {
                        Ok(s)
                    } else {
                        Err(CompassError::ProjectiveTableNotCollinear)
                    }
                };
                let l1_pts = spread(&ct.l1)?;
                let l1l2_pts = spread(&ct.l1l2)?;
                for (i, v) in pts.iter().enumerate() {
                    let knowns: Vec<Weight> = pts
                        .iter()
                        .filter(|p| *p != v)
                        .map(|p| (p.0 - v.0, p.1 - v.1))
                        .collect();
                    anchors.entry(*v).or_default().push(Anchor {
                        knowns,
                        mu_l1: l1_pts[i],
                        mu_l1l2: l1l2_pts[i],
                    });
                }
            }
        }
    }
    let mut out = Vec::new();
    for (idx, (vertex, anchor_list)) in anchors.iter().enumerate() {
        let mut knowns: Vec<Weight> = Vec::new();
        for a in anchor_list {
            knowns.extend(a.knowns.iter().copied());
        }
        let compass = assemble_compass(&knowns)?;
        let mu_l1 = anchor_list[0].mu_l1;
        let mu_l1l2 = anchor_list[0].mu_l1l2;
        for a in anchor_list {
            if a.mu_l1 != mu_l1 || a.mu_l1l2 != mu_l1l2 {
                return Err(CompassError::BundleWeightMismatch { vertex: *vertex });
            }
        }
        // vertex = mu(2 L1 + L2) = mu_l1 + mu_l1l2 by linearity.
        if (mu_l1.0 + mu_l1l2.0, mu_l1.1 + mu_l1l2.1) != *vertex {
            return Err(CompassError::BundleWeightMismatch { vertex: *vertex });
        }
        use alloc::format;
        out.push(FixedPointDatum {
            label: format!("P{}", idx + 1),
            vertex: *vertex,
            mu_l1,
            mu_l1l2,
            compass,
        });
    }
    Ok(out)
}

fn window_collinear(pts: &[Weight]) -> Vec<bool> {
    if pts.len() < 3 {
        return vec![true];
    }
    let a = pts[0];
    let b = pts[1];
    pts[2..]
        .iter()
        .map(|c| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_vertices_with_tail() {
        let pts: BTreeSet<Weight> = [(0, 4), (0, 6), (4, 0), (2, 1)].into_iter().collect();
        // (0,6) is dominated by (0,4); the rest are chain vertices.
        assert_eq!(tail_hull_vertices(&pts), vec![(0, 4), (2, 1), (4, 0)]);
        let single: BTreeSet<Weight> = [(3, 5)].into_iter().collect();
        assert_eq!(tail_hull_vertices(&single), vec![(3, 5)]);
        let axis: BTreeSet<Weight> = [(0, 4), (0, 6)].into_iter().collect();
        assert_eq!(tail_hull_vertices(&axis), vec![(0, 4)]);
    }

    #[test]
    fn completion_examples() {
        // Two knowns that cannot pair with each other force both partners.
        let done = assemble_compass(&[(1, -3), (1, -5)]).unwrap();
        assert_eq!(done, vec![(0, 4), (0, 6), (1, -5), (1, -3)]);
        let done = assemble_compass(&[(-3, 1), (-5, 1)]).unwrap();
        assert_eq!(done, vec![(-5, 1), (-3, 1), (4, 0), (6, 0)]);
        // Three knowns, one completion.
        let done = assemble_compass(&[(1, -1), (3, -1), (-2, 2)]).unwrap();
        assert_eq!(done, vec![(-2, 2), (0, 2), (1, -1), (3, -1)]);
        // A complete set comes back unchanged.
        let full = [(-2, 2), (1, -1), (3, -1), (0, 2)];
        assert_eq!(
            assemble_compass(&full).unwrap(),
            vec![(-2, 2), (0, 2), (1, -1), (3, -1)]
        );
    }

    #[test]
    fn completion_failures() {
        // Knowns that pair with each other leave two free unknowns.
        match assemble_compass(&[(1, 1), (3, -1)]) {
            Err(CompassError::Underdetermined { .. }) => {}
            other => panic!("expected underdetermined, got {other:?}"),
        }
        match assemble_compass(&[(5, 5)]) {
            Err(CompassError::Underdetermined { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
