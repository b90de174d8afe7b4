//! Per-component weight tables: dimensions of the graded pieces of the
//! component coordinate rings, and the base-locus-inside-unstable-locus
//! check for globally generated bundles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::component::ToricModel;
use super::stability::is_semistable_support;
use super::DegreeTable;
use crate::lattice::{dd_dual, dot, IVec};
use crate::poly::Weight;

/// Map from a torus weight to the dimension of that weight space.
pub type WeightTable = BTreeMap<Weight, u64>;

/// Distinct semigroup elements of class degree `l` on a toric component.
/// Finite because no nonnegative combination of the class weights of the
/// surviving coordinates vanishes.
pub fn component_degree_slice(model: &ToricModel, l: Weight) -> Vec<IVec> {
    let pics: Vec<Weight> = model
        .coords
        .iter()
        .enumerate()
        .map(|(i, _)| model.apply_pic(&model.points[i]))
        .collect();
    let mut out: BTreeSet<IVec> = BTreeSet::new();
    let mut exps = vec![0i64; model.coords.len()];
    enumerate_slice(&pics, l, 0, (0, 0), &mut exps, &mut |e| {
        let mut m = vec![0i64; model.ambient];
        for (i, &cnt) in e.iter().enumerate() {
            for (k, x) in model.points[i].iter().enumerate() {
                m[k] += cnt * x;
            }
        }
        out.insert(m);
    });
    out.into_iter().collect()
}

/// Weight table of a toric component in class degree `l`: the torus weights
/// of the distinct degree-`l` semigroup elements, with multiplicities.
pub fn component_weight_table(model: &ToricModel, l: Weight) -> WeightTable {
    let mut table = WeightTable::new();
    for m in component_degree_slice(model, l) {
        *table.entry(model.apply_torus(&m)).or_insert(0) += 1;
    }
    table
}

/// Recursion over exponent tuples with exact feasibility pruning: the
/// remaining class degree must lie in the cone of the remaining weights.
fn enumerate_slice(
    pics: &[Weight],
    l: Weight,
    idx: usize,
    partial: Weight,
    exps: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]),
) {
    let remaining = (l.0 - partial.0, l.1 - partial.1);
    if idx == pics.len() {
        if remaining == (0, 0) {
            visit(exps);
        }
        return;
    }
    let suffix: Vec<IVec> = pics[idx..].iter().map(|w| vec![w.0, w.1]).collect();
    if !in_cone_2d(&suffix, remaining) {
        return;
    }
    // Zero exponent branch first, then grow this coordinate.
    enumerate_slice(pics, l, idx + 1, partial, exps, visit);
    let w = pics[idx];
    let mut count = 1i64;
    loop {
        let next = (partial.0 + count * w.0, partial.1 + count * w.1);
        let rem = (l.0 - next.0, l.1 - next.1);
        if !in_cone_2d(&suffix, rem) {
            break;
        }
        exps[idx] = count;
        enumerate_slice(pics, l, idx + 1, next, exps, visit);
        exps[idx] = 0;
        count += 1;
        assert!(count < 1000, "runaway slice enumeration");
    }
}

fn in_cone_2d(gens: &[IVec], target: Weight) -> bool {
    let t = vec![target.0, target.1];
    let (lines, rays) = dd_dual(gens, 2);
    lines.iter().all(|l| dot(l, &t) == 0) && rays.iter().all(|r| dot(r, &t) >= 0)
}

/// Weight table of a free polynomial ring on graded variables (used for the
/// hypersurface component via inclusion-exclusion on its single relation).
pub fn free_monomial_weight_table(gens: &[(Weight, Weight)], l: Weight) -> WeightTable {
    let pics: Vec<Weight> = gens.iter().map(|(p, _)| *p).collect();
    let mut table = WeightTable::new();
    let mut exps = vec![0i64; gens.len()];
    enumerate_slice(&pics, l, 0, (0, 0), &mut exps, &mut |e| {
        let mut w = (0i64, 0i64);
        for (i, &cnt) in e.iter().enumerate() {
            w.0 += cnt * gens[i].1 .0;
            w.1 += cnt * gens[i].1 .1;
        }
        *table.entry(w).or_insert(0) += 1;
    });
    table
}

/// Weight table of a graded hypersurface `free / (relation)`: monomial
/// counts minus the counts shifted by the relation bidegree.
pub fn hypersurface_weight_table(
    gens: &[(Weight, Weight)],
    relation_pic: Weight,
    relation_torus: Weight,
    l: Weight,
) -> WeightTable {
    let full = free_monomial_weight_table(gens, l);
    let shifted = free_monomial_weight_table(gens, (l.0 - relation_pic.0, l.1 - relation_pic.1));
    let mut table = WeightTable::new();
    for (w, n) in full {
        let minus = shifted
            .get(&(w.0 - relation_torus.0, w.1 - relation_torus.1))
            .copied()
            .unwrap_or(0);
        assert!(n >= minus, "hypersurface Hilbert function must be nonnegative");
        if n > minus {
            table.insert(w, n - minus);
        }
    }
    table
}

/// Faces of the orbit cone where every degree-`l` section vanishes, with the
/// semistability verdict of their coordinate supports.
#[derive(Clone, Debug)]
pub struct BaseLocusReport {
    /// True when every base-locus orbit is unstable for `chi`.
    pub pass: bool,
    /// Vanishing supports of offending faces (empty when passing).
    pub offending: Vec<BTreeSet<String>>,
    /// Number of base-locus faces inspected.
    pub base_faces: usize,
}

/// Checks that the base locus of the degree-`l` linear system on the
/// component sits inside the unstable locus of the character `chi`.
pub fn base_locus_on_component(
    model: &ToricModel,
    degrees: &DegreeTable,
    l: Weight,
    chi: Weight,
) -> BaseLocusReport {
    let slice = component_degree_slice(model, l);
    let mut offending = Vec::new();
    let mut base_faces = 0;
    for tau in model.sigma.faces() {
        // A section with lattice point m survives on the orbit of tau iff m
        // is orthogonal to tau.
        let some_section_survives = slice
            .iter()
            .any(|m| tau.rays().iter().all(|r| dot(m, r) == 0));
        if some_section_survives {
            continue;
        }
        base_faces += 1;
        let support: BTreeSet<String> = model
            .labelled_points()
            .iter()
            .filter(|(_, v)| tau.rays().iter().all(|r| dot(v, r) == 0))
            .map(|(g, _)| g.clone())
            .collect();
        if is_semistable_support(&support, chi, degrees).semistable {
            offending.push(support);
        }
    }
    BaseLocusReport {
        pass: offending.is_empty(),
        offending,
        base_faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_table_examples() {
        // Two variables of class degree (1,0) and torus weights (1,0),(0,1):
        // degree (2,0) has the three monomials of total degree 2.
        let gens = [((1, 0), (1, 0)), ((1, 0), (0, 1))];
        let t = free_monomial_weight_table(&gens, (2, 0));
        assert_eq!(t.len(), 3);
        assert_eq!(t.values().sum::<u64>(), 3);
        // Degree (0,0) is the constants only.
        let t0 = free_monomial_weight_table(&gens, (0, 0));
        assert_eq!(t0.get(&(0, 0)), Some(&1));
        assert_eq!(t0.len(), 1);
    }

    #[test]
    fn hypersurface_subtracts_relation_multiples() {
        // One relation of bidegree ((2,0),(1,1)) between the two variables.
        let gens = [((1, 0), (1, 0)), ((1, 0), (0, 1))];
        let t = hypersurface_weight_table(&gens, (2, 0), (1, 1), (2, 0));
        assert_eq!(t.get(&(1, 1)), None);
        assert_eq!(t.get(&(2, 0)), Some(&1));
        assert_eq!(t.get(&(0, 2)), Some(&1));
    }
}
