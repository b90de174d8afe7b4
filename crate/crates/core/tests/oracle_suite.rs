//! The candidate-ring oracle on the real seed data: degree matrix,
//! semi-invariance, graded enumeration, modular rank certificates against
//! the localization table, and the regularity closure.

use std::collections::BTreeMap;

use coxtorus_core::coxoracle::{
    compile_mod_tables, enumerate_graded_monomials, exact_graded_rank, rank_certificate,
    regularity_closure, verify_bundle_cells, verify_degree_matrix, verify_semiinvariance,
    GeneratorTable,
};
use coxtorus_core::equivariant::{
    fixed_point_data, hilbert_weight_table, lrr_character_series,
};
use coxtorus_core::fingroup::{commutator_subgroup, enumerate_group};
use coxtorus_core::coxoracle::CompiledTables;
use coxtorus_core::modp::EmbeddingPrime;
use coxtorus_core::seeds;

const DEGREES: &str = include_str!("../../../data/degree_matrix.txt");
const GENPOLYS: &str = include_str!("../../../data/generators.txt");
const GROUPGENS: &str = include_str!("../../../data/group_generators.txt");
const BUNDLES: &str = include_str!("../../../data/bundle_sets.txt");
const RULES: &str = include_str!("../../../data/regularity_rules.txt");

fn table() -> GeneratorTable {
    let degrees = seeds::parse_degree_table(DEGREES).unwrap();
    let (order, polys) = seeds::parse_generator_polys(GENPOLYS).unwrap();
    assert_eq!(order.len(), 20);
    GeneratorTable::new(order, polys, degrees)
}

#[test]
fn degree_matrix_recomputes() {
    let reports = verify_degree_matrix(&table());
    assert_eq!(reports.len(), 20);
    for r in &reports {
        assert!(r.matches, "degree mismatch at {}: {:?} {:?}", r.name, r.pic, r.torus);
    }
}

#[test]
fn semiinvariance_under_the_group() {
    let t = table();
    let gens = seeds::parse_group_generators(GROUPGENS).unwrap();
    let group = enumerate_group(&gens, 10_000).unwrap();
    let comm = commutator_subgroup(&group);
    let report = verify_semiinvariance(&t, &group, &comm);
    assert!(report.pass(), "failures: {:?}", report.failures);
    // Degree-(0,0) generators are genuinely invariant.
    assert!(report.scalars[&("w01".to_string(), 0)].is_one());
    assert!(report.scalars[&("w01".to_string(), 1)].is_one());
    // The order-3 generator acts on the first exceptional class by a
    // primitive cube root, the same for all five members.
    let lam = report.scalars[&("w12".to_string(), 1)].clone();
    assert!(lam.pow(3).unwrap().is_one() && !lam.is_one());
    for name in ["w11", "w13", "w14", "w15"] {
        assert_eq!(report.scalars[&(name.to_string(), 1)], lam);
    }
}

#[test]
fn graded_enumeration_examples() {
    let t = table();
    // The (0,0)-degree, weight-(0,0) piece is the empty monomial.
    let ms = enumerate_graded_monomials(&t.degrees, (0, 0), (0, 0));
    assert_eq!(ms.len(), 1);
    assert!(ms[0].exps.is_empty());
    // Degree (1,1), weight (3,3): exactly the degree-(1,1) generator.
    let ms = enumerate_graded_monomials(&t.degrees, (1, 1), (3, 3));
    assert_eq!(ms.len(), 1);
    assert_eq!(ms[0].exps, vec![("w3".to_string(), 1)]);
    // Degree (2,1), weight (5,5): nonempty, one candidate.
    let ms = enumerate_graded_monomials(&t.degrees, (2, 1), (5, 5));
    assert_eq!(ms.len(), 1);
}

fn compiled(t: &GeneratorTable, count: usize) -> CompiledTables {
    EmbeddingPrime::scan(1_000_000, count)
        .into_iter()
        .map(|p| (p, compile_mod_tables(t, p).unwrap()))
        .collect()
}

#[test]
fn rank_anchors_on_the_diagram() {
    let t = table();
    let compiled = compiled(&t, 2);
    for (w, expected) in [((0, 16), 1u64), ((5, 5), 1), ((10, 2), 1), ((6, 10), 5)] {
        let ms = enumerate_graded_monomials(&t.degrees, (2, 1), w);
        let cert = rank_certificate(&ms, &compiled, w, None);
        assert_eq!(cert.lower_bound, expected, "rank at {w:?}");
        assert!(cert.agreed);
        // Exact elimination agrees on these small cells.
        assert_eq!(exact_graded_rank(&t, &ms, w), expected);
    }
}

#[test]
fn rank_at_the_deep_corner() {
    let t = table();
    let compiled = compiled(&t, 2);
    let ms = enumerate_graded_monomials(&t.degrees, (2, 1), (26, 22));
    let cert = rank_certificate(&ms, &compiled, (26, 22), Some(50));
    assert_eq!(cert.lower_bound, 50);
}

#[test]
fn containment_never_exceeds_the_table() {
    // rank <= dimension for every cell: the candidate ring sits inside the
    // full section ring.
    let t = table();
    let compiled = compiled(&t, 1);
    let data = equivariant_data();
    let series = lrr_character_series(&data, |d| d.mu_of(2, 1), (3, 2), 40).unwrap();
    let tab = hilbert_weight_table(&series).unwrap();
    for (&w, &dim) in &tab {
        let ms = enumerate_graded_monomials(&t.degrees, (2, 1), w);
        let cert = rank_certificate(&ms, &compiled, w, None);
        assert!(
            cert.lower_bound <= dim,
            "containment violated at {w:?}: {} > {dim}",
            cert.lower_bound
        );
    }
}

fn equivariant_data() -> Vec<coxtorus_core::equivariant::FixedPointDatum> {
    use coxtorus_core::equivariant::{ComponentGeometry, ComponentTables};
    use coxtorus_core::gitquot::{
        build_toric_model, component_weight_table, hypersurface_weight_table,
    };
    let degrees = seeds::parse_degree_table(DEGREES).unwrap();
    let components =
        seeds::parse_components(include_str!("../../../data/components.txt")).unwrap();
    let mut tables = Vec::new();
    for name in ["Z0", "Z1", "Z2"] {
        let c = components.iter().find(|c| c.name == name).unwrap();
        let model = build_toric_model(c, &degrees).unwrap();
        tables.push(ComponentTables {
            name: name.to_string(),
            geometry: ComponentGeometry::Toric,
            ample: component_weight_table(&model, (2, 1)),
            l1: component_weight_table(&model, (1, 0)),
            l1l2: component_weight_table(&model, (1, 1)),
        });
    }
    let zp = components.iter().find(|c| c.name == "ZP").unwrap();
    let gens: Vec<((i64, i64), (i64, i64))> = zp
        .survivors(&degrees)
        .iter()
        .map(|g| (degrees.pic(g).unwrap(), degrees.torus(g).unwrap()))
        .collect();
    let tab = |l: (i64, i64)| hypersurface_weight_table(&gens, (3, 0), (6, 6), l);
    tables.push(ComponentTables {
        name: "ZP".to_string(),
        geometry: ComponentGeometry::Projective,
        ample: tab((2, 1)),
        l1: tab((1, 0)),
        l1l2: tab((1, 1)),
    });
    fixed_point_data(&tables).unwrap()
}

#[test]
fn verdict_on_a_truncated_window() {
    let t = table();
    let compiled = compiled(&t, 2);
    let data = equivariant_data();
    let series = lrr_character_series(&data, |d| d.mu_of(2, 1), (3, 2), 60).unwrap();
    let tab = hilbert_weight_table(&series).unwrap();
    let cells = verify_bundle_cells(&t, &compiled, (2, 1), &tab, (3, 2), 60);
    assert!(!cells.is_empty());
    for c in &cells {
        assert!(
            c.pass,
            "cell {:?} expected {} got {}",
            c.weight, c.expected, c.certificate.lower_bound
        );
    }
}

#[test]
fn product_of_sections_is_nonzero() {
    // Multiplicativity: two cells of rank >= 1 multiply into a cell of
    // rank >= 1 (the ambient ring is a domain).
    let t = table();
    let compiled = compiled(&t, 1);
    let pairs = [
        (((1, 0), (0, 4)), ((1, 1), (3, 3))),
        (((1, 0), (2, 2)), ((1, 0), (3, 1))),
    ];
    for ((l1, w1), (l2, w2)) in pairs {
        let r1 = rank_certificate(
            &enumerate_graded_monomials(&t.degrees, l1, w1),
            &compiled,
            w1,
            None,
        );
        let r2 = rank_certificate(
            &enumerate_graded_monomials(&t.degrees, l2, w2),
            &compiled,
            w2,
            None,
        );
        assert!(r1.lower_bound >= 1 && r2.lower_bound >= 1);
        let l = (l1.0 + l2.0, l1.1 + l2.1);
        let w = (w1.0 + w2.0, w1.1 + w2.1);
        let r = rank_certificate(
            &enumerate_graded_monomials(&t.degrees, l, w),
            &compiled,
            w,
            Some(1),
        );
        assert!(r.lower_bound >= 1, "product cell {l:?} {w:?} vanished");
    }
}

#[test]
fn closure_covers_the_grid_and_every_seed_matters() {
    let (s, sp) = seeds::parse_bundle_sets(BUNDLES).unwrap();
    let rules = seeds::parse_regularity_rules(RULES).unwrap();
    let all: Vec<(i64, i64)> = s.iter().chain(sp.iter()).copied().collect();
    let out = regularity_closure(&all, &rules, 50);
    assert!(out.fully_covered(), "uncovered: {:?}", out.uncovered);
    // Witness chains trace back to seeds.
    let chain = out.chain((50, 50));
    assert!(all.contains(chain.last().unwrap()));
    // Dropping any single seed loses at least that cell.
    for drop in &all {
        let reduced: Vec<(i64, i64)> = all.iter().filter(|x| *x != drop).copied().collect();
        let out = regularity_closure(&reduced, &rules, 50);
        assert!(
            !out.fully_covered(),
            "dropping {drop:?} should break coverage"
        );
        assert!(
            out.uncovered.contains(drop),
            "the dropped seed {drop:?} itself must be uncovered"
        );
    }
    // Without the deep seed the specific cell is unreachable.
    let reduced: Vec<(i64, i64)> = all.iter().filter(|x| **x != (4, 2)).copied().collect();
    let out = regularity_closure(&reduced, &rules, 50);
    assert!(out.uncovered.contains(&(4, 2)));
}
