//! End-to-end equivariant checks: fixed points, compasses and bundle
//! weights derived from component data alone, the localization series
//! against the seeded dimension diagram, and the wall computation.

use std::collections::{BTreeMap, BTreeSet};

use coxtorus_core::equivariant::{
    double_generating_series, fixed_point_data, hilbert_weight_table, lrr_character_series,
    movable_walls, tail_hull_vertices, ComponentGeometry, ComponentTables, FixedPointDatum,
};
use coxtorus_core::gitquot::{
    build_toric_model, component_weight_table, hypersurface_weight_table, DegreeTable,
};
use coxtorus_core::seeds;

const DEGREES: &str = include_str!("../../../data/degree_matrix.txt");
const COMPONENTS: &str = include_str!("../../../data/components.txt");
const COMPASS: &str = include_str!("../../../data/compass_table.txt");
const MU: &str = include_str!("../../../data/mu_table.txt");
const DIAGRAM: &str = include_str!("../../../data/diagram_2_1.csv");
const FIGURE: &str = include_str!("../../../data/component_weights_2_1.txt");

fn component_tables() -> (DegreeTable, Vec<ComponentTables>) {
    let degrees = seeds::parse_degree_table(DEGREES).unwrap();
    let components = seeds::parse_components(COMPONENTS).unwrap();
    let mut out = Vec::new();
    for name in ["Z0", "Z1", "Z2"] {
        let c = components.iter().find(|c| c.name == name).unwrap();
        let model = build_toric_model(c, &degrees).unwrap();
        out.push(ComponentTables {
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
    let table = |l: (i64, i64)| hypersurface_weight_table(&gens, (3, 0), (6, 6), l);
    out.push(ComponentTables {
        name: "ZP".to_string(),
        geometry: ComponentGeometry::Projective,
        ample: table((2, 1)),
        l1: table((1, 0)),
        l1l2: table((1, 1)),
    });
    (degrees, out)
}

fn data() -> Vec<FixedPointDatum> {
    let (_, tables) = component_tables();
    fixed_point_data(&tables).unwrap()
}

#[test]
fn component_tables_match_the_figure() {
    let (_, tables) = component_tables();
    let figure = seeds::parse_weight_sets(FIGURE).unwrap();
    for ct in &tables {
        let support: BTreeSet<(i64, i64)> = ct.ample.keys().copied().collect();
        assert_eq!(support, figure[&ct.name], "ample support of {}", ct.name);
    }
}

#[test]
fn compasses_reproduce_the_table() {
    let data = data();
    let rows = seeds::parse_compass_table(COMPASS).unwrap();
    assert_eq!(data.len(), rows.len());
    for (d, row) in data.iter().zip(&rows) {
        assert_eq!(d.label, row.label);
        assert_eq!(d.vertex, row.vertex, "vertex of {}", row.label);
        let mut expect = row.compass.clone();
        expect.sort();
        assert_eq!(d.compass, expect, "compass of {}", row.label);
    }
}

#[test]
fn bundle_weights_reproduce_the_table() {
    let data = data();
    let rows = seeds::parse_mu_table(MU).unwrap();
    for (d, row) in data.iter().zip(&rows) {
        assert_eq!(d.label, row.label);
        assert_eq!(d.mu_l1, row.mu_l1, "first weight at {}", row.label);
        assert_eq!(d.mu_l1l2, row.mu_l1l2, "sum weight at {}", row.label);
        assert_eq!(d.mu_l2(), row.mu_l2());
    }
}

#[test]
fn hull_vertices_are_the_seven_marked_points() {
    let (_, tables) = component_tables();
    // Union over components of the per-component hull vertices (the
    // projective component's fixed points are its three support weights).
    let mut vertices: BTreeSet<(i64, i64)> = BTreeSet::new();
    for ct in &tables {
        let support: BTreeSet<(i64, i64)> = ct.ample.keys().copied().collect();
        match ct.geometry {
            ComponentGeometry::Toric => vertices.extend(tail_hull_vertices(&support)),
            ComponentGeometry::Projective => vertices.extend(support),
        }
    }
    let expect: BTreeSet<(i64, i64)> = [
        (0, 16),
        (1, 11),
        (3, 7),
        (5, 5),
        (6, 4),
        (10, 2),
        (20, 0),
    ]
    .into_iter()
    .collect();
    assert_eq!(vertices, expect);
}

#[test]
fn series_matches_the_dimension_diagram() {
    let data = data();
    let series = lrr_character_series(&data, |d| d.mu_of(2, 1), (3, 2), 130).unwrap();
    let table = hilbert_weight_table(&series).unwrap();
    let diagram = seeds::parse_weight_table_csv(DIAGRAM).unwrap();
    // Exact equality on the full printed window, zeros included.
    for a in 0..=26i64 {
        for b in 0..=22i64 {
            let got = table.get(&(a, b)).copied().unwrap_or(0);
            let want = diagram.get(&(a, b)).copied().unwrap_or(0);
            assert_eq!(got, want, "dimension at ({a},{b})");
        }
    }
    // The anchors, spelled out.
    for (e, v) in [
        ((0, 16), 1u64),
        ((1, 11), 1),
        ((5, 5), 1),
        ((6, 10), 5),
        ((10, 2), 1),
        ((20, 0), 1),
        ((26, 22), 50),
    ] {
        assert_eq!(table.get(&e).copied(), Some(v), "anchor {e:?}");
    }
}

#[test]
fn series_is_functional_independent() {
    let data = data();
    let a = hilbert_weight_table(&lrr_character_series(&data, |d| d.mu_of(2, 1), (3, 2), 90).unwrap())
        .unwrap();
    let b = hilbert_weight_table(&lrr_character_series(&data, |d| d.mu_of(2, 1), (2, 3), 90).unwrap())
        .unwrap();
    // Compare where both truncations are complete.
    let complete = |e: (i64, i64)| 3 * e.0 + 2 * e.1 <= 90 && 2 * e.0 + 3 * e.1 <= 90;
    for (e, v) in &a {
        if complete(*e) {
            assert_eq!(b.get(e).copied().unwrap_or(0), *v, "at {e:?}");
        }
    }
    for (e, v) in &b {
        if complete(*e) {
            assert_eq!(a.get(e).copied().unwrap_or(0), *v, "at {e:?}");
        }
    }
}

#[test]
fn trivial_bundle_and_symmetry() {
    let data = data();
    let tables = double_generating_series(&data, 1, 1, (3, 2), 40).unwrap();
    // Constants in degree zero.
    assert_eq!(tables[&(0, 0)].get(&(0, 0)), Some(&1));
    // The two generators swap under the weight exchange.
    let t10 = &tables[&(1, 0)];
    let t01 = &tables[&(0, 1)];
    for (e, v) in t10 {
        if 3 * e.1 + 2 * e.0 <= 40 {
            assert_eq!(t01.get(&(e.1, e.0)).copied().unwrap_or(0), *v);
        }
    }
}

#[test]
fn walls_are_the_two_chamber_rays() {
    let data = data();
    let walls = movable_walls(&data);
    let expect: BTreeSet<(i64, i64)> = [(1, 0), (1, 1)].into_iter().collect();
    assert_eq!(walls, expect);
}

#[test]
fn series_support_hull_is_inside_the_marked_vertex_chain() {
    // The true extreme points of the series support form a subset of the
    // seven marked points: one marked point sits mid-edge on the hull.
    let data = data();
    let series = lrr_character_series(&data, |d| d.mu_of(2, 1), (3, 2), 130).unwrap();
    let table = hilbert_weight_table(&series).unwrap();
    let support: BTreeSet<(i64, i64)> = table.keys().copied().collect();
    let hull = tail_hull_vertices(&support);
    let marked = [
        (0, 16),
        (1, 11),
        (3, 7),
        (5, 5),
        (6, 4),
        (10, 2),
        (20, 0),
    ];
    for v in &hull {
        assert!(marked.contains(v), "hull vertex {v:?} must be marked");
    }
    assert!(!hull.contains(&(5, 5)), "(5,5) lies mid-edge on the hull");
    // Every marked point is on the boundary chain: it equals a hull vertex
    // or lies on the segment between consecutive hull vertices.
    for m in marked {
        let on_chain = hull.windows(2).any(|w| {
            let (a, b) = (w[0], w[1]);
            let cross = (b.0 - a.0) * (m.1 - a.1) - (b.1 - a.1) * (m.0 - a.0);
            cross == 0 && a.0 <= m.0 && m.0 <= b.0
        }) || hull.contains(&m);
        assert!(on_chain, "marked point {m:?} off the boundary chain");
    }
}

#[test]
fn weight_tables_agree_with_invariant_dimensions_at_low_degree() {
    // Independent oracle: dimensions of the invariant ring graded pieces by
    // exact character averaging over the enumerated group.
    use coxtorus_core::cyclotomic::CycNum;
    use coxtorus_core::fingroup::enumerate_group;
    let gens = seeds::parse_group_generators(include_str!(
        "../../../data/group_generators.txt"
    ))
    .unwrap();
    let group = enumerate_group(&gens, 10_000).unwrap();
    let data = data();
    let series = lrr_character_series(&data, |d| d.mu_of(0, 0), (3, 2), 40).unwrap();
    let table = hilbert_weight_table(&series).unwrap();
    // h_a on a 2x2 block via the Newton-style recursion
    // h_k = tr * h_{k-1} - det * h_{k-2}.
    let block = |g: &coxtorus_core::fingroup::GroupMat, which: usize| -> (CycNum, CycNum) {
        let o = 2 * which;
        let tr = g.at(o, o).clone() + g.at(o + 1, o + 1).clone();
        let det = g.at(o, o) * g.at(o + 1, o + 1) - g.at(o, o + 1) * g.at(o + 1, o);
        (tr, det)
    };
    let h_seq = |tr: &CycNum, det: &CycNum, n: usize| -> Vec<CycNum> {
        let mut h = vec![CycNum::one(), tr.clone()];
        for k in 2..=n {
            let next = &(tr * &h[k - 1]) - &(det * &h[k - 2]);
            h.push(next);
        }
        h
    };
    let nmax = 12usize;
    for a in 0..=nmax {
        for b in 0..=(nmax - a) {
            let mut acc = CycNum::zero();
            for g in &group.elements {
                let (tr1, det1) = block(g, 0);
                let (tr2, det2) = block(g, 1);
                let ha = h_seq(&tr1, &det1, a);
                let hb = h_seq(&tr2, &det2, b);
                acc += &(&ha[a] * &hb[b]);
            }
            let dim = acc.scale(&coxtorus_core::rational::ratio(1, 24));
            let expect = table.get(&(a as i64, b as i64)).copied().unwrap_or(0);
            assert_eq!(
                dim,
                CycNum::from_int(expect as i64),
                "invariant dimension at ({a},{b})"
            );
        }
    }
}
