//! The finite-group suite on the seeded generator matrices: order, class
//! count, reflections and their planes, commutator subgroup and
//! abelianization, and the block structure of the representation.

use coxtorus_core::cyclotomic::CycNum;
use coxtorus_core::fingroup::{
    abelianization_invariant_factors, commutator_subgroup, conjugacy_classes, enumerate_group,
    is_quaternion_group, plane_orbits, reflections_and_planes, MatGroup,
};
use coxtorus_core::seeds;

const GENERATORS: &str = include_str!("../../../data/group_generators.txt");

fn group() -> MatGroup {
    let gens = seeds::parse_group_generators(GENERATORS).unwrap();
    assert_eq!(gens.len(), 2);
    enumerate_group(&gens, 10_000).unwrap()
}

#[test]
fn order_and_classes() {
    let g = group();
    assert_eq!(g.order(), 24);
    let classes = conjugacy_classes(&g);
    assert_eq!(classes.len(), 7);
    let total: usize = classes.iter().map(Vec::len).sum();
    assert_eq!(total, 24);
    for c in &classes {
        assert_eq!(24 % c.len(), 0, "class sizes divide the order");
    }
}

#[test]
fn reflections_and_their_planes() {
    let g = group();
    let (pairs, planes) = reflections_and_planes(&g);
    // Eight reflections sharing four planes, two per plane.
    assert_eq!(pairs.len(), 8);
    assert_eq!(planes.len(), 4);
    // They fill exactly two conjugacy classes.
    let classes = conjugacy_classes(&g);
    let reflection_ids: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
    let reflection_classes = classes
        .iter()
        .filter(|c| c.iter().any(|i| reflection_ids.contains(i)))
        .collect::<Vec<_>>();
    assert_eq!(reflection_classes.len(), 2);
    for c in &reflection_classes {
        assert!(c.iter().all(|i| reflection_ids.contains(i)));
    }
    // The group permutes the four planes transitively.
    let orbits = plane_orbits(&g, &planes);
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0].len(), 4);
    // Each reflection is symplectic: determinant one, so the two
    // eigenvalues off the fixed plane multiply to one.
    for (i, _) in &pairs {
        assert_eq!(g.elements[*i].det(), CycNum::one());
    }
}

#[test]
fn commutator_and_abelianization() {
    let g = group();
    let comm = commutator_subgroup(&g);
    assert_eq!(comm.len(), 8);
    assert!(is_quaternion_group(&g, &comm));
    assert_eq!(abelianization_invariant_factors(&g, &comm), vec![3]);
}

#[test]
fn representation_splits_into_two_planes() {
    let g = group();
    for m in &g.elements {
        for i in 0..2 {
            for j in 2..4 {
                assert!(m.at(i, j).is_zero(), "upper off-block entry");
                assert!(m.at(j, i).is_zero(), "lower off-block entry");
            }
        }
        assert_eq!(m.det(), CycNum::one());
    }
}
