use coxtorus_core::gitquot::build_toric_model;
use coxtorus_core::lattice::{hilbert_basis, semigroup_member, AffineSemigroup, Cone};
use coxtorus_core::seeds;

fn main() {
    let degrees = seeds::parse_degree_table(include_str!("/root/crate/data/degree_matrix.txt")).unwrap();
    let components = seeds::parse_components(include_str!("/root/crate/data/components.txt")).unwrap();
    let c = components.iter().find(|c| c.name == "Z0").unwrap();
    let model = build_toric_model(c, &degrees).unwrap();
    let hb = hilbert_basis(&model.dual_cone).unwrap();
    println!("computed HB ({}):", hb.len());
    for h in &hb { println!("  {:?}", h); }

    // Brute force oracle inside a box.
    let cone: &Cone = &model.dual_cone;
    let b = 5i64;
    let mut pts = Vec::new();
    for x1 in -b..=b { for x2 in -2*b..=2*b { for x3 in -2*b..=2*b { for x4 in 0..=b {
        let v = vec![x1,x2,x3,x4];
        if v.iter().any(|&t| t != 0) && cone.contains(&v) { pts.push(v); }
    }}}}
    pts.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<i64>());
    let mut basis: Vec<Vec<i64>> = Vec::new();
    'next: for p in pts {
        for q in &basis {
            let d: Vec<i64> = p.iter().zip(q).map(|(a, x)| a - x).collect();
            if d.iter().all(|&t| t == 0) { continue 'next; }
            if cone.contains(&d) { continue 'next; }
        }
        basis.push(p);
    }
    basis.sort();
    println!("oracle HB in box ({}):", basis.len());
    for h in &basis { println!("  {:?}", h); }
    assert_eq!(hb, basis, "hilbert basis mismatch");

    // Membership of each HB element in the original semigroup.
    let s = AffineSemigroup::new(4, model.points.clone());
    for h in &hb {
        println!("{:?} in S: {}", h, semigroup_member(&s, h).unwrap());
    }
}
