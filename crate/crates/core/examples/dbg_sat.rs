use coxtorus_core::gitquot::build_toric_model;
use coxtorus_core::lattice::{hilbert_basis, semigroup_member, AffineSemigroup};
use coxtorus_core::seeds;

fn main() {
    let degrees = seeds::parse_degree_table(include_str!("/root/crate/data/degree_matrix.txt")).unwrap();
    let components = seeds::parse_components(include_str!("/root/crate/data/components.txt")).unwrap();
    for name in ["Z1", "Z2"] {
        let c = components.iter().find(|c| c.name == name).unwrap();
        let model = build_toric_model(c, &degrees).unwrap();
        let hb = hilbert_basis(&model.dual_cone).unwrap();
        let s = AffineSemigroup::new(model.ambient, model.points.clone());
        println!("== {name}: points {:?}", model.points);
        for h in &hb {
            let inside = semigroup_member(&s, h).unwrap();
            println!("  HB {:?} in S: {} | pic {:?} torus {:?}", h, inside, model.apply_pic(h), model.apply_torus(h));
        }
    }
}
