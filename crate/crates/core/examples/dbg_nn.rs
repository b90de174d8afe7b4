use coxtorus_core::gitquot::{build_toric_model, toric_quotient_pipeline};
use coxtorus_core::lattice::{face_duality, orbit_is_normal, AffineSemigroup};
use coxtorus_core::seeds;

fn main() {
    let degrees = seeds::parse_degree_table(include_str!("/root/crate/data/degree_matrix.txt")).unwrap();
    let components = seeds::parse_components(include_str!("/root/crate/data/components.txt")).unwrap();
    let products = seeds::parse_monomial_list(include_str!("/root/crate/data/unstable_products.txt")).unwrap();
    let c = components.iter().find(|c| c.name == "Z0").unwrap();
    let model = build_toric_model(c, &degrees).unwrap();
    let q = toric_quotient_pipeline(c, &model, &products).unwrap();
    let s = AffineSemigroup::new(model.ambient, model.points.clone());
    for sf in &q.surviving {
        let f = face_duality(&model.sigma, &sf.face).unwrap();
        let normal = orbit_is_normal(&s, &f).unwrap();
        println!("face dim {} rays {:?} image {:?} normal={}", sf.face.dim(), sf.face.rays(), sf.image.rays(), normal);
    }
}
