use coxtorus_core::gitquot::{build_toric_model, toric_quotient_pipeline};
use coxtorus_core::seeds;

fn main() {
    let degrees = seeds::parse_degree_table(include_str!("/root/crate/data/degree_matrix.txt")).unwrap();
    let components = seeds::parse_components(include_str!("/root/crate/data/components.txt")).unwrap();
    let products = seeds::parse_monomial_list(include_str!("/root/crate/data/unstable_products.txt")).unwrap();
    for name in ["Z1", "Z2"] {
        let c = components.iter().find(|c| c.name == name).unwrap();
        let model = build_toric_model(c, &degrees).unwrap();
        println!("{name} coords {:?}", model.coords);
        println!("{name} points {:?}", model.points);
        println!("{name} pic {:?} torus {:?}", model.pic_matrix, model.torus_matrix);
        let q = toric_quotient_pipeline(c, &model, &products).unwrap();
        println!("{name} fan rays {:?}", q.fan.rays());
        println!("{name} #max cones {}", q.fan.max_cones().len());
        println!("{name} t_action {:?}", q.t_action);
        println!("{name} q {:?}", q.q_matrix);
    }
}
