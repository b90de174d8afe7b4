use coxtorus_core::gitquot::{build_toric_model, component_weight_table, hypersurface_weight_table};
use coxtorus_core::seeds;

fn main() {
    let degrees = seeds::parse_degree_table(include_str!("/root/crate/data/degree_matrix.txt")).unwrap();
    let components = seeds::parse_components(include_str!("/root/crate/data/components.txt")).unwrap();
    let expected = seeds::parse_weight_sets(include_str!("/root/crate/data/component_weights_2_1.txt")).unwrap();
    for name in ["Z0", "Z1", "Z2"] {
        let c = components.iter().find(|c| c.name == name).unwrap();
        let model = build_toric_model(c, &degrees).unwrap();
        let table = component_weight_table(&model, (2, 1));
        let support: std::collections::BTreeSet<(i64,i64)> = table.keys().cloned().collect();
        let want = &expected[name];
        println!("{name}: computed {} weights, expected {}, equal: {}", support.len(), want.len(), &support == want);
        if &support != want {
            println!("  extra: {:?}", support.difference(want).collect::<Vec<_>>());
            println!("  missing: {:?}", want.difference(&support).collect::<Vec<_>>());
        }
        let mults: Vec<u64> = table.values().cloned().collect();
        println!("  multiplicities all 1: {}", mults.iter().all(|&m| m == 1));
    }
    // Hypersurface component.
    let c = components.iter().find(|c| c.name == "ZP").unwrap();
    let survivors = c.survivors(&degrees);
    let gens: Vec<((i64,i64),(i64,i64))> = survivors.iter()
        .map(|g| (degrees.pic(g).unwrap(), degrees.torus(g).unwrap())).collect();
    let table = hypersurface_weight_table(&gens, (3, 0), (6, 6), (2, 1));
    let support: std::collections::BTreeSet<(i64,i64)> = table.keys().cloned().collect();
    println!("ZP: {:?} equal: {}", support, &support == &expected["ZP"]);
}
