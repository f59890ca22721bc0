//! Regenerates the repository fixtures under `fixtures/`.
//!
//! Usage: `cargo run -p gframes --example gen_fixtures [DIR]`

use gframes::{group, io, Signal};

fn main() -> gframes::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures".to_string());
    std::fs::create_dir_all(&dir).expect("create fixtures dir");
    let at = |name: &str| format!("{dir}/{name}");

    let (z6, z6_irreps) = group::cyclic_group(6)?;
    io::store_group(&z6, &z6_irreps, at("z6_group.json"))?;
    let z6_basis = group::coordinate_basis(&z6, &z6_irreps)?;
    io::store_basis(&z6_basis, at("z6_basis.json"))?;
    // residues {1, 3, 5} as 1-based element indices
    let z6_gens = vec![2usize, 4, 6];
    io::store_generating_set(&z6_gens, at("z6_odd_gens.json"))?;
    let k33 = group::cayley_graph(&z6, &z6_gens)?;
    io::store_graph(&k33.graph, at("k33_graph.json"))?;

    let (s3, s3_irreps) = group::symmetric_group_s3();
    io::store_group(&s3, &s3_irreps, at("s3_group.json"))?;
    let s3_basis = group::coordinate_basis(&s3, &s3_irreps)?;
    io::store_basis(&s3_basis, at("s3_basis.json"))?;
    io::store_generating_set(&[2, 3, 4], at("s3_transpositions.json"))?;

    let window = Signal::from_real(&[6.0 / 7.0, 3.0 / 7.0, 2.0 / 7.0, 0.0, 0.0, 0.0])?;
    io::store_signal(&window, at("paper_window.json"))?;

    eprintln!("fixtures written to {dir}/");
    Ok(())
}
