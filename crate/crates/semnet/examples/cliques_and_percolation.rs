//! Maximal cliques and overlapping communities by k-clique percolation.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::communities::{k_clique_percolation, maximal_cliques};
use semnet::graph::{induce, GraphSpec, Loops};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let g = induce(&kb, &GraphSpec { loops: Loops::Drop, ..GraphSpec::default() })?;

    let cliques = maximal_cliques(&g);
    println!("maximal cliques of size >= 3: {}", cliques.count_at_least_3());
    for clique in cliques.at_least(3) {
        let names: Vec<&str> = clique.iter().map(|&v| kb.concept_text(v)).collect();
        println!("  {{{}}}", names.join(", "));
    }

    let cover = k_clique_percolation(&g, 3)?;
    for (i, community) in cover.communities.iter().enumerate() {
        let names: Vec<&str> = community.iter().map(|&v| kb.concept_text(v)).collect();
        println!("community {i}: {{{}}}", names.join(", "));
    }
    Ok(())
}
