//! Weak/strong components and the k-core filtration of an induced graph.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::graph::{induce, GraphSpec, Loops};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};
use semnet::metrics::{coreness, strong_components, weak_components};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let g = induce(&kb, &GraphSpec { loops: Loops::Drop, ..GraphSpec::default() })?;

    let wcc = weak_components(&g);
    let scc = strong_components(&g);
    println!("weak components: {} (sizes {:?})", wcc.component_count, wcc.size_distribution());
    println!("strong components: {} (largest {})", scc.component_count, scc.largest_size());

    let filtration = coreness(&g, Loops::Drop);
    println!("coreness histogram: {:?}", filtration.histogram());
    for level in &filtration.levels {
        println!(
            "core >= {}: {} vertices, {} undirected edges, avg degree {:.3}",
            level.k, level.vertices, level.undirected_edges, level.undirected_avg_degree
        );
    }
    Ok(())
}
