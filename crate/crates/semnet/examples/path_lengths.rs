//! Shortest-path length distribution, average path length, and the longest
//! geodesic with its witness.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::graph::{induce, GraphSpec, Loops};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};
use semnet::metrics::{average_path_length, longest_geodesic, path_length_histogram};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let g = induce(&kb, &GraphSpec { loops: Loops::Drop, ..GraphSpec::default() })?;

    for directed in [true, false] {
        let label = if directed { "directed" } else { "undirected" };
        let hist = path_length_histogram(&g, directed);
        println!("{label} histogram: {:?} (unreachable {})", hist.counts, hist.unreachable);
        println!("{label} average: {:.4}", average_path_length(&hist)?);
        let geo = longest_geodesic(&g, directed)?;
        let names: Vec<&str> = geo.path.iter().map(|&v| kb.concept_text(v)).collect();
        println!("{label} longest geodesic ({}): {}", geo.length, names.join(" -> "));
    }
    Ok(())
}
