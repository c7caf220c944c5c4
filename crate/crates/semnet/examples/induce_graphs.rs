//! Induce the twelve filtered graph variants and print their edge and
//! isolated-vertex counts.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::graph::{induce, GraphSpec, Loops, Polarity, ScoreFilter};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;

    println!("score    loops polarity multi directed undirected isolated");
    for score in [ScoreFilter::All, ScoreFilter::Positive] {
        for loops in [Loops::Drop, Loops::Keep] {
            for polarity in [Polarity::Negative, Polarity::Positive, Polarity::Both] {
                let spec = GraphSpec {
                    score,
                    loops,
                    polarity,
                    frequency_range: (-10, 10),
                    relations: None,
                };
                let g = induce(&kb, &spec)?;
                println!(
                    "{score:<8?} {loops:<5?} {polarity:<8?} {:<5} {:<8} {:<10} {}",
                    g.multi_edge_count(),
                    g.directed_edge_count(),
                    g.undirected_edge_count(),
                    g.isolated_vertex_count(),
                );
            }
        }
    }
    Ok(())
}
