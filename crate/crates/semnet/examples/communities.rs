//! Label propagation and multilevel community detection with seeded,
//! reproducible multi-run statistics.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::communities::{run_stats, CommunityAlgorithm};
use semnet::graph::{induce, GraphSpec, Loops};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let g = induce(&kb, &GraphSpec { loops: Loops::Drop, ..GraphSpec::default() })?;
    let adj = g.undirected_adjacency();

    for algorithm in [CommunityAlgorithm::LabelPropagation, CommunityAlgorithm::Multilevel] {
        let stats = run_stats(algorithm, &adj, 20, 7)?;
        println!(
            "{}: kappa avg {:.2} [{}, {}], mu avg {:.4} [{:.4}, {:.4}]",
            algorithm.name(),
            stats.communities_avg,
            stats.communities_min,
            stats.communities_max,
            stats.modularity_avg,
            stats.modularity_min,
            stats.modularity_max,
        );
        let partition = algorithm.run(&adj, 7, 0)?;
        println!("  run 0: {} communities, mu {:.4}", partition.community_count, partition.modularity);
    }
    Ok(())
}
