//! Maximal cliques, k-clique percolation, and seeded non-overlapping
//! community detection with run statistics.

pub mod cliques;
pub mod label_propagation;
pub mod multilevel;
pub mod partition;
pub mod percolation;

pub use cliques::{maximal_cliques, CliqueSet};
pub use label_propagation::label_propagation;
pub use multilevel::multilevel;
pub use partition::{modularity, Partition};
pub use percolation::{k_clique_percolation, Cover};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::UndirectedAdjacency;
use crate::rng::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommunityAlgorithm {
    LabelPropagation,
    Multilevel,
}

impl CommunityAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            CommunityAlgorithm::LabelPropagation => "label-propagation",
            CommunityAlgorithm::Multilevel => "multilevel",
        }
    }

    /// One run with its own derived stream of the base seed.
    pub fn run(self, adj: &UndirectedAdjacency, seed: u64, run: u64) -> Result<Partition> {
        // Stream per run, so runs are independent and order-insensitive.
        let mut rng = stream_rng(seed, run);
        match self {
            CommunityAlgorithm::LabelPropagation => {
                let labels = label_propagation::propagate(adj, &mut rng);
                Partition::from_labels(adj, &labels)
            }
            CommunityAlgorithm::Multilevel => multilevel::multilevel_with(adj, &mut rng),
        }
    }
}

/// Aggregate community counts and modularities over seeded repeated runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub algorithm: CommunityAlgorithm,
    pub runs: u64,
    /// Community count of each run, in run order.
    pub community_counts: Vec<u64>,
    pub communities_avg: f64,
    pub communities_min: u64,
    pub communities_max: u64,
    pub modularity_avg: f64,
    pub modularity_min: f64,
    pub modularity_max: f64,
}

/// Runs the algorithm `runs` times with per-run streams of `seed`.
pub fn run_stats(
    algorithm: CommunityAlgorithm,
    adj: &UndirectedAdjacency,
    runs: u64,
    seed: u64,
) -> Result<RunStats> {
    if runs == 0 {
        return Err(Error::Parameter("need at least one run".into()));
    }
    let results: Vec<Partition> = (0..runs)
        .into_par_iter()
        .map(|run| algorithm.run(adj, seed, run))
        .collect::<Result<_>>()?;
    let kappas: Vec<u64> = results.iter().map(|p| p.community_count as u64).collect();
    let mus: Vec<f64> = results.iter().map(|p| p.modularity).collect();
    Ok(RunStats {
        algorithm,
        runs,
        communities_avg: kappas.iter().sum::<u64>() as f64 / runs as f64,
        communities_min: kappas.iter().copied().min().unwrap(),
        communities_max: kappas.iter().copied().max().unwrap(),
        modularity_avg: mus.iter().sum::<f64>() / runs as f64,
        modularity_min: mus.iter().copied().fold(f64::INFINITY, f64::min),
        modularity_max: mus.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        community_counts: kappas,
    })
}
