//! Multilevel greedy modularity optimization.
//!
//! Level loop: sweep the vertices in a seeded-random order, moving each to
//! the neighboring community with the best positive modularity gain, until a
//! sweep makes no move; then aggregate communities into vertices and repeat
//! on the smaller graph. Starting from singletons and accepting only strict
//! improvements, the final modularity is never below the singleton value.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use crate::closure::Index;
use crate::communities::partition::Partition;
use crate::error::Result;
use crate::graph::UndirectedAdjacency;
use crate::rng::stream_rng;

struct LevelGraph {
    /// Weighted adjacency per vertex, self-weight kept separately.
    neighbors: Vec<Vec<(u32, f64)>>,
    self_weight: Vec<f64>,
    total_weight_x2: f64,
}

impl LevelGraph {
    fn from_adjacency(adj: &UndirectedAdjacency) -> LevelGraph {
        let n = adj.vertex_count();
        let neighbors: Vec<Vec<(u32, f64)>> = (0..n as Index)
            .map(|v| adj.neighbors(v).iter().map(|&u| (u, 1.0)).collect())
            .collect();
        let total_weight_x2 = neighbors.iter().map(|l| l.len() as f64).sum();
        LevelGraph {
            neighbors,
            self_weight: vec![0.0; n],
            total_weight_x2,
        }
    }

    fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Internal (self-loop) weight counts twice, like both endpoints of an
    /// ordinary edge.
    fn weighted_degree(&self, v: usize) -> f64 {
        self.neighbors[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_weight[v]
    }
}

/// One sweep-to-stability pass; returns the community of each vertex and
/// whether anything moved.
fn one_level(g: &LevelGraph, order: &mut [u32], rng: &mut rand_chacha::ChaCha8Rng) -> (Vec<u32>, bool) {
    let n = g.vertex_count();
    let m2 = g.total_weight_x2;
    let mut community: Vec<u32> = (0..n as u32).collect();
    let degree: Vec<f64> = (0..n).map(|v| g.weighted_degree(v)).collect();
    // Sum of weighted degrees per community.
    let mut sigma_tot: Vec<f64> = degree.clone();
    let mut improved_ever = false;

    loop {
        order.shuffle(rng);
        let mut moved = false;
        for &v in order.iter() {
            let v = v as usize;
            let own = community[v];
            // Weight from v to each neighboring community.
            let mut to_comm: HashMap<u32, f64> = HashMap::new();
            for &(u, w) in &g.neighbors[v] {
                to_comm.entry(community[u as usize]).or_insert(0.0);
                *to_comm.get_mut(&community[u as usize]).unwrap() += w;
            }
            let w_own = to_comm.get(&own).copied().unwrap_or(0.0);
            sigma_tot[own as usize] -= degree[v];
            let own_gain = w_own - degree[v] * sigma_tot[own as usize] / m2;

            // Gain of joining community c: k_v_in(c) - deg(v) * sigma(c) / 2m.
            // Moves require a strictly positive improvement, so every move
            // raises the modularity and the sweep loop terminates. Scanning
            // candidates in community-ID order keeps ties deterministic.
            let mut candidates: Vec<(u32, f64)> = to_comm.into_iter().collect();
            candidates.sort_unstable_by_key(|&(c, _)| c);
            let mut best: Option<(f64, u32)> = None;
            for (c, w) in candidates {
                if c == own {
                    continue;
                }
                let gain = w - degree[v] * sigma_tot[c as usize] / m2;
                match best {
                    Some((bg, _)) if gain <= bg + 1e-12 => {}
                    _ => best = Some((gain, c)),
                }
            }
            let target = match best {
                Some((gain, c)) if gain > own_gain + 1e-12 => c,
                _ => own,
            };
            sigma_tot[target as usize] += degree[v];
            if target != own {
                community[v] = target;
                moved = true;
                improved_ever = true;
            }
        }
        if !moved {
            return (community, improved_ever);
        }
    }
}

fn aggregate(g: &LevelGraph, community: &[u32]) -> (LevelGraph, Vec<u32>) {
    // Dense community IDs, ordered by community label.
    let mut seen: Vec<u32> = community.to_vec();
    seen.sort_unstable();
    seen.dedup();
    let dense: HashMap<u32, u32> = seen.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let k = seen.len();

    let mut self_weight = vec![0.0f64; k];
    let mut merged: Vec<HashMap<u32, f64>> = vec![HashMap::new(); k];
    for v in 0..g.vertex_count() {
        let cv = dense[&community[v]];
        self_weight[cv as usize] += g.self_weight[v];
        for &(u, w) in &g.neighbors[v] {
            let cu = dense[&community[u as usize]];
            if cu == cv {
                // Each internal edge appears from both endpoints; count the
                // self-weight once per direction, halved below.
                self_weight[cv as usize] += w / 2.0;
            } else {
                *merged[cv as usize].entry(cu).or_insert(0.0) += w;
            }
        }
    }
    let neighbors: Vec<Vec<(u32, f64)>> = merged
        .into_iter()
        .map(|map| {
            let mut list: Vec<(u32, f64)> = map.into_iter().collect();
            list.sort_by_key(|&(u, _)| u);
            list
        })
        .collect();
    let mapping: Vec<u32> = community.iter().map(|c| dense[c]).collect();
    (
        LevelGraph {
            neighbors,
            self_weight,
            total_weight_x2: g.total_weight_x2,
        },
        mapping,
    )
}

pub fn multilevel(adj: &UndirectedAdjacency, seed: u64) -> Result<Partition> {
    let mut rng = stream_rng(seed, 0);
    multilevel_with(adj, &mut rng)
}

pub(crate) fn multilevel_with(
    adj: &UndirectedAdjacency,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Partition> {
    let n = adj.vertex_count();
    let mut level = LevelGraph::from_adjacency(adj);
    // labels[v] tracks each original vertex through the aggregations.
    let mut labels: Vec<u32> = (0..n as u32).collect();

    loop {
        let mut order: Vec<u32> = (0..level.vertex_count() as u32).collect();
        let (community, improved) = one_level(&level, &mut order, rng);
        if !improved {
            break;
        }
        let (aggregated, mapping) = aggregate(&level, &community);
        for l in labels.iter_mut() {
            *l = mapping[*l as usize];
        }
        if aggregated.vertex_count() == level.vertex_count() {
            break;
        }
        level = aggregated;
    }
    Partition::from_labels(adj, &labels)
}
