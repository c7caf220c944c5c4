//! Asynchronous label propagation.
//!
//! Every vertex starts in its own community. Rounds sweep the vertices in a
//! fresh seeded-random order; each vertex adopts a most frequent label among
//! its neighbors, keeping its own when it already is one and otherwise
//! breaking ties uniformly at random. The walk stops when a full round
//! changes nothing, so at exit every vertex's label is among the most
//! frequent labels of its neighborhood.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::closure::Index;
use crate::communities::partition::Partition;
use crate::error::Result;
use crate::graph::UndirectedAdjacency;
use crate::rng::stream_rng;

pub fn label_propagation(adj: &UndirectedAdjacency, seed: u64) -> Result<Partition> {
    let mut rng = stream_rng(seed, 0);
    let labels = propagate(adj, &mut rng);
    Partition::from_labels(adj, &labels)
}

pub(crate) fn propagate(adj: &UndirectedAdjacency, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let n = adj.vertex_count();
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<Index> = (0..n as Index).collect();
    let mut freq: Vec<u32> = vec![0; n];

    loop {
        order.shuffle(rng);
        let mut changed = false;
        for &v in &order {
            let neighbors = adj.neighbors(v);
            if neighbors.is_empty() {
                continue;
            }
            let mut touched = Vec::with_capacity(neighbors.len());
            let mut best = 0u32;
            for &u in neighbors {
                let l = labels[u as usize] as usize;
                if freq[l] == 0 {
                    touched.push(l as u32);
                }
                freq[l] += 1;
                best = best.max(freq[l]);
            }
            let own = labels[v as usize];
            if freq.get(own as usize).copied().unwrap_or(0) < best {
                // Choose uniformly among the maximal labels.
                let mut winners = touched.iter().copied().filter(|&l| freq[l as usize] == best);
                let count = winners.clone().count();
                let pick = winners.nth(rng.random_range(0..count)).expect("nonempty");
                labels[v as usize] = pick;
                changed = true;
            }
            for l in touched {
                freq[l as usize] = 0;
            }
        }
        if !changed {
            return labels;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixpoint_holds(adj: &UndirectedAdjacency, labels: &[u32]) -> bool {
        for v in 0..adj.vertex_count() as Index {
            let neighbors = adj.neighbors(v);
            if neighbors.is_empty() {
                continue;
            }
            let mut counts = std::collections::HashMap::new();
            for &u in neighbors {
                *counts.entry(labels[u as usize]).or_insert(0u32) += 1;
            }
            let best = *counts.values().max().unwrap();
            if counts.get(&labels[v as usize]).copied().unwrap_or(0) != best {
                return false;
            }
        }
        true
    }

    #[test]
    fn disjoint_triangles_become_two_communities() {
        let adj = UndirectedAdjacency::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        );
        let p = label_propagation(&adj, 7).unwrap();
        assert_eq!(p.community_count, 2);
        assert_eq!(p.labels[0], p.labels[1]);
        assert_eq!(p.labels[3], p.labels[4]);
        assert_ne!(p.labels[0], p.labels[3]);
    }

    #[test]
    fn result_satisfies_fixpoint_invariant() {
        let adj = UndirectedAdjacency::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)],
        );
        for seed in 0..20 {
            let p = label_propagation(&adj, seed).unwrap();
            assert!(fixpoint_holds(&adj, &p.labels), "seed {seed}");
        }
    }

    #[test]
    fn same_seed_reproduces_bitwise() {
        let adj = UndirectedAdjacency::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (8, 9), (2, 8), (4, 9)],
        );
        let a = label_propagation(&adj, 123).unwrap();
        let b = label_propagation(&adj, 123).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn isolated_vertices_keep_singleton_labels() {
        let adj = UndirectedAdjacency::from_edges(4, &[(0, 1)]);
        let p = label_propagation(&adj, 1).unwrap();
        assert_eq!(p.community_count, 3);
    }
}
