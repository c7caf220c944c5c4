//! Vertex partitions and Newman-Girvan modularity.

use crate::closure::Index;
use crate::error::{Error, Result};
use crate::graph::UndirectedAdjacency;

/// A non-overlapping community assignment with dense IDs.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Community of each vertex, IDs dense in 0..community_count.
    pub labels: Vec<u32>,
    pub community_count: usize,
    /// Modularity of this partition on the graph it was computed from.
    pub modularity: f64,
}

impl Partition {
    /// Renumbers arbitrary labels densely by first appearance and attaches
    /// the modularity.
    pub fn from_labels(adj: &UndirectedAdjacency, raw: &[u32]) -> Result<Partition> {
        let mut remap = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &l in raw {
            let next = remap.len() as u32;
            labels.push(*remap.entry(l).or_insert(next));
        }
        let community_count = remap.len();
        let modularity = modularity(adj, &labels)?;
        Ok(Partition { labels, community_count, modularity })
    }

    pub fn community_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.community_count];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j], loops excluded.
pub fn modularity(adj: &UndirectedAdjacency, labels: &[u32]) -> Result<f64> {
    let m = adj.edge_count() as f64;
    if m == 0.0 {
        return Err(Error::Undefined("modularity of an edgeless graph".into()));
    }
    let communities = labels.iter().copied().max().map_or(0, |x| x as usize + 1);
    let mut internal = vec![0u64; communities];
    let mut degree = vec![0u64; communities];
    for v in 0..adj.vertex_count() as Index {
        let c = labels[v as usize] as usize;
        degree[c] += adj.degree(v) as u64;
        for &u in adj.neighbors(v) {
            if u > v && labels[u as usize] as usize == c {
                internal[c] += 1;
            }
        }
    }
    let q: f64 = (0..communities)
        .map(|c| internal[c] as f64 / m - (degree[c] as f64 / (2.0 * m)).powi(2))
        .sum();
    Ok(q)
}
