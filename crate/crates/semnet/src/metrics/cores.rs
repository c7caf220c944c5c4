//! k-core decomposition of the undirected view.
//!
//! Peeling runs on the collapsed undirected graph. With loops retained, a
//! self-loop adds two to its vertex's degree; removing a vertex removes its
//! loop with it.

use std::collections::BTreeMap;

use crate::closure::Index;
use crate::graph::{InducedGraph, Loops};

/// Statistics of the subgraph induced by vertices of coreness >= k.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreLevel {
    pub k: u32,
    pub vertices: u64,
    pub multi_edges: u64,
    pub directed_edges: u64,
    pub undirected_edges: u64,
    pub multi_avg_degree: f64,
    pub directed_avg_degree: f64,
    pub undirected_avg_degree: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreFiltration {
    /// Coreness of every vertex.
    pub coreness: Vec<u32>,
    /// One row per threshold k = 0 ..= max coreness.
    pub levels: Vec<CoreLevel>,
    /// Whether self-loops contributed to degrees and edge counts.
    pub loops: Loops,
}

impl CoreFiltration {
    pub fn max_coreness(&self) -> u32 {
        self.coreness.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices per coreness value.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        for &c in &self.coreness {
            *hist.entry(c).or_insert(0u64) += 1;
        }
        hist
    }
}

/// Bucket peel over the collapsed undirected graph.
pub fn coreness(g: &InducedGraph, loops: Loops) -> CoreFiltration {
    let adj = g.undirected_adjacency();
    let n = adj.vertex_count();
    let loop_bonus = |v: usize| -> u32 {
        match loops {
            Loops::Keep if adj.has_loop[v] => 2,
            _ => 0,
        }
    };

    let mut degree: Vec<u32> = (0..n).map(|v| adj.degree(v as Index) as u32 + loop_bonus(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;

    // Vertices ordered by degree, with bucket starts and per-vertex slots.
    let mut bucket_start = vec![0usize; max_degree + 2];
    for &d in &degree {
        bucket_start[d as usize + 1] += 1;
    }
    for i in 1..bucket_start.len() {
        bucket_start[i] += bucket_start[i - 1];
    }
    let mut order = vec![0u32; n];
    let mut position = vec![0usize; n];
    let mut cursor = bucket_start.clone();
    for v in 0..n {
        let d = degree[v] as usize;
        order[cursor[d]] = v as u32;
        position[v] = cursor[d];
        cursor[d] += 1;
    }
    let mut coreness = vec![0u32; n];
    let mut removed = vec![false; n];
    let mut current = 0u32;
    for i in 0..n {
        let v = order[i] as usize;
        current = current.max(degree[v]);
        coreness[v] = current;
        removed[v] = true;
        for &u in adj.neighbors(v as Index) {
            let u = u as usize;
            if removed[u] || degree[u] <= degree[v] {
                continue;
            }
            // Move u one bucket down: swap it with the first vertex of its
            // bucket, then shrink the bucket boundary.
            let du = degree[u] as usize;
            let first = bucket_start[du];
            let w = order[first] as usize;
            order.swap(position[u], first);
            position.swap(u, w);
            bucket_start[du] += 1;
            degree[u] -= 1;
        }
    }

    let levels = levels_for(g, &coreness, loops);
    CoreFiltration { coreness, levels, loops }
}

fn levels_for(g: &InducedGraph, coreness: &[u32], loops: Loops) -> Vec<CoreLevel> {
    let max_k = coreness.iter().copied().max().unwrap_or(0);
    let buckets = max_k as usize + 1;

    // An edge survives threshold k iff both endpoints have coreness >= k;
    // accumulate per-min histogram, then suffix-sum.
    let mut vertex_at = vec![0u64; buckets];
    for &c in coreness {
        vertex_at[c as usize] += 1;
    }
    let keep = |u: Index, v: Index| u != v || matches!(loops, Loops::Keep);
    let mut multi_at = vec![0u64; buckets];
    for &(u, v, _) in &g.multi {
        if keep(u, v) {
            multi_at[coreness[u as usize].min(coreness[v as usize]) as usize] += 1;
        }
    }
    let mut directed_at = vec![0u64; buckets];
    for ((u, v), _) in &g.directed {
        if keep(*u, *v) {
            directed_at[coreness[*u as usize].min(coreness[*v as usize]) as usize] += 1;
        }
    }
    let mut undirected_at = vec![0u64; buckets];
    for ((u, v), _) in &g.undirected {
        if keep(*u, *v) {
            undirected_at[coreness[*u as usize].min(coreness[*v as usize]) as usize] += 1;
        }
    }

    let suffix = |hist: &[u64]| -> Vec<u64> {
        let mut out = hist.to_vec();
        for i in (0..out.len().saturating_sub(1)).rev() {
            out[i] += out[i + 1];
        }
        out
    };
    let (vertices, multi, directed, undirected) = (
        suffix(&vertex_at),
        suffix(&multi_at),
        suffix(&directed_at),
        suffix(&undirected_at),
    );

    (0..buckets)
        .map(|k| {
            let avg = |e: u64| {
                if vertices[k] == 0 {
                    0.0
                } else {
                    2.0 * e as f64 / vertices[k] as f64
                }
            };
            CoreLevel {
                k: k as u32,
                vertices: vertices[k],
                multi_edges: multi[k],
                directed_edges: directed[k],
                undirected_edges: undirected[k],
                multi_avg_degree: avg(multi[k]),
                directed_avg_degree: avg(directed[k]),
                undirected_avg_degree: avg(undirected[k]),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::graph_of;

    #[test]
    fn clique_k5_has_uniform_coreness_four() {
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let g = graph_of(&edges, 5);
        let f = coreness(&g, Loops::Drop);
        assert!(f.coreness.iter().all(|&c| c == 4));
        assert_eq!(f.max_coreness(), 4);
        assert_eq!(f.levels[4].vertices, 5);
        assert_eq!(f.levels[4].undirected_edges, 10);
    }

    #[test]
    fn pendant_path_peels_before_the_core() {
        // Triangle 0,1,2 with a tail 2-3-4.
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)], 5);
        let f = coreness(&g, Loops::Drop);
        assert_eq!(f.coreness, vec![2, 2, 2, 1, 1]);
        assert_eq!(f.histogram(), BTreeMap::from([(1, 2), (2, 3)]));
    }

    #[test]
    fn vertex_counts_weakly_decrease_and_cores_nest() {
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], 6);
        let f = coreness(&g, Loops::Drop);
        for w in f.levels.windows(2) {
            assert!(w[1].vertices <= w[0].vertices);
            assert!(w[1].undirected_edges <= w[0].undirected_edges);
        }
        assert_eq!(f.levels[0].vertices, 6);
    }

    #[test]
    fn coreness_bounded_by_degree() {
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)], 4);
        let adj = g.undirected_adjacency();
        let f = coreness(&g, Loops::Drop);
        for v in 0..4u32 {
            assert!(f.coreness[v as usize] as usize <= adj.degree(v));
        }
    }

    #[test]
    fn retained_loop_lifts_coreness() {
        let g = graph_of(&[(0, 0), (0, 1)], 2);
        let dropped = coreness(&g, Loops::Drop);
        let kept = coreness(&g, Loops::Keep);
        assert_eq!(dropped.coreness, vec![1, 1]);
        assert!(kept.coreness[0] > dropped.coreness[0]);
    }
}
