//! Shortest-path length distributions, averages, and longest geodesics,
//! from breadth-first search out of every vertex.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::closure::Index;
use crate::error::{Error, Result};
use crate::graph::{Csr, InducedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLengthHistogram {
    /// Pairs at each finite distance: ordered pairs for a directed graph,
    /// unordered pairs otherwise. Self-pairs are never counted.
    pub counts: BTreeMap<u32, u64>,
    /// Pairs with no connecting path (the infinity row).
    pub unreachable: u64,
    /// |V| (|V| - 1), halved in the undirected case.
    pub total_pairs: u64,
}

impl PathLengthHistogram {
    pub fn finite_pairs(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// One longest finite shortest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    pub length: u32,
    /// Vertex sequence from source to target, length + 1 entries.
    pub path: Vec<Index>,
}

struct SourceScan {
    histogram: BTreeMap<u32, u64>,
    /// (length, source, target), minimal pair for the maximal length.
    best: Option<(u32, Index, Index)>,
}

fn bfs_scan(adj: &Csr, source: Index, dist: &mut [u32], queue: &mut Vec<Index>) -> SourceScan {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source as usize] = 0;
    queue.push(source);
    let mut head = 0;
    let mut histogram = BTreeMap::new();
    let mut best: Option<(u32, Index, Index)> = None;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let d = dist[v as usize];
        if v != source {
            *histogram.entry(d).or_insert(0u64) += 1;
            match best {
                Some((bd, _, bt)) if bd > d || (bd == d && bt <= v) => {}
                _ => best = Some((d, source, v)),
            }
        }
        for &u in adj.neighbors(v) {
            if u != v && dist[u as usize] == u32::MAX {
                dist[u as usize] = d + 1;
                queue.push(u);
            }
        }
    }
    SourceScan { histogram, best }
}

fn merge_best(a: Option<(u32, Index, Index)>, b: Option<(u32, Index, Index)>) -> Option<(u32, Index, Index)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((da, sa, ta)), Some((db, sb, tb))) => {
            // Longest length wins; ties go to the smallest (source, target).
            if db > da || (db == da && (sb, tb) < (sa, ta)) {
                Some((db, sb, tb))
            } else {
                Some((da, sa, ta))
            }
        }
    }
}

type BestPair = Option<(u32, Index, Index)>;

fn scan_all(adj: &Csr, n: usize) -> (BTreeMap<u32, u64>, BestPair) {
    (0..n as Index)
        .into_par_iter()
        .fold(
            || (BTreeMap::new(), None, vec![0u32; n], Vec::new()),
            |(mut hist, best, mut dist, mut queue), source| {
                let scan = bfs_scan(adj, source, &mut dist, &mut queue);
                for (d, c) in scan.histogram {
                    *hist.entry(d).or_insert(0) += c;
                }
                let best = merge_best(best, scan.best);
                (hist, best, dist, queue)
            },
        )
        .map(|(hist, best, _, _)| (hist, best))
        .reduce(
            || (BTreeMap::new(), None),
            |(mut ha, ba), (hb, bb)| {
                for (d, c) in hb {
                    *ha.entry(d).or_insert(0) += c;
                }
                (ha, merge_best(ba, bb))
            },
        )
}

fn adjacency_for(g: &InducedGraph, directed: bool) -> Csr {
    if directed {
        g.directed_adjacency().out
    } else {
        g.undirected_adjacency().csr
    }
}

/// Distribution of shortest-path lengths over all pairs.
pub fn path_length_histogram(g: &InducedGraph, directed: bool) -> PathLengthHistogram {
    let n = g.vertex_count;
    let adj = adjacency_for(g, directed);
    let (mut counts, _) = scan_all(&adj, n);
    let mut total_pairs = n as u64 * (n as u64).saturating_sub(1);
    if !directed {
        // Every unordered pair was seen from both endpoints.
        for c in counts.values_mut() {
            *c /= 2;
        }
        total_pairs /= 2;
    }
    let finite: u64 = counts.values().sum();
    PathLengthHistogram {
        counts,
        unreachable: total_pairs - finite,
        total_pairs,
    }
}

/// Mean shortest-path length over the reachable pairs.
pub fn average_path_length(hist: &PathLengthHistogram) -> Result<f64> {
    let pairs = hist.finite_pairs();
    if pairs == 0 {
        return Err(Error::Undefined(
            "no reachable pairs; average path length undefined".into(),
        ));
    }
    let sum: u64 = hist.counts.iter().map(|(&d, &c)| d as u64 * c).sum();
    Ok(sum as f64 / pairs as f64)
}

/// A maximum-length finite shortest path with its vertex sequence. Among all
/// witnesses, the one with the smallest (source, target) pair is returned.
pub fn longest_geodesic(g: &InducedGraph, directed: bool) -> Result<Geodesic> {
    let n = g.vertex_count;
    let adj = adjacency_for(g, directed);
    let (_, best) = scan_all(&adj, n);
    let Some((length, source, target)) = best else {
        return Err(Error::Undefined("graph has no edges".into()));
    };

    // Reconstruct one shortest path; neighbors are scanned in ascending
    // order, so the parent choice is deterministic.
    let mut parent = vec![u32::MAX; n];
    let mut dist = vec![u32::MAX; n];
    let mut queue = vec![source];
    dist[source as usize] = 0;
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        if v == target {
            break;
        }
        for &u in adj.neighbors(v) {
            if u != v && dist[u as usize] == u32::MAX {
                dist[u as usize] = dist[v as usize] + 1;
                parent[u as usize] = v;
                queue.push(u);
            }
        }
    }
    let mut path = vec![target];
    let mut v = target;
    while v != source {
        v = parent[v as usize];
        path.push(v);
    }
    path.reverse();
    debug_assert_eq!(path.len() as u32, length + 1);
    Ok(Geodesic { length, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::graph_of;

    #[test]
    fn path_graph_histogram() {
        let g = graph_of(&[(0, 1), (1, 2)], 3);
        let h = path_length_histogram(&g, false);
        assert_eq!(h.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(h.unreachable, 0);
        let geo = longest_geodesic(&g, false).unwrap();
        assert_eq!(geo.length, 2);
        assert_eq!(geo.path, vec![0, 1, 2]);
    }

    #[test]
    fn directed_counts_ordered_pairs() {
        let g = graph_of(&[(0, 1), (1, 2)], 3);
        let h = path_length_histogram(&g, true);
        assert_eq!(h.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(h.total_pairs, 6);
        assert_eq!(h.unreachable, 3);
    }

    #[test]
    fn length_one_row_is_loop_free_edge_count() {
        let g = graph_of(&[(0, 1), (1, 0), (1, 1), (1, 2)], 4);
        let hd = path_length_histogram(&g, true);
        // Directed simple edges without loops: 0->1, 1->0, 1->2.
        assert_eq!(hd.counts[&1], 3);
        let hu = path_length_histogram(&g, false);
        assert_eq!(hu.counts[&1], 2);
    }

    #[test]
    fn average_counts_reachable_pairs_only() {
        let g = graph_of(&[(0, 1)], 4);
        let h = path_length_histogram(&g, false);
        assert_eq!(average_path_length(&h).unwrap(), 1.0);
        assert_eq!(h.unreachable, 5);
    }

    #[test]
    fn no_edges_average_is_undefined() {
        let g = graph_of(&[], 3);
        let h = path_length_histogram(&g, false);
        assert!(average_path_length(&h).is_err());
        assert!(longest_geodesic(&g, false).is_err());
    }

    #[test]
    fn histogram_mass_is_conserved() {
        let g = graph_of(&[(0, 1), (2, 3), (3, 4), (1, 2)], 7);
        for directed in [false, true] {
            let h = path_length_histogram(&g, directed);
            assert_eq!(h.finite_pairs() + h.unreachable, h.total_pairs);
        }
    }

    #[test]
    fn geodesic_tie_breaks_on_smallest_pair() {
        // Two disjoint edges: distances all 1; witness should be (0, 1).
        let g = graph_of(&[(2, 3), (0, 1)], 4);
        let geo = longest_geodesic(&g, false).unwrap();
        assert_eq!(geo.path, vec![0, 1]);
    }
}
