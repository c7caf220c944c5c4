//! Overlapping communities by k-clique percolation.
//!
//! Implemented over the maximal cliques: every maximal clique of size at
//! least k stands for all its k-subcliques, and two maximal cliques belong
//! to one community when they share at least k-1 vertices. This reproduces
//! the chain-of-adjacent-k-cliques definition exactly: within one maximal
//! clique all k-subcliques are chained by single-vertex swaps, and an
//! overlap of k-1 vertices across two maximal cliques yields an adjacent
//! pair of k-cliques straddling them.

use std::collections::{BTreeMap, HashMap};

use crate::closure::Index;
use crate::communities::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::InducedGraph;

/// Overlapping communities: vertex sets plus per-vertex membership counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub k: usize,
    /// Each community sorted ascending; communities sorted lexicographically.
    pub communities: Vec<Vec<Index>>,
    /// Number of communities each vertex belongs to.
    pub membership: Vec<u32>,
}

impl Cover {
    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    pub fn size_distribution(&self) -> BTreeMap<usize, u64> {
        let mut dist = BTreeMap::new();
        for c in &self.communities {
            *dist.entry(c.len()).or_insert(0u64) += 1;
        }
        dist
    }

    /// Distribution of membership counts over the given vertex set (the
    /// paper tabulates non-isolated vertices).
    pub fn membership_distribution(&self, vertices: &[Index]) -> BTreeMap<u32, u64> {
        let mut dist = BTreeMap::new();
        for &v in vertices {
            *dist.entry(self.membership[v as usize]).or_insert(0u64) += 1;
        }
        dist
    }
}

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            self.parent[v as usize] = self.parent[self.parent[v as usize] as usize];
            v = self.parent[v as usize];
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

fn subsets_of_size(set: &[Index], k: usize, mut visit: impl FnMut(&[Index])) {
    fn rec(
        set: &[Index],
        k: usize,
        start: usize,
        buf: &mut Vec<Index>,
        visit: &mut impl FnMut(&[Index]),
    ) {
        if buf.len() == k {
            visit(buf);
            return;
        }
        let needed = k - buf.len();
        for i in start..=set.len().saturating_sub(needed) {
            buf.push(set[i]);
            rec(set, k, i + 1, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(k);
    rec(set, k, 0, &mut buf, &mut visit);
}

/// Percolates cliques of size `k` (k >= 3).
pub fn k_clique_percolation(g: &InducedGraph, k: usize) -> Result<Cover> {
    if k < 3 {
        return Err(Error::Parameter(format!(
            "percolation needs k >= 3, got {k}"
        )));
    }
    let all = maximal_cliques(g);
    let big: Vec<&Vec<Index>> = all.at_least(k).collect();

    // Two maximal cliques sharing a (k-1)-subset share >= k-1 vertices and
    // vice versa, so bucketing by (k-1)-subsets finds all adjacencies.
    let mut sets = DisjointSets::new(big.len());
    let mut buckets: HashMap<Vec<Index>, u32> = HashMap::new();
    for (i, clique) in big.iter().enumerate() {
        subsets_of_size(clique, k - 1, |subset| {
            match buckets.get(subset) {
                Some(&first) => sets.union(first, i as u32),
                None => {
                    buckets.insert(subset.to_vec(), i as u32);
                }
            }
        });
    }

    let mut grouped: HashMap<u32, Vec<Index>> = HashMap::new();
    for (i, clique) in big.iter().enumerate() {
        let root = sets.find(i as u32);
        grouped.entry(root).or_default().extend(clique.iter().copied());
    }
    let mut communities: Vec<Vec<Index>> = grouped
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            members.dedup();
            members
        })
        .collect();
    communities.sort_unstable();

    let mut membership = vec![0u32; g.vertex_count];
    for c in &communities {
        for &v in c {
            membership[v as usize] += 1;
        }
    }
    Ok(Cover { k, communities, membership })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::graph_of;

    #[test]
    fn k_below_three_is_a_parameter_error() {
        let g = graph_of(&[(0, 1)], 2);
        assert!(k_clique_percolation(&g, 2).is_err());
    }

    #[test]
    fn two_triangles_sharing_an_edge_merge() {
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (1, 3), (2, 3)], 4);
        let cover = k_clique_percolation(&g, 3).unwrap();
        assert_eq!(cover.communities, vec![vec![0, 1, 2, 3]]);
        assert_eq!(cover.membership, vec![1, 1, 1, 1]);
    }

    #[test]
    fn two_triangles_sharing_a_vertex_stay_apart() {
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], 5);
        let cover = k_clique_percolation(&g, 3).unwrap();
        assert_eq!(cover.communities, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(cover.membership[2], 2);
    }

    #[test]
    fn k4_percolation_ignores_lone_triangles() {
        let g = graph_of(
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6), (6, 4)],
            7,
        );
        let k3 = k_clique_percolation(&g, 3).unwrap();
        let k4 = k_clique_percolation(&g, 4).unwrap();
        assert_eq!(k3.community_count(), 2);
        assert_eq!(k4.communities, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn every_community_has_at_least_k_vertices() {
        let g = graph_of(
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (5, 6)],
            8,
        );
        for k in 3..5 {
            let cover = k_clique_percolation(&g, k).unwrap();
            assert!(cover.communities.iter().all(|c| c.len() >= k));
        }
    }
}
