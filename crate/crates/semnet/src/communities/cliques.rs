//! Maximal-clique enumeration (Bron-Kerbosch with pivoting, degeneracy
//! ordering at the top level) on the undirected simple view.

use std::collections::BTreeMap;

use crate::closure::Index;
use crate::graph::{InducedGraph, UndirectedAdjacency};

/// All maximal cliques of a graph. Isolated vertices are maximal cliques of
/// size one; the reported distribution starts at size three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    /// Each clique sorted ascending; the list sorted lexicographically.
    pub cliques: Vec<Vec<Index>>,
}

impl CliqueSet {
    pub fn size_distribution(&self) -> BTreeMap<usize, u64> {
        let mut dist = BTreeMap::new();
        for c in &self.cliques {
            *dist.entry(c.len()).or_insert(0u64) += 1;
        }
        dist
    }

    /// Cliques of at least `min` vertices.
    pub fn at_least(&self, min: usize) -> impl Iterator<Item = &Vec<Index>> {
        self.cliques.iter().filter(move |c| c.len() >= min)
    }

    /// Number of maximal cliques of size >= 3, the headline count.
    pub fn count_at_least_3(&self) -> u64 {
        self.at_least(3).count() as u64
    }

    pub fn largest(&self) -> Option<&Vec<Index>> {
        self.cliques.iter().max_by_key(|c| c.len())
    }
}

/// Smallest-last vertex ordering; cheap and effective for sparse graphs.
fn degeneracy_order(adj: &UndirectedAdjacency) -> Vec<Index> {
    let n = adj.vertex_count();
    let mut degree: Vec<u32> = (0..n).map(|v| adj.degree(v as Index) as u32).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<Index>> = vec![Vec::new(); max_degree + 1];
    for v in 0..n {
        buckets[degree[v] as usize].push(v as Index);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut floor = 0usize;
    while order.len() < n {
        while floor < buckets.len() && buckets[floor].is_empty() {
            floor += 1;
        }
        let Some(v) = buckets[floor].pop() else { continue };
        if removed[v as usize] {
            continue;
        }
        if (degree[v as usize] as usize) != floor {
            // Stale bucket entry; reinsert at the true degree.
            buckets[degree[v as usize] as usize].push(v);
            floor = floor.min(degree[v as usize] as usize);
            continue;
        }
        removed[v as usize] = true;
        order.push(v);
        for &u in adj.neighbors(v) {
            if !removed[u as usize] {
                degree[u as usize] -= 1;
                buckets[degree[u as usize] as usize].push(u);
                floor = floor.min(degree[u as usize] as usize);
            }
        }
    }
    order
}

struct Enumerator<'a> {
    adj: &'a UndirectedAdjacency,
    out: Vec<Vec<Index>>,
    current: Vec<Index>,
}

impl Enumerator<'_> {
    /// Bron-Kerbosch on candidate set P and exclusion set X, both sorted.
    fn expand(&mut self, p: Vec<Index>, x: Vec<Index>) {
        if p.is_empty() && x.is_empty() {
            self.out.push(self.current.clone());
            return;
        }
        // Pivot: the vertex of P union X with the most neighbors in P.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| {
                (
                    intersect(&p, self.adj.neighbors(u)).len(),
                    std::cmp::Reverse(u),
                )
            })
            .expect("P or X nonempty");
        let pivot_neighbors = self.adj.neighbors(pivot);
        let candidates: Vec<Index> = p
            .iter()
            .copied()
            .filter(|v| pivot_neighbors.binary_search(v).is_err())
            .collect();

        let mut p = p;
        let mut x = x;
        for v in candidates {
            let nv = self.adj.neighbors(v);
            self.current.push(v);
            self.expand(intersect(&p, nv), intersect(&x, nv));
            self.current.pop();
            let pos = p.binary_search(&v).expect("v still in P");
            p.remove(pos);
            let pos = x.binary_search(&v).unwrap_err();
            x.insert(pos, v);
        }
    }
}

fn intersect(sorted: &[Index], other: &[Index]) -> Vec<Index> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < sorted.len() && j < other.len() {
        match sorted[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(sorted[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Enumerates every maximal clique. Self-loops are ignored; they do not
/// affect the clique structure.
pub fn maximal_cliques(g: &InducedGraph) -> CliqueSet {
    let adj = g.undirected_adjacency();
    maximal_cliques_of(&adj)
}

pub(crate) fn maximal_cliques_of(adj: &UndirectedAdjacency) -> CliqueSet {
    let order = degeneracy_order(adj);
    let mut rank = vec![0u32; adj.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    let mut e = Enumerator {
        adj,
        out: Vec::new(),
        current: Vec::new(),
    };
    for &v in &order {
        let nv = adj.neighbors(v);
        let p: Vec<Index> = nv
            .iter()
            .copied()
            .filter(|&u| rank[u as usize] > rank[v as usize])
            .collect();
        let x: Vec<Index> = nv
            .iter()
            .copied()
            .filter(|&u| rank[u as usize] < rank[v as usize])
            .collect();
        e.current.push(v);
        e.expand(p, x);
        e.current.pop();
    }
    let mut cliques = e.out;
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort_unstable();
    CliqueSet { cliques }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::graph_of;

    #[test]
    fn k4_is_one_maximal_clique() {
        let g = graph_of(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        let cs = maximal_cliques(&g);
        assert_eq!(cs.cliques, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn triangle_with_tail() {
        let g = graph_of(&[(0, 1), (1, 2), (2, 0), (2, 3)], 4);
        let cs = maximal_cliques(&g);
        assert_eq!(cs.cliques, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(cs.count_at_least_3(), 1);
    }

    #[test]
    fn isolated_vertices_are_singleton_cliques() {
        let g = graph_of(&[(0, 1)], 3);
        let cs = maximal_cliques(&g);
        assert_eq!(cs.cliques, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn self_loops_do_not_affect_cliques() {
        let plain = graph_of(&[(0, 1), (1, 2), (2, 0)], 3);
        let loopy = graph_of(&[(0, 1), (1, 2), (2, 0), (1, 1)], 3);
        assert_eq!(maximal_cliques(&plain), maximal_cliques(&loopy));
    }

    #[test]
    fn every_clique_is_maximal_and_pairwise_adjacent() {
        let g = graph_of(
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4), (3, 1)],
            6,
        );
        let adj = g.undirected_adjacency();
        let cs = maximal_cliques(&g);
        for c in &cs.cliques {
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    assert!(adj.are_adjacent(u, v), "{c:?} not a clique");
                }
            }
            // No vertex extends the whole clique.
            for w in 0..g.vertex_count as Index {
                if c.contains(&w) {
                    continue;
                }
                assert!(
                    !c.iter().all(|&u| adj.are_adjacent(u, w)),
                    "{c:?} extensible by {w}"
                );
            }
        }
    }
}
