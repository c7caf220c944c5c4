//! Independent oracles and random-instance generators shared by the
//! integration suites. Everything here recomputes results from first
//! principles (brute force, exhaustive enumeration, textbook algorithms)
//! without touching the library's own implementations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    semnet::rng::stream_rng(seed, 0)
}

/// Random directed edge list over `n` vertices with edge probability `p`
/// (self-loops excluded).
pub fn random_digraph(n: u32, p: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random undirected edge set as (min, max) pairs.
pub fn random_undirected(n: u32, p: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn adjacency_sets(n: u32, edges: &[(u32, u32)]) -> Vec<HashSet<u32>> {
    let mut adj = vec![HashSet::new(); n as usize];
    for &(u, v) in edges {
        if u != v {
            adj[u as usize].insert(v);
            adj[v as usize].insert(u);
        }
    }
    adj
}

/// Every maximal clique by subset enumeration; n <= 15 or so.
pub fn brute_force_maximal_cliques(n: u32, edges: &[(u32, u32)]) -> BTreeSet<Vec<u32>> {
    let adj = adjacency_sets(n, edges);
    let is_clique = |members: &[u32]| {
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| adj[u as usize].contains(&v)))
    };
    let mut cliques = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<u32> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if !is_clique(&members) {
            continue;
        }
        let extensible = (0..n).any(|w| {
            mask & (1 << w) == 0 && members.iter().all(|&u| adj[w as usize].contains(&u))
        });
        if !extensible {
            cliques.insert(members);
        }
    }
    cliques
}

/// Coreness by repeatedly deleting a minimum-degree vertex from copied
/// adjacency sets.
pub fn peel_coreness_oracle(n: u32, edges: &[(u32, u32)]) -> Vec<u32> {
    let mut adj = adjacency_sets(n, edges);
    let mut alive: BTreeSet<u32> = (0..n).collect();
    let mut core = vec![0u32; n as usize];
    let mut level = 0u32;
    while let Some(&v) = alive.iter().min_by_key(|&&v| (adj[v as usize].len(), v)) {
        level = level.max(adj[v as usize].len() as u32);
        core[v as usize] = level;
        for u in adj[v as usize].clone() {
            adj[u as usize].remove(&v);
        }
        adj[v as usize].clear();
        alive.remove(&v);
    }
    core
}

/// Strongly connected components by Kosaraju's two-pass algorithm, as a
/// canonical set of sorted vertex sets.
pub fn kosaraju_components(n: u32, edges: &[(u32, u32)]) -> BTreeSet<Vec<u32>> {
    let mut out = vec![Vec::new(); n as usize];
    let mut rev = vec![Vec::new(); n as usize];
    for &(u, v) in edges {
        out[u as usize].push(v);
        rev[v as usize].push(u);
    }
    let mut visited = vec![false; n as usize];
    let mut order = Vec::new();
    for start in 0..n {
        if visited[start as usize] {
            continue;
        }
        // Iterative post-order.
        let mut stack = vec![(start, 0usize)];
        visited[start as usize] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out[v as usize].len() {
                let w = out[v as usize][*i];
                *i += 1;
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut component = vec![u32::MAX; n as usize];
    let mut components = BTreeSet::new();
    for &start in order.iter().rev() {
        if component[start as usize] != u32::MAX {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        component[start as usize] = start;
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &w in &rev[v as usize] {
                if component[w as usize] == u32::MAX {
                    component[w as usize] = start;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.insert(members);
    }
    components
}

/// All-pairs shortest path lengths by Floyd-Warshall; returns the histogram
/// over ordered (directed) or unordered (undirected) pairs plus the
/// unreachable count.
pub fn floyd_warshall_histogram(
    n: u32,
    edges: &[(u32, u32)],
    directed: bool,
) -> (BTreeMap<u32, u64>, u64) {
    const INF: u32 = u32::MAX / 4;
    let n = n as usize;
    let mut dist = vec![INF; n * n];
    for v in 0..n {
        dist[v * n + v] = 0;
    }
    for &(u, v) in edges {
        let (u, v) = (u as usize, v as usize);
        if u == v {
            continue;
        }
        dist[u * n + v] = 1;
        if !directed {
            dist[v * n + u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let candidate = dik + dist[k * n + j];
                if candidate < dist[i * n + j] {
                    dist[i * n + j] = candidate;
                }
            }
        }
    }
    let mut histogram = BTreeMap::new();
    let mut unreachable = 0u64;
    for i in 0..n {
        let range = if directed { 0..n } else { i + 1..n };
        for j in range {
            if i == j {
                continue;
            }
            let d = dist[i * n + j];
            if d == INF {
                unreachable += 1;
            } else {
                *histogram.entry(d).or_insert(0u64) += 1;
            }
        }
    }
    (histogram, unreachable)
}

/// k-clique percolation from first principles: enumerate every k-subset
/// that is a clique, join those sharing exactly k-1 vertices, and return
/// the member unions. n <= 12.
pub fn percolation_oracle(n: u32, edges: &[(u32, u32)], k: usize) -> BTreeSet<Vec<u32>> {
    let adj = adjacency_sets(n, edges);
    let mut k_cliques: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let members: Vec<u32> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let clique = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| adj[u as usize].contains(&v)));
        if clique {
            k_cliques.push(members);
        }
    }
    // Union-find over the k-clique graph.
    let mut parent: Vec<usize> = (0..k_cliques.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k_cliques.len() {
        for j in (i + 1)..k_cliques.len() {
            let shared = k_cliques[i]
                .iter()
                .filter(|v| k_cliques[j].contains(v))
                .count();
            if shared == k - 1 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut grouped: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for (i, clique) in k_cliques.iter().enumerate() {
        let root = find(&mut parent, i);
        grouped.entry(root).or_default().extend(clique.iter().copied());
    }
    grouped
        .into_values()
        .map(|set| set.into_iter().collect())
        .collect()
}

/// A typed positive-score edge for the rule-mining oracle.
#[derive(Debug, Clone, Copy)]
pub struct TypedAssertion {
    pub concept1: u32,
    pub relation: u32,
    pub concept2: u32,
    pub score: i64,
}

/// Support and successes of one rule by a triple-nested loop over concepts.
pub fn cubic_rule_oracle(
    concepts: u32,
    assertions: &[TypedAssertion],
    rule: (u32, u32, u32),
) -> (u64, u64) {
    let present = |a: u32, r: u32, b: u32| {
        assertions
            .iter()
            .any(|t| t.score > 0 && t.concept1 == a && t.relation == r && t.concept2 == b)
    };
    let (x, y, z) = rule;
    let mut support = 0u64;
    let mut successes = 0u64;
    for a in 0..concepts {
        for b in 0..concepts {
            if !present(a, x, b) {
                continue;
            }
            for c in 0..concepts {
                if present(b, y, c) {
                    support += 1;
                    successes += u64::from(present(a, z, c));
                }
            }
        }
    }
    (support, successes)
}

/// Direct double-loop modularity evaluation.
pub fn modularity_oracle(adj: &semnet::graph::UndirectedAdjacency, labels: &[u32]) -> f64 {
    let n = adj.vertex_count() as u32;
    let m2 = 2.0 * adj.edge_count() as f64;
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i as usize] != labels[j as usize] {
                continue;
            }
            let a = if i != j && adj.are_adjacent(i, j) { 1.0 } else { 0.0 };
            q += a - (adj.degree(i) * adj.degree(j)) as f64 / m2;
        }
    }
    q / m2
}
