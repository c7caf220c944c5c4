//! Filtered graph variants induced from a closure.
//!
//! The vertex universe is always the set of concepts appearing in the
//! assertions (indices `0..kb.input_concepts`), independent of the filter,
//! so isolated-vertex counts are well-defined. Each passing assertion
//! contributes one multigraph edge; the directed and undirected graphs
//! collapse parallel edges, keeping the justifying assertion indices as an
//! edge label list.

use std::collections::BTreeSet;

use crate::closure::{ClosedKb, Index};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoreFilter {
    All,
    #[default]
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Loops {
    #[default]
    Keep,
    Drop,
}

/// Sign class of the frequency value. `Negative` admits non-positive values
/// (a frequency value of zero never occurs in practice and counts as
/// non-positive, mirroring the score sign convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarity {
    Negative,
    Positive,
    #[default]
    Both,
}

/// Filter parameters selecting which assertions become edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub score: ScoreFilter,
    pub loops: Loops,
    pub polarity: Polarity,
    /// Inclusive frequency-value interval, within [-10, 10].
    pub frequency_range: (i64, i64),
    /// Relation indices to admit; `None` admits all.
    pub relations: Option<BTreeSet<Index>>,
}

impl Default for GraphSpec {
    fn default() -> Self {
        GraphSpec {
            score: ScoreFilter::Positive,
            loops: Loops::Keep,
            polarity: Polarity::Both,
            frequency_range: (-10, 10),
            relations: None,
        }
    }
}

impl GraphSpec {
    /// The unfiltered graph: every assertion is an edge.
    pub fn unfiltered() -> GraphSpec {
        GraphSpec {
            score: ScoreFilter::All,
            ..GraphSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.frequency_range;
        if lo > hi {
            return Err(Error::Parameter(format!(
                "empty frequency range {lo}:{hi}"
            )));
        }
        if lo < -10 || hi > 10 {
            return Err(Error::Parameter(format!(
                "frequency range {lo}:{hi} exceeds [-10, 10]"
            )));
        }
        Ok(())
    }

    fn score_passes(&self, score: i64) -> bool {
        match self.score {
            ScoreFilter::All => true,
            ScoreFilter::Positive => score > 0,
        }
    }

    fn frequency_passes(&self, value: i64) -> bool {
        let (lo, hi) = self.frequency_range;
        if value < lo || value > hi {
            return false;
        }
        match self.polarity {
            Polarity::Negative => value <= 0,
            Polarity::Positive => value > 0,
            Polarity::Both => true,
        }
    }

    /// Whether the assertion at `index` of `kb` becomes an edge.
    pub fn admits(&self, kb: &ClosedKb, index: usize) -> bool {
        let a = &kb.assertions[index];
        self.score_passes(a.score)
            && self.frequency_passes(kb.frequency_value(a.frequency))
            && self.relations.as_ref().is_none_or(|set| set.contains(&a.relation))
            && (matches!(self.loops, Loops::Keep) || a.concept1 != a.concept2)
    }
}

/// One collapsed edge with its justifying assertion indices (ascending).
pub type LabeledEdge = ((Index, Index), Vec<u32>);

/// A graph induced by a [`GraphSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    pub spec: GraphSpec,
    /// Number of vertices; equals the closure's input-concept count.
    pub vertex_count: usize,
    /// One entry per passing assertion, in assertion order.
    pub multi: Vec<(Index, Index, u32)>,
    /// Collapsed directed edges, sorted by endpoint pair.
    pub directed: Vec<LabeledEdge>,
    /// Collapsed undirected edges (smaller index first), sorted.
    pub undirected: Vec<LabeledEdge>,
}

/// Builds the induced graph for `spec`.
pub fn induce(kb: &ClosedKb, spec: &GraphSpec) -> Result<InducedGraph> {
    spec.validate()?;
    let multi: Vec<(Index, Index, u32)> = (0..kb.assertions.len())
        .filter(|&i| spec.admits(kb, i))
        .map(|i| {
            let a = &kb.assertions[i];
            (a.concept1, a.concept2, i as u32)
        })
        .collect();

    let directed = collapse(multi.iter().map(|&(u, v, a)| ((u, v), a)));
    let undirected = collapse(multi.iter().map(|&(u, v, a)| ((u.min(v), u.max(v)), a)));

    Ok(InducedGraph {
        spec: spec.clone(),
        vertex_count: kb.input_concepts,
        multi,
        directed,
        undirected,
    })
}

fn collapse(edges: impl Iterator<Item = ((Index, Index), u32)>) -> Vec<LabeledEdge> {
    let mut pairs: Vec<((Index, Index), u32)> = edges.collect();
    pairs.sort_unstable();
    let mut out: Vec<LabeledEdge> = Vec::new();
    for (key, a) in pairs {
        match out.last_mut() {
            Some((k, list)) if *k == key => list.push(a),
            _ => out.push((key, vec![a])),
        }
    }
    out
}

impl InducedGraph {
    /// Builds a graph directly from a directed edge list, bypassing the
    /// closure. Edge i carries label i.
    pub fn from_edges(vertex_count: usize, edges: &[(Index, Index)]) -> InducedGraph {
        let multi: Vec<(Index, Index, u32)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (u, v, i as u32))
            .collect();
        let directed = collapse(multi.iter().map(|&(u, v, a)| ((u, v), a)));
        let undirected = collapse(multi.iter().map(|&(u, v, a)| ((u.min(v), u.max(v)), a)));
        InducedGraph {
            spec: GraphSpec::unfiltered(),
            vertex_count,
            multi,
            directed,
            undirected,
        }
    }

    pub fn multi_edge_count(&self) -> usize {
        self.multi.len()
    }

    pub fn directed_edge_count(&self) -> usize {
        self.directed.len()
    }

    pub fn undirected_edge_count(&self) -> usize {
        self.undirected.len()
    }

    /// Vertices with no incident edge (self-loops count as incident).
    pub fn isolated_vertex_count(&self) -> usize {
        self.vertex_count - self.non_isolated().len()
    }

    /// Sorted list of vertices with at least one incident edge.
    pub fn non_isolated(&self) -> Vec<Index> {
        let mut seen = vec![false; self.vertex_count];
        for &(u, v, _) in &self.multi {
            seen[u as usize] = true;
            seen[v as usize] = true;
        }
        (0..self.vertex_count as Index)
            .filter(|&v| seen[v as usize])
            .collect()
    }

    /// Out- and in-adjacency of the collapsed directed graph, neighbor lists
    /// sorted ascending. Self-loops included.
    pub fn directed_adjacency(&self) -> DirectedAdjacency {
        let n = self.vertex_count;
        let mut out_deg = vec![0u32; n];
        let mut in_deg = vec![0u32; n];
        for &((u, v), _) in &self.directed {
            out_deg[u as usize] += 1;
            in_deg[v as usize] += 1;
        }
        let mut out = Csr::with_degrees(&out_deg);
        let mut inc = Csr::with_degrees(&in_deg);
        for &((u, v), _) in &self.directed {
            out.push(u, v);
            inc.push(v, u);
        }
        out.finish();
        inc.finish();
        DirectedAdjacency { out, inc }
    }

    /// Neighbor lists of the collapsed undirected graph with self-loops
    /// removed, plus a per-vertex loop flag. Neighbor lists sorted.
    pub fn undirected_adjacency(&self) -> UndirectedAdjacency {
        let n = self.vertex_count;
        let mut deg = vec![0u32; n];
        let mut has_loop = vec![false; n];
        for &((u, v), _) in &self.undirected {
            if u == v {
                has_loop[u as usize] = true;
            } else {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
        let mut csr = Csr::with_degrees(&deg);
        for &((u, v), _) in &self.undirected {
            if u != v {
                csr.push(u, v);
                csr.push(v, u);
            }
        }
        csr.finish();
        UndirectedAdjacency { csr, has_loop }
    }
}

/// Compressed sparse rows with sorted neighbor lists.
#[derive(Debug, Clone)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<Index>,
    cursor: Vec<usize>,
}

impl Csr {
    fn with_degrees(degrees: &[u32]) -> Csr {
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        let mut total = 0usize;
        offsets.push(0);
        for &d in degrees {
            total += d as usize;
            offsets.push(total);
        }
        Csr {
            cursor: offsets[..degrees.len()].to_vec(),
            targets: vec![0; total],
            offsets,
        }
    }

    fn push(&mut self, from: Index, to: Index) {
        let c = &mut self.cursor[from as usize];
        self.targets[*c] = to;
        *c += 1;
    }

    fn finish(&mut self) {
        for v in 0..self.cursor.len() {
            self.neighbors_mut(v as Index).sort_unstable();
        }
        self.cursor = Vec::new();
    }

    fn neighbors_mut(&mut self, v: Index) -> &mut [Index] {
        let (s, e) = (self.offsets[v as usize], self.offsets[v as usize + 1]);
        &mut self.targets[s..e]
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: Index) -> &[Index] {
        let (s, e) = (self.offsets[v as usize], self.offsets[v as usize + 1]);
        &self.targets[s..e]
    }

    pub fn degree(&self, v: Index) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }
}

#[derive(Debug, Clone)]
pub struct DirectedAdjacency {
    pub out: Csr,
    pub inc: Csr,
}

#[derive(Debug, Clone)]
pub struct UndirectedAdjacency {
    pub csr: Csr,
    pub has_loop: Vec<bool>,
}

impl UndirectedAdjacency {
    /// Builds a simple undirected graph over `n` vertices from an edge list.
    /// Parallel edges collapse; self-loops set the loop flag only.
    pub fn from_edges(n: usize, edges: &[(Index, Index)]) -> UndirectedAdjacency {
        let mut has_loop = vec![false; n];
        let mut pairs: Vec<(Index, Index)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                has_loop[u as usize] = true;
            } else {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut deg = vec![0u32; n];
        for &(u, v) in &pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut csr = Csr::with_degrees(&deg);
        for &(u, v) in &pairs {
            csr.push(u, v);
            csr.push(v, u);
        }
        csr.finish();
        UndirectedAdjacency { csr, has_loop }
    }

    /// The subgraph induced by `vertices` (sorted, distinct), reindexed to
    /// 0..vertices.len().
    pub fn induced_subgraph(&self, vertices: &[Index]) -> UndirectedAdjacency {
        let mut new_id = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            if self.has_loop[v as usize] {
                edges.push((i as Index, i as Index));
            }
            for &u in self.neighbors(v) {
                let nu = new_id[u as usize];
                if nu != u32::MAX && nu > i as u32 {
                    edges.push((i as Index, nu));
                }
            }
        }
        UndirectedAdjacency::from_edges(vertices.len(), &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.csr.vertex_count()
    }

    pub fn neighbors(&self, v: Index) -> &[Index] {
        self.csr.neighbors(v)
    }

    /// Number of connected components (isolated vertices included).
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..n as Index {
            if seen[start as usize] {
                continue;
            }
            components += 1;
            seen[start as usize] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
        }
        components
    }

    /// Loop-free degree: the number of distinct neighbors.
    pub fn degree(&self, v: Index) -> usize {
        self.csr.degree(v)
    }

    /// Simple (loop-free) edge count.
    pub fn edge_count(&self) -> usize {
        self.csr.targets.len() / 2
    }

    pub fn are_adjacent(&self, u: Index, v: Index) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }
}

/// Per-relation decomposition row: how many assertions pass, how many are
/// self-loops, each split by polarity (non-positive / positive frequency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecomposition {
    pub relation: Index,
    pub edges: u64,
    pub edges_negative: u64,
    pub edges_positive: u64,
    pub self_loops: u64,
    pub self_loops_negative: u64,
    pub self_loops_positive: u64,
}

/// Decomposes the assertions by relation under a score filter. Rows are
/// ordered by relation index; every relation of the closure gets a row.
pub fn decompose_by_relation(kb: &ClosedKb, score: ScoreFilter) -> Vec<RelationDecomposition> {
    let mut rows: Vec<RelationDecomposition> = (0..kb.relations.len())
        .map(|r| RelationDecomposition {
            relation: r as Index,
            edges: 0,
            edges_negative: 0,
            edges_positive: 0,
            self_loops: 0,
            self_loops_negative: 0,
            self_loops_positive: 0,
        })
        .collect();
    for a in &kb.assertions {
        if matches!(score, ScoreFilter::Positive) && a.score <= 0 {
            continue;
        }
        let row = &mut rows[a.relation as usize];
        let positive = kb.frequency_value(a.frequency) > 0;
        row.edges += 1;
        *(if positive { &mut row.edges_positive } else { &mut row.edges_negative }) += 1;
        if a.concept1 == a.concept2 {
            row.self_loops += 1;
            *(if positive {
                &mut row.self_loops_positive
            } else {
                &mut row.self_loops_negative
            }) += 1;
        }
    }
    rows
}

/// Edge counts of one induced subgraph, with and without self-loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyRangeCounts {
    pub range: (i64, i64),
    pub multi: u64,
    pub multi_no_loops: u64,
    pub directed: u64,
    pub directed_no_loops: u64,
    pub undirected: u64,
    pub undirected_no_loops: u64,
}

/// Edge counts for each frequency-value range, under the positive-score
/// filter. Counts widen monotonically with the range.
pub fn edges_by_frequency_range(kb: &ClosedKb, ranges: &[(i64, i64)]) -> Result<Vec<FrequencyRangeCounts>> {
    let mut out = Vec::with_capacity(ranges.len());
    for &range in ranges {
        let spec = GraphSpec {
            score: ScoreFilter::Positive,
            loops: Loops::Keep,
            polarity: Polarity::Both,
            frequency_range: range,
            relations: None,
        };
        let g = induce(kb, &spec)?;
        let loops_multi = g.multi.iter().filter(|&&(u, v, _)| u == v).count() as u64;
        let loops_collapsed = g.directed.iter().filter(|((u, v), _)| u == v).count() as u64;
        out.push(FrequencyRangeCounts {
            range,
            multi: g.multi_edge_count() as u64,
            multi_no_loops: g.multi_edge_count() as u64 - loops_multi,
            directed: g.directed_edge_count() as u64,
            directed_no_loops: g.directed_edge_count() as u64 - loops_collapsed,
            undirected: g.undirected_edge_count() as u64,
            undirected_no_loops: g.undirected_edge_count() as u64 - loops_collapsed,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::testkit::{bare_kb, push_assertion};

    #[test]
    fn spec_matching_nothing_leaves_all_isolated() {
        let mut kb = bare_kb(5);
        push_assertion(&mut kb, 0, 1, 1, 0);
        let spec = GraphSpec {
            relations: Some(BTreeSet::new()),
            ..GraphSpec::default()
        };
        let g = induce(&kb, &spec).unwrap();
        assert_eq!(g.multi_edge_count(), 0);
        assert_eq!(g.isolated_vertex_count(), 5);
    }

    #[test]
    fn parallel_assertions_collapse_with_labels() {
        let mut kb = bare_kb(3);
        push_assertion(&mut kb, 0, 1, 1, 0);
        push_assertion(&mut kb, 0, 1, 2, 0);
        push_assertion(&mut kb, 1, 0, 3, 0);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        assert_eq!(g.multi_edge_count(), 3);
        assert_eq!(g.directed_edge_count(), 2);
        assert_eq!(g.undirected_edge_count(), 1);
        assert_eq!(g.undirected[0], ((0, 1), vec![0, 1, 2]));
    }

    #[test]
    fn loops_drop_removes_self_edges() {
        let mut kb = bare_kb(2);
        push_assertion(&mut kb, 0, 0, 1, 0);
        push_assertion(&mut kb, 0, 1, 1, 0);
        let keep = induce(&kb, &GraphSpec::default()).unwrap();
        let drop = induce(
            &kb,
            &GraphSpec { loops: Loops::Drop, ..GraphSpec::default() },
        )
        .unwrap();
        assert_eq!(keep.multi_edge_count(), 2);
        assert_eq!(drop.multi_edge_count(), 1);
        assert!(drop.multi.iter().all(|&(u, v, _)| u != v));
    }

    #[test]
    fn polarity_filters_by_frequency_sign() {
        let mut kb = bare_kb(4);
        push_assertion(&mut kb, 0, 1, 1, 0); // positive polarity
        push_assertion(&mut kb, 1, 2, 1, 1); // negative polarity
        let neg = induce(
            &kb,
            &GraphSpec { polarity: Polarity::Negative, ..GraphSpec::default() },
        )
        .unwrap();
        let pos = induce(
            &kb,
            &GraphSpec { polarity: Polarity::Positive, ..GraphSpec::default() },
        )
        .unwrap();
        let both = induce(&kb, &GraphSpec::default()).unwrap();
        assert_eq!(neg.multi_edge_count(), 1);
        assert_eq!(pos.multi_edge_count(), 1);
        assert_eq!(
            neg.multi_edge_count() + pos.multi_edge_count(),
            both.multi_edge_count()
        );
    }

    #[test]
    fn empty_frequency_range_is_rejected() {
        let spec = GraphSpec { frequency_range: (3, 1), ..GraphSpec::default() };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn decomposition_splits_sum_to_counts() {
        let mut kb = bare_kb(4);
        push_assertion(&mut kb, 0, 1, 1, 0);
        push_assertion(&mut kb, 1, 1, 1, 1); // negative self-loop
        push_assertion(&mut kb, 2, 3, -1, 0); // dropped under positive score
        let rows = decompose_by_relation(&kb, ScoreFilter::Positive);
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.edges, 2);
        assert_eq!(r.edges_negative + r.edges_positive, r.edges);
        assert_eq!(r.self_loops, 1);
        assert_eq!(r.self_loops_negative, 1);
        let all = decompose_by_relation(&kb, ScoreFilter::All);
        assert_eq!(all[0].edges, 3);
    }

    #[test]
    fn empty_kb_decomposes_to_zero_rows() {
        let kb = bare_kb(0);
        assert!(decompose_by_relation(&kb, ScoreFilter::All)
            .iter()
            .all(|r| r.edges == 0));
    }

    #[test]
    fn frequency_range_counts_widen_monotonically() {
        let mut kb = bare_kb(6);
        push_assertion(&mut kb, 0, 1, 1, 0);
        push_assertion(&mut kb, 1, 2, 1, 0);
        push_assertion(&mut kb, 2, 2, 1, 1);
        let ranges = [(5, 5), (0, 10), (-10, 10)];
        let counts = edges_by_frequency_range(&kb, &ranges).unwrap();
        assert_eq!(counts[0].multi, 2);
        assert_eq!(counts[1].multi, 2);
        assert_eq!(counts[2].multi, 3);
        assert_eq!(counts[2].multi_no_loops, 2);
        for w in counts.windows(2) {
            assert!(w[0].multi <= w[1].multi);
        }
    }
}
