//! Per-vertex degrees, degree histograms, and average degrees.

use std::collections::BTreeMap;

use crate::closure::Index;
use crate::error::{Error, Result};
use crate::graph::InducedGraph;

/// Which rendering of the induced graph degrees are taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphForm {
    Multigraph,
    Directed,
    Undirected,
}

#[derive(Debug, Clone)]
pub struct DegreeStats {
    pub form: GraphForm,
    pub in_degrees: Vec<u32>,
    pub out_degrees: Vec<u32>,
    pub edge_count: u64,
}

impl DegreeStats {
    /// Total degree; a self-loop contributes 2.
    pub fn total(&self, v: Index) -> u32 {
        self.in_degrees[v as usize] + self.out_degrees[v as usize]
    }

    pub fn total_degrees(&self) -> Vec<u32> {
        (0..self.in_degrees.len() as Index).map(|v| self.total(v)).collect()
    }

    /// Histogram of total degrees; sums to the vertex count.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        for v in 0..self.in_degrees.len() as Index {
            *hist.entry(self.total(v)).or_insert(0u64) += 1;
        }
        hist
    }

    /// The `k` vertices of highest total degree; ties broken by lower index.
    pub fn top_k(&self, k: usize) -> Vec<(Index, u32)> {
        let mut all: Vec<(Index, u32)> =
            (0..self.in_degrees.len() as Index).map(|v| (v, self.total(v))).collect();
        all.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        all.truncate(k);
        all
    }
}

/// In/out/total degrees of every vertex in the chosen form.
pub fn degree_stats(g: &InducedGraph, form: GraphForm) -> DegreeStats {
    let n = g.vertex_count;
    let mut in_degrees = vec![0u32; n];
    let mut out_degrees = vec![0u32; n];
    let mut edge_count = 0u64;
    match form {
        GraphForm::Multigraph => {
            for &(u, v, _) in &g.multi {
                out_degrees[u as usize] += 1;
                in_degrees[v as usize] += 1;
                edge_count += 1;
            }
        }
        GraphForm::Directed => {
            for ((u, v), _) in &g.directed {
                out_degrees[*u as usize] += 1;
                in_degrees[*v as usize] += 1;
                edge_count += 1;
            }
        }
        GraphForm::Undirected => {
            for ((u, v), _) in &g.undirected {
                out_degrees[*u as usize] += 1;
                in_degrees[*v as usize] += 1;
                edge_count += 1;
            }
        }
    }
    DegreeStats { form, in_degrees, out_degrees, edge_count }
}

/// 2|E| / |V|, over the whole vertex universe or the non-isolated part.
pub fn average_degree(g: &InducedGraph, form: GraphForm, exclude_isolated: bool) -> Result<f64> {
    let edges = match form {
        GraphForm::Multigraph => g.multi_edge_count(),
        GraphForm::Directed => g.directed_edge_count(),
        GraphForm::Undirected => g.undirected_edge_count(),
    } as f64;
    let vertices = if exclude_isolated {
        g.vertex_count - g.isolated_vertex_count()
    } else {
        g.vertex_count
    };
    if vertices == 0 {
        return Err(Error::Undefined("average degree of an empty graph".into()));
    }
    Ok(2.0 * edges / vertices as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{induce, GraphSpec};
    use crate::testkit::{bare_kb, push_assertion};

    #[test]
    fn single_vertex_histogram_is_degree_zero() {
        let kb = bare_kb(1);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        let stats = degree_stats(&g, GraphForm::Multigraph);
        assert_eq!(stats.histogram(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn triangle_average_degree_is_two() {
        let mut kb = bare_kb(3);
        push_assertion(&mut kb, 0, 1, 1, 0);
        push_assertion(&mut kb, 1, 2, 1, 0);
        push_assertion(&mut kb, 2, 0, 1, 0);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        for form in [GraphForm::Multigraph, GraphForm::Directed, GraphForm::Undirected] {
            assert_eq!(average_degree(&g, form, false).unwrap(), 2.0);
        }
    }

    #[test]
    fn self_loop_counts_two_toward_total_degree() {
        let mut kb = bare_kb(2);
        push_assertion(&mut kb, 0, 0, 1, 0);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        let stats = degree_stats(&g, GraphForm::Multigraph);
        assert_eq!(stats.total(0), 2);
        assert_eq!(stats.total(1), 0);
    }

    #[test]
    fn average_degree_matches_direct_formula() {
        let mut kb = bare_kb(10);
        let edges = [(0, 1), (0, 2), (3, 4), (4, 5), (5, 3), (0, 1)];
        for (u, v) in edges {
            push_assertion(&mut kb, u, v, 1, 0);
        }
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        let avg = average_degree(&g, GraphForm::Multigraph, false).unwrap();
        assert!((avg - 2.0 * edges.len() as f64 / 10.0).abs() < 1e-12);
        let non_isolated = g.vertex_count - g.isolated_vertex_count();
        let avg_ni = average_degree(&g, GraphForm::Multigraph, true).unwrap();
        assert!((avg_ni - 2.0 * edges.len() as f64 / non_isolated as f64).abs() < 1e-12);
    }

    #[test]
    fn empty_universe_average_degree_is_undefined() {
        let kb = bare_kb(0);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        assert!(average_degree(&g, GraphForm::Multigraph, false).is_err());
    }

    #[test]
    fn top_k_breaks_ties_by_index() {
        let mut kb = bare_kb(4);
        push_assertion(&mut kb, 2, 3, 1, 0);
        push_assertion(&mut kb, 0, 1, 1, 0);
        let g = induce(&kb, &GraphSpec::default()).unwrap();
        let stats = degree_stats(&g, GraphForm::Multigraph);
        assert_eq!(stats.top_k(2), vec![(0, 1), (1, 1)]);
    }
}
