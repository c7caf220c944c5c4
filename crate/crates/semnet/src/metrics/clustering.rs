//! Global transitivity and average local clustering, on the undirected
//! simple view with self-loops ignored.

use rayon::prelude::*;

use crate::closure::Index;
use crate::error::{Error, Result};
use crate::graph::{InducedGraph, UndirectedAdjacency};

/// How vertices with fewer than two neighbors enter the average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroDegreeMode {
    /// Leave them out of the average.
    Nan,
    /// Score them zero; the average then runs over every vertex.
    Zero,
}

fn intersection_size(a: &[Index], b: &[Index]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// t(v), the number of triangles through each vertex. The sum over the
/// neighbors u of |N(v) ∩ N(u)| counts each triangle at v twice.
fn triangles_per_vertex(adj: &UndirectedAdjacency) -> Vec<u64> {
    (0..adj.vertex_count() as Index)
        .into_par_iter()
        .map(|v| {
            let nv = adj.neighbors(v);
            let twice: u64 = nv.iter().map(|&u| intersection_size(nv, adj.neighbors(u))).sum();
            twice / 2
        })
        .collect()
}

/// Ratio of triangles to connected triples: 3T / sum of C(deg, 2).
pub fn transitivity_global(g: &InducedGraph) -> f64 {
    let adj = g.undirected_adjacency();
    let triangles = triangles_per_vertex(&adj);
    // Each triangle is counted at its three corners.
    let triangles_x3: u64 = triangles.iter().sum();
    let triples: u64 = (0..adj.vertex_count() as Index)
        .map(|v| {
            let d = adj.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    if triples == 0 {
        return 0.0;
    }
    triangles_x3 as f64 / triples as f64
}

/// Mean of the local clustering coefficients t(v) / C(deg(v), 2).
pub fn clustering_avg(g: &InducedGraph, mode: ZeroDegreeMode) -> Result<f64> {
    let adj = g.undirected_adjacency();
    let triangles = triangles_per_vertex(&adj);
    let n = adj.vertex_count();
    let mut sum = 0.0;
    let mut qualifying = 0u64;
    for v in 0..n as Index {
        let d = adj.degree(v) as u64;
        if d >= 2 {
            qualifying += 1;
            sum += triangles[v as usize] as f64 / (d * (d - 1) / 2) as f64;
        }
    }
    match mode {
        ZeroDegreeMode::Nan => {
            if qualifying == 0 {
                Err(Error::Undefined(
                    "no vertex has two or more neighbors".into(),
                ))
            } else {
                Ok(sum / qualifying as f64)
            }
        }
        ZeroDegreeMode::Zero => {
            if n == 0 {
                Err(Error::Undefined("empty graph".into()))
            } else {
                Ok(sum / n as f64)
            }
        }
    }
}
