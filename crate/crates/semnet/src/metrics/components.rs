//! Weakly and strongly connected components of the induced directed graph.
//!
//! Self-loops never affect connectivity and are ignored. Isolated vertices
//! form singleton components, so component sizes always sum to the vertex
//! count.

use std::collections::BTreeMap;

use crate::graph::InducedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    /// Dense component ID per vertex, numbered by first appearance in
    /// vertex-index order.
    pub component: Vec<u32>,
    pub component_count: usize,
}

impl ComponentLabels {
    pub fn sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.component_count];
        for &c in &self.component {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Map from component size to the number of components of that size.
    pub fn size_distribution(&self) -> BTreeMap<u64, u64> {
        let mut dist = BTreeMap::new();
        for s in self.sizes() {
            *dist.entry(s).or_insert(0) += 1;
        }
        dist
    }

    pub fn largest_size(&self) -> u64 {
        self.sizes().into_iter().max().unwrap_or(0)
    }
}

/// Renumbers arbitrary labels densely, by first appearance over vertex 0..n.
fn densify(labels: &[u32]) -> ComponentLabels {
    let mut remap: Vec<u32> = vec![u32::MAX; labels.len()];
    let mut next = 0u32;
    let component = labels
        .iter()
        .map(|&l| {
            if remap[l as usize] == u32::MAX {
                remap[l as usize] = next;
                next += 1;
            }
            remap[l as usize]
        })
        .collect();
    ComponentLabels {
        component,
        component_count: next as usize,
    }
}

/// Components of the underlying undirected graph.
pub fn weak_components(g: &InducedGraph) -> ComponentLabels {
    let n = g.vertex_count;
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for ((u, v), _) in &g.directed {
        let (ru, rv) = (find(&mut parent, *u), find(&mut parent, *v));
        if ru != rv {
            parent[ru.max(rv) as usize] = ru.min(rv);
        }
    }
    let roots: Vec<u32> = (0..n as u32).map(|v| find(&mut parent, v)).collect();
    densify(&roots)
}

/// Maximal sets of mutually reachable vertices (iterative Tarjan).
pub fn strong_components(g: &InducedGraph) -> ComponentLabels {
    let n = g.vertex_count;
    let adj = g.directed_adjacency();

    const UNVISITED: u32 = u32::MAX;
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut label = vec![0u32; n];
    let mut next_index = 0u32;
    let mut next_label = 0u32;

    // Explicit DFS frame: (vertex, neighbor cursor).
    let mut frames: Vec<(u32, usize)> = Vec::new();
    for start in 0..n as u32 {
        if index[start as usize] != UNVISITED {
            continue;
        }
        frames.push((start, 0));
        index[start as usize] = next_index;
        lowlink[start as usize] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start as usize] = true;

        while let Some(&mut (v, ref mut cursor)) = frames.last_mut() {
            let neighbors = adj.out.neighbors(v);
            if *cursor < neighbors.len() {
                let w = neighbors[*cursor];
                *cursor += 1;
                if w == v {
                    continue;
                }
                if index[w as usize] == UNVISITED {
                    index[w as usize] = next_index;
                    lowlink[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    frames.push((w, 0));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    lowlink[parent as usize] = lowlink[parent as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    loop {
                        let w = stack.pop().expect("root still on stack");
                        on_stack[w as usize] = false;
                        label[w as usize] = next_label;
                        if w == v {
                            break;
                        }
                    }
                    next_label += 1;
                }
            }
        }
    }
    densify(&label)
}
