//! Shared helpers for unit tests: tiny hand-built closures and graphs.

use crate::closure::{
    ClosedAssertion, ClosedConcept, ClosedFrequency, ClosedKb, ClosedRelation, Index, Ref,
};
use crate::graph::{induce, GraphSpec, InducedGraph};

/// A bare closure with `n` input concepts, one relation, and two
/// frequencies: value 5 at index 0, value -5 at index 1.
pub(crate) fn bare_kb(n: usize) -> ClosedKb {
    let mut kb = ClosedKb {
        input_concepts: n,
        ..ClosedKb::default()
    };
    kb.concepts = (0..n)
        .map(|i| ClosedConcept { id: i as i64, text: format!("c{i}") })
        .collect();
    kb.relations.push(ClosedRelation {
        id: 1,
        name: "IsA".into(),
        description: String::new(),
    });
    kb.frequencies.push(ClosedFrequency { id: 1, value: 5, text: String::new() });
    kb.frequencies.push(ClosedFrequency { id: 25, value: -5, text: "not".into() });
    kb
}

pub(crate) fn push_assertion(kb: &mut ClosedKb, c1: Index, c2: Index, score: i64, freq: Index) {
    let id = kb.assertions.len() as i64 + 1;
    kb.assertions.push(ClosedAssertion {
        id,
        concept1: c1,
        concept2: c2,
        relation: 0,
        frequency: freq,
        frame: None,
        surface1: None,
        surface2: None,
        raw: Ref::Null,
        score,
        frame_indicator: 4,
        surface_indicator: 15,
        raw_indicator: 36,
        score_indicator: 1,
    });
}

/// Positive-score graph over `n` vertices with the given directed edges.
pub(crate) fn graph_of(edges: &[(u32, u32)], n: usize) -> InducedGraph {
    let mut kb = bare_kb(n);
    for &(u, v) in edges {
        push_assertion(&mut kb, u, v, 1, 0);
    }
    induce(&kb, &GraphSpec::default()).unwrap()
}
