//! Compute the English-language closure of a dump and print the indicator
//! distributions, the half-discrepancy histogram, and any contradictions.

use std::path::PathBuf;

use semnet::closure::{compute_closure, detect_contradictions};
use semnet::ingest::{build_id_registry, Delimiter, RawTables};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;

    println!(
        "{} assertions; {} concepts in closure ({} in assertions); fixpoint after {} passes",
        kb.assertions.len(),
        kb.concepts.len(),
        kb.input_concepts,
        kb.passes
    );
    println!("frame indicator: {:?}", kb.indicator_histogram(|a| a.frame_indicator, 5));
    println!("score indicator: {:?}", kb.indicator_histogram(|a| a.score_indicator, 10));
    println!("half-discrepancy histogram: {:?}", kb.half_discrepancy_histogram());

    for c in detect_contradictions(&kb) {
        println!(
            "contradiction: ({}, {}, {}) affirmed by assertion {} and negated by {}",
            kb.concept_text(c.concept1),
            kb.relation_name(c.relation),
            kb.concept_text(c.concept2),
            kb.assertions[c.affirming as usize].id,
            kb.assertions[c.negating as usize].id,
        );
    }
    Ok(())
}
