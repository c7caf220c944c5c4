//! Relation-triple rule mining: supports, successes, and witnesses.

use std::path::PathBuf;

use semnet::closure::compute_closure;
use semnet::ingest::{build_id_registry, Delimiter, RawTables};
use semnet::rules::{eligible_relations, mine_frequent, Rule, RuleIndex};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let index = RuleIndex::build(&kb, false)?;

    // The fixture is tiny, so mine with desk-scale thresholds.
    let eligible = eligible_relations(&kb, 1);
    for stats in mine_frequent(&index, &eligible, 1, 0.25) {
        println!(
            "({}, {}, {}): {}/{} = {:.2}",
            kb.relation_name(stats.rule.x),
            kb.relation_name(stats.rule.y),
            kb.relation_name(stats.rule.z),
            stats.successes,
            stats.support,
            stats.ratio(),
        );
    }

    let rule = Rule { x: 0, y: 1, z: 1 }; // IsA, AtLocation => AtLocation
    println!("witnesses for (IsA, AtLocation, AtLocation):");
    index.scan_rule(rule, |a, b, c, success| {
        println!(
            "  ({}, {}, {}) -> {}",
            kb.concept_text(a),
            kb.concept_text(b),
            kb.concept_text(c),
            if success { "success" } else { "failure" }
        );
    });
    Ok(())
}
