//! Parse a raw dump, build the ID registry, and report row counts and
//! dangling references.

use std::path::PathBuf;

use semnet::ingest::{build_id_registry, dangling_references, Delimiter, RawTables, TableKind};

fn main() -> semnet::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    let tables = RawTables::load_dir(&dir, Delimiter::TAB)?;
    let registry = build_id_registry(&tables)?;

    for kind in TableKind::ALL {
        println!("{kind}: {} rows", tables.row_count(kind));
    }
    for d in dangling_references(&tables, &registry) {
        if d.dangling > 0 {
            println!(
                "{}.{} has {} reference(s) into {} that resolve to nothing",
                d.table, d.field, d.dangling, d.target
            );
        }
    }
    Ok(())
}
