//! Deterministic report emission: named TSV/text artifacts written
//! atomically, plus a manifest with a content digest per artifact.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;

/// A set of artifacts accumulated in memory, keyed by file name. Bytes are
/// fully determined by (input, configuration, seed).
#[derive(Debug, Clone, Default)]
pub struct ReportBundle {
    files: BTreeMap<String, Vec<u8>>,
}

impl ReportBundle {
    pub fn new() -> ReportBundle {
        ReportBundle::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.insert(name.into(), bytes);
    }

    /// Adds a two-column TSV rendering of a histogram-like iterator.
    pub fn insert_tsv2<A: Display, B: Display>(
        &mut self,
        name: impl Into<String>,
        header: (&str, &str),
        rows: impl IntoIterator<Item = (A, B)>,
    ) {
        let mut out = format!("{}\t{}\n", header.0, header.1).into_bytes();
        for (a, b) in rows {
            out.extend_from_slice(format!("{a}\t{b}\n").as_bytes());
        }
        self.insert(name, out);
    }

    /// Adds a TSV with an arbitrary column count; every row must match the
    /// header arity.
    pub fn insert_table(
        &mut self,
        name: impl Into<String>,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) {
        let mut out = header.join("\t").into_bytes();
        out.push(b'\n');
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            out.extend_from_slice(row.join("\t").as_bytes());
            out.push(b'\n');
        }
        self.insert(name, out);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn digest_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes every artifact atomically under `out_dir`, then a `MANIFEST.tsv`
/// listing each artifact with its SHA-256 digest and echoing the seed.
/// Returns the paths written, manifest last.
pub fn emit_report(bundle: &ReportBundle, out_dir: &Path, seed: u64) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut manifest = format!("# seed\t{seed}\nartifact\tsha256\tbytes\n").into_bytes();
    for (name, bytes) in &bundle.files {
        let path = out_dir.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        write_atomic(&path, bytes)?;
        manifest.extend_from_slice(
            format!("{name}\t{}\t{}\n", digest_hex(bytes), bytes.len()).as_bytes(),
        );
        written.push(path);
    }
    let manifest_path = out_dir.join("MANIFEST.tsv");
    write_atomic(&manifest_path, &manifest)?;
    written.push(manifest_path);
    Ok(written)
}

/// Appends manifest rows for files already on disk (e.g. the derived file
/// set), digesting their current contents.
pub fn manifest_for_files(out_dir: &Path, files: &[PathBuf], seed: u64) -> Result<PathBuf> {
    let mut rows: Vec<(String, Vec<u8>)> = Vec::new();
    for f in files {
        let rel = f.strip_prefix(out_dir).unwrap_or(f).display().to_string();
        rows.push((rel, fs::read(f)?));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut manifest = format!("# seed\t{seed}\nartifact\tsha256\tbytes\n").into_bytes();
    for (name, bytes) in &rows {
        manifest.extend_from_slice(
            format!("{name}\t{}\t{}\n", digest_hex(bytes), bytes.len()).as_bytes(),
        );
    }
    let manifest_path = out_dir.join("MANIFEST.tsv");
    write_atomic(&manifest_path, &manifest)?;
    Ok(manifest_path)
}
