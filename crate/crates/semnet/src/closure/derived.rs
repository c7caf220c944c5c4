//! On-disk format for a computed closure.
//!
//! One subdirectory per table, holding the table file (rows with original
//! IDs and remapped indices) and the map file (one integer per original ID:
//! the closure index, -1 when the dump has no such ID, -2 when the dump has
//! the ID but the closure does not). An `edges` subdirectory holds the three
//! edge-list renderings of the unfiltered graph: the multigraph (one line
//! per assertion), the directed graph, and the undirected graph (endpoints
//! written smaller index first), the latter two grouping the justifying
//! assertion indices per line.
//!
//! All lines are space-separated integers, newline-terminated; text fields
//! come last on the line and run to the newline.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::closure::{
    ClosedAssertion, ClosedConcept, ClosedFrame, ClosedFrequency, ClosedKb, ClosedRawAssertion,
    ClosedRelation, ClosedSentence, ClosedSurfaceForm, IdIndexMap, Index, Ref,
};
use crate::error::{Error, Result};
use crate::ingest::IdSet;

const DIR_ASSERTIONS: &str = "assertions";
const DIR_CONCEPTS: &str = "concepts";
const DIR_RELATIONS: &str = "relations";
const DIR_FREQUENCIES: &str = "frequencies";
const DIR_FRAMES: &str = "frames";
const DIR_SURFACES: &str = "surfaceForms";
const DIR_RAWS: &str = "rawAssertions";
const DIR_SENTENCES: &str = "sentences";
const DIR_EDGES: &str = "edges";

fn table_file(dir: &Path, sub: &str, stem: &str) -> PathBuf {
    dir.join(sub).join(format!("ConceptNet4{stem}.txt"))
}

fn map_file(dir: &Path, sub: &str, stem: &str) -> PathBuf {
    dir.join(sub).join(format!("Map{stem}IDsFromConceptNet4.txt"))
}

/// Writes `content` to `path` atomically (temp file + rename).
fn write_atomic(path: &Path, write: impl FnOnce(&mut BufWriter<fs::File>) -> Result<()>) -> Result<()> {
    let tmp = path.with_extension("txt.tmp");
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        write(&mut out)?;
        out.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_map(path: &Path, map: &IdIndexMap) -> Result<()> {
    write_atomic(path, |out| {
        for id in 0..map.lines() {
            writeln!(out, "{}", map.entry(id))?;
        }
        Ok(())
    })
}

/// Emits the full derived-file set under `dir`. Returns the files written.
pub fn emit_derived_files(kb: &ClosedKb, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for sub in [
        DIR_ASSERTIONS,
        DIR_CONCEPTS,
        DIR_RELATIONS,
        DIR_FREQUENCIES,
        DIR_FRAMES,
        DIR_SURFACES,
        DIR_RAWS,
        DIR_SENTENCES,
        DIR_EDGES,
    ] {
        fs::create_dir_all(dir.join(sub))?;
    }

    let path = table_file(dir, DIR_ASSERTIONS, "Assertions");
    write_atomic(&path, |out| {
        for a in &kb.assertions {
            writeln!(
                out,
                "{} {} {} {} {} {} {} {} {} {} {} {} {} {}",
                a.id,
                a.concept1,
                a.concept2,
                a.relation,
                a.frequency,
                opt_index(a.frame),
                opt_index(a.surface1),
                opt_index(a.surface2),
                a.raw.to_i64(),
                a.score,
                a.frame_indicator,
                a.surface_indicator,
                a.raw_indicator,
                a.score_indicator,
            )?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_CONCEPTS, "Concepts");
    write_atomic(&path, |out| {
        for c in &kb.concepts {
            writeln!(out, "{} {}", c.id, c.text)?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_RELATIONS, "Relations");
    write_atomic(&path, |out| {
        for r in &kb.relations {
            writeln!(out, "{} {} {}", r.id, r.name, r.description)?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_FREQUENCIES, "Frequencies");
    write_atomic(&path, |out| {
        for f in &kb.frequencies {
            writeln!(out, "{} {} {}", f.id, f.value, f.text)?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_FRAMES, "Frames");
    write_atomic(&path, |out| {
        for f in &kb.frames {
            writeln!(out, "{} {} {} {}", f.id, f.relation, f.frequency, f.text)?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_SURFACES, "SurfaceForms");
    write_atomic(&path, |out| {
        for s in &kb.surface_forms {
            writeln!(out, "{} {} {}", s.id, s.concept, s.text)?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_RAWS, "RawAssertions");
    write_atomic(&path, |out| {
        for r in &kb.raw_assertions {
            writeln!(
                out,
                "{} {} {} {} {} {} {}",
                r.id,
                r.sentence,
                r.assertion.to_i64(),
                r.surface1.to_i64(),
                r.surface2.to_i64(),
                r.frame.to_i64(),
                r.score,
            )?;
        }
        Ok(())
    })?;
    written.push(path);

    let path = table_file(dir, DIR_SENTENCES, "Sentences");
    write_atomic(&path, |out| {
        for s in &kb.sentences {
            writeln!(out, "{} {} {}", s.id, s.score, s.text)?;
        }
        Ok(())
    })?;
    written.push(path);

    for (sub, stem, map) in [
        (DIR_ASSERTIONS, "Assertion", &kb.assertion_map),
        (DIR_CONCEPTS, "Concept", &kb.concept_map),
        (DIR_RELATIONS, "Relation", &kb.relation_map),
        (DIR_FREQUENCIES, "Frequency", &kb.frequency_map),
        (DIR_FRAMES, "Frame", &kb.frame_map),
        (DIR_SURFACES, "SurfaceForm", &kb.surface_form_map),
        (DIR_RAWS, "RawAssertion", &kb.raw_assertion_map),
        (DIR_SENTENCES, "Sentence", &kb.sentence_map),
    ] {
        let path = map_file(dir, sub, stem);
        write_map(&path, map)?;
        written.push(path);
    }

    written.extend(emit_edge_lists(kb, &dir.join(DIR_EDGES))?);
    Ok(written)
}

/// Writes the three edge-list files for the unfiltered graph.
pub(crate) fn emit_edge_lists(kb: &ClosedKb, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let path = dir.join("ConceptNet4EdgesDM.txt");
    write_atomic(&path, |out| {
        for (i, a) in kb.assertions.iter().enumerate() {
            writeln!(out, "{} {} {}", a.concept1, a.concept2, i)?;
        }
        Ok(())
    })?;
    written.push(path);

    let mut directed: Vec<((Index, Index), u32)> = kb
        .assertions
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.concept1, a.concept2), i as u32))
        .collect();
    directed.sort_unstable();
    let path = dir.join("ConceptNet4EdgesDG.txt");
    write_atomic(&path, |out| write_grouped(out, &directed))?;
    written.push(path);

    let mut undirected: Vec<((Index, Index), u32)> = kb
        .assertions
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (u, v) = (a.concept1.min(a.concept2), a.concept1.max(a.concept2));
            ((u, v), i as u32)
        })
        .collect();
    undirected.sort_unstable();
    let path = dir.join("ConceptNet4EdgesUG.txt");
    write_atomic(&path, |out| write_grouped(out, &undirected))?;
    written.push(path);

    Ok(written)
}

fn write_grouped(out: &mut BufWriter<fs::File>, edges: &[((Index, Index), u32)]) -> Result<()> {
    let mut i = 0;
    while i < edges.len() {
        let key = edges[i].0;
        let mut j = i;
        while j < edges.len() && edges[j].0 == key {
            j += 1;
        }
        write!(out, "{} {} {}", key.0, key.1, j - i)?;
        for &(_, a) in &edges[i..j] {
            write!(out, " {a}")?;
        }
        writeln!(out)?;
        i = j;
    }
    Ok(())
}

fn opt_index(v: Option<Index>) -> i64 {
    v.map(|i| i as i64).unwrap_or(-1)
}

struct Lines<'a> {
    path: &'a Path,
    no: u64,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.path, self.no, message)
    }
}

fn parse_int(ctx: &Lines, s: &str, field: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| ctx.err(format!("{field}: expected integer, got {s:?}")))
}

fn parse_index(ctx: &Lines, s: &str, field: &str, len: usize) -> Result<Index> {
    let v = parse_int(ctx, s, field)?;
    if v < 0 || v as usize >= len {
        return Err(ctx.err(format!("{field}: index {v} out of range 0..{len}")));
    }
    Ok(v as Index)
}

fn parse_ref(ctx: &Lines, s: &str, field: &str, len: usize) -> Result<Ref> {
    let v = parse_int(ctx, s, field)?;
    let r = Ref::from_i64(v).map_err(|e| ctx.err(e.to_string()))?;
    if let Ref::Valid(i) = r {
        if i as usize >= len {
            return Err(ctx.err(format!("{field}: index {i} out of range 0..{len}")));
        }
    }
    Ok(r)
}

fn parse_opt_index(ctx: &Lines, s: &str, field: &str, len: usize) -> Result<Option<Index>> {
    match parse_ref(ctx, s, field, len)? {
        Ref::Valid(i) => Ok(Some(i)),
        Ref::Null => Ok(None),
        Ref::Undefined => Err(ctx.err(format!("{field}: -2 is not permitted here"))),
    }
}

fn split_fixed<'s>(ctx: &Lines, line: &'s str, n: usize) -> Result<Vec<&'s str>> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != n {
        return Err(ctx.err(format!("expected {n} fields, found {}", fields.len())));
    }
    Ok(fields)
}

/// Splits a line with `n` leading integer fields; the remainder is the text.
fn split_with_text<'s>(ctx: &Lines, line: &'s str, n: usize) -> Result<(Vec<&'s str>, &'s str)> {
    let mut fields = Vec::with_capacity(n);
    let mut rest = line;
    for _ in 0..n {
        match rest.split_once(' ') {
            Some((f, r)) => {
                fields.push(f);
                rest = r;
            }
            None => return Err(ctx.err(format!("expected {n} integer fields before text"))),
        }
    }
    Ok((fields, rest))
}

fn for_lines(path: &Path, mut f: impl FnMut(&Lines, &str) -> Result<()>) -> Result<()> {
    let content = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let mut ctx = Lines { path, no: 0 };
    for line in content.lines() {
        ctx.no += 1;
        f(&ctx, line)?;
    }
    Ok(())
}

fn load_map(path: &Path, table_len: usize) -> Result<IdIndexMap> {
    let mut db_ids = IdSet::new();
    let mut index = HashMap::new();
    for_lines(path, |ctx, line| {
        let id = ctx.no as i64 - 1;
        let entry = parse_int(ctx, line, "map entry")?;
        match entry {
            -1 => {}
            -2 => {
                db_ids.insert(id);
            }
            i if i >= 0 && (i as usize) < table_len => {
                db_ids.insert(id);
                index.insert(id, i as Index);
            }
            other => {
                return Err(ctx.err(format!("map entry {other} out of range 0..{table_len}")))
            }
        }
        Ok(())
    })?;
    if index.len() != table_len {
        return Err(Error::Integrity(format!(
            "{}: maps {} IDs into a table of {} rows",
            path.display(),
            index.len(),
            table_len
        )));
    }
    Ok(IdIndexMap { db_ids, index })
}

fn check_map_ids(path: &Path, map: &IdIndexMap, ids: &[i64]) -> Result<()> {
    for (&id, &idx) in &map.index {
        if ids[idx as usize] != id {
            return Err(Error::Integrity(format!(
                "{}: entry for ID {id} points at index {idx}, which holds ID {}",
                path.display(),
                ids[idx as usize]
            )));
        }
    }
    Ok(())
}

/// Loads a closure previously written by [`emit_derived_files`].
///
/// The `passes` field is not stored on disk and loads as zero.
pub fn load_derived_files(dir: &Path) -> Result<ClosedKb> {
    let mut kb = ClosedKb::default();

    for_lines(&table_file(dir, DIR_CONCEPTS, "Concepts"), |ctx, line| {
        let (fields, text) = split_with_text(ctx, line, 1)?;
        kb.concepts.push(ClosedConcept {
            id: parse_int(ctx, fields[0], "id")?,
            text: text.to_owned(),
        });
        Ok(())
    })?;

    for_lines(&table_file(dir, DIR_RELATIONS, "Relations"), |ctx, line| {
        let (fields, rest) = split_with_text(ctx, line, 1)?;
        let (name, description) = rest.split_once(' ').unwrap_or((rest, ""));
        kb.relations.push(ClosedRelation {
            id: parse_int(ctx, fields[0], "id")?,
            name: name.to_owned(),
            description: description.to_owned(),
        });
        Ok(())
    })?;

    for_lines(&table_file(dir, DIR_FREQUENCIES, "Frequencies"), |ctx, line| {
        let (fields, text) = split_with_text(ctx, line, 2)?;
        let value = parse_int(ctx, fields[1], "value")?;
        if !(-10..=10).contains(&value) {
            return Err(ctx.err(format!("frequency value out of [-10, 10]: {value}")));
        }
        kb.frequencies.push(ClosedFrequency {
            id: parse_int(ctx, fields[0], "id")?,
            value,
            text: text.to_owned(),
        });
        Ok(())
    })?;

    let (n_rel, n_freq) = (kb.relations.len(), kb.frequencies.len());
    for_lines(&table_file(dir, DIR_FRAMES, "Frames"), |ctx, line| {
        let (fields, text) = split_with_text(ctx, line, 3)?;
        kb.frames.push(ClosedFrame {
            id: parse_int(ctx, fields[0], "id")?,
            relation: parse_index(ctx, fields[1], "relation", n_rel)?,
            frequency: parse_index(ctx, fields[2], "frequency", n_freq)?,
            text: text.to_owned(),
        });
        Ok(())
    })?;

    let n_con = kb.concepts.len();
    for_lines(&table_file(dir, DIR_SURFACES, "SurfaceForms"), |ctx, line| {
        let (fields, text) = split_with_text(ctx, line, 2)?;
        kb.surface_forms.push(ClosedSurfaceForm {
            id: parse_int(ctx, fields[0], "id")?,
            concept: parse_index(ctx, fields[1], "concept", n_con)?,
            text: text.to_owned(),
        });
        Ok(())
    })?;

    for_lines(&table_file(dir, DIR_SENTENCES, "Sentences"), |ctx, line| {
        let (fields, text) = split_with_text(ctx, line, 2)?;
        kb.sentences.push(ClosedSentence {
            id: parse_int(ctx, fields[0], "id")?,
            score: parse_int(ctx, fields[1], "score")?,
            text: text.to_owned(),
        });
        Ok(())
    })?;

    // Raw assertions reference assertions, whose count is only known after
    // reading their file; collect first, check after.
    let mut raw_assertion_refs = Vec::new();
    let (n_sent, n_surf, n_frame) = (kb.sentences.len(), kb.surface_forms.len(), kb.frames.len());
    for_lines(&table_file(dir, DIR_RAWS, "RawAssertions"), |ctx, line| {
        let fields = split_fixed(ctx, line, 7)?;
        let assertion = Ref::from_i64(parse_int(ctx, fields[2], "assertion")?)
            .map_err(|e| ctx.err(e.to_string()))?;
        raw_assertion_refs.push((ctx.no, assertion));
        kb.raw_assertions.push(ClosedRawAssertion {
            id: parse_int(ctx, fields[0], "id")?,
            sentence: parse_index(ctx, fields[1], "sentence", n_sent)?,
            assertion,
            surface1: parse_ref(ctx, fields[3], "surface1", n_surf)?,
            surface2: parse_ref(ctx, fields[4], "surface2", n_surf)?,
            frame: parse_ref(ctx, fields[5], "frame", n_frame)?,
            score: parse_int(ctx, fields[6], "score")?,
        });
        Ok(())
    })?;

    let n_raw = kb.raw_assertions.len();
    for_lines(&table_file(dir, DIR_ASSERTIONS, "Assertions"), |ctx, line| {
        let fields = split_fixed(ctx, line, 14)?;
        let a = ClosedAssertion {
            id: parse_int(ctx, fields[0], "id")?,
            concept1: parse_index(ctx, fields[1], "concept1", n_con)?,
            concept2: parse_index(ctx, fields[2], "concept2", n_con)?,
            relation: parse_index(ctx, fields[3], "relation", n_rel)?,
            frequency: parse_index(ctx, fields[4], "frequency", n_freq)?,
            frame: parse_opt_index(ctx, fields[5], "frame", n_frame)?,
            surface1: parse_opt_index(ctx, fields[6], "surface1", n_surf)?,
            surface2: parse_opt_index(ctx, fields[7], "surface2", n_surf)?,
            raw: parse_ref(ctx, fields[8], "raw", n_raw)?,
            score: parse_int(ctx, fields[9], "score")?,
            frame_indicator: parse_bounded(ctx, fields[10], "frame indicator", 4)?,
            surface_indicator: parse_bounded(ctx, fields[11], "surface indicator", 15)?,
            raw_indicator: parse_bounded(ctx, fields[12], "raw indicator", 37)?,
            score_indicator: parse_bounded(ctx, fields[13], "score indicator", 9)?,
        };
        kb.assertions.push(a);
        Ok(())
    })?;

    let n_assert = kb.assertions.len();
    for (line, r) in raw_assertion_refs {
        if let Ref::Valid(i) = r {
            if i as usize >= n_assert {
                return Err(Error::Integrity(format!(
                    "rawAssertions line {line}: assertion index {i} out of range 0..{n_assert}"
                )));
            }
        }
    }

    // Input-block sizes: the blocks are dense prefixes, so the largest index
    // referenced by the assertions bounds each one.
    kb.input_concepts = kb
        .assertions
        .iter()
        .flat_map(|a| [a.concept1, a.concept2])
        .max()
        .map_or(0, |m| m as usize + 1);
    kb.input_surface_forms = kb
        .assertions
        .iter()
        .flat_map(|a| [a.surface1, a.surface2])
        .flatten()
        .max()
        .map_or(0, |m| m as usize + 1);
    kb.input_frames = kb
        .assertions
        .iter()
        .filter_map(|a| a.frame)
        .max()
        .map_or(0, |m| m as usize + 1);

    kb.assertion_map = load_map(&map_file(dir, DIR_ASSERTIONS, "Assertion"), n_assert)?;
    kb.concept_map = load_map(&map_file(dir, DIR_CONCEPTS, "Concept"), n_con)?;
    kb.relation_map = load_map(&map_file(dir, DIR_RELATIONS, "Relation"), n_rel)?;
    kb.frequency_map = load_map(&map_file(dir, DIR_FREQUENCIES, "Frequency"), n_freq)?;
    kb.frame_map = load_map(&map_file(dir, DIR_FRAMES, "Frame"), n_frame)?;
    kb.surface_form_map = load_map(&map_file(dir, DIR_SURFACES, "SurfaceForm"), n_surf)?;
    kb.raw_assertion_map = load_map(&map_file(dir, DIR_RAWS, "RawAssertion"), n_raw)?;
    kb.sentence_map = load_map(&map_file(dir, DIR_SENTENCES, "Sentence"), n_sent)?;

    let ids: Vec<i64> = kb.assertions.iter().map(|a| a.id).collect();
    check_map_ids(&map_file(dir, DIR_ASSERTIONS, "Assertion"), &kb.assertion_map, &ids)?;
    let ids: Vec<i64> = kb.concepts.iter().map(|c| c.id).collect();
    check_map_ids(&map_file(dir, DIR_CONCEPTS, "Concept"), &kb.concept_map, &ids)?;
    let ids: Vec<i64> = kb.surface_forms.iter().map(|s| s.id).collect();
    check_map_ids(&map_file(dir, DIR_SURFACES, "SurfaceForm"), &kb.surface_form_map, &ids)?;
    let ids: Vec<i64> = kb.sentences.iter().map(|s| s.id).collect();
    check_map_ids(&map_file(dir, DIR_SENTENCES, "Sentence"), &kb.sentence_map, &ids)?;

    Ok(kb)
}

fn parse_bounded(ctx: &Lines, s: &str, field: &str, max: u8) -> Result<u8> {
    let v = parse_int(ctx, s, field)?;
    if v < 0 || v > max as i64 {
        return Err(ctx.err(format!("{field}: {v} out of range 0..={max}")));
    }
    Ok(v as u8)
}
