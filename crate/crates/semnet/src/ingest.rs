//! Parsing and validation of the eight source table dumps.
//!
//! A dump directory holds one flat text file per table, one row per line,
//! fields separated by a single delimiter character (tab by default). The
//! column orders follow the original database schema. An empty field between
//! two delimiters is the null value; it is kept distinct from every integer.
//!
//! Parsing preserves every field verbatim, so re-serializing a parsed table
//! reproduces the input bytes exactly.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Field separator for dump files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delimiter(pub u8);

impl Delimiter {
    pub const TAB: Delimiter = Delimiter(b'\t');
    pub const COMMA: Delimiter = Delimiter(b',');

    pub fn from_flag(s: &str) -> Result<Delimiter> {
        match s {
            "tab" | "\\t" | "\t" => Ok(Delimiter::TAB),
            "comma" | "," => Ok(Delimiter::COMMA),
            other if other.len() == 1 => Ok(Delimiter(other.as_bytes()[0])),
            other => Err(Error::Parameter(format!(
                "delimiter must be 'tab', 'comma', or a single character, got {other:?}"
            ))),
        }
    }

    fn as_char(self) -> char {
        self.0 as char
    }
}

impl Default for Delimiter {
    fn default() -> Self {
        Delimiter::TAB
    }
}

/// The eight source tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    Assertion,
    Concept,
    Relation,
    Frequency,
    Frame,
    SurfaceForm,
    RawAssertion,
    Sentence,
}

impl TableKind {
    pub const ALL: [TableKind; 8] = [
        TableKind::Assertion,
        TableKind::Concept,
        TableKind::Relation,
        TableKind::Frequency,
        TableKind::Frame,
        TableKind::SurfaceForm,
        TableKind::RawAssertion,
        TableKind::Sentence,
    ];

    /// Name of the table (and of its dump file, with a `.txt` suffix).
    pub fn table_name(self) -> &'static str {
        match self {
            TableKind::Assertion => "conceptnet_assertion",
            TableKind::Concept => "conceptnet_concept",
            TableKind::Relation => "conceptnet_relation",
            TableKind::Frequency => "nl_frequency",
            TableKind::Frame => "conceptnet_frame",
            TableKind::SurfaceForm => "conceptnet_surfaceform",
            TableKind::RawAssertion => "conceptnet_rawassertion",
            TableKind::Sentence => "corpus_sentence",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.txt", self.table_name())
    }

    /// Declared column arity of the table.
    pub fn arity(self) -> usize {
        match self {
            TableKind::Assertion => 11,
            TableKind::Concept => 6,
            TableKind::Relation => 3,
            TableKind::Frequency => 4,
            TableKind::Frame => 9,
            TableKind::SurfaceForm => 6,
            TableKind::RawAssertion => 12,
            TableKind::Sentence => 7,
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.table_name())
    }
}

/// One row of `conceptnet_assertion`.
///
/// The four `best_*` fields may be null in the dump; null is represented as
/// `None` and is distinct from every integer value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionRow {
    pub id: i64,
    pub language_id: String,
    pub relation_id: i64,
    pub concept1_id: i64,
    pub concept2_id: i64,
    pub score: i64,
    pub frequency_id: i64,
    pub best_surface1_id: Option<i64>,
    pub best_surface2_id: Option<i64>,
    pub best_raw_id: Option<i64>,
    pub best_frame_id: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptRow {
    pub id: i64,
    pub language_id: String,
    pub text: String,
    // Pass-through fields; num_assertions in particular is not reliable and
    // is never interpreted.
    pub num_assertions: String,
    pub words: String,
    pub visible: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRow {
    pub id: i64,
    pub name: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub id: i64,
    pub language_id: String,
    pub text: String,
    /// Strength of the relation, in [-10, 10]; the sign is the polarity.
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameRow {
    pub id: i64,
    pub language_id: String,
    pub text: String,
    pub relation_id: i64,
    pub goodness: String,
    pub frequency_id: i64,
    pub question_yn: String,
    pub question1: String,
    pub question2: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceFormRow {
    pub id: i64,
    pub language_id: String,
    pub concept_id: i64,
    pub text: String,
    pub residue: String,
    pub use_count: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAssertionRow {
    pub id: i64,
    pub created: String,
    pub updated: String,
    pub sentence_id: Option<i64>,
    pub assertion_id: Option<i64>,
    pub creator_id: String,
    pub surface1_id: Option<i64>,
    pub surface2_id: Option<i64>,
    pub frame_id: Option<i64>,
    pub batch_id: String,
    pub language_id: String,
    pub score: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRow {
    pub id: i64,
    pub text: String,
    pub creator_id: String,
    pub created_on: String,
    pub language_id: String,
    pub activity_id: String,
    pub score: i64,
}

/// Parsed rows of one table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableRows {
    Assertions(Vec<AssertionRow>),
    Concepts(Vec<ConceptRow>),
    Relations(Vec<RelationRow>),
    Frequencies(Vec<FrequencyRow>),
    Frames(Vec<FrameRow>),
    SurfaceForms(Vec<SurfaceFormRow>),
    RawAssertions(Vec<RawAssertionRow>),
    Sentences(Vec<SentenceRow>),
}

impl TableRows {
    pub fn len(&self) -> usize {
        match self {
            TableRows::Assertions(v) => v.len(),
            TableRows::Concepts(v) => v.len(),
            TableRows::Relations(v) => v.len(),
            TableRows::Frequencies(v) => v.len(),
            TableRows::Frames(v) => v.len(),
            TableRows::SurfaceForms(v) => v.len(),
            TableRows::RawAssertions(v) => v.len(),
            TableRows::Sentences(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All eight tables of a dump.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawTables {
    pub assertions: Vec<AssertionRow>,
    pub concepts: Vec<ConceptRow>,
    pub relations: Vec<RelationRow>,
    pub frequencies: Vec<FrequencyRow>,
    pub frames: Vec<FrameRow>,
    pub surface_forms: Vec<SurfaceFormRow>,
    pub raw_assertions: Vec<RawAssertionRow>,
    pub sentences: Vec<SentenceRow>,
}

impl RawTables {
    /// Loads all eight tables from `dir`. Missing file -> I/O error.
    pub fn load_dir(dir: &Path, delimiter: Delimiter) -> Result<RawTables> {
        let mut tables = RawTables::default();
        for kind in TableKind::ALL {
            let path = dir.join(kind.file_name());
            match parse_table_dump(&path, kind, delimiter)? {
                TableRows::Assertions(v) => tables.assertions = v,
                TableRows::Concepts(v) => tables.concepts = v,
                TableRows::Relations(v) => tables.relations = v,
                TableRows::Frequencies(v) => tables.frequencies = v,
                TableRows::Frames(v) => tables.frames = v,
                TableRows::SurfaceForms(v) => tables.surface_forms = v,
                TableRows::RawAssertions(v) => tables.raw_assertions = v,
                TableRows::Sentences(v) => tables.sentences = v,
            }
        }
        Ok(tables)
    }

    pub fn row_count(&self, kind: TableKind) -> usize {
        match kind {
            TableKind::Assertion => self.assertions.len(),
            TableKind::Concept => self.concepts.len(),
            TableKind::Relation => self.relations.len(),
            TableKind::Frequency => self.frequencies.len(),
            TableKind::Frame => self.frames.len(),
            TableKind::SurfaceForm => self.surface_forms.len(),
            TableKind::RawAssertion => self.raw_assertions.len(),
            TableKind::Sentence => self.sentences.len(),
        }
    }
}

struct LineParser<'a> {
    path: &'a Path,
    line_no: u64,
    table: &'static str,
    fields: Vec<&'a str>,
    cursor: usize,
}

impl<'a> LineParser<'a> {
    fn new(
        path: &'a Path,
        line_no: u64,
        kind: TableKind,
        line: &'a str,
        delimiter: Delimiter,
    ) -> Result<Self> {
        let fields: Vec<&str> = line.split(delimiter.as_char()).collect();
        if fields.len() != kind.arity() {
            return Err(Error::Schema {
                path: path.display().to_string(),
                line: line_no,
                table: kind.table_name(),
                expected: kind.arity(),
                found: fields.len(),
            });
        }
        Ok(LineParser {
            path,
            line_no,
            table: kind.table_name(),
            fields,
            cursor: 0,
        })
    }

    fn raw(&mut self) -> &'a str {
        let f = self.fields[self.cursor];
        self.cursor += 1;
        f
    }

    fn int(&mut self, name: &str) -> Result<i64> {
        let f = self.raw();
        f.parse::<i64>().map_err(|_| {
            Error::parse(
                self.path,
                self.line_no,
                format!("{}.{name}: expected integer, got {f:?}", self.table),
            )
        })
    }

    fn opt_int(&mut self, name: &str) -> Result<Option<i64>> {
        let f = self.raw();
        if f.is_empty() {
            return Ok(None);
        }
        f.parse::<i64>().map(Some).map_err(|_| {
            Error::parse(
                self.path,
                self.line_no,
                format!("{}.{name}: expected integer or empty, got {f:?}", self.table),
            )
        })
    }

    fn string(&mut self) -> String {
        self.raw().to_owned()
    }
}

/// Parses one table dump file into rows, preserving file order.
pub fn parse_table_dump(path: &Path, kind: TableKind, delimiter: Delimiter) -> Result<TableRows> {
    let content = fs::read_to_string(path)?;
    let mut line_no = 0u64;
    macro_rules! parse_lines {
        ($variant:ident, $parse:expr) => {{
            let mut rows = Vec::new();
            for line in content.lines() {
                line_no += 1;
                let mut p = LineParser::new(path, line_no, kind, line, delimiter)?;
                rows.push($parse(&mut p)?);
            }
            Ok(TableRows::$variant(rows))
        }};
    }
    match kind {
        TableKind::Assertion => parse_lines!(Assertions, |p: &mut LineParser| {
            Ok::<_, Error>(AssertionRow {
                id: p.int("id")?,
                language_id: p.string(),
                relation_id: p.int("relation_id")?,
                concept1_id: p.int("concept1_id")?,
                concept2_id: p.int("concept2_id")?,
                score: p.int("score")?,
                frequency_id: p.int("frequency_id")?,
                best_surface1_id: p.opt_int("best_surface1_id")?,
                best_surface2_id: p.opt_int("best_surface2_id")?,
                best_raw_id: p.opt_int("best_raw_id")?,
                best_frame_id: p.opt_int("best_frame_id")?,
            })
        }),
        TableKind::Concept => parse_lines!(Concepts, |p: &mut LineParser| {
            Ok::<_, Error>(ConceptRow {
                id: p.int("id")?,
                language_id: p.string(),
                text: p.string(),
                num_assertions: p.string(),
                words: p.string(),
                visible: p.string(),
            })
        }),
        TableKind::Relation => parse_lines!(Relations, |p: &mut LineParser| {
            Ok::<_, Error>(RelationRow {
                id: p.int("id")?,
                name: p.string(),
                description: p.string(),
            })
        }),
        TableKind::Frequency => parse_lines!(Frequencies, |p: &mut LineParser| {
            let row = FrequencyRow {
                id: p.int("id")?,
                language_id: p.string(),
                text: p.string(),
                value: p.int("value")?,
            };
            if !(-10..=10).contains(&row.value) {
                return Err(Error::parse(
                    p.path,
                    p.line_no,
                    format!("nl_frequency.value out of [-10, 10]: {}", row.value),
                ));
            }
            Ok::<_, Error>(row)
        }),
        TableKind::Frame => parse_lines!(Frames, |p: &mut LineParser| {
            Ok::<_, Error>(FrameRow {
                id: p.int("id")?,
                language_id: p.string(),
                text: p.string(),
                relation_id: p.int("relation_id")?,
                goodness: p.string(),
                frequency_id: p.int("frequency_id")?,
                question_yn: p.string(),
                question1: p.string(),
                question2: p.string(),
            })
        }),
        TableKind::SurfaceForm => parse_lines!(SurfaceForms, |p: &mut LineParser| {
            Ok::<_, Error>(SurfaceFormRow {
                id: p.int("id")?,
                language_id: p.string(),
                concept_id: p.int("concept_id")?,
                text: p.string(),
                residue: p.string(),
                use_count: p.string(),
            })
        }),
        TableKind::RawAssertion => parse_lines!(RawAssertions, |p: &mut LineParser| {
            Ok::<_, Error>(RawAssertionRow {
                id: p.int("id")?,
                created: p.string(),
                updated: p.string(),
                sentence_id: p.opt_int("sentence_id")?,
                assertion_id: p.opt_int("assertion_id")?,
                creator_id: p.string(),
                surface1_id: p.opt_int("surface1_id")?,
                surface2_id: p.opt_int("surface2_id")?,
                frame_id: p.opt_int("frame_id")?,
                batch_id: p.string(),
                language_id: p.string(),
                score: p.int("score")?,
            })
        }),
        TableKind::Sentence => parse_lines!(Sentences, |p: &mut LineParser| {
            Ok::<_, Error>(SentenceRow {
                id: p.int("id")?,
                text: p.string(),
                creator_id: p.string(),
                created_on: p.string(),
                language_id: p.string(),
                activity_id: p.string(),
                score: p.int("score")?,
            })
        }),
    }
}

fn opt_str(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Re-serializes parsed rows in the dump format. Inverse of
/// [`parse_table_dump`] on well-formed input.
pub fn serialize_table(rows: &TableRows, delimiter: Delimiter, out: &mut dyn Write) -> Result<()> {
    let d = delimiter.as_char();
    match rows {
        TableRows::Assertions(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id,
                    r.language_id,
                    r.relation_id,
                    r.concept1_id,
                    r.concept2_id,
                    r.score,
                    r.frequency_id,
                    opt_str(r.best_surface1_id),
                    opt_str(r.best_surface2_id),
                    opt_str(r.best_raw_id),
                    opt_str(r.best_frame_id),
                )?;
            }
        }
        TableRows::Concepts(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id, r.language_id, r.text, r.num_assertions, r.words, r.visible
                )?;
            }
        }
        TableRows::Relations(v) => {
            for r in v {
                writeln!(out, "{}{d}{}{d}{}", r.id, r.name, r.description)?;
            }
        }
        TableRows::Frequencies(v) => {
            for r in v {
                writeln!(out, "{}{d}{}{d}{}{d}{}", r.id, r.language_id, r.text, r.value)?;
            }
        }
        TableRows::Frames(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id,
                    r.language_id,
                    r.text,
                    r.relation_id,
                    r.goodness,
                    r.frequency_id,
                    r.question_yn,
                    r.question1,
                    r.question2,
                )?;
            }
        }
        TableRows::SurfaceForms(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id, r.language_id, r.concept_id, r.text, r.residue, r.use_count
                )?;
            }
        }
        TableRows::RawAssertions(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id,
                    r.created,
                    r.updated,
                    opt_str(r.sentence_id),
                    opt_str(r.assertion_id),
                    r.creator_id,
                    opt_str(r.surface1_id),
                    opt_str(r.surface2_id),
                    opt_str(r.frame_id),
                    r.batch_id,
                    r.language_id,
                    r.score,
                )?;
            }
        }
        TableRows::Sentences(v) => {
            for r in v {
                writeln!(
                    out,
                    "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}",
                    r.id, r.text, r.creator_id, r.created_on, r.language_id, r.activity_id, r.score
                )?;
            }
        }
    }
    Ok(())
}

/// A set of non-negative IDs, stored as a bitmap.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdSet {
    words: Vec<u64>,
    len: usize,
    max_id: Option<i64>,
}

impl IdSet {
    pub fn new() -> IdSet {
        IdSet::default()
    }

    /// Inserts `id`; returns false if it was already present.
    pub fn insert(&mut self, id: i64) -> bool {
        assert!(id >= 0, "IDs are non-negative");
        let (w, b) = (id as usize / 64, id as usize % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        if self.words[w] & (1 << b) != 0 {
            return false;
        }
        self.words[w] |= 1 << b;
        self.len += 1;
        self.max_id = Some(self.max_id.map_or(id, |m: i64| m.max(id)));
        true
    }

    pub fn contains(&self, id: i64) -> bool {
        if id < 0 {
            return false;
        }
        let (w, b) = (id as usize / 64, id as usize % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn max_id(&self) -> Option<i64> {
        self.max_id
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word & (1u64 << b) != 0)
                .map(move |b| (w * 64 + b) as i64)
        })
    }
}

/// Which IDs actually exist in each source table.
#[derive(Debug, Clone, Default)]
pub struct IdRegistry {
    sets: HashMap<TableKind, IdSet>,
}

impl IdRegistry {
    pub fn ids(&self, kind: TableKind) -> &IdSet {
        static EMPTY: IdSet = IdSet {
            words: Vec::new(),
            len: 0,
            max_id: None,
        };
        self.sets.get(&kind).unwrap_or(&EMPTY)
    }

    pub fn contains(&self, kind: TableKind, id: i64) -> bool {
        self.ids(kind).contains(id)
    }

    pub fn max_id(&self, kind: TableKind) -> Option<i64> {
        self.ids(kind).max_id()
    }
}

/// Records which IDs exist per table. Duplicate IDs within one table are an
/// integrity error.
pub fn build_id_registry(tables: &RawTables) -> Result<IdRegistry> {
    let mut registry = IdRegistry::default();
    let mut add = |kind: TableKind, ids: &mut dyn Iterator<Item = i64>| -> Result<()> {
        let set = registry.sets.entry(kind).or_default();
        for id in ids {
            if id < 0 {
                return Err(Error::Integrity(format!("{kind}: negative ID {id}")));
            }
            if !set.insert(id) {
                return Err(Error::Integrity(format!("{kind}: duplicate ID {id}")));
            }
        }
        Ok(())
    };
    add(TableKind::Assertion, &mut tables.assertions.iter().map(|r| r.id))?;
    add(TableKind::Concept, &mut tables.concepts.iter().map(|r| r.id))?;
    add(TableKind::Relation, &mut tables.relations.iter().map(|r| r.id))?;
    add(TableKind::Frequency, &mut tables.frequencies.iter().map(|r| r.id))?;
    add(TableKind::Frame, &mut tables.frames.iter().map(|r| r.id))?;
    add(TableKind::SurfaceForm, &mut tables.surface_forms.iter().map(|r| r.id))?;
    add(TableKind::RawAssertion, &mut tables.raw_assertions.iter().map(|r| r.id))?;
    add(TableKind::Sentence, &mut tables.sentences.iter().map(|r| r.id))?;
    Ok(registry)
}

/// Outcome of resolving a cross-table reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Valid(i64),
    /// The field was empty.
    Null,
    /// The field held an ID that does not exist in the target table.
    Undefined,
}

/// Resolves a possibly-null reference against the registry. Total.
pub fn resolve_reference(registry: &IdRegistry, kind: TableKind, value: Option<i64>) -> Resolution {
    match value {
        None => Resolution::Null,
        Some(id) if registry.contains(kind, id) => Resolution::Valid(id),
        Some(_) => Resolution::Undefined,
    }
}

/// Count of dangling (defined but unresolvable) references in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanglingCount {
    pub table: TableKind,
    pub field: &'static str,
    pub target: TableKind,
    pub dangling: u64,
}

/// Scans every cross-table reference field and counts dangling values.
pub fn dangling_references(tables: &RawTables, registry: &IdRegistry) -> Vec<DanglingCount> {
    let mut out = Vec::new();
    let mut scan = |table: TableKind,
                    field: &'static str,
                    target: TableKind,
                    values: &mut dyn Iterator<Item = Option<i64>>| {
        let dangling = values
            .filter(|v| matches!(resolve_reference(registry, target, *v), Resolution::Undefined))
            .count() as u64;
        out.push(DanglingCount {
            table,
            field,
            target,
            dangling,
        });
    };

    let a = TableKind::Assertion;
    scan(a, "relation_id", TableKind::Relation, &mut tables.assertions.iter().map(|r| Some(r.relation_id)));
    scan(a, "concept1_id", TableKind::Concept, &mut tables.assertions.iter().map(|r| Some(r.concept1_id)));
    scan(a, "concept2_id", TableKind::Concept, &mut tables.assertions.iter().map(|r| Some(r.concept2_id)));
    scan(a, "frequency_id", TableKind::Frequency, &mut tables.assertions.iter().map(|r| Some(r.frequency_id)));
    scan(a, "best_surface1_id", TableKind::SurfaceForm, &mut tables.assertions.iter().map(|r| r.best_surface1_id));
    scan(a, "best_surface2_id", TableKind::SurfaceForm, &mut tables.assertions.iter().map(|r| r.best_surface2_id));
    scan(a, "best_raw_id", TableKind::RawAssertion, &mut tables.assertions.iter().map(|r| r.best_raw_id));
    scan(a, "best_frame_id", TableKind::Frame, &mut tables.assertions.iter().map(|r| r.best_frame_id));

    let f = TableKind::Frame;
    scan(f, "relation_id", TableKind::Relation, &mut tables.frames.iter().map(|r| Some(r.relation_id)));
    scan(f, "frequency_id", TableKind::Frequency, &mut tables.frames.iter().map(|r| Some(r.frequency_id)));

    scan(
        TableKind::SurfaceForm,
        "concept_id",
        TableKind::Concept,
        &mut tables.surface_forms.iter().map(|r| Some(r.concept_id)),
    );

    let raw = TableKind::RawAssertion;
    scan(raw, "sentence_id", TableKind::Sentence, &mut tables.raw_assertions.iter().map(|r| r.sentence_id));
    scan(raw, "assertion_id", TableKind::Assertion, &mut tables.raw_assertions.iter().map(|r| r.assertion_id));
    scan(raw, "surface1_id", TableKind::SurfaceForm, &mut tables.raw_assertions.iter().map(|r| r.surface1_id));
    scan(raw, "surface2_id", TableKind::SurfaceForm, &mut tables.raw_assertions.iter().map(|r| r.surface2_id));
    scan(raw, "frame_id", TableKind::Frame, &mut tables.raw_assertions.iter().map(|r| r.frame_id));

    out
}
