//! The validated closure of the English-language assertions.
//!
//! Starting from every assertion tagged `en`, the closure pulls in all rows
//! of the other seven tables that are transitively referenced: concepts,
//! relation, frequency, frame, and surface forms of each assertion; the best
//! raw assertion when it resolves; the sentence, surface forms, and frame of
//! each raw assertion; and the concept of each surface form. Growth is
//! monotone and bounded, so the pass loop always terminates.
//!
//! Original IDs are remapped to dense indices. Rows referenced directly by
//! the assertions come first in ID order; rows raised only through
//! discrepancy checks (a surface form naming a concept no assertion uses, a
//! raw assertion naming a surface form no assertion uses) follow, again in
//! ID order. The boundary of the first block is what "part of the input"
//! means for the indicator classifications.

mod derived;
mod indicators;

pub use derived::{emit_derived_files, load_derived_files};
pub use indicators::{
    discrepancy, frame_indicator, half_discrepancy, raw_indicator, score_indicator,
    surface_indicator, ScoreTriple,
};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ingest::{IdRegistry, IdSet, RawTables, Resolution, TableKind};

/// Index of a row in a closure table.
pub type Index = u32;

/// A reference that survived the closure: either an index into the target
/// table, or one of the two sentinels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ref {
    Valid(Index),
    /// The source field was empty.
    Null,
    /// The source field held an ID that resolves to nothing in the closure.
    Undefined,
}

impl Ref {
    pub fn index(self) -> Option<Index> {
        match self {
            Ref::Valid(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_null(self) -> bool {
        matches!(self, Ref::Null)
    }

    pub fn is_undefined(self) -> bool {
        matches!(self, Ref::Undefined)
    }

    pub(crate) fn to_i64(self) -> i64 {
        match self {
            Ref::Valid(i) => i as i64,
            Ref::Null => -1,
            Ref::Undefined => -2,
        }
    }

    pub(crate) fn from_i64(v: i64) -> Result<Ref> {
        match v {
            -1 => Ok(Ref::Null),
            -2 => Ok(Ref::Undefined),
            i if i >= 0 && i <= u32::MAX as i64 => Ok(Ref::Valid(i as Index)),
            other => Err(Error::Integrity(format!("index out of range: {other}"))),
        }
    }
}

/// An assertion after index remapping, with its four indicator values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedAssertion {
    pub id: i64,
    pub concept1: Index,
    pub concept2: Index,
    pub relation: Index,
    pub frequency: Index,
    pub frame: Option<Index>,
    pub surface1: Option<Index>,
    pub surface2: Option<Index>,
    pub raw: Ref,
    pub score: i64,
    pub frame_indicator: u8,
    pub surface_indicator: u8,
    pub raw_indicator: u8,
    pub score_indicator: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedConcept {
    pub id: i64,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedRelation {
    pub id: i64,
    pub name: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFrequency {
    pub id: i64,
    pub value: i64,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFrame {
    pub id: i64,
    pub relation: Index,
    pub frequency: Index,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSurfaceForm {
    pub id: i64,
    pub concept: Index,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedRawAssertion {
    pub id: i64,
    pub sentence: Index,
    pub assertion: Ref,
    pub surface1: Ref,
    pub surface2: Ref,
    pub frame: Ref,
    pub score: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSentence {
    pub id: i64,
    pub score: i64,
    pub text: String,
}

/// ID-to-index map for one table, covering every ID of the original dump.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdIndexMap {
    /// IDs that exist in the original table (whether or not in the closure).
    pub db_ids: IdSet,
    /// Closure index per ID, for IDs that made it into the closure.
    pub index: HashMap<i64, Index>,
}

impl IdIndexMap {
    /// -1 for IDs absent from the dump, -2 for IDs present in the dump but
    /// outside the closure, the index otherwise.
    pub fn entry(&self, id: i64) -> i64 {
        match self.index.get(&id) {
            Some(&i) => i as i64,
            None if self.db_ids.contains(id) => -2,
            None => -1,
        }
    }

    pub fn lines(&self) -> i64 {
        self.db_ids.max_id().map_or(0, |m| m + 1)
    }
}

/// The closure of the English-language assertions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosedKb {
    pub assertions: Vec<ClosedAssertion>,
    pub concepts: Vec<ClosedConcept>,
    pub relations: Vec<ClosedRelation>,
    pub frequencies: Vec<ClosedFrequency>,
    pub frames: Vec<ClosedFrame>,
    pub surface_forms: Vec<ClosedSurfaceForm>,
    pub raw_assertions: Vec<ClosedRawAssertion>,
    pub sentences: Vec<ClosedSentence>,

    /// Number of concepts referenced directly by assertions. These occupy
    /// indices `0..input_concepts`; concepts raised through surface-form
    /// discrepancies follow.
    pub input_concepts: usize,
    /// Number of surface forms referenced as a best surface by some
    /// assertion; raised surface forms follow.
    pub input_surface_forms: usize,
    /// Number of frames referenced as a best frame by some assertion.
    pub input_frames: usize,

    pub concept_map: IdIndexMap,
    pub relation_map: IdIndexMap,
    pub frequency_map: IdIndexMap,
    pub frame_map: IdIndexMap,
    pub surface_form_map: IdIndexMap,
    pub raw_assertion_map: IdIndexMap,
    pub sentence_map: IdIndexMap,
    pub assertion_map: IdIndexMap,

    /// Table scans performed, counting the ID-registry scan as pass 1.
    /// Zero when the closure was loaded from derived files.
    pub passes: u32,
    /// Data oddities worth surfacing (e.g. frequency value 0).
    pub diagnostics: Vec<String>,
}

impl ClosedKb {
    pub fn concept_text(&self, index: Index) -> &str {
        &self.concepts[index as usize].text
    }

    pub fn relation_name(&self, index: Index) -> &str {
        &self.relations[index as usize].name
    }

    pub fn frequency_value(&self, index: Index) -> i64 {
        self.frequencies[index as usize].value
    }

    /// True when the concept at `index` appears in some assertion.
    pub fn concept_in_input(&self, index: Index) -> bool {
        (index as usize) < self.input_concepts
    }

    /// True when the surface form at `index` is a best surface of some
    /// assertion.
    pub fn surface_in_input(&self, index: Index) -> bool {
        (index as usize) < self.input_surface_forms
    }

    /// Histogram of one indicator over all assertions.
    pub fn indicator_histogram(&self, pick: impl Fn(&ClosedAssertion) -> u8, classes: usize) -> Vec<u64> {
        let mut hist = vec![0u64; classes];
        for a in &self.assertions {
            hist[pick(a) as usize] += 1;
        }
        hist
    }

    /// Histogram of half-discrepancies; null/undefined raws count as h = 0.
    pub fn half_discrepancy_histogram(&self) -> std::collections::BTreeMap<u64, u64> {
        let mut hist = std::collections::BTreeMap::new();
        for a in &self.assertions {
            let h = match a.raw {
                Ref::Valid(r) => {
                    let raw = &self.raw_assertions[r as usize];
                    let sentence = &self.sentences[raw.sentence as usize];
                    half_discrepancy(ScoreTriple {
                        assertion: a.score,
                        raw: raw.score,
                        sentence: sentence.score,
                    })
                }
                _ => 0,
            };
            *hist.entry(h).or_insert(0) += 1;
        }
        hist
    }
}

/// Ordered collector for one table: "input" rows referenced directly by the
/// assertions, then rows raised later, both blocks in ID order at the end.
#[derive(Default)]
struct Membership {
    input: IdSet,
    raised: IdSet,
}

impl Membership {
    fn add_input(&mut self, id: i64) -> bool {
        self.input.insert(id)
    }

    /// Adds to the raised block unless already present anywhere.
    fn add_raised(&mut self, id: i64) -> bool {
        if self.input.contains(id) || self.raised.contains(id) {
            return false;
        }
        self.raised.insert(id);
        true
    }


    /// Final index assignment: input block in ID order, then raised block in
    /// ID order.
    fn assign(&self) -> (Vec<i64>, HashMap<i64, Index>) {
        let ordered: Vec<i64> = self.input.iter().chain(self.raised.iter()).collect();
        let map = ordered
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i as Index))
            .collect();
        (ordered, map)
    }
}

/// A contradiction: one typed concept pair affirmed and negated, both with
/// positive score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    pub concept1: Index,
    pub concept2: Index,
    pub relation: Index,
    /// Assertion index with positive frequency value.
    pub affirming: Index,
    /// Assertion index with negative frequency value.
    pub negating: Index,
}

/// Computes the closure of the English-language assertions.
pub fn compute_closure(tables: &RawTables, registry: &IdRegistry) -> Result<ClosedKb> {
    // Row lookup by ID.
    let concept_by_id: HashMap<i64, usize> =
        tables.concepts.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let relation_by_id: HashMap<i64, usize> =
        tables.relations.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let frequency_by_id: HashMap<i64, usize> =
        tables.frequencies.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let frame_by_id: HashMap<i64, usize> =
        tables.frames.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let surface_by_id: HashMap<i64, usize> =
        tables.surface_forms.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let raw_by_id: HashMap<i64, usize> =
        tables.raw_assertions.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    let sentence_by_id: HashMap<i64, usize> =
        tables.sentences.iter().enumerate().map(|(i, r)| (r.id, i)).collect();

    let mut english: Vec<&crate::ingest::AssertionRow> = tables
        .assertions
        .iter()
        .filter(|a| a.language_id == "en")
        .collect();
    english.sort_by_key(|a| a.id);

    let mut concepts = Membership::default();
    let mut relations = Membership::default();
    let mut frequencies = Membership::default();
    let mut frames = Membership::default();
    let mut surfaces = Membership::default();
    let mut raws = IdSet::new();
    let mut sentences = IdSet::new();

    // Pass 1 was the registry scan; pass 2 seeds from the assertions and
    // everything they reach directly (including through raw assertions).
    let mut passes = 2u32;

    let require = |kind: TableKind, id: i64, owner: &str| -> Result<()> {
        if registry.contains(kind, id) {
            Ok(())
        } else {
            Err(Error::Integrity(format!(
                "{owner} references {kind} ID {id}, which does not exist"
            )))
        }
    };

    for a in &english {
        let owner = format!("assertion {}", a.id);
        require(TableKind::Concept, a.concept1_id, &owner)?;
        require(TableKind::Concept, a.concept2_id, &owner)?;
        require(TableKind::Relation, a.relation_id, &owner)?;
        require(TableKind::Frequency, a.frequency_id, &owner)?;
        concepts.add_input(a.concept1_id);
        concepts.add_input(a.concept2_id);
        relations.add_input(a.relation_id);
        frequencies.add_input(a.frequency_id);
        if let Some(fid) = a.best_frame_id {
            require(TableKind::Frame, fid, &owner)?;
            frames.add_input(fid);
        }
        for sid in [a.best_surface1_id, a.best_surface2_id].into_iter().flatten() {
            require(TableKind::SurfaceForm, sid, &owner)?;
            surfaces.add_input(sid);
        }
        // Only the best raw reference is allowed to dangle.
        if let Resolution::Valid(rid) = resolve(registry, TableKind::RawAssertion, a.best_raw_id) {
            raws.insert(rid);
        }
    }

    // References held by the raw assertions themselves: the sentence must
    // exist; surface forms and frames not already in the input are raised.
    let mut raised_surfaces = Vec::new();
    let mut raised_frames = Vec::new();
    for rid in raws.iter() {
        let raw = &tables.raw_assertions[raw_by_id[&rid]];
        match raw.sentence_id {
            Some(sid) if registry.contains(TableKind::Sentence, sid) => {
                sentences.insert(sid);
            }
            Some(sid) => {
                return Err(Error::Integrity(format!(
                    "raw assertion {rid} references missing sentence {sid}"
                )))
            }
            None => {
                return Err(Error::Integrity(format!(
                    "raw assertion {rid} has no sentence"
                )))
            }
        }
        for sid in [raw.surface1_id, raw.surface2_id].into_iter().flatten() {
            if registry.contains(TableKind::SurfaceForm, sid) && surfaces.add_raised(sid) {
                raised_surfaces.push(sid);
            }
        }
        if let Some(fid) = raw.frame_id {
            if registry.contains(TableKind::Frame, fid) && frames.add_raised(fid) {
                raised_frames.push(fid);
            }
        }
    }

    // Concepts named by input surface forms but absent from the assertions.
    let mut raised_concepts = Vec::new();
    for sid in surfaces.input.iter() {
        let s = &tables.surface_forms[surface_by_id[&sid]];
        require(TableKind::Concept, s.concept_id, &format!("surface form {sid}"))?;
        if concepts.add_raised(s.concept_id) {
            raised_concepts.push(s.concept_id);
        }
    }

    // Later passes load the raised rows and chase their own references.
    // Concepts, relations, and frequencies are leaves; surface forms can
    // raise a concept, frames can raise a relation or frequency. One loop
    // iteration is one load pass.
    let mut raised_leaves = 0usize;
    while !raised_surfaces.is_empty()
        || !raised_frames.is_empty()
        || !raised_concepts.is_empty()
        || raised_leaves > 0
    {
        passes += 1;
        raised_leaves = 0;
        let surfaces_batch = std::mem::take(&mut raised_surfaces);
        let frames_batch = std::mem::take(&mut raised_frames);
        raised_concepts.clear();
        for sid in surfaces_batch {
            let s = &tables.surface_forms[surface_by_id[&sid]];
            require(TableKind::Concept, s.concept_id, &format!("surface form {sid}"))?;
            if concepts.add_raised(s.concept_id) {
                raised_concepts.push(s.concept_id);
            }
        }
        for fid in frames_batch {
            let f = &tables.frames[frame_by_id[&fid]];
            let owner = format!("frame {fid}");
            require(TableKind::Relation, f.relation_id, &owner)?;
            require(TableKind::Frequency, f.frequency_id, &owner)?;
            if relations.add_raised(f.relation_id) {
                raised_leaves += 1;
            }
            if frequencies.add_raised(f.frequency_id) {
                raised_leaves += 1;
            }
        }
    }

    // Index assignment.
    let (concept_ids, concept_index) = concepts.assign();
    let (relation_ids, relation_index) = relations.assign();
    let (frequency_ids, frequency_index) = frequencies.assign();
    let (frame_ids, frame_index) = frames.assign();
    let (surface_ids, surface_index) = surfaces.assign();
    let raw_ids: Vec<i64> = raws.iter().collect();
    let raw_index: HashMap<i64, Index> =
        raw_ids.iter().enumerate().map(|(i, &id)| (id, i as Index)).collect();
    let sentence_ids: Vec<i64> = sentences.iter().collect();
    let sentence_index: HashMap<i64, Index> =
        sentence_ids.iter().enumerate().map(|(i, &id)| (id, i as Index)).collect();
    let assertion_index: HashMap<i64, Index> =
        english.iter().enumerate().map(|(i, a)| (a.id, i as Index)).collect();

    let mut kb = ClosedKb {
        concepts: concept_ids
            .iter()
            .map(|id| {
                let r = &tables.concepts[concept_by_id[id]];
                ClosedConcept { id: r.id, text: r.text.clone() }
            })
            .collect(),
        relations: relation_ids
            .iter()
            .map(|id| {
                let r = &tables.relations[relation_by_id[id]];
                ClosedRelation { id: r.id, name: r.name.clone(), description: r.description.clone() }
            })
            .collect(),
        frequencies: frequency_ids
            .iter()
            .map(|id| {
                let r = &tables.frequencies[frequency_by_id[id]];
                ClosedFrequency { id: r.id, value: r.value, text: r.text.clone() }
            })
            .collect(),
        frames: frame_ids
            .iter()
            .map(|id| {
                let r = &tables.frames[frame_by_id[id]];
                ClosedFrame {
                    id: r.id,
                    relation: relation_index[&r.relation_id],
                    frequency: frequency_index[&r.frequency_id],
                    text: r.text.clone(),
                }
            })
            .collect(),
        surface_forms: surface_ids
            .iter()
            .map(|id| {
                let r = &tables.surface_forms[surface_by_id[id]];
                ClosedSurfaceForm {
                    id: r.id,
                    concept: concept_index[&r.concept_id],
                    text: r.text.clone(),
                }
            })
            .collect(),
        raw_assertions: raw_ids
            .iter()
            .map(|id| {
                let r = &tables.raw_assertions[raw_by_id[id]];
                ClosedRawAssertion {
                    id: r.id,
                    sentence: sentence_index[&r.sentence_id.expect("checked above")],
                    assertion: map_ref(r.assertion_id, &assertion_index),
                    surface1: map_ref(r.surface1_id, &surface_index),
                    surface2: map_ref(r.surface2_id, &surface_index),
                    frame: map_ref(r.frame_id, &frame_index),
                    score: r.score,
                }
            })
            .collect(),
        sentences: sentence_ids
            .iter()
            .map(|id| {
                let r = &tables.sentences[sentence_by_id[id]];
                ClosedSentence { id: r.id, score: r.score, text: r.text.clone() }
            })
            .collect(),
        input_concepts: concepts.input.len(),
        input_surface_forms: surfaces.input.len(),
        input_frames: frames.input.len(),
        concept_map: make_map(registry, TableKind::Concept, &concept_index),
        relation_map: make_map(registry, TableKind::Relation, &relation_index),
        frequency_map: make_map(registry, TableKind::Frequency, &frequency_index),
        frame_map: make_map(registry, TableKind::Frame, &frame_index),
        surface_form_map: make_map(registry, TableKind::SurfaceForm, &surface_index),
        raw_assertion_map: make_map(registry, TableKind::RawAssertion, &raw_index),
        sentence_map: make_map(registry, TableKind::Sentence, &sentence_index),
        assertion_map: make_map(registry, TableKind::Assertion, &assertion_index),
        passes,
        ..ClosedKb::default()
    };

    // Assertion rows, then indicators against the finished tables.
    kb.assertions = english
        .iter()
        .map(|a| ClosedAssertion {
            id: a.id,
            concept1: concept_index[&a.concept1_id],
            concept2: concept_index[&a.concept2_id],
            relation: relation_index[&a.relation_id],
            frequency: frequency_index[&a.frequency_id],
            frame: a.best_frame_id.map(|id| frame_index[&id]),
            surface1: a.best_surface1_id.map(|id| surface_index[&id]),
            surface2: a.best_surface2_id.map(|id| surface_index[&id]),
            raw: map_ref(a.best_raw_id, &raw_index),
            score: a.score,
            frame_indicator: 0,
            surface_indicator: 0,
            raw_indicator: 0,
            score_indicator: 0,
        })
        .collect();
    indicators::classify_all(&mut kb)?;

    if kb.frequencies.iter().any(|f| f.value == 0) {
        kb.diagnostics.push(
            "frequency value 0 present; classified as non-positive for polarity".to_string(),
        );
    }
    Ok(kb)
}

fn resolve(registry: &IdRegistry, kind: TableKind, value: Option<i64>) -> Resolution {
    crate::ingest::resolve_reference(registry, kind, value)
}

fn map_ref(value: Option<i64>, index: &HashMap<i64, Index>) -> Ref {
    match value {
        None => Ref::Null,
        Some(id) => index.get(&id).map_or(Ref::Undefined, |&i| Ref::Valid(i)),
    }
}

fn make_map(registry: &IdRegistry, kind: TableKind, index: &HashMap<i64, Index>) -> IdIndexMap {
    IdIndexMap {
        db_ids: registry.ids(kind).clone(),
        index: index.clone(),
    }
}

/// Finds every typed concept pair that is both affirmed and negated by
/// positive-score assertions. Witnesses are the lowest-index assertion of
/// each sign; output is ordered by (concept1, concept2, relation).
pub fn detect_contradictions(kb: &ClosedKb) -> Vec<Contradiction> {
    type Witnesses = (Option<Index>, Option<Index>);
    let mut seen: HashMap<(Index, Index, Index), Witnesses> = HashMap::new();
    for (i, a) in kb.assertions.iter().enumerate() {
        if a.score <= 0 {
            continue;
        }
        let value = kb.frequency_value(a.frequency);
        if value == 0 {
            continue;
        }
        let slot = seen.entry((a.concept1, a.concept2, a.relation)).or_default();
        let side = if value > 0 { &mut slot.0 } else { &mut slot.1 };
        if side.is_none() {
            *side = Some(i as Index);
        }
    }
    let mut out: Vec<Contradiction> = seen
        .into_iter()
        .filter_map(|((c1, c2, rel), (pos, neg))| {
            Some(Contradiction {
                concept1: c1,
                concept2: c2,
                relation: rel,
                affirming: pos?,
                negating: neg?,
            })
        })
        .collect();
    out.sort_by_key(|c| (c.concept1, c.concept2, c.relation));
    out
}
