//! The four per-assertion inconsistency indicators and the score
//! discrepancy metric.
//!
//! Each indicator classifies how an assertion's redundant cross-table fields
//! relate to the rows they point at: exact agreement, disagreement within the
//! input, disagreement escaping the input ("missing"), or null.

use crate::error::{Error, Result};
use crate::closure::{ClosedAssertion, ClosedKb, Index, Ref};

/// The three score layers of one assertion chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreTriple {
    pub assertion: i64,
    pub raw: i64,
    pub sentence: i64,
}

/// d = |s1-s2| + |s2-s3| + |s3-s1|. Always even.
pub fn discrepancy(t: ScoreTriple) -> u64 {
    let (s1, s2, s3) = (t.assertion, t.raw, t.sentence);
    s1.abs_diff(s2) + s2.abs_diff(s3) + s3.abs_diff(s1)
}

/// h = d / 2; equals max(s1,s2,s3) - min(s1,s2,s3).
pub fn half_discrepancy(t: ScoreTriple) -> u64 {
    discrepancy(t) / 2
}

/// Classifies the frame reference: 4 when null, else by which of the
/// (relation, frequency) fields agree with the frame row.
///
/// 0 relation and frequency agree; 1 only the frequency disagrees;
/// 2 only the relation disagrees; 3 both disagree.
pub fn frame_indicator(a: &ClosedAssertion, kb: &ClosedKb) -> u8 {
    let Some(frame) = a.frame else { return 4 };
    let f = &kb.frames[frame as usize];
    match (f.relation == a.relation, f.frequency == a.frequency) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    }
}

/// Agreement code for one concept-bearing reference: 0 the concepts match,
/// 1 they differ but the referenced concept is part of the input, 2 they
/// differ and the referenced concept is outside the input, 3 null.
fn concept_code(expected: Index, surface: Option<Index>, kb: &ClosedKb) -> u8 {
    match surface {
        None => 3,
        Some(s) => {
            let c = kb.surface_forms[s as usize].concept;
            if c == expected {
                0
            } else if kb.concept_in_input(c) {
                1
            } else {
                2
            }
        }
    }
}

/// Classifies both best-surface references: 4 * code(surface 1) +
/// code(surface 2), codes as in [`concept_code`].
pub fn surface_indicator(a: &ClosedAssertion, kb: &ClosedKb) -> u8 {
    4 * concept_code(a.concept1, a.surface1, kb) + concept_code(a.concept2, a.surface2, kb)
}

/// Agreement code for a surface field of the raw assertion against the
/// assertion's best surface: 0 same surface form, 1 different but within the
/// input, 2 different and outside the input (or unresolvable).
fn raw_surface_code(best: Option<Index>, raw_surface: Ref, kb: &ClosedKb) -> u8 {
    match (best, raw_surface) {
        (None, Ref::Null) => 0,
        (Some(b), Ref::Valid(r)) if b == r => 0,
        (_, Ref::Valid(r)) => {
            if kb.surface_in_input(r) {
                1
            } else {
                2
            }
        }
        (_, Ref::Null) | (_, Ref::Undefined) => 2,
    }
}

/// Classifies the raw-assertion reference. 36 when null, 37 when the ID is
/// undefined; otherwise 18a + 9f + 3c1 + c2 where a and f flag disagreement
/// of the back-reference and the frame, and c1, c2 are the surface codes.
pub fn raw_indicator(a: &ClosedAssertion, self_index: Index, kb: &ClosedKb) -> u8 {
    let raw = match a.raw {
        Ref::Null => return 36,
        Ref::Undefined => return 37,
        Ref::Valid(r) => &kb.raw_assertions[r as usize],
    };
    let assertion_agrees = raw.assertion == Ref::Valid(self_index);
    let frame_agrees = match (a.frame, raw.frame) {
        (None, Ref::Null) => true,
        (Some(b), Ref::Valid(r)) => b == r,
        _ => false,
    };
    let c1 = raw_surface_code(a.surface1, raw.surface1, kb);
    let c2 = raw_surface_code(a.surface2, raw.surface2, kb);
    18 * u8::from(!assertion_agrees) + 9 * u8::from(!frame_agrees) + 3 * c1 + c2
}

/// Two signs only: strictly positive, or non-positive.
fn positive(score: i64) -> bool {
    score > 0
}

/// Classifies the three score layers.
///
/// 0 all equal; 1 no raw assertion to compare against; 2-7 exactly one pair
/// equal, split by whether the odd score has the same sign as the pair
/// (assertion+raw 2/3, assertion+sentence 4/5, raw+sentence 6/7); 8 all
/// three differ with one sign, 9 all three differ with mixed signs.
pub fn score_indicator(t: ScoreTriple, raw: Ref) -> u8 {
    if !matches!(raw, Ref::Valid(_)) {
        return 1;
    }
    let (s1, s2, s3) = (t.assertion, t.raw, t.sentence);
    if s1 == s2 && s2 == s3 {
        0
    } else if s1 == s2 {
        if positive(s3) == positive(s1) {
            2
        } else {
            3
        }
    } else if s1 == s3 {
        if positive(s2) == positive(s1) {
            4
        } else {
            5
        }
    } else if s2 == s3 {
        if positive(s1) == positive(s2) {
            6
        } else {
            7
        }
    } else if positive(s1) == positive(s2) && positive(s2) == positive(s3) {
        8
    } else {
        9
    }
}

/// Fills the four indicator fields of every assertion.
pub(super) fn classify_all(kb: &mut ClosedKb) -> Result<()> {
    let mut computed = Vec::with_capacity(kb.assertions.len());
    for (i, a) in kb.assertions.iter().enumerate() {
        if let Some(f) = a.frame {
            if f as usize >= kb.frames.len() {
                return Err(Error::Integrity(format!(
                    "assertion {}: frame index {f} out of range",
                    a.id
                )));
            }
        }
        let triple = match a.raw {
            Ref::Valid(r) => {
                let raw = &kb.raw_assertions[r as usize];
                ScoreTriple {
                    assertion: a.score,
                    raw: raw.score,
                    sentence: kb.sentences[raw.sentence as usize].score,
                }
            }
            _ => ScoreTriple { assertion: a.score, raw: 0, sentence: 0 },
        };
        computed.push((
            frame_indicator(a, kb),
            surface_indicator(a, kb),
            raw_indicator(a, i as Index, kb),
            score_indicator(triple, a.raw),
        ));
    }
    for (a, (fi, si, ri, sci)) in kb.assertions.iter_mut().zip(computed) {
        a.frame_indicator = fi;
        a.surface_indicator = si;
        a.raw_indicator = ri;
        a.score_indicator = sci;
    }
    Ok(())
}
