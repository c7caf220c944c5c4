//! Relation-triple rules over the positive-score assertion set.
//!
//! A rule (X, Y, Z) is supported by every ordered concept triple (a, b, c)
//! with (a, X, b) and (b, Y, c) in the knowledge base, and succeeds when
//! (a, Z, c) is there too. Presence is direction-sensitive and deduplicated
//! per (concept pair, relation): parallel assertions count once. Premisses
//! always use the positive-score set regardless of polarity; conclusions use
//! the same set by default, optionally restricted to positive polarity.
//!
//! The miner enumerates typed two-edge paths once, reusing each (X, Y) join
//! for all conclusions via a per-pair relation bitmask.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::closure::{ClosedKb, Index};
use crate::error::{Error, Result};

/// Premisses X, Y and conclusion Z, as relation indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub x: Index,
    pub y: Index,
    pub z: Index,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleStats {
    pub rule: Rule,
    /// Concept triples satisfying both premisses.
    pub support: u64,
    /// Supporting triples whose conclusion edge exists.
    pub successes: u64,
}

impl RuleStats {
    pub fn ratio(&self) -> f64 {
        if self.support == 0 {
            0.0
        } else {
            self.successes as f64 / self.support as f64
        }
    }
}

/// Relations with at least `min_count` positive-score assertions (any
/// polarity).
pub fn eligible_relations(kb: &ClosedKb, min_count: u64) -> Vec<Index> {
    let mut counts = vec![0u64; kb.relations.len()];
    for a in &kb.assertions {
        if a.score > 0 {
            counts[a.relation as usize] += 1;
        }
    }
    (0..kb.relations.len() as Index)
        .filter(|&r| counts[r as usize] >= min_count)
        .collect()
}

/// Deduplicated directed typed edges of the positive-score set, indexed for
/// join enumeration. Relations are packed into a 32-bit mask per pair, so at
/// most 32 relations are supported (the schema has 30).
pub struct RuleIndex {
    relation_count: usize,
    /// Outgoing edges per concept: (target, relation mask), sorted by target.
    out: Vec<Vec<(Index, u32)>>,
    /// Conclusion masks, possibly restricted to positive polarity.
    out_conclusion: Vec<Vec<(Index, u32)>>,
    /// Outgoing edges per (relation, concept), targets sorted.
    out_by_relation: Vec<Vec<Vec<Index>>>,
}

impl RuleIndex {
    /// Builds the index. With `conclusion_positive_polarity`, the conclusion
    /// presence test additionally requires a positive frequency value.
    pub fn build(kb: &ClosedKb, conclusion_positive_polarity: bool) -> Result<RuleIndex> {
        let r = kb.relations.len();
        if r > 32 {
            return Err(Error::Parameter(format!(
                "rule mining supports at most 32 relations, closure has {r}"
            )));
        }
        let n = kb.input_concepts;
        let mut pair_masks: HashMap<(Index, Index), (u32, u32)> = HashMap::new();
        for a in &kb.assertions {
            if a.score <= 0 {
                continue;
            }
            let entry = pair_masks.entry((a.concept1, a.concept2)).or_insert((0, 0));
            let bit = 1u32 << a.relation;
            entry.0 |= bit;
            if !conclusion_positive_polarity || kb.frequency_value(a.frequency) > 0 {
                entry.1 |= bit;
            }
        }

        let mut out: Vec<Vec<(Index, u32)>> = vec![Vec::new(); n];
        let mut out_conclusion: Vec<Vec<(Index, u32)>> = vec![Vec::new(); n];
        let mut out_by_relation: Vec<Vec<Vec<Index>>> = vec![vec![Vec::new(); n]; r];
        for (&(a, c), &(mask, conclusion_mask)) in &pair_masks {
            out[a as usize].push((c, mask));
            if conclusion_mask != 0 {
                out_conclusion[a as usize].push((c, conclusion_mask));
            }
            for (rel, per_rel) in out_by_relation.iter_mut().enumerate() {
                if mask & (1 << rel) != 0 {
                    per_rel[a as usize].push(c);
                }
            }
        }
        for list in out.iter_mut().chain(out_conclusion.iter_mut()) {
            list.sort_unstable_by_key(|&(c, _)| c);
        }
        for per_rel in &mut out_by_relation {
            for list in per_rel.iter_mut() {
                list.sort_unstable();
            }
        }
        Ok(RuleIndex {
            relation_count: r,
            out,
            out_conclusion,
            out_by_relation,
        })
    }

    pub fn concept_count(&self) -> usize {
        self.out.len()
    }

    fn conclusion_mask(&self, a: Index, c: Index) -> u32 {
        let list = &self.out_conclusion[a as usize];
        match list.binary_search_by_key(&c, |&(t, _)| t) {
            Ok(i) => list[i].1,
            Err(_) => 0,
        }
    }

    /// Support and successes of one rule.
    pub fn rule_stats(&self, rule: Rule) -> RuleStats {
        let mut support = 0u64;
        let mut successes = 0u64;
        self.scan_rule(rule, |_, _, _, success| {
            support += 1;
            successes += u64::from(success);
        });
        RuleStats { rule, support, successes }
    }

    /// Streams every supporting triple (a, b, c) with its outcome, in
    /// lexicographic (a, b, c) order.
    pub fn scan_rule(&self, rule: Rule, mut visit: impl FnMut(Index, Index, Index, bool)) {
        let zbit = 1u32 << rule.z;
        for a in 0..self.concept_count() as Index {
            for &b in &self.out_by_relation[rule.x as usize][a as usize] {
                for &c in &self.out_by_relation[rule.y as usize][b as usize] {
                    let success = self.conclusion_mask(a, c) & zbit != 0;
                    visit(a, b, c, success);
                }
            }
        }
    }

    /// Joint support and success counts for every relation triple, from one
    /// pass over the typed two-edge paths.
    fn joint_counts(&self) -> (Vec<u64>, Vec<u64>) {
        let r = self.relation_count;
        let chunk = 1024usize;
        let n = self.concept_count();
        let identity = || (vec![0u64; r * r], vec![0u64; r * r * r]);
        (0..n.div_ceil(chunk))
            .into_par_iter()
            .fold(identity, |(mut support, mut successes), block| {
                let lo = block * chunk;
                let hi = (lo + chunk).min(n);
                for a in lo..hi {
                    for &(b, xmask) in &self.out[a] {
                        for &(c, ymask) in &self.out[b as usize] {
                            let zmask = self.conclusion_mask(a as Index, c);
                            let mut xm = xmask;
                            while xm != 0 {
                                let x = xm.trailing_zeros() as usize;
                                xm &= xm - 1;
                                let mut ym = ymask;
                                while ym != 0 {
                                    let y = ym.trailing_zeros() as usize;
                                    ym &= ym - 1;
                                    support[x * r + y] += 1;
                                    let mut zm = zmask;
                                    while zm != 0 {
                                        let z = zm.trailing_zeros() as usize;
                                        zm &= zm - 1;
                                        successes[(x * r + y) * r + z] += 1;
                                    }
                                }
                            }
                        }
                    }
                }
                (support, successes)
            })
            .reduce(identity, |(mut sa, mut ca), (sb, cb)| {
                for (x, y) in sa.iter_mut().zip(sb) {
                    *x += y;
                }
                for (x, y) in ca.iter_mut().zip(cb) {
                    *x += y;
                }
                (sa, ca)
            })
    }
}

/// Exhaustively mines rules over the eligible relations, keeping those with
/// support >= `min_support` and success rate >= `min_ratio`. Output sorted
/// by (X, Y, Z).
pub fn mine_frequent(
    index: &RuleIndex,
    eligible: &[Index],
    min_support: u64,
    min_ratio: f64,
) -> Vec<RuleStats> {
    let r = index.relation_count;
    let (support, successes) = index.joint_counts();
    let mut out = Vec::new();
    for &x in eligible {
        for &y in eligible {
            let s = support[x as usize * r + y as usize];
            if s < min_support {
                continue;
            }
            for &z in eligible {
                let rule = Rule { x, y, z };
                let won = successes[(x as usize * r + y as usize) * r + z as usize];
                let stats = RuleStats { rule, support: s, successes: won };
                if stats.ratio() >= min_ratio {
                    out.push(stats);
                }
            }
        }
    }
    out.sort_by_key(|s| s.rule);
    out
}
