use std::collections::HashMap;

use serde::Serialize;

use super::{index_word, step, step_cyclic, table_len, CaRule, FiniteConfig};
use crate::error::{Error, Result};
use crate::patterns::{Symbol, ZERO};

/// `f^n(config) = σ^m(config)`, found from `seed` after `first_step` steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Glider {
    pub seed: FiniteConfig,
    pub config: FiniteConfig,
    pub first_step: usize,
    pub n: usize,
    pub m: i64,
}

/// Canonical seeds of width `1..=max_width`: first and last symbols
/// nonzero, by width and then lexicographically.
fn seeds(base: usize, max_width: usize) -> Result<impl Iterator<Item = FiniteConfig>> {
    table_len(base, max_width)?;
    Ok((1..=max_width).flat_map(move |w| {
        let total = base.pow(w as u32);
        (0..total).filter_map(move |i| {
            let word = index_word(base, w, i);
            (word[0] != ZERO && word[w - 1] != ZERO).then_some(FiniteConfig { offset: 0, word })
        })
    }))
}

enum Fate {
    Dies(usize),
    Repeats(Glider),
    Undecided,
}

fn fate(rule: &CaRule, seed: &FiniteConfig, max_time: usize) -> Fate {
    let mut seen: HashMap<Vec<Symbol>, (usize, i64)> = HashMap::new();
    let mut c = seed.clone();
    for t in 0..=max_time {
        if c.is_zero() {
            return Fate::Dies(t);
        }
        if let Some(&(s, off)) = seen.get(&c.word) {
            return Fate::Repeats(Glider {
                seed: seed.clone(),
                config: FiniteConfig {
                    offset: off,
                    word: c.word.clone(),
                },
                first_step: s,
                n: t - s,
                m: off - c.offset,
            });
        }
        seen.insert(c.word.clone(), (t, c.offset));
        if t < max_time {
            c = step(rule, &c);
        }
    }
    Fate::Undecided
}

/// First canonical configuration of width at most `max_width` whose orbit
/// returns to a translate of an earlier configuration within `max_time`
/// steps.
pub fn find_glider(rule: &CaRule, max_width: usize, max_time: usize) -> Result<Option<Glider>> {
    if !rule.is_zero_preserving() {
        return Err(Error::NotZeroPreserving);
    }
    for seed in seeds(rule.alphabet().len(), max_width)? {
        if let Fate::Repeats(g) = fate(rule, &seed, max_time) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum NonNilpotentWitness {
    /// The cyclic word `word` never dies: its orbit enters a nonzero cycle.
    PeriodicPoint { word: Vec<Symbol>, cycle_len: usize },
    Glider(Glider),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum NilpotencyVerdict {
    /// Every probed point is zero after `steps` steps, and `steps` is
    /// least with this property on the probe set.
    NilpotentOnProbe { steps: usize },
    NotNilpotent { witness: NonNilpotentWitness },
    Inconclusive { undecided: usize },
}

/// Probes finite configurations of width at most `max_width`, then cyclic
/// words of length at most `max_width`, for `max_time` steps each.
pub fn nilpotency_probe(rule: &CaRule, max_width: usize, max_time: usize) -> Result<NilpotencyVerdict> {
    if !rule.is_zero_preserving() {
        return Err(Error::NotZeroPreserving);
    }
    let base = rule.alphabet().len();
    table_len(base, max_width)?;
    let mut worst = 0;
    let mut undecided = 0;
    for seed in seeds(base, max_width)? {
        match fate(rule, &seed, max_time) {
            Fate::Dies(t) => worst = worst.max(t),
            Fate::Repeats(g) => {
                return Ok(NilpotencyVerdict::NotNilpotent {
                    witness: NonNilpotentWitness::Glider(g),
                })
            }
            Fate::Undecided => undecided += 1,
        }
    }
    for len in 1..=max_width {
        for i in 1..base.pow(len as u32) {
            let word = index_word(base, len, i);
            match cyclic_fate(rule, &word, max_time) {
                Fate::Dies(t) => worst = worst.max(t),
                Fate::Repeats(g) => {
                    return Ok(NilpotencyVerdict::NotNilpotent {
                        witness: NonNilpotentWitness::PeriodicPoint {
                            word,
                            cycle_len: g.n,
                        },
                    })
                }
                Fate::Undecided => undecided += 1,
            }
        }
    }
    Ok(if undecided == 0 {
        NilpotencyVerdict::NilpotentOnProbe { steps: worst }
    } else {
        NilpotencyVerdict::Inconclusive { undecided }
    })
}

fn cyclic_fate(rule: &CaRule, word: &[Symbol], max_time: usize) -> Fate {
    let mut seen: HashMap<Vec<Symbol>, usize> = HashMap::new();
    let mut w = word.to_vec();
    for t in 0..=max_time {
        if w.iter().all(|&s| s == ZERO) {
            return Fate::Dies(t);
        }
        if let Some(&s) = seen.get(&w) {
            let c = FiniteConfig { offset: 0, word: w };
            return Fate::Repeats(Glider {
                seed: c.clone(),
                config: c,
                first_step: s,
                n: t - s,
                m: 0,
            });
        }
        seen.insert(w.clone(), t);
        if t < max_time {
            w = step_cyclic(rule, &w);
        }
    }
    Fate::Undecided
}
