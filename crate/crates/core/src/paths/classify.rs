use std::collections::VecDeque;

use serde::Serialize;

use super::{least_signed_window, prefix_sums, Language, MoveWord};
use crate::error::{Error, Result};
use crate::patterns::{Alphabet, Symbol};
use crate::substitution::{iterate_1d, Substitution1D};

/// A substitution over symbols that each stand for a move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSubstitution {
    subst: Substitution1D,
    moves: Vec<i64>,
    seed: Symbol,
}

impl MoveSubstitution {
    pub fn new(subst: Substitution1D, moves: Vec<i64>, seed: Symbol) -> Result<Self> {
        if moves.len() != subst.alphabet().len() {
            return Err(Error::InvalidArgument(format!(
                "{} moves for {} symbols",
                moves.len(),
                subst.alphabet().len()
            )));
        }
        if seed as usize >= moves.len() {
            return Err(Error::InvalidArgument("seed outside the alphabet".into()));
        }
        Ok(MoveSubstitution { subst, moves, seed })
    }

    /// Reads a 1D substitution whose symbols are `0`, `+`, `-` (moves 0,
    /// +1, -1), seeded at `seed`.
    pub fn from_signs(subst: Substitution1D, seed: char) -> Result<Self> {
        let moves = subst
            .alphabet()
            .chars()
            .iter()
            .map(|&c| match c {
                '0' | '.' => Ok(0),
                '+' => Ok(1),
                '-' => Ok(-1),
                c => Err(Error::InvalidArgument(format!("symbol {c:?} is not a move"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let seed = subst
            .alphabet()
            .symbol_of(seed)
            .ok_or_else(|| Error::InvalidArgument(format!("seed {seed:?} not in alphabet")))?;
        MoveSubstitution::new(subst, moves, seed)
    }

    pub fn substitution(&self) -> &Substitution1D {
        &self.subst
    }

    pub fn step_bound(&self) -> u64 {
        self.moves.iter().map(|m| m.unsigned_abs()).max().unwrap_or(1).max(1)
    }

    pub fn symbols(&self, n: u32) -> Result<Vec<Symbol>> {
        iterate_1d(&self.subst, &[self.seed], n)
    }

    /// `τⁿ(seed)` read as moves.
    pub fn word(&self, n: u32) -> Result<MoveWord> {
        let w = self.symbols(n)?;
        MoveWord::new(w.iter().map(|&s| self.moves[s as usize]).collect(), self.step_bound())
    }

    /// Least `n` with `|τⁿ(seed)| ≥ len`, from letter counts.
    pub fn level_for_len(&self, len: usize) -> Result<u32> {
        let k = self.moves.len();
        let mut counts = vec![0u128; k];
        counts[self.seed as usize] = 1;
        for n in 0..=128u32 {
            let total: u128 = counts.iter().sum();
            if total >= len as u128 {
                return Ok(n);
            }
            let mut next = vec![0u128; k];
            for (a, &c) in counts.iter().enumerate() {
                for &b in self.subst.image(a as Symbol) {
                    next[b as usize] = next[b as usize].saturating_add(c);
                }
            }
            counts = next;
        }
        Err(Error::InvalidArgument(format!("substitution never reaches length {len}")))
    }

    /// Factors of `τⁿ(seed)` up to `max_len`, for `n` large enough that two
    /// consecutive levels agree on the top-length factors.
    pub fn language(&self, max_len: usize) -> Result<Language> {
        let mut n = self.level_for_len(max_len)?;
        let mut prev = Language::from_word(self.word(n)?.moves(), max_len);
        loop {
            n += 1;
            let next = Language::from_word(self.word(n)?.moves(), max_len);
            if next.count(max_len) == prev.count(max_len) {
                return Ok(next);
            }
            prev = next;
        }
    }

    /// `τ₁`: `+ ↦ ++--++`, `- ↦ --++--`.
    pub fn tau1() -> Self {
        Self::signs(&[('0', "0"), ('+', "++--++"), ('-', "--++--")])
    }

    /// `τ₂`: `+ ↦ ++-++`, `- ↦ --+--`.
    pub fn tau2() -> Self {
        Self::signs(&[('0', "0"), ('+', "++-++"), ('-', "--+--")])
    }

    /// `τ₃`: `+ ↦ ++-`, `- ↦ +--`.
    pub fn tau3() -> Self {
        Self::signs(&[('0', "0"), ('+', "++-"), ('-', "+--")])
    }

    /// `+ ↦ ++`.
    pub fn constant_up() -> Self {
        Self::signs(&[('0', "0"), ('+', "++"), ('-', "--")])
    }

    /// Differences of the Thue–Morse word, generated on overlapping
    /// 2-blocks `ab` (symbols `a`=00, `b`=01, `c`=10, `d`=11; moves 0, +1,
    /// -1, 0).
    pub fn thue_morse_derivative() -> Self {
        let s = Substitution1D::from_chars("abcd", &[('a', "bc"), ('b', "bd"), ('c', "ca"), ('d', "cb")])
            .expect("thue-morse blocks");
        MoveSubstitution::new(s, vec![0, 1, -1, 0], 1).expect("thue-morse moves")
    }

    fn signs(rules: &[(char, &str)]) -> Self {
        let s = Substitution1D::from_chars("0+-", rules).expect("sign substitution");
        MoveSubstitution::from_signs(s, '+').expect("sign moves")
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.subst.alphabet()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum PathClass {
    Ascending { constant: usize },
    Descending { constant: usize },
    Bounded { constant: u64 },
    UnboundedRecurrent {
        witness: String,
        start: usize,
        returns: Vec<usize>,
    },
    Inconclusive,
}

/// A classification together with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathClassVerdict {
    pub class: PathClass,
    pub horizon: usize,
    /// Level `n` of the examined word `τⁿ(seed)`.
    pub level: u32,
    pub examined_len: usize,
    /// Largest height range over windows of at most `horizon` moves.
    pub window_range: u64,
    /// Height range of the whole examined word.
    pub full_range: u64,
    /// Returns to `[0, r-1]` required for a recurrence verdict.
    pub min_returns: usize,
}

/// Bounded classification of the path space generated by `s`.
///
/// The examined word is `τⁿ(seed)` for the least `n` with length at least
/// `4 · horizon`. `min_returns` defaults to `⌊log₂ horizon⌋ + 1`.
pub fn classify_path_space(s: &MoveSubstitution, horizon: usize, min_returns: Option<usize>) -> Result<PathClassVerdict> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    let target = horizon
        .checked_mul(4)
        .ok_or(Error::InvalidArgument("horizon too large".into()))?;
    let level = s.level_for_len(target)?;
    let w = s.word(level)?;
    let min_returns = min_returns.unwrap_or(horizon.ilog2() as usize + 1);
    let heights = prefix_sums(w.moves());
    let window_range = max_window_range(&heights, horizon);
    let full_range = (heights.iter().max().unwrap() - heights.iter().min().unwrap()) as u64;
    let mut verdict = PathClassVerdict {
        class: PathClass::Inconclusive,
        horizon,
        level,
        examined_len: w.len(),
        window_range,
        full_range,
        min_returns,
    };
    verdict.class = if let Some(m) = least_signed_window(w.moves(), horizon, 1) {
        PathClass::Ascending { constant: m }
    } else if let Some(m) = least_signed_window(w.moves(), horizon, -1) {
        PathClass::Descending { constant: m }
    } else if window_range == full_range {
        PathClass::Bounded {
            constant: window_range,
        }
    } else {
        let r = s.step_bound() as i64;
        let (start, returns) = best_returns(&heights, horizon, r);
        if returns.len() >= min_returns {
            PathClass::UnboundedRecurrent {
                witness: w.window(start, horizon).to_string(),
                start,
                returns,
            }
        } else {
            PathClass::Inconclusive
        }
    };
    Ok(verdict)
}

fn max_window_range(heights: &[i64], horizon: usize) -> u64 {
    // Sliding max and min over windows of horizon + 1 positions.
    let width = horizon + 1;
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = 0u64;
    for i in 0..heights.len() {
        while maxq.back().is_some_and(|&j| heights[j] <= heights[i]) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&j| heights[j] >= heights[i]) {
            minq.pop_back();
        }
        minq.push_back(i);
        if maxq[0] + width <= i {
            maxq.pop_front();
        }
        if minq[0] + width <= i {
            minq.pop_front();
        }
        best = best.max((heights[maxq[0]] - heights[minq[0]]) as u64);
    }
    best
}

fn returns_from(heights: &[i64], start: usize, horizon: usize, r: i64) -> Vec<usize> {
    (1..=horizon)
        .filter(|&t| (0..r).contains(&(heights[start + t] - heights[start])))
        .collect()
}

// Start position below `horizon` whose window returns to [0, r-1] most
// often; the earliest wins ties.
fn best_returns(heights: &[i64], horizon: usize, r: i64) -> (usize, Vec<usize>) {
    let moves = heights.len() - 1;
    let last = (moves - horizon).min(horizon - 1);
    let mut best = (0, Vec::new());
    for start in 0..=last {
        let ret = returns_from(heights, start, horizon, r);
        if ret.len() > best.1.len() {
            best = (start, ret);
        }
    }
    best
}

/// Regenerates the examined word and re-checks the verdict's certificate.
pub fn replay_verdict(s: &MoveSubstitution, v: &PathClassVerdict) -> Result<bool> {
    let w = s.word(v.level)?;
    if w.len() != v.examined_len || w.len() < 4 * v.horizon {
        return Ok(false);
    }
    let heights = prefix_sums(w.moves());
    let full = (heights.iter().max().unwrap() - heights.iter().min().unwrap()) as u64;
    let window = max_window_range(&heights, v.horizon);
    if full != v.full_range || window != v.window_range {
        return Ok(false);
    }
    let windows_signed = |m: usize, sign: i64| {
        (0..=w.len() - m).all(|j| sign * (heights[j + m] - heights[j]) > 0)
    };
    let ok = match &v.class {
        PathClass::Ascending { constant } => {
            *constant <= v.horizon && windows_signed(*constant, 1) && (1..*constant).all(|m| !windows_signed(m, 1))
        }
        PathClass::Descending { constant } => {
            *constant <= v.horizon && windows_signed(*constant, -1) && (1..*constant).all(|m| !windows_signed(m, -1))
        }
        PathClass::Bounded { constant } => *constant == full && full == window,
        PathClass::UnboundedRecurrent {
            witness,
            start,
            returns,
        } => {
            let r = s.step_bound() as i64;
            full > window
                && w.window(*start, v.horizon).to_string() == *witness
                && returns.len() >= v.min_returns
                && returns_from(&heights, *start, v.horizon, r) == *returns
        }
        PathClass::Inconclusive => classify_path_space(s, v.horizon, Some(v.min_returns))? == *v,
    };
    Ok(ok)
}
