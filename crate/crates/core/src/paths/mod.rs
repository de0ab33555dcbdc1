//! Height paths and their move sequences: discrete derivative and
//! integral, visit profiles, ascension constants, cut paths, and bounded
//! classification of substitutive path spaces.

mod classify;
mod language;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use classify::{classify_path_space, replay_verdict, MoveSubstitution, PathClass, PathClassVerdict};
pub use language::{cut_path_search, Language};

/// A finite sequence of moves, each of absolute value at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoveWord {
    moves: Vec<i64>,
    bound: u64,
}

impl MoveWord {
    pub fn new(moves: Vec<i64>, bound: u64) -> Result<Self> {
        if let Some(m) = moves.iter().find(|m| m.unsigned_abs() > bound) {
            return Err(Error::InvalidArgument(format!("move {m} exceeds the step bound {bound}")));
        }
        Ok(MoveWord { moves, bound })
    }

    /// Step bound taken from the largest move, at least 1.
    pub fn from_moves(moves: Vec<i64>) -> Self {
        let bound = moves.iter().map(|m| m.unsigned_abs()).max().unwrap_or(1).max(1);
        MoveWord { moves, bound }
    }

    /// Parses `+`, `-`, `0`, and signed multi-step moves such as `+2`.
    /// Whitespace separates tokens, so `+2 0` is a double step followed by
    /// a zero move.
    pub fn parse(s: &str) -> Result<Self> {
        let mut moves = Vec::new();
        for token in s.split_whitespace() {
            let chars: Vec<char> = token.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let sign = match chars[i] {
                    '+' => 1,
                    '-' => -1,
                    '0' => {
                        moves.push(0);
                        i += 1;
                        continue;
                    }
                    c => return Err(Error::InvalidArgument(format!("unexpected {c:?} in move word"))),
                };
                i += 1;
                let start = i;
                if i < chars.len() && matches!(chars[i], '1'..='9') {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let mag: i64 = if start == i {
                    1
                } else {
                    let digits: String = chars[start..i].iter().collect();
                    digits
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad magnitude {digits:?}")))?
                };
                moves.push(sign * mag);
            }
        }
        Ok(MoveWord::from_moves(moves))
    }

    pub fn moves(&self) -> &[i64] {
        &self.moves
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves `start .. start + len`.
    pub fn window(&self, start: usize, len: usize) -> MoveWord {
        MoveWord {
            moves: self.moves[start..start + len].to_vec(),
            bound: self.bound,
        }
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut after_digits = false;
        for &m in &self.moves {
            if after_digits && m == 0 {
                f.write_str(" ")?;
            }
            match m {
                0 => f.write_str("0")?,
                1 => f.write_str("+")?,
                -1 => f.write_str("-")?,
                m if m > 0 => write!(f, "+{m}")?,
                m => write!(f, "{m}")?,
            }
            after_digits = m.unsigned_abs() > 1;
        }
        Ok(())
    }
}

/// Heights of a path, starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HeightWord {
    heights: Vec<i64>,
}

impl HeightWord {
    /// Accepts any nonempty sequence and shifts it so that it starts at 0.
    pub fn normalized(heights: &[i64]) -> Result<Self> {
        let Some(&h0) = heights.first() else {
            return Err(Error::InvalidArgument("height word must be nonempty".into()));
        };
        Ok(HeightWord {
            heights: heights.iter().map(|h| h - h0).collect(),
        })
    }

    pub fn new(heights: Vec<i64>) -> Result<Self> {
        if heights.first() != Some(&0) {
            return Err(Error::InvalidArgument("height word must start at 0".into()));
        }
        Ok(HeightWord { heights })
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Number of visits to each height, keyed by height.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct VisitProfile {
    counts: BTreeMap<i64, u64>,
}

impl VisitProfile {
    pub fn from_heights(heights: impl IntoIterator<Item = i64>) -> Self {
        let mut counts = BTreeMap::new();
        for h in heights {
            *counts.entry(h).or_insert(0) += 1;
        }
        VisitProfile { counts }
    }

    pub fn get(&self, h: i64) -> u64 {
        self.counts.get(&h).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Least and greatest visited heights.
    pub fn span(&self) -> Option<(i64, i64)> {
        Some((*self.counts.keys().next()?, *self.counts.keys().next_back()?))
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }
}

/// Discrete derivative: `moves[i] = heights[i+1] - heights[i]`.
pub fn derivative(h: &HeightWord) -> MoveWord {
    MoveWord::from_moves(h.heights.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Running sums of `w`, starting from 0.
pub fn integrate(w: &MoveWord) -> HeightWord {
    let mut heights = Vec::with_capacity(w.len() + 1);
    let mut h = 0i64;
    heights.push(h);
    for &m in &w.moves {
        h += m;
        heights.push(h);
    }
    HeightWord { heights }
}

/// Visits of the path `integrate(w)`, all `len + 1` positions counted.
pub fn visit_profile(w: &MoveWord) -> VisitProfile {
    VisitProfile::from_heights(integrate(w).heights)
}

/// Visits of the two-sided path `left . right` whose centre sits at height
/// 0: `right` is walked forwards and `left` backwards from the centre.
pub fn centered_profile(left: &MoveWord, right: &MoveWord) -> VisitProfile {
    let mut heights = integrate(right).heights;
    let mut h = 0i64;
    for &m in left.moves.iter().rev() {
        h -= m;
        heights.push(h);
    }
    VisitProfile::from_heights(heights)
}

/// Least `m` such that every length-`m` window of `w` has positive sum.
pub fn ascension_constant(w: &MoveWord) -> Option<usize> {
    least_signed_window(&w.moves, w.len(), 1)
}

/// Least `m ≤ max_m` such that every length-`m` window sum has the sign of
/// `sign`.
pub(crate) fn least_signed_window(moves: &[i64], max_m: usize, sign: i64) -> Option<usize> {
    let prefix = prefix_sums(moves);
    (1..=max_m.min(moves.len())).find(|&m| (0..=moves.len() - m).all(|j| sign * (prefix[j + m] - prefix[j]) > 0))
}

pub(crate) fn prefix_sums(moves: &[i64]) -> Vec<i64> {
    let mut p = Vec::with_capacity(moves.len() + 1);
    p.push(0);
    let mut acc = 0;
    for &m in moves {
        acc += m;
        p.push(acc);
    }
    p
}
