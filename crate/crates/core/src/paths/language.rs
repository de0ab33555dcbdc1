use std::collections::BTreeSet;

use super::MoveWord;
use crate::error::{Error, Result};

/// A factor-closed set of move words of every length up to `max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    by_len: Vec<BTreeSet<Vec<i64>>>,
}

impl Language {
    /// Every word over `moves` up to length `max_len`; refuses more than
    /// `cap` words at the top length.
    pub fn full_shift(moves: &[i64], max_len: usize, cap: u128) -> Result<Self> {
        let letters: BTreeSet<i64> = moves.iter().copied().collect();
        let top = (letters.len() as u128)
            .checked_pow(max_len as u32)
            .unwrap_or(u128::MAX);
        if top > cap {
            return Err(Error::SizeLimit { requested: top, cap });
        }
        let mut by_len = vec![BTreeSet::from([Vec::new()])];
        for n in 1..=max_len {
            let mut next = BTreeSet::new();
            for w in &by_len[n - 1] {
                for &m in &letters {
                    let mut v = w.clone();
                    v.push(m);
                    next.insert(v);
                }
            }
            by_len.push(next);
        }
        Ok(Language { by_len })
    }

    /// All factors of `word` up to length `max_len`.
    pub fn from_word(word: &[i64], max_len: usize) -> Self {
        let mut by_len = vec![BTreeSet::new(); max_len + 1];
        by_len[0].insert(Vec::new());
        for (n, set) in by_len.iter_mut().enumerate().skip(1).take(word.len()) {
            set.extend(word.windows(n).map(<[i64]>::to_vec));
        }
        Language { by_len }
    }

    /// Factor closure of a set of words of equal length.
    pub fn from_top(words: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let words: BTreeSet<Vec<i64>> = words.into_iter().collect();
        let max_len = words.iter().next().map_or(0, Vec::len);
        if words.iter().any(|w| w.len() != max_len) {
            return Err(Error::InvalidArgument("top words must share one length".into()));
        }
        let mut by_len = vec![BTreeSet::new(); max_len + 1];
        by_len[0].insert(Vec::new());
        for w in &words {
            for (n, set) in by_len.iter_mut().enumerate().skip(1) {
                set.extend(w.windows(n).map(<[i64]>::to_vec));
            }
        }
        Ok(Language { by_len })
    }

    pub fn max_len(&self) -> usize {
        self.by_len.len() - 1
    }

    pub fn words(&self, len: usize) -> impl Iterator<Item = &Vec<i64>> {
        self.by_len.get(len).into_iter().flatten()
    }

    pub fn count(&self, len: usize) -> usize {
        self.by_len.get(len).map_or(0, BTreeSet::len)
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        self.by_len.get(w.len()).is_some_and(|s| s.contains(w))
    }
}

/// Shortest, then lexicographically least, word `w` of length at most
/// `max_len - horizon` such that every language word of length
/// `|w| + horizon` containing `w` keeps every height outside the
/// occurrence of `w` out of `[0, r-1]`, heights measured from the start
/// of `w`.
pub fn cut_path_search(lang: &Language, r: u64, horizon: usize) -> Option<MoveWord> {
    let max_len = lang.max_len();
    if horizon >= max_len {
        return None;
    }
    let r = i64::try_from(r).unwrap_or(i64::MAX);
    for len in 1..=max_len - horizon {
        let total = len + horizon;
        for w in lang.words(len) {
            let mut seen = false;
            let mut ok = true;
            'ext: for u in lang.words(total) {
                for a in 0..=horizon {
                    if &u[a..a + len] != w.as_slice() {
                        continue;
                    }
                    seen = true;
                    if !stays_out(u, a, len, r) {
                        ok = false;
                        break 'ext;
                    }
                }
            }
            if seen && ok {
                return Some(MoveWord::from_moves(w.clone()));
            }
        }
    }
    None
}

// Heights are indexed by positions 0..=u.len(); the span of w is a..=a+len.
fn stays_out(u: &[i64], a: usize, len: usize, r: i64) -> bool {
    let inside = |h: i64| (0..r).contains(&h);
    let mut h = 0i64;
    for t in (0..a).rev() {
        h -= u[t];
        if inside(h) {
            return false;
        }
    }
    h = u[a..a + len].iter().sum();
    for &m in &u[a + len..] {
        h += m;
        if inside(h) {
            return false;
        }
    }
    true
}
