//! One-dimensional cellular automata on finite configurations, glider and
//! nilpotency probes, and elements of the topological full group given by
//! local cocycle tables.

mod search;
mod tfg;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::patterns::{Alphabet, Symbol, ZERO};

pub use search::{find_glider, nilpotency_probe, Glider, NilpotencyVerdict, NonNilpotentWitness};
pub use tfg::{
    compose, parse_tfg, tfg_order_search, tfg_validate, OrderVerdict, TfgElement,
};

/// Largest local table accepted, in entries.
pub const TABLE_CAP: u128 = 1 << 22;

pub(crate) fn table_len(base: usize, len: usize) -> Result<usize> {
    let n = (base as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if n > TABLE_CAP {
        return Err(Error::SizeLimit {
            requested: n,
            cap: TABLE_CAP,
        });
    }
    Ok(n as usize)
}

/// Index of `word` in the lexicographic enumeration of words of its length.
pub(crate) fn word_index(base: usize, word: &[Symbol]) -> usize {
    word.iter().fold(0, |acc, &s| acc * base + s as usize)
}

pub(crate) fn index_word(base: usize, len: usize, mut idx: usize) -> Vec<Symbol> {
    let mut w = vec![ZERO; len];
    for slot in w.iter_mut().rev() {
        *slot = (idx % base) as Symbol;
        idx /= base;
    }
    w
}

/// A radius-`ρ` local rule on a pointed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaRule {
    alphabet: Alphabet,
    radius: usize,
    table: Vec<Symbol>,
}

impl CaRule {
    /// Tabulates `f` on every neighbourhood word of length `2ρ + 1`.
    pub fn from_fn(alphabet: Alphabet, radius: usize, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let base = alphabet.len();
        let width = 2 * radius + 1;
        let n = table_len(base, width)?;
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let s = f(&index_word(base, width, i));
            if s as usize >= base {
                return Err(Error::InvalidArgument(format!("rule output {s} outside the alphabet")));
            }
            table.push(s);
        }
        Ok(CaRule {
            alphabet,
            radius,
            table,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn is_zero_preserving(&self) -> bool {
        self.table[0] == ZERO
    }

    /// Image of the centre of `neighbourhood`.
    pub fn local(&self, neighbourhood: &[Symbol]) -> Symbol {
        self.table[word_index(self.alphabet.len(), neighbourhood)]
    }

    /// Maps every symbol to zero.
    pub fn zero(alphabet: Alphabet) -> Self {
        CaRule::from_fn(alphabet, 0, |_| ZERO).expect("radius 0")
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        CaRule::from_fn(alphabet, 0, |w| w[0]).expect("radius 0")
    }

    /// `f(x)_i = x_{i+1}`.
    pub fn shift(alphabet: Alphabet) -> Self {
        CaRule::from_fn(alphabet, 1, |w| w[2]).expect("radius 1")
    }

    /// `f(x)_i = x_i ⊕ x_{i+1}` on `{0, 1}`.
    pub fn xor() -> Self {
        CaRule::from_fn(Alphabet::binary(), 1, |w| w[1] ^ w[2]).expect("radius 1")
    }

    /// `a ↦ max(a - 1, 0)` on `{0, 1, 2}`.
    pub fn decrement() -> Self {
        let a = Alphabet::parse("012").expect("alphabet");
        CaRule::from_fn(a, 0, |w| w[0].saturating_sub(1)).expect("radius 0")
    }
}

/// Parses `ca <alphabet> radius <ρ>` followed by `<word> -> <symbol>`
/// lines, with an optional final `* -> <symbol>` default.
pub fn parse_ca(src: &str) -> Result<CaRule> {
    let (alphabet, radius, entries) = parse_table(src, "ca", |ln, rhs, alphabet| {
        let mut chars = rhs.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => alphabet
                .symbol_of(c)
                .map(i64::from)
                .ok_or_else(|| parse_err(ln, format!("{c:?} not in alphabet"))),
            _ => Err(parse_err(ln, "expected a single output symbol")),
        }
    })?;
    let table = entries.into_iter().map(|v| v as Symbol).collect();
    Ok(CaRule {
        alphabet,
        radius,
        table,
    })
}

type Entries = Vec<i64>;

/// Shared reader for CA and full-group tables.
pub(crate) fn parse_table(
    src: &str,
    keyword: &str,
    value: impl Fn(usize, &str, &Alphabet) -> Result<i64>,
) -> Result<(Alphabet, usize, Entries)> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty rule file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (alphabet, radius) = match head.as_slice() {
        [kw, spec, "radius", r] if *kw == keyword => {
            let a = Alphabet::parse(spec).map_err(|e| parse_err(ln, e.to_string()))?;
            let r: usize = r.parse().map_err(|_| parse_err(ln, format!("bad radius {r:?}")))?;
            (a, r)
        }
        _ => return Err(parse_err(ln, format!("expected `{keyword} <alphabet> radius <r>`"))),
    };
    let base = alphabet.len();
    let width = 2 * radius + 1;
    let n = table_len(base, width).map_err(|e| parse_err(ln, e.to_string()))?;
    let mut explicit: BTreeMap<usize, i64> = BTreeMap::new();
    let mut default = None;
    for (ln, line) in lines {
        if default.is_some() {
            return Err(parse_err(ln, "the `*` default must be the last line"));
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| parse_err(ln, "expected `<word> -> <value>`"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let v = value(ln, rhs, &alphabet)?;
        if lhs == "*" {
            default = Some(v);
            continue;
        }
        let word = lhs
            .chars()
            .map(|c| alphabet.symbol_of(c).ok_or_else(|| parse_err(ln, format!("{c:?} not in alphabet"))))
            .collect::<Result<Vec<_>>>()?;
        if word.len() != width {
            return Err(parse_err(ln, format!("neighbourhood must have {width} symbols")));
        }
        if explicit.insert(word_index(base, &word), v).is_some() {
            return Err(parse_err(ln, "duplicate neighbourhood"));
        }
    }
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        match explicit.get(&i).copied().or(default) {
            Some(v) => table.push(v),
            None => {
                let w: String = index_word(base, width, i)
                    .iter()
                    .map(|&s| alphabet.char_of(s).unwrap_or('?'))
                    .collect();
                return Err(parse_err(ln, format!("no entry for {w:?} and no `*` default")));
            }
        }
    }
    Ok((alphabet, radius, table))
}

/// A configuration that is zero outside `offset .. offset + word.len()`,
/// stored without leading or trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteConfig {
    pub offset: i64,
    pub word: Vec<Symbol>,
}

impl FiniteConfig {
    pub fn new(offset: i64, word: &[Symbol]) -> Self {
        let Some(first) = word.iter().position(|&s| s != ZERO) else {
            return FiniteConfig {
                offset: 0,
                word: Vec::new(),
            };
        };
        let last = word.iter().rposition(|&s| s != ZERO).expect("nonzero present");
        FiniteConfig {
            offset: offset + first as i64,
            word: word[first..=last].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.word.is_empty()
    }

    pub fn get(&self, i: i64) -> Symbol {
        let k = i - self.offset;
        if k < 0 {
            return ZERO;
        }
        self.word.get(k as usize).copied().unwrap_or(ZERO)
    }

    pub fn nonzero_count(&self) -> usize {
        self.word.iter().filter(|&&s| s != ZERO).count()
    }

    pub fn translate(&self, v: i64) -> Self {
        FiniteConfig {
            offset: if self.is_zero() { 0 } else { self.offset + v },
            word: self.word.clone(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.word.iter().map(|&s| alphabet.char_of(s).unwrap_or('?')).collect()
    }
}

/// One application of `rule` to `c`.
pub fn step(rule: &CaRule, c: &FiniteConfig) -> FiniteConfig {
    if c.is_zero() {
        return c.clone();
    }
    let r = rule.radius as i64;
    let lo = c.offset - r;
    let hi = c.offset + c.word.len() as i64 - 1 + r;
    let mut nb = vec![ZERO; 2 * rule.radius + 1];
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for i in lo..=hi {
        for (k, slot) in nb.iter_mut().enumerate() {
            *slot = c.get(i - r + k as i64);
        }
        out.push(rule.local(&nb));
    }
    FiniteConfig::new(lo, &out)
}

/// `c, f(c), …, f^steps(c)`.
pub fn evolve(rule: &CaRule, c: &FiniteConfig, steps: usize) -> Result<Vec<FiniteConfig>> {
    if !rule.is_zero_preserving() {
        return Err(Error::NotZeroPreserving);
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(c.clone());
    for _ in 0..steps {
        let next = step(rule, out.last().expect("nonempty"));
        out.push(next);
    }
    debug_assert!(light_cone_holds(rule.radius, &out));
    Ok(out)
}

fn light_cone_holds(radius: usize, traj: &[FiniteConfig]) -> bool {
    let Some(start) = traj.first().filter(|c| !c.is_zero()) else {
        return traj.iter().all(FiniteConfig::is_zero);
    };
    let lo = start.offset;
    let hi = start.offset + start.word.len() as i64 - 1;
    traj.iter().enumerate().all(|(t, c)| {
        let spread = (radius * t) as i64;
        c.is_zero() || (c.offset >= lo - spread && c.offset + c.word.len() as i64 - 1 <= hi + spread)
    })
}

/// Nonzero cell counts along `c, f(c), …, f^horizon(c)`.
pub fn asymptotic_profile(rule: &CaRule, c: &FiniteConfig, horizon: usize) -> Result<Vec<usize>> {
    Ok(evolve(rule, c, horizon)?.iter().map(FiniteConfig::nonzero_count).collect())
}

/// One application of `rule` to the cyclic word `w`.
pub fn step_cyclic(rule: &CaRule, w: &[Symbol]) -> Vec<Symbol> {
    let n = w.len() as i64;
    let r = rule.radius as i64;
    let mut nb = vec![ZERO; 2 * rule.radius + 1];
    (0..n)
        .map(|i| {
            for (k, slot) in nb.iter_mut().enumerate() {
                *slot = w[(i - r + k as i64).rem_euclid(n) as usize];
            }
            rule.local(&nb)
        })
        .collect()
}
