//! Finite patterns over pointed alphabets and the geometry of their
//! supports: `r`-components, blobs, zero-gluing, occurrences, widths and
//! densities.

mod blob;
mod ops;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry;

pub use blob::{blob_decomposition, blobs, Blob, ComponentBlob};
pub use ops::{
    connected_components, density_window, essential_width_lower_bound, occurrences,
    occurrences_in, sparse_not_uniform_family, sparsity, zero_glue,
};
pub use text::{from_text, to_text};

/// Index of a symbol inside its [`Alphabet`]. Index 0 is always the zero symbol.
pub type Symbol = u8;

/// The distinguished zero symbol.
pub const ZERO: Symbol = 0;

/// A point of `Z^d`, `d` in {1, 2}. One-dimensional cells keep `y = 0`.
///
/// Ordering is lexicographic on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub const fn at(x: i64) -> Self {
        Cell { x, y: 0 }
    }

    pub fn checked_add(self, v: Cell) -> Result<Cell> {
        Ok(Cell {
            x: self.x.checked_add(v.x).ok_or(Error::CoordinateOverflow)?,
            y: self.y.checked_add(v.y).ok_or(Error::CoordinateOverflow)?,
        })
    }

    pub fn checked_sub(self, v: Cell) -> Result<Cell> {
        Ok(Cell {
            x: self.x.checked_sub(v.x).ok_or(Error::CoordinateOverflow)?,
            y: self.y.checked_sub(v.y).ok_or(Error::CoordinateOverflow)?,
        })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn as_u8(self) -> u8 {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

/// A pointed alphabet of single-character symbols; the zero symbol is
/// stored first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(zero: char, others: &[char]) -> Result<Self> {
        let mut symbols = vec![zero];
        symbols.extend_from_slice(others);
        Self::from_symbols(symbols)
    }

    /// Parses an alphabet spec such as `"012"`: zero first, then the others.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::from_symbols(spec.chars().collect())
    }

    fn from_symbols(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("alphabet needs a zero symbol".into()));
        }
        if symbols.len() > 256 {
            return Err(Error::InvalidArgument("alphabet has more than 256 symbols".into()));
        }
        let distinct: BTreeSet<char> = symbols.iter().copied().collect();
        if distinct.len() != symbols.len() {
            return Err(Error::InvalidArgument("alphabet symbols must be distinct".into()));
        }
        if symbols.iter().any(|c| c.is_whitespace() || *c == '?') {
            return Err(Error::InvalidArgument("'?' and whitespace are reserved".into()));
        }
        if symbols[1..].contains(&'.') {
            return Err(Error::InvalidArgument("'.' may only be the zero symbol".into()));
        }
        Ok(Alphabet { symbols })
    }

    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero_char(&self) -> char {
        self.symbols[0]
    }

    pub fn chars(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, s: Symbol) -> Option<char> {
        self.symbols.get(s as usize).copied()
    }

    /// Symbol for `c`; `.` is always accepted for zero.
    pub fn symbol_of(&self, c: char) -> Option<Symbol> {
        if c == '.' {
            return Some(ZERO);
        }
        self.symbols.iter().position(|&d| d == c).map(|i| i as Symbol)
    }

    pub fn spec(&self) -> String {
        self.symbols.iter().collect()
    }
}

/// A finite partial map from cells to symbols.
///
/// The domain is exactly the key set; the support is the set of domain
/// cells carrying a nonzero symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    dim: Dim,
    alphabet: Alphabet,
    cells: BTreeMap<Cell, Symbol>,
}

impl Pattern {
    pub fn new(dim: Dim, alphabet: Alphabet) -> Self {
        Pattern {
            dim,
            alphabet,
            cells: BTreeMap::new(),
        }
    }

    /// A 1D pattern holding `word` on cells `offset .. offset + len`.
    pub fn from_word(alphabet: Alphabet, word: &[Symbol], offset: i64) -> Result<Self> {
        let mut p = Pattern::new(Dim::One, alphabet);
        for (i, &s) in word.iter().enumerate() {
            let x = offset
                .checked_add(i as i64)
                .ok_or(Error::CoordinateOverflow)?;
            p.insert(Cell::at(x), s)?;
        }
        Ok(p)
    }

    /// A binary 1D pattern from a string of `0`/`1`, starting at cell 0.
    pub fn binary_word(bits: &str) -> Result<Self> {
        let alphabet = Alphabet::binary();
        let word = bits
            .chars()
            .map(|c| {
                alphabet
                    .symbol_of(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("not a binary symbol: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::from_word(alphabet, &word, 0)
    }

    /// Binary pattern whose domain and support are both `cells`.
    pub fn from_support(dim: Dim, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut p = Pattern::new(dim, Alphabet::binary());
        for c in cells {
            p.insert(c, 1)?;
        }
        Ok(p)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn insert(&mut self, cell: Cell, symbol: Symbol) -> Result<()> {
        if symbol as usize >= self.alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "symbol index {symbol} outside alphabet of size {}",
                self.alphabet.len()
            )));
        }
        if self.dim == Dim::One && cell.y != 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 2,
            });
        }
        self.cells.insert(cell, symbol);
        Ok(())
    }

    pub fn get(&self, cell: Cell) -> Option<Symbol> {
        self.cells.get(&cell).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains_key(&cell)
    }

    /// Domain cells with their symbols, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, Symbol)> + '_ {
        self.cells.iter().map(|(c, s)| (*c, *s))
    }

    pub fn domain(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.keys().copied()
    }

    pub fn support(&self) -> BTreeSet<Cell> {
        self.iter().filter(|(_, s)| *s != ZERO).map(|(c, _)| c).collect()
    }

    pub fn support_len(&self) -> usize {
        self.cells.values().filter(|s| **s != ZERO).count()
    }

    /// `(min, max)` corners of the domain's bounding box.
    pub fn bounds(&self) -> Option<(Cell, Cell)> {
        let mut it = self.cells.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi.x = hi.x.max(c.x);
            hi.y = hi.y.max(c.y);
        }
        Some((lo, hi))
    }

    pub fn translate(&self, v: Cell) -> Result<Pattern> {
        let mut cells = BTreeMap::new();
        for (c, s) in self.iter() {
            cells.insert(c.checked_add(v)?, s);
        }
        Ok(Pattern {
            dim: self.dim,
            alphabet: self.alphabet.clone(),
            cells,
        })
    }

    /// Same pattern with every missing cell of the bounding box grown by
    /// `margin` filled with zero.
    pub fn padded(&self, margin: u64) -> Result<Pattern> {
        let Some((lo, hi)) = self.bounds() else {
            return Ok(self.clone());
        };
        let m = i64::try_from(margin).map_err(|_| Error::CoordinateOverflow)?;
        let (dy_lo, dy_hi) = match self.dim {
            Dim::One => (0, 0),
            Dim::Two => (m, m),
        };
        let x0 = lo.x.checked_sub(m).ok_or(Error::CoordinateOverflow)?;
        let x1 = hi.x.checked_add(m).ok_or(Error::CoordinateOverflow)?;
        let y0 = lo.y.checked_sub(dy_lo).ok_or(Error::CoordinateOverflow)?;
        let y1 = hi.y.checked_add(dy_hi).ok_or(Error::CoordinateOverflow)?;
        let mut out = self.clone();
        for y in y0..=y1 {
            for x in x0..=x1 {
                out.cells.entry(Cell::new(x, y)).or_insert(ZERO);
            }
        }
        Ok(out)
    }

    /// Adds zero cells so that the pattern is `r`-padded.
    pub fn pad_support(&self, r: u64) -> Result<Pattern> {
        let ball = geometry::ball_union(self.dim, &self.support(), r)?;
        let mut out = self.clone();
        for c in ball {
            out.cells.entry(c).or_insert(ZERO);
        }
        Ok(out)
    }

    /// Rows of a 2D pattern (bottom to top over the bounding box) as 1D
    /// patterns indexed by `x`; a 1D pattern is its own single row.
    pub fn rows(&self) -> Vec<Pattern> {
        match self.dim {
            Dim::One => vec![self.clone()],
            Dim::Two => {
                let Some((lo, hi)) = self.bounds() else {
                    return Vec::new();
                };
                let mut rows: Vec<Pattern> = (lo.y..=hi.y)
                    .map(|_| Pattern::new(Dim::One, self.alphabet.clone()))
                    .collect();
                for (c, s) in self.iter() {
                    rows[(c.y - lo.y) as usize].cells.insert(Cell::at(c.x), s);
                }
                rows
            }
        }
    }

    /// The 1D pattern's symbols from its least to greatest cell, provided
    /// the domain is an interval.
    pub fn word(&self) -> Result<Vec<Symbol>> {
        if self.dim != Dim::One {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 2,
            });
        }
        let Some((lo, hi)) = self.bounds() else {
            return Ok(Vec::new());
        };
        if (hi.x as i128 - lo.x as i128 + 1) as usize != self.cells.len() {
            return Err(Error::InvalidArgument("domain is not an interval".into()));
        }
        Ok(self.cells.values().copied().collect())
    }

    pub(crate) fn cells_mut(&mut self) -> &mut BTreeMap<Cell, Symbol> {
        &mut self.cells
    }

    pub(crate) fn from_parts(dim: Dim, alphabet: Alphabet, cells: BTreeMap<Cell, Symbol>) -> Self {
        Pattern {
            dim,
            alphabet,
            cells,
        }
    }
}
