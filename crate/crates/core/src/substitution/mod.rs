//! One- and two-dimensional substitution systems, the block hierarchy
//! `P_{i,j}` with unbounded essential width, and the density words `w_k`.

mod blocks;
mod format;

use crate::error::{Error, Result};
use crate::patterns::{Alphabet, Cell, Dim, Pattern, Symbol, ZERO};
use crate::DEFAULT_CELL_CAP;

pub use blocks::{
    build_unbounded_rows, density, density_counts, density_word, BlockHierarchySpec,
};
pub use format::{parse_substitution, AnySubstitution};

/// A symbol-to-word substitution over a pointed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution1D {
    alphabet: Alphabet,
    rules: Vec<Vec<Symbol>>,
    cap: u128,
}

impl Substitution1D {
    /// `rules[a]` is the image of symbol `a`.
    pub fn new(alphabet: Alphabet, rules: Vec<Vec<Symbol>>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rules for an alphabet of {} symbols",
                rules.len(),
                alphabet.len()
            )));
        }
        for (a, img) in rules.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "image of {:?} is empty",
                    alphabet.char_of(a as Symbol).unwrap_or('?')
                )));
            }
            if img.iter().any(|&s| s as usize >= alphabet.len()) {
                return Err(Error::InvalidArgument("image uses a symbol outside the alphabet".into()));
            }
        }
        Ok(Substitution1D {
            alphabet,
            rules,
            cap: DEFAULT_CELL_CAP,
        })
    }

    /// Builds a substitution from `(symbol, image)` character pairs.
    pub fn from_chars(alphabet: &str, rules: &[(char, &str)]) -> Result<Self> {
        let alphabet = Alphabet::parse(alphabet)?;
        let mut table = vec![Vec::new(); alphabet.len()];
        for &(a, img) in rules {
            let a = alphabet
                .symbol_of(a)
                .ok_or_else(|| Error::InvalidArgument(format!("{a:?} not in alphabet")))?;
            table[a as usize] = encode(&alphabet, img)?;
        }
        Substitution1D::new(alphabet, table)
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, a: Symbol) -> &[Symbol] {
        &self.rules[a as usize]
    }

    /// One application of the substitution.
    pub fn apply(&self, word: &[Symbol]) -> Result<Vec<Symbol>> {
        let len: u128 = word.iter().map(|&a| self.rules[a as usize].len() as u128).sum();
        if len > self.cap {
            return Err(Error::SizeLimit {
                requested: len,
                cap: self.cap,
            });
        }
        let mut out = Vec::with_capacity(len as usize);
        for &a in word {
            out.extend_from_slice(&self.rules[a as usize]);
        }
        Ok(out)
    }

    pub fn encode(&self, s: &str) -> Result<Vec<Symbol>> {
        encode(&self.alphabet, s)
    }

    pub fn decode(&self, w: &[Symbol]) -> String {
        w.iter()
            .map(|&s| self.alphabet.char_of(s).unwrap_or('?'))
            .collect()
    }
}

fn encode(alphabet: &Alphabet, s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .map(|c| {
            alphabet
                .symbol_of(c)
                .ok_or_else(|| Error::InvalidArgument(format!("{c:?} not in alphabet")))
        })
        .collect()
}

/// `s` applied `n` times to `seed`.
pub fn iterate_1d(s: &Substitution1D, seed: &[Symbol], n: u32) -> Result<Vec<Symbol>> {
    let mut w = seed.to_vec();
    for _ in 0..n {
        w = s.apply(&w)?;
    }
    Ok(w)
}

/// A substitution sending each symbol to an `s × s` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution2D {
    alphabet: Alphabet,
    expansion: usize,
    // blocks[a][y * expansion + x], y counted from the bottom
    blocks: Vec<Vec<Symbol>>,
    cap: u128,
}

impl Substitution2D {
    /// `images[a]` must be a 2D pattern whose domain is exactly
    /// `[0, s) × [0, s)`.
    pub fn new(alphabet: Alphabet, expansion: usize, images: &[Pattern]) -> Result<Self> {
        if expansion < 2 {
            return Err(Error::InvalidArgument("expansion must be at least 2".into()));
        }
        if images.len() != alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for an alphabet of {} symbols",
                images.len(),
                alphabet.len()
            )));
        }
        let e = expansion as i64;
        let mut blocks = Vec::with_capacity(images.len());
        for img in images {
            if img.dim() != Dim::Two {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: 1,
                });
            }
            if img.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch(img.alphabet().spec()));
            }
            let full = img.len() == expansion * expansion
                && img.domain().all(|c| (0..e).contains(&c.x) && (0..e).contains(&c.y));
            if !full {
                return Err(Error::InvalidArgument(format!(
                    "every image must fill a {expansion}x{expansion} block"
                )));
            }
            let mut b = vec![ZERO; expansion * expansion];
            for (c, v) in img.iter() {
                b[c.y as usize * expansion + c.x as usize] = v;
            }
            blocks.push(b);
        }
        Ok(Substitution2D {
            alphabet,
            expansion,
            blocks,
            cap: DEFAULT_CELL_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn expansion(&self) -> usize {
        self.expansion
    }

    /// One application: cell `c` becomes the block with lower-left corner
    /// `s·c`.
    pub fn apply(&self, p: &Pattern) -> Result<Pattern> {
        if p.dim() != Dim::Two {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: 1,
            });
        }
        if p.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch(p.alphabet().spec()));
        }
        let e = self.expansion;
        let requested = p.len() as u128 * (e * e) as u128;
        if requested > self.cap {
            return Err(Error::SizeLimit {
                requested,
                cap: self.cap,
            });
        }
        let ei = e as i64;
        let mut out = Pattern::new(Dim::Two, self.alphabet.clone());
        let cells = out.cells_mut();
        for (c, a) in p.iter() {
            let bx = c.x.checked_mul(ei).ok_or(Error::CoordinateOverflow)?;
            let by = c.y.checked_mul(ei).ok_or(Error::CoordinateOverflow)?;
            let block = &self.blocks[a as usize];
            for dy in 0..e {
                for dx in 0..e {
                    let cell = Cell::new(bx + dx as i64, by + dy as i64);
                    cells.insert(cell, block[dy * e + dx]);
                }
            }
        }
        Ok(out)
    }
}

pub fn iterate_2d(s: &Substitution2D, seed: &Pattern, n: u32) -> Result<Pattern> {
    let mut p = seed.clone();
    for _ in 0..n {
        p = s.apply(&p)?;
    }
    Ok(p)
}

/// Ready-made substitutions used throughout the examples.
pub mod canned {
    use super::*;

    fn grid(alphabet: &Alphabet, rows_top_down: &[&str]) -> Pattern {
        let h = rows_top_down.len();
        let mut p = Pattern::new(Dim::Two, alphabet.clone());
        for (i, row) in rows_top_down.iter().enumerate() {
            for (x, c) in row.chars().enumerate() {
                let s = alphabet.symbol_of(c).expect("canned symbol");
                p.insert(Cell::new(x as i64, (h - 1 - i) as i64), s)
                    .expect("canned cell");
            }
        }
        p
    }

    /// `1` becomes a 3×3 plus, `0` a 3×3 block of zeros.
    pub fn plus() -> Substitution2D {
        let a = Alphabet::binary();
        let zero = grid(&a, &["000", "000", "000"]);
        let one = grid(&a, &["010", "111", "010"]);
        Substitution2D::new(a, 3, &[zero, one]).expect("plus substitution")
    }

    /// `1 ↦ 101`, `0 ↦ 000`.
    pub fn cantor() -> Substitution1D {
        Substitution1D::from_chars("01", &[('0', "000"), ('1', "101")]).expect("cantor")
    }

    /// `τ_n`: `0 ↦ 0^{2^n}`, `1 ↦ 1^{2^n - 1} 0`.
    pub fn tau_density(n: u32) -> Result<Substitution1D> {
        if n == 0 || n > 20 {
            return Err(Error::InvalidArgument(format!("tau_{n} outside 1..=20")));
        }
        let len = 1usize << n;
        let mut one = vec![1; len - 1];
        one.push(ZERO);
        Substitution1D::new(Alphabet::binary(), vec![vec![ZERO; len], one])
    }

    /// Single-cell 2D seed holding `1`.
    pub fn unit_seed() -> Pattern {
        Pattern::from_support(Dim::Two, [Cell::ORIGIN]).expect("unit seed")
    }
}
