use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Alphabet, Cell, Dim, Pattern};
use crate::error::{parse_err, Result};

/// Writes `p` in the pattern text format. The bounding box is moved to the
/// origin; zero cells print as `.`, cells outside the domain as `?`.
pub fn to_text(p: &Pattern) -> String {
    let mut out = String::new();
    let Some((lo, hi)) = p.bounds() else {
        match p.dim() {
            Dim::One => out.push_str("dims 0\n"),
            Dim::Two => out.push_str("dims 0 0\n"),
        }
        let _ = writeln!(out, "alphabet {}", p.alphabet().spec());
        return out;
    };
    let w = hi.x - lo.x + 1;
    let h = hi.y - lo.y + 1;
    match p.dim() {
        Dim::One => {
            let _ = writeln!(out, "dims {w}");
        }
        Dim::Two => {
            let _ = writeln!(out, "dims {w} {h}");
        }
    }
    let _ = writeln!(out, "alphabet {}", p.alphabet().spec());
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            let ch = match p.get(Cell::new(x, y)) {
                None => '?',
                Some(0) => '.',
                Some(s) => p.alphabet().char_of(s).unwrap_or('?'),
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

/// Parses the pattern text format. Rows are listed top to bottom; the
/// bottom-left character lands on the origin.
pub fn from_text(src: &str) -> Result<Pattern> {
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing dims line"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (dim, w, h) = match dims.as_slice() {
        ["dims", w] => (Dim::One, parse_usize(ln, w)?, 1),
        ["dims", w, h] => (Dim::Two, parse_usize(ln, w)?, parse_usize(ln, h)?),
        _ => return Err(parse_err(ln, "expected `dims W` or `dims W H`")),
    };
    let (ln, alpha) = lines.next().ok_or_else(|| parse_err(2, "missing alphabet line"))?;
    let spec = alpha
        .strip_prefix("alphabet ")
        .ok_or_else(|| parse_err(ln, "expected `alphabet <symbols>`"))?;
    let alphabet = Alphabet::parse(spec).map_err(|e| parse_err(ln, e.to_string()))?;
    let rows = if w == 0 || h == 0 { 0 } else { h };
    let mut cells = BTreeMap::new();
    for line_idx in 0..rows {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| parse_err(ln + 1 + line_idx, "missing row"))?;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != w {
            return Err(parse_err(ln, format!("row has {} cells, expected {w}", chars.len())));
        }
        let y = match dim {
            Dim::One => 0,
            Dim::Two => (h - 1 - line_idx) as i64,
        };
        for (x, &c) in chars.iter().enumerate() {
            if c == '?' {
                continue;
            }
            let s = alphabet
                .symbol_of(c)
                .ok_or_else(|| parse_err(ln, format!("symbol {c:?} not in alphabet")))?;
            cells.insert(Cell::new(x as i64, y), s);
        }
    }
    for (ln, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(parse_err(ln, "trailing content after the last row"));
        }
    }
    Ok(Pattern::from_parts(dim, alphabet, cells))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("not a nonnegative integer: {s:?}")))
}
