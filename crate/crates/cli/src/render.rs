//! Text, PBM and SVG output.

use std::fmt::Write;

use blobshift::paths::{integrate, MoveWord};
use blobshift::patterns::{to_text, Cell, Dim, Pattern, ZERO};
use blobshift::Error;

use crate::args::Format;

/// Renders a pattern. PBM rows run top-down over the bounding box of the
/// domain; cells outside the domain print as 0.
pub fn render(p: &Pattern, format: Format) -> Result<Vec<u8>, Error> {
    match format {
        Format::Text | Format::Json => Ok(to_text(p).into_bytes()),
        Format::Pbm => Ok(pbm(p).into_bytes()),
        Format::SvgPaths => Err(Error::UnsupportedFormat("svg-paths renders move words, not patterns".into())),
    }
}

fn pbm(p: &Pattern) -> String {
    let Some((lo, hi)) = p.bounds() else {
        return "P1\n0 0\n".into();
    };
    let (y0, y1) = match p.dim() {
        Dim::One => (0, 0),
        Dim::Two => (lo.y, hi.y),
    };
    let w = hi.x - lo.x + 1;
    let h = y1 - y0 + 1;
    let mut out = format!("P1\n{w} {h}\n");
    for y in (y0..=y1).rev() {
        for x in lo.x..=hi.x {
            let bit = p.get(Cell::new(x, y)).is_some_and(|s| s != ZERO);
            out.push(if bit { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Renders a move word: its text form, or one SVG polyline through the
/// `len + 1` points `(i, h_i)`.
pub fn render_moves(w: &MoveWord, format: Format) -> Result<Vec<u8>, Error> {
    match format {
        Format::Text | Format::Json => Ok(format!("{w}\n").into_bytes()),
        Format::SvgPaths => Ok(svg(w).into_bytes()),
        Format::Pbm => Err(Error::UnsupportedFormat("pbm renders patterns, not move words".into())),
    }
}

fn svg(w: &MoveWord) -> String {
    let heights = integrate(w);
    let hs = heights.heights();
    let lo = hs.iter().copied().min().unwrap_or(0);
    let hi = hs.iter().copied().max().unwrap_or(0);
    let width = hs.len().saturating_sub(1).max(1);
    let height = (hi - lo).max(1);
    let mut points = String::new();
    for (i, h) in hs.iter().enumerate() {
        if i > 0 {
            points.push(' ');
        }
        write!(points, "{},{}", i, hi - h).expect("write to string");
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 {} {}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.2\" points=\"{}\"/>\n</svg>\n",
        width + 2,
        height + 2,
        points
    )
}
