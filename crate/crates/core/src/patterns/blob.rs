use std::collections::{BTreeMap, BTreeSet};

use super::{connected_components, Cell, Pattern, Symbol};
use crate::error::{Error, Result};
use crate::geometry;

/// An `r`-blob stored in canonical position: its lexicographically least
/// support cell sits at the origin and its domain is exactly `B_r(support)`.
///
/// Because the padding is canonical, two blobs are equal exactly when their
/// supports and the symbols on them agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Blob {
    radius: u64,
    pattern: Pattern,
}

impl Blob {
    /// Builds the canonical blob from support values already translated so
    /// that the least support cell is the origin.
    fn canonical(template: &Pattern, values: BTreeMap<Cell, Symbol>, radius: u64) -> Result<Self> {
        let support: BTreeSet<Cell> = values.keys().copied().collect();
        let domain = geometry::ball_union(template.dim(), &support, radius)?;
        let mut cells = BTreeMap::new();
        for c in domain {
            cells.insert(c, values.get(&c).copied().unwrap_or(super::ZERO));
        }
        Ok(Blob {
            radius,
            pattern: Pattern::from_parts(template.dim(), template.alphabet().clone(), cells),
        })
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn support(&self) -> BTreeSet<Cell> {
        self.pattern.support()
    }

    pub fn support_len(&self) -> usize {
        self.pattern.support_len()
    }

    /// The blob translated back to `anchor`.
    pub fn placed_at(&self, anchor: Cell) -> Result<Pattern> {
        self.pattern.translate(anchor)
    }
}

/// One `r`-component of a pattern's support, with its blob when the
/// component's padding fits inside the pattern's domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBlob {
    pub anchor: Cell,
    pub support: BTreeSet<Cell>,
    /// `None` when `B_r(support)` leaves the domain.
    pub blob: Option<Blob>,
}

/// Decomposes `p` into its `r`-components, marking the ones whose padding
/// is not available as truncated instead of failing.
pub fn blob_decomposition(p: &Pattern, r: u64) -> Result<Vec<ComponentBlob>> {
    let mut out = Vec::new();
    for comp in connected_components(&p.support(), r) {
        let anchor = *comp.iter().next().expect("components are nonempty");
        let padding = geometry::ball_union(p.dim(), &comp, r)?;
        let blob = if padding.iter().all(|c| p.contains(*c)) {
            let mut values = BTreeMap::new();
            for c in &comp {
                values.insert(c.checked_sub(anchor)?, p.get(*c).expect("support lies in domain"));
            }
            Some(Blob::canonical(p, values, r)?)
        } else {
            None
        };
        out.push(ComponentBlob {
            anchor,
            support: comp,
            blob,
        });
    }
    Ok(out)
}

/// The `r`-blobs of `p` with their anchors, ordered by anchor.
pub fn blobs(p: &Pattern, r: u64) -> Result<Vec<(Blob, Cell)>> {
    blob_decomposition(p, r)?
        .into_iter()
        .map(|cb| match cb.blob {
            Some(b) => Ok((b, cb.anchor)),
            None => Err(Error::PaddingUnavailable { anchor: cb.anchor }),
        })
        .collect()
}
