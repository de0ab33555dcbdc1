use std::collections::BTreeSet;

use num::rational::Ratio;

use super::{Cell, Dim, Pattern, ZERO};
use crate::error::{Error, Result};
use crate::geometry::SupportGraph;

/// Partition of `cells` into maximal `r`-connected subsets, ordered by
/// their least member.
pub fn connected_components(cells: &BTreeSet<Cell>, r: u64) -> Vec<BTreeSet<Cell>> {
    let g = SupportGraph::new(cells, r);
    g.component_indices()
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| g.nodes()[i]).collect())
        .collect()
}

/// Zero-gluing: the union of two patterns that may overlap only in cells
/// where both are zero.
pub fn zero_glue(p: &Pattern, q: &Pattern) -> Result<Pattern> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim().as_u8(),
            found: q.dim().as_u8(),
        });
    }
    if p.alphabet() != q.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            p.alphabet().spec(),
            q.alphabet().spec()
        )));
    }
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    let mut out = large.clone();
    for (c, s) in small.iter() {
        match large.get(c) {
            Some(t) if s != ZERO || t != ZERO => return Err(Error::GlueConflict { cell: c }),
            Some(_) => {}
            None => {
                out.cells_mut().insert(c, s);
            }
        }
    }
    Ok(out)
}

/// Every `v` such that `q` translated by `v` lies inside `p` and agrees with
/// it, ascending. An empty `q` matches at every cell of `p`'s domain.
pub fn occurrences(p: &Pattern, q: &Pattern) -> Vec<Cell> {
    if q.is_empty() {
        return p.domain().collect();
    }
    let (anchor, anchor_sym) = q.iter().next().expect("nonempty");
    let anchor_char = q.alphabet().char_of(anchor_sym);
    let mut out = Vec::new();
    for (c, s) in p.iter() {
        if p.alphabet().char_of(s) != anchor_char {
            continue;
        }
        let Ok(v) = c.checked_sub(anchor) else {
            continue;
        };
        let hit = q.iter().all(|(u, t)| match u.checked_add(v) {
            Ok(w) => p.get(w).and_then(|ps| p.alphabet().char_of(ps)) == q.alphabet().char_of(t),
            Err(_) => false,
        });
        if hit {
            out.push(v);
        }
    }
    out
}

/// [`occurrences`] restricted to translations in `window`; needed to give
/// an empty `q` a meaningful answer.
pub fn occurrences_in(p: &Pattern, q: &Pattern, window: &BTreeSet<Cell>) -> Vec<Cell> {
    if q.is_empty() {
        return window.iter().copied().collect();
    }
    occurrences(p, q)
        .into_iter()
        .filter(|v| window.contains(v))
        .collect()
}

/// Least number of intervals of radius `r` covering a sorted set of
/// positions; greedy from the left is optimal.
pub(crate) fn interval_cover(xs: impl IntoIterator<Item = i64>, r: u64) -> usize {
    let reach = 2 * r as i128;
    let mut count = 0;
    let mut covered_to: Option<i128> = None;
    for x in xs {
        let x = x as i128;
        if covered_to.is_none_or(|end| x > end) {
            count += 1;
            covered_to = Some(x + reach);
        }
    }
    count
}

/// Largest number of radius-`r` intervals any row needs to cover its
/// support. A lower bound for the essential width of every configuration
/// extending the rows.
pub fn essential_width_lower_bound(rows: &[Pattern], r: u64) -> usize {
    rows.iter()
        .map(|row| interval_cover(row.support().into_iter().map(|c| c.x), r))
        .max()
        .unwrap_or(0)
}

/// Maximum nonzero count over the rows.
pub fn sparsity(rows: &[Pattern]) -> usize {
    rows.iter().map(Pattern::support_len).max().unwrap_or(0)
}

/// Maximum nonzero density over all length-`window` subwords.
pub fn density_window(p: &Pattern, window: usize) -> Result<Ratio<u64>> {
    let word = p.word()?;
    if window == 0 || window > word.len() {
        return Err(Error::InvalidArgument(format!(
            "window {window} outside 1..={}",
            word.len()
        )));
    }
    let nz: Vec<u64> = word.iter().map(|&s| u64::from(s != ZERO)).collect();
    let mut cur: u64 = nz[..window].iter().sum();
    let mut best = cur;
    for i in window..nz.len() {
        cur = cur + nz[i] - nz[i - window];
        best = best.max(cur);
    }
    Ok(Ratio::new(best, window as u64))
}

/// The point whose support is `nZ ∩ [0, n²]`, restricted to `[-n, n² + n]`.
pub fn sparse_not_uniform_family(n: u64) -> Result<Pattern> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let n = i64::try_from(n).map_err(|_| Error::CoordinateOverflow)?;
    let sq = n.checked_mul(n).ok_or(Error::CoordinateOverflow)?;
    let hi = sq.checked_add(n).ok_or(Error::CoordinateOverflow)?;
    let mut p = Pattern::new(Dim::One, super::Alphabet::binary());
    for x in -n..=hi {
        let on = (0..=sq).contains(&x) && x % n == 0;
        p.insert(Cell::at(x), u8::from(on))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells1(xs: &[i64]) -> BTreeSet<Cell> {
        xs.iter().map(|&x| Cell::at(x)).collect()
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            connected_components(&cells1(&[0, 1, 5]), 1),
            vec![cells1(&[0, 1]), cells1(&[5])]
        );
        assert!(connected_components(&BTreeSet::new(), 3).is_empty());
        assert_eq!(connected_components(&cells1(&[0, 2, 4]), 2), vec![cells1(&[0, 2, 4])]);
        // r = 0 isolates every cell.
        assert_eq!(connected_components(&cells1(&[0, 1]), 0).len(), 2);
    }

    #[test]
    fn glue_examples() {
        let p = Pattern::binary_word("010").unwrap().translate(Cell::at(-1)).unwrap();
        let q = Pattern::binary_word("010").unwrap().translate(Cell::at(4)).unwrap();
        let g = zero_glue(&p, &q).unwrap();
        assert_eq!(g.support(), cells1(&[0, 5]));
        let dom: Vec<i64> = g.domain().map(|c| c.x).collect();
        assert_eq!(dom, vec![-1, 0, 1, 4, 5, 6]);
        assert_eq!(zero_glue(&q, &p).unwrap(), g);

        let a = Pattern::binary_word("0001").unwrap();
        let b = Pattern::binary_word("1").unwrap().translate(Cell::at(3)).unwrap();
        assert_eq!(zero_glue(&a, &b), Err(Error::GlueConflict { cell: Cell::at(3) }));
        // A nonzero on only one side of the overlap is still a conflict.
        let z = Pattern::binary_word("0").unwrap().translate(Cell::at(3)).unwrap();
        assert_eq!(zero_glue(&a, &z), Err(Error::GlueConflict { cell: Cell::at(3) }));
    }

    #[test]
    fn occurrence_examples() {
        let p = Pattern::binary_word("10101").unwrap();
        let q = Pattern::binary_word("101").unwrap();
        assert_eq!(occurrences(&p, &q), vec![Cell::at(0), Cell::at(2)]);
        let zeros = Pattern::binary_word("000").unwrap();
        let one = Pattern::binary_word("1").unwrap();
        assert!(occurrences(&zeros, &one).is_empty());
        let empty = Pattern::new(Dim::One, Alphabet::binary());
        let window = cells1(&[-3, 7]);
        assert_eq!(occurrences_in(&p, &empty, &window), vec![Cell::at(-3), Cell::at(7)]);
    }

    use super::super::Alphabet;

    #[test]
    fn width_and_sparsity_examples() {
        let row = Pattern::binary_word("0111100").unwrap();
        for r in 0..4 {
            assert!(essential_width_lower_bound(std::slice::from_ref(&row), r) <= 4);
        }
        assert_eq!(essential_width_lower_bound(std::slice::from_ref(&row), 2), 1);
        assert_eq!(essential_width_lower_bound(&[], 3), 0);
        assert_eq!(
            essential_width_lower_bound(&[Pattern::binary_word("000").unwrap()], 3),
            0
        );
        assert_eq!(sparsity(&[Pattern::binary_word("11011").unwrap()]), 4);
        assert_eq!(sparsity(&[Pattern::binary_word("0000").unwrap()]), 0);
        let fives = sparse_not_uniform_family(5).unwrap();
        assert_eq!(sparsity(&[fives]), 6);
    }

    #[test]
    fn interval_cover_greedy() {
        assert_eq!(interval_cover([0, 2, 4, 6], 1), 2);
        assert_eq!(interval_cover([0, 3], 1), 2);
        assert_eq!(interval_cover([0, 2], 1), 1);
        assert_eq!(interval_cover(Vec::<i64>::new(), 1), 0);
    }

    #[test]
    fn density_examples() {
        let d = |s: &str, w| density_window(&Pattern::binary_word(s).unwrap(), w).unwrap();
        assert_eq!(d("1111", 2), Ratio::from_integer(1));
        assert_eq!(d("1010", 2), Ratio::new(1, 2));
        assert_eq!(d("0000", 4), Ratio::from_integer(0));
        assert!(density_window(&Pattern::binary_word("01").unwrap(), 3).is_err());
        assert!(density_window(&Pattern::binary_word("01").unwrap(), 0).is_err());
    }

    #[test]
    fn sparse_family_examples() {
        let p1 = sparse_not_uniform_family(1).unwrap();
        assert_eq!(p1.support(), cells1(&[0, 1]));
        assert_eq!(p1.bounds().unwrap(), (Cell::at(-1), Cell::at(2)));
        assert_eq!(sparse_not_uniform_family(2).unwrap().support(), cells1(&[0, 2, 4]));
        assert_eq!(sparse_not_uniform_family(5).unwrap().support_len(), 6);
        assert!(sparse_not_uniform_family(0).is_err());
    }
}
