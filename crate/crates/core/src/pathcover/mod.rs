//! Paths drawn on pattern supports: shortest-path witnesses for large
//! components, ascending-path search, road checks, and guided paths built
//! from Sturmian sequences.

mod sturmian;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{l1, SupportGraph};
use crate::patterns::{Alphabet, Cell, Dim, Pattern};

pub use sturmian::{golden_conjugate, mechanical_word, sturmian_staircase};

/// A finite sequence of cells with consecutive L1 distance at most `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellPath {
    cells: Vec<Cell>,
    r: u64,
}

impl CellPath {
    pub fn new(cells: Vec<Cell>, r: u64) -> Result<Self> {
        if let Some(w) = cells.windows(2).find(|w| l1(w[0], w[1]) > r as u128) {
            return Err(Error::InvalidArgument(format!(
                "step from {} to {} is longer than {r}",
                w[0], w[1]
            )));
        }
        Ok(CellPath { cells, r })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn radius(&self) -> u64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        let distinct: BTreeSet<Cell> = self.cells.iter().copied().collect();
        distinct.len() == self.cells.len()
    }

    /// Vertical moves along the path.
    pub fn height_moves(&self) -> Vec<i64> {
        self.cells.windows(2).map(|w| w[1].y - w[0].y).collect()
    }
}

/// A shortest `r`-path between two cells of the largest `r`-component at
/// maximal graph distance. Ties go to the first component and the
/// lexicographically least endpoints.
pub fn geodesic_witness(p: &Pattern, r: u64) -> Result<CellPath> {
    let support = p.support();
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let g = SupportGraph::new(&support, r);
    let comps = g.component_indices();
    let largest = comps
        .iter()
        .enumerate()
        .max_by_key(|(i, c)| (c.len(), std::cmp::Reverse(*i)))
        .map(|(_, c)| c)
        .expect("nonempty support");
    // (distance, source, target, parents of the source's BFS)
    let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
    for &src in largest {
        let (dist, parent) = g.bfs(src);
        let (far, d) = largest
            .iter()
            .map(|&v| (v, dist[v]))
            .fold((src, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best.as_ref().is_none_or(|b| d > b.0) {
            best = Some((d, src, far, parent));
        }
    }
    let (_, src, far, parent) = best.expect("nonempty component");
    let mut path = vec![g.nodes()[far]];
    let mut v = far;
    while v != src {
        v = parent[v];
        path.push(g.nodes()[v]);
    }
    path.reverse();
    CellPath::new(path, r)
}

/// Outcome of [`find_ascending_path`]; `exhaustive` is false when the node
/// budget ran out, in which case an absent path proves nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AscendSearch {
    pub path: Option<CellPath>,
    pub exhaustive: bool,
    pub expanded: u64,
}

/// Longest simple `r`-path through the support along which every `m`
/// consecutive vertical moves have positive sum, reported when it has at
/// least `2m` cells. Depth-first, neighbours in lexicographic order,
/// at most `budget` node expansions.
pub fn find_ascending_path(p: &Pattern, r: u64, m: usize, budget: u64) -> Result<AscendSearch> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let support = p.support();
    let g = SupportGraph::new(&support, r);
    let n = g.nodes().len();
    let mut search = Dfs {
        g: &g,
        m,
        budget,
        expanded: 0,
        on_path: vec![false; n],
        path: Vec::new(),
        best: Vec::new(),
        out_of_budget: false,
    };
    for start in 0..n {
        if search.best.len() == n || search.out_of_budget {
            break;
        }
        search.on_path[start] = true;
        search.path.push(start);
        search.extend();
        search.path.pop();
        search.on_path[start] = false;
    }
    let path = if search.best.len() >= 2 * m {
        let cells = search.best.iter().map(|&i| g.nodes()[i]).collect();
        Some(CellPath::new(cells, r)?)
    } else {
        None
    };
    Ok(AscendSearch {
        path,
        exhaustive: !search.out_of_budget,
        expanded: search.expanded,
    })
}

struct Dfs<'a> {
    g: &'a SupportGraph,
    m: usize,
    budget: u64,
    expanded: u64,
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
    out_of_budget: bool,
}

impl Dfs<'_> {
    fn extend(&mut self) {
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.best.len() == self.g.nodes().len() {
            return;
        }
        if self.expanded >= self.budget {
            self.out_of_budget = true;
            return;
        }
        self.expanded += 1;
        let u = *self.path.last().expect("nonempty path");
        for &v in self.g.neighbours(u) {
            if self.on_path[v] {
                continue;
            }
            self.path.push(v);
            if self.last_window_ok() {
                self.on_path[v] = true;
                self.extend();
                self.on_path[v] = false;
            }
            self.path.pop();
            if self.out_of_budget || self.best.len() == self.g.nodes().len() {
                return;
            }
        }
    }

    fn last_window_ok(&self) -> bool {
        let len = self.path.len();
        if len <= self.m {
            return true;
        }
        let nodes = self.g.nodes();
        nodes[self.path[len - 1]].y - nodes[self.path[len - 1 - self.m]].y > 0
    }
}

/// Whether every support cell of `p` lies within L1 distance `bound` of
/// the path.
pub fn road_check(p: &Pattern, path: &CellPath, bound: u64) -> Result<bool> {
    let support = p.support();
    if let Some(c) = path.cells().iter().find(|c| !support.contains(c)) {
        return Err(Error::InvalidArgument(format!("path cell {c} is not in the support")));
    }
    let on_path: BTreeSet<Cell> = path.cells().iter().copied().collect();
    Ok(support.iter().all(|&c| {
        on_path.contains(&c) || path.cells().iter().any(|&q| l1(c, q) <= bound as u128)
    }))
}

/// The trace of the walk that starts at the origin and at step `i` moves
/// by `(offsets[i], vertical_steps[i])`, as a binary pattern over the
/// trace's bounding box.
pub fn trace_guided_path(vertical_steps: &[u64], offsets: &[i64], length: usize) -> Result<Pattern> {
    if vertical_steps.len() < length || offsets.len() < length {
        return Err(Error::InvalidArgument(format!(
            "need at least {length} steps and offsets, got {} and {}",
            vertical_steps.len(),
            offsets.len()
        )));
    }
    if vertical_steps[..length].contains(&0) {
        return Err(Error::InvalidArgument("vertical steps must be positive".into()));
    }
    let mut c = Cell::ORIGIN;
    let mut trace = vec![c];
    for i in 0..length {
        let dy = i64::try_from(vertical_steps[i]).map_err(|_| Error::CoordinateOverflow)?;
        c = c.checked_add(Cell::new(offsets[i], dy))?;
        trace.push(c);
    }
    let p = Pattern::from_support(Dim::Two, trace)?;
    p.padded(0)
}

/// A 2D binary pattern with the given support and nothing else in its
/// domain.
pub fn support_pattern(cells: impl IntoIterator<Item = Cell>) -> Result<Pattern> {
    let mut p = Pattern::new(Dim::Two, Alphabet::binary());
    for c in cells {
        p.insert(c, 1)?;
    }
    Ok(p)
}
