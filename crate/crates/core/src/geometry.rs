//! L1 geometry on the integer grid: balls, neighbourhood graphs of finite
//! cell sets, and breadth-first search over them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::patterns::{Cell, Dim};

/// L1 distance; computed in `i128` so extreme coordinates cannot overflow.
pub fn l1(a: Cell, b: Cell) -> u128 {
    let dx = (a.x as i128 - b.x as i128).unsigned_abs();
    let dy = (a.y as i128 - b.y as i128).unsigned_abs();
    dx + dy
}

/// Number of cells in an L1 ball of radius `r`.
pub fn ball_size(dim: Dim, r: u64) -> u128 {
    let r = r as u128;
    match dim {
        Dim::One => 2 * r + 1,
        Dim::Two => 2 * r * r + 2 * r + 1,
    }
}

/// `B_r(cells)`, the union of radius-`r` balls around `cells`.
pub fn ball_union(dim: Dim, cells: &BTreeSet<Cell>, r: u64) -> Result<BTreeSet<Cell>> {
    let r = i64::try_from(r).map_err(|_| Error::CoordinateOverflow)?;
    // Per row, collect closed intervals and merge them before materialising.
    let mut rows: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for c in cells {
        let dys: Box<dyn Iterator<Item = i64>> = match dim {
            Dim::One => Box::new(std::iter::once(0)),
            Dim::Two => Box::new(-r..=r),
        };
        for dy in dys {
            let reach = r - dy.abs();
            let y = c.y.checked_add(dy).ok_or(Error::CoordinateOverflow)?;
            let lo = c.x.checked_sub(reach).ok_or(Error::CoordinateOverflow)?;
            let hi = c.x.checked_add(reach).ok_or(Error::CoordinateOverflow)?;
            rows.entry(y).or_default().push((lo, hi));
        }
    }
    let mut out = BTreeSet::new();
    for (y, mut ivs) in rows {
        ivs.sort_unstable();
        let mut cur: Option<(i64, i64)> = None;
        for (lo, hi) in ivs {
            match cur {
                Some((clo, chi)) if lo <= chi.saturating_add(1) => cur = Some((clo, chi.max(hi))),
                Some((clo, chi)) => {
                    out.extend((clo..=chi).map(|x| Cell::new(x, y)));
                    cur = Some((lo, hi));
                }
                None => cur = Some((lo, hi)),
            }
        }
        if let Some((clo, chi)) = cur {
            out.extend((clo..=chi).map(|x| Cell::new(x, y)));
        }
    }
    Ok(out)
}

/// Undirected graph on a finite cell set with an edge between any two cells
/// at L1 distance at most `r`.
///
/// Nodes are stored in lexicographic order and adjacency lists are sorted,
/// so every traversal below is deterministic.
#[derive(Debug, Clone)]
pub struct SupportGraph {
    nodes: Vec<Cell>,
    adj: Vec<Vec<usize>>,
    r: u64,
}

impl SupportGraph {
    pub fn new(cells: &BTreeSet<Cell>, r: u64) -> Self {
        let nodes: Vec<Cell> = cells.iter().copied().collect();
        let side = r.max(1) as i128;
        let bucket = |c: &Cell| ((c.x as i128).div_euclid(side), (c.y as i128).div_euclid(side));
        let mut buckets: HashMap<(i128, i128), Vec<usize>> = HashMap::new();
        for (i, c) in nodes.iter().enumerate() {
            buckets.entry(bucket(c)).or_default().push(i);
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, c) in nodes.iter().enumerate() {
            let (bx, by) = bucket(c);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(members) = buckets.get(&(bx + dx, by + dy)) {
                        for &j in members {
                            if j != i && l1(*c, nodes[j]) <= r as u128 {
                                adj[i].push(j);
                            }
                        }
                    }
                }
            }
            adj[i].sort_unstable();
        }
        SupportGraph { nodes, adj, r }
    }

    pub fn radius(&self) -> u64 {
        self.r
    }

    pub fn nodes(&self) -> &[Cell] {
        &self.nodes
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.nodes.binary_search(&c).ok()
    }

    /// Node indices of each connected component, ordered by least member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS from `src`; returns hop distances (`usize::MAX` when unreachable)
    /// and BFS parents.
    pub fn bfs(&self, src: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.nodes.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        (dist, parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_union_matches_ball_size() {
        let one: BTreeSet<Cell> = [Cell::new(0, 0)].into_iter().collect();
        for r in 0..6 {
            assert_eq!(ball_union(Dim::Two, &one, r).unwrap().len() as u128, ball_size(Dim::Two, r));
            assert_eq!(ball_union(Dim::One, &one, r).unwrap().len() as u128, ball_size(Dim::One, r));
        }
    }

    #[test]
    fn ball_union_rejects_overflow() {
        let edge: BTreeSet<Cell> = [Cell::new(i64::MAX, 0)].into_iter().collect();
        assert_eq!(ball_union(Dim::One, &edge, 1), Err(Error::CoordinateOverflow));
    }

    #[test]
    fn graph_edges_agree_with_brute_force() {
        let cells: BTreeSet<Cell> = [(0, 0), (1, 1), (3, 1), (-2, 4), (0, 5), (7, 7)]
            .into_iter()
            .map(|(x, y)| Cell::new(x, y))
            .collect();
        for r in 0..8 {
            let g = SupportGraph::new(&cells, r);
            for (i, a) in g.nodes().iter().enumerate() {
                let expect: Vec<usize> = g
                    .nodes()
                    .iter()
                    .enumerate()
                    .filter(|(j, b)| *j != i && l1(*a, **b) <= r as u128)
                    .map(|(j, _)| j)
                    .collect();
                assert_eq!(g.neighbours(i), expect.as_slice());
            }
        }
    }
}
