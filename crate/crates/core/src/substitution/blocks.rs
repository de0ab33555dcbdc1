use num::{BigInt, BigRational, BigUint, One, Zero};
use num::rational::Ratio;

use super::{canned, iterate_1d};
use crate::error::{Error, Result};
use crate::patterns::{Alphabet, Cell, Dim, Pattern, Symbol, ZERO};

/// Seeds `P_{1,1} … P_{1,k}` of the block hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockHierarchySpec {
    k: usize,
    seed_side: usize,
    alphabet: Alphabet,
    // seeds[j-1][y * side + x]
    seeds: Vec<Vec<Symbol>>,
}

impl BlockHierarchySpec {
    /// Validates `k` square seeds of equal side: each has a single nonzero
    /// on its bottom row, at the corner, and no row with more than `k`
    /// nonzeros.
    pub fn new(k: usize, seeds: &[Pattern]) -> Result<Self> {
        if k == 0 || seeds.len() != k {
            return Err(Error::InvalidArgument(format!(
                "need k >= 1 seeds, got k = {k} with {} seeds",
                seeds.len()
            )));
        }
        let alphabet = seeds[0].alphabet().clone();
        let side = match seeds[0].bounds() {
            Some((lo, hi)) if lo == Cell::ORIGIN && hi.x == hi.y => hi.x as usize + 1,
            _ => return Err(Error::InvalidArgument("seeds must be squares at the origin".into())),
        };
        let mut grids = Vec::with_capacity(k);
        for (j, p) in seeds.iter().enumerate() {
            if p.dim() != Dim::Two || p.alphabet() != &alphabet {
                return Err(Error::InvalidArgument(format!("seed {} has the wrong shape", j + 1)));
            }
            let full = p.len() == side * side
                && p.domain()
                    .all(|c| (0..side as i64).contains(&c.x) && (0..side as i64).contains(&c.y));
            if !full {
                return Err(Error::InvalidArgument(format!(
                    "seed {} is not a full {side}x{side} block",
                    j + 1
                )));
            }
            let mut g = vec![ZERO; side * side];
            for (c, s) in p.iter() {
                g[c.y as usize * side + c.x as usize] = s;
            }
            let bottom: Vec<usize> = (0..side).filter(|&x| g[x] != ZERO).collect();
            if bottom != [0] {
                return Err(Error::InvalidArgument(format!(
                    "seed {} must have exactly one nonzero on its bottom row, at the corner",
                    j + 1
                )));
            }
            for y in 0..side {
                let n = g[y * side..(y + 1) * side].iter().filter(|&&s| s != ZERO).count();
                if n > k {
                    return Err(Error::InvalidArgument(format!(
                        "seed {} row {y} has {n} > {k} nonzeros",
                        j + 1
                    )));
                }
            }
            grids.push(g);
        }
        Ok(BlockHierarchySpec {
            k,
            seed_side: side,
            alphabet,
            seeds: grids,
        })
    }

    /// Seeds obtained by one recursion step from single-cell blocks:
    /// `P_{1,j}` has side `k + 1`, a `1` at the corner and `1`s on
    /// `(1..=k, j)`.
    pub fn canonical(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let seeds: Vec<Pattern> = (1..=k)
            .map(|j| {
                let mut p = Pattern::new(Dim::Two, Alphabet::binary());
                for y in 0..=k {
                    for x in 0..=k {
                        let on = (x, y) == (0, 0) || (x >= 1 && y == j);
                        p.insert(Cell::new(x as i64, y as i64), Symbol::from(on))?;
                    }
                }
                Ok(p)
            })
            .collect::<Result<_>>()?;
        BlockHierarchySpec::new(k, &seeds)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed_side(&self) -> usize {
        self.seed_side
    }

    /// `m_i = (k+1)^{i-1} m_1`, or `None` on overflow.
    pub fn side(&self, i: u32) -> Option<u128> {
        if i == 0 {
            return None;
        }
        ((self.k + 1) as u128)
            .checked_pow(i - 1)?
            .checked_mul(self.seed_side as u128)
    }
}

/// `P_{i,j}`: the side-`m_i` block whose bottom-left block is `P_{i-1,j}`
/// and whose `j`-th block row holds `P_{i-1,1} … P_{i-1,k}` from block
/// column 1 on.
pub fn build_unbounded_rows(spec: &BlockHierarchySpec, i: u32, j: usize, cap: u128) -> Result<Pattern> {
    if i == 0 || j == 0 || j > spec.k {
        return Err(Error::InvalidArgument(format!(
            "need i >= 1 and 1 <= j <= {}, got i = {i}, j = {j}",
            spec.k
        )));
    }
    let side = spec.side(i).ok_or(Error::CoordinateOverflow)?;
    let cells = side.checked_mul(side).ok_or(Error::CoordinateOverflow)?;
    if cells > cap {
        return Err(Error::SizeLimit {
            requested: cells,
            cap,
        });
    }
    let k = spec.k;
    let mut m = spec.seed_side;
    let mut level = spec.seeds.clone();
    for _ in 1..i {
        let big = (k + 1) * m;
        let mut next = vec![vec![ZERO; big * big]; k];
        for (jj, out) in next.iter_mut().enumerate() {
            blit(out, big, &level[jj], m, 0, 0);
            for (c, block) in level.iter().enumerate() {
                blit(out, big, block, m, (c + 1) * m, (jj + 1) * m);
            }
        }
        level = next;
        m = big;
    }
    let g = &level[j - 1];
    let mut p = Pattern::new(Dim::Two, spec.alphabet.clone());
    for y in 0..m {
        for x in 0..m {
            p.insert(Cell::new(x as i64, y as i64), g[y * m + x])?;
        }
    }
    Ok(p)
}

fn blit(dst: &mut [Symbol], dst_side: usize, src: &[Symbol], src_side: usize, x0: usize, y0: usize) {
    for y in 0..src_side {
        let d = (y0 + y) * dst_side + x0;
        dst[d..d + src_side].copy_from_slice(&src[y * src_side..(y + 1) * src_side]);
    }
}

/// Length and nonzero count of `w_k = τ_2(⋯τ_k(1)⋯)`, by propagating
/// letter counts instead of materialising the word.
pub fn density_counts(k: u32) -> Result<(BigUint, BigUint)> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    let mut ones = BigUint::one();
    let mut zeros = BigUint::zero();
    for i in (2..=k).rev() {
        let block = BigUint::one() << i;
        let new_ones = &ones * (&block - 1u32);
        let new_zeros = &ones + &zeros * &block;
        ones = new_ones;
        zeros = new_zeros;
    }
    Ok((&ones + &zeros, ones))
}

/// Exact nonzero density of `w_k`.
pub fn density(k: u32) -> Result<BigRational> {
    let (len, ones) = density_counts(k)?;
    Ok(BigRational::new(BigInt::from(ones), BigInt::from(len)))
}

/// `w_k` itself with its nonzero density; refuses words longer than `cap`.
pub fn density_word(k: u32, cap: u128) -> Result<(Vec<Symbol>, Ratio<u64>)> {
    let (len, _) = density_counts(k)?;
    let requested = u128::try_from(&len).unwrap_or(u128::MAX);
    if requested > cap {
        return Err(Error::SizeLimit { requested, cap });
    }
    let mut w = vec![1];
    for i in (2..=k).rev() {
        w = iterate_1d(&canned::tau_density(i)?, &w, 1)?;
    }
    let ones = w.iter().filter(|&&s| s != ZERO).count() as u64;
    let d = Ratio::new(ones, w.len() as u64);
    Ok((w, d))
}
