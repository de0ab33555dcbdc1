use num::rational::Ratio;

use super::support_pattern;
use crate::error::{Error, Result};
use crate::patterns::{Cell, Pattern};

/// `F_k / F_{k+1}`, a rational approximant of `(√5 - 1) / 2`.
pub fn golden_conjugate(k: u32) -> Result<Ratio<i128>> {
    if k == 0 || k > 180 {
        return Err(Error::InvalidArgument(format!("approximant index {k} outside 1..=180")));
    }
    let (mut a, mut b) = (1i128, 1i128);
    for _ in 1..k {
        let c = a + b;
        a = b;
        b = c;
    }
    Ok(Ratio::new(a, b))
}

/// Mechanical word `s_i = ⌊(i+1)α + ρ⌋ - ⌊iα + ρ⌋` for `i < len`, in exact
/// arithmetic.
pub fn mechanical_word(alpha: Ratio<i128>, rho: Ratio<i128>, len: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(len);
    let at = |i: usize| -> Result<i128> {
        let i = i128::try_from(i).map_err(|_| Error::CoordinateOverflow)?;
        let num = alpha
            .numer()
            .checked_mul(i)
            .and_then(|v| v.checked_mul(*rho.denom()))
            .and_then(|v| v.checked_add(rho.numer() * alpha.denom()))
            .ok_or(Error::CoordinateOverflow)?;
        Ok(num.div_euclid(alpha.denom() * rho.denom()))
    };
    let mut prev = at(0)?;
    for i in 0..len {
        let next = at(i + 1)?;
        out.push(i64::try_from(next - prev).map_err(|_| Error::CoordinateOverflow)?);
        prev = next;
    }
    Ok(out)
}

/// A 1-connected staircase of `cells` cells: starting at the origin, each
/// letter `1` of the mechanical word of slope `alpha` steps up, each `0`
/// steps right.
pub fn sturmian_staircase(alpha: Ratio<i128>, cells: usize) -> Result<Pattern> {
    if !(Ratio::from_integer(0)..=Ratio::from_integer(1)).contains(&alpha) {
        return Err(Error::InvalidArgument("slope must lie in [0, 1]".into()));
    }
    let word = mechanical_word(alpha, Ratio::from_integer(0), cells.saturating_sub(1))?;
    let mut c = Cell::ORIGIN;
    let mut trace = vec![c];
    for s in word {
        c = if s == 1 { Cell::new(c.x, c.y + 1) } else { Cell::new(c.x + 1, c.y) };
        trace.push(c);
    }
    support_pattern(trace)
}
