use std::collections::HashMap;

use serde::Serialize;

use super::{index_word, parse_table, table_len, word_index};
use crate::error::{parse_err, Error, Result};
use crate::patterns::{Alphabet, Symbol};

/// A full-group element `g(x) = σ^{c(x)}(x)` whose cocycle `c` reads
/// `x` on `[-ρ, ρ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TfgElement {
    alphabet: Alphabet,
    radius: usize,
    shifts: Vec<i64>,
}

impl TfgElement {
    pub fn from_fn(alphabet: Alphabet, radius: usize, c: impl Fn(&[Symbol]) -> i64) -> Result<Self> {
        let base = alphabet.len();
        let width = 2 * radius + 1;
        let n = table_len(base, width)?;
        let shifts: Vec<i64> = (0..n).map(|i| c(&index_word(base, width, i))).collect();
        if let Some(k) = shifts.iter().find(|k| k.unsigned_abs() as usize > radius) {
            return Err(Error::InvalidArgument(format!("shift {k} exceeds the radius {radius}")));
        }
        Ok(TfgElement {
            alphabet,
            radius,
            shifts,
        })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        TfgElement::from_fn(alphabet, 0, |_| 0).expect("radius 0")
    }

    /// The shift `σ`, constant cocycle `+1`.
    pub fn shift(alphabet: Alphabet) -> Self {
        TfgElement::from_fn(alphabet, 1, |_| 1).expect("radius 1")
    }

    /// Moves the origin onto the `1` of a `01` at positions `0, 1` and back
    /// from a `01` at positions `-1, 0`; an involution.
    pub fn block_swap() -> Self {
        TfgElement::from_fn(Alphabet::binary(), 1, |w| match (w[0], w[1], w[2]) {
            (_, 0, 1) => 1,
            (0, 1, _) => -1,
            _ => 0,
        })
        .expect("radius 1")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Cocycle value on a neighbourhood word of length `2ρ + 1`.
    pub fn cocycle(&self, nb: &[Symbol]) -> i64 {
        self.shifts[word_index(self.alphabet.len(), nb)]
    }

    /// Cocycle at position `centre` of a finite window of a point.
    pub fn cocycle_at(&self, x: &[Symbol], centre: usize) -> i64 {
        self.cocycle(&x[centre - self.radius..=centre + self.radius])
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(|&k| k == 0)
    }

    fn render(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.alphabet.char_of(s).unwrap_or('?')).collect()
    }
}

/// Checks that `g` is a bijection: every word `u` of length `4ρ + 1`
/// (positions `-2ρ ..= 2ρ`) has exactly one `k` with
/// `c(u[-ρ-k ..= ρ-k]) = k`, which is where its preimage sits.
pub fn tfg_validate(g: &TfgElement) -> Result<&TfgElement> {
    let base = g.alphabet.len();
    let rho = g.radius as i64;
    let width = 4 * g.radius + 1;
    let n = table_len(base, width)?;
    for i in 0..n {
        let u = index_word(base, width, i);
        // index of position p in u is p + 2ρ
        let ks: Vec<i64> = (-rho..=rho)
            .filter(|&k| {
                let lo = (rho - k) as usize;
                g.cocycle(&u[lo..lo + 2 * g.radius + 1]) == k
            })
            .collect();
        match ks.as_slice() {
            [_] => {}
            [] => {
                return Err(Error::NotInvertible {
                    first: g.render(&u),
                    second: None,
                })
            }
            [k1, k2, ..] => {
                // The two preimages σ^{-k}(y), read around their origins.
                let pre = |k: i64| {
                    let lo = (rho - k) as usize;
                    g.render(&u[lo..lo + 2 * g.radius + 1])
                };
                return Err(Error::NotInvertible {
                    first: pre(*k1),
                    second: Some(pre(*k2)),
                });
            }
        }
    }
    Ok(g)
}

/// `g ∘ h`, with cocycle `c(g∘h, x) = c(h, x) + c(g, h(x))` and radius
/// `ρ_g + ρ_h`.
pub fn compose(g: &TfgElement, h: &TfgElement) -> Result<TfgElement> {
    if g.alphabet != h.alphabet {
        return Err(Error::AlphabetMismatch(format!("{} vs {}", g.alphabet.spec(), h.alphabet.spec())));
    }
    let radius = g.radius + h.radius;
    let centre = radius as i64;
    TfgElement::from_fn(g.alphabet.clone(), radius, |u| {
        let a = h.cocycle(&u[g.radius..g.radius + 2 * h.radius + 1]);
        let lo = (centre + a) as usize - g.radius;
        a + g.cocycle(&u[lo..lo + 2 * g.radius + 1])
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum OrderVerdict {
    Torsion {
        order: usize,
    },
    /// On the periodic point `word^∞` the origin's phase enters a cycle of
    /// `cycle_len` steps after `first_step` steps, moving by
    /// `displacement ≠ 0` per cycle, so the cocycle sums of `g^n` grow
    /// without bound.
    InfiniteOrder {
        word: String,
        first_step: usize,
        cycle_len: usize,
        displacement: i64,
    },
    Inconclusive,
}

/// Looks for a periodic point of period at most `max_period` on which the
/// cocycle sums of `g^n` drift within `max_order` steps, then for the
/// least `n ≤ max_order` with `g^n` the identity.
pub fn tfg_order_search(g: &TfgElement, max_order: usize, max_period: usize) -> Result<OrderVerdict> {
    tfg_validate(g)?;
    let base = g.alphabet.len();
    for p in 1..=max_period {
        let total = table_len(base, p)?;
        for i in 0..total {
            let w = index_word(base, p, i);
            if let Some(v) = drift(g, &w, max_order) {
                return Ok(v);
            }
        }
    }
    let mut power = g.clone();
    for n in 1..=max_order {
        if power.is_identity() {
            return Ok(OrderVerdict::Torsion { order: n });
        }
        if n == max_order {
            break;
        }
        power = match compose(g, &power) {
            Ok(p) => p,
            Err(Error::SizeLimit { .. }) => break,
            Err(e) => return Err(e),
        };
    }
    Ok(OrderVerdict::Inconclusive)
}

fn drift(g: &TfgElement, w: &[Symbol], max_order: usize) -> Option<OrderVerdict> {
    let p = w.len() as i64;
    let r = g.radius as i64;
    let mut nb = vec![0; 2 * g.radius + 1];
    let mut phase = 0i64;
    let mut disp = 0i64;
    let mut seen: HashMap<i64, (usize, i64)> = HashMap::new();
    for t in 0..=max_order {
        if let Some(&(s, d)) = seen.get(&phase) {
            let delta = disp - d;
            return (delta != 0).then(|| OrderVerdict::InfiniteOrder {
                word: g.render(w),
                first_step: s,
                cycle_len: t - s,
                displacement: delta,
            });
        }
        seen.insert(phase, (t, disp));
        for (k, slot) in nb.iter_mut().enumerate() {
            *slot = w[(phase - r + k as i64).rem_euclid(p) as usize];
        }
        let c = g.cocycle(&nb);
        phase = (phase + c).rem_euclid(p);
        disp += c;
    }
    None
}

/// Parses `tfg <alphabet> radius <ρ>` followed by `<word> -> shift <k>`
/// lines, with an optional final `* -> shift <k>`.
pub fn parse_tfg(src: &str) -> Result<TfgElement> {
    let (alphabet, radius, shifts) = parse_table(src, "tfg", |ln, rhs, _| {
        let k = rhs
            .strip_prefix("shift")
            .ok_or_else(|| parse_err(ln, "expected `shift <k>`"))?
            .trim();
        k.parse::<i64>().map_err(|_| parse_err(ln, format!("bad shift {k:?}")))
    })?;
    if let Some(k) = shifts.iter().find(|k| k.unsigned_abs() as usize > radius) {
        return Err(parse_err(1, format!("shift {k} exceeds the radius {radius}")));
    }
    Ok(TfgElement {
        alphabet,
        radius,
        shifts,
    })
}
