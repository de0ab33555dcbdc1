//! The characteristic word of the primes: sieving, late factors, zero runs
//! from the Chinese remainder theorem, isolated primes and gaps.

mod arith;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::{Alphabet, Pattern};

pub use arith::{crt, is_prime, mod_inverse};

/// Default largest sieve limit.
pub const SIEVE_CAP: u64 = 100_000_000;

/// Primes up to `limit` and the characteristic word on `[0, limit]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeWindow {
    limit: u64,
    primes: Vec<u64>,
    char_word: Vec<u8>,
}

impl PrimeWindow {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `char_word[i] = 1` iff `i` is prime.
    pub fn char_word(&self) -> &[u8] {
        &self.char_word
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.limit && self.char_word[n as usize] == 1
    }

    /// Composite means at least 4 and not prime.
    fn is_composite(&self, n: u64) -> bool {
        n >= 4 && !self.is_prime(n)
    }

    /// The characteristic word as a binary pattern on cells `0..=limit`.
    pub fn to_pattern(&self) -> Result<Pattern> {
        Pattern::from_word(Alphabet::binary(), &self.char_word, 0)
    }
}

/// Sieve of Eratosthenes up to `limit`, refusing limits above `cap`.
pub fn sieve(limit: u64, cap: u64) -> Result<PrimeWindow> {
    if limit < 2 {
        return Err(Error::InvalidArgument("sieve limit must be at least 2".into()));
    }
    if limit > cap {
        return Err(Error::SizeLimit {
            requested: limit as u128,
            cap: cap as u128,
        });
    }
    let n = limit as usize;
    let mut w = vec![1u8; n + 1];
    w[0] = 0;
    w[1] = 0;
    let mut i = 2;
    while i * i <= n {
        if w[i] == 1 {
            let mut j = i * i;
            while j <= n {
                w[j] = 0;
                j += i;
            }
        }
        i += 1;
    }
    let primes = w
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| i as u64)
        .collect();
    Ok(PrimeWindow {
        limit,
        primes,
        char_word: w,
    })
}

fn check_late(w: &PrimeWindow, len: usize, threshold: u64) -> Result<()> {
    let end = threshold
        .checked_add(len as u64)
        .ok_or(Error::CoordinateOverflow)?;
    if len == 0 || end > w.limit + 1 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= length and threshold + length <= limit + 1, got length {len}, threshold {threshold}, limit {}",
            w.limit
        )));
    }
    Ok(())
}

/// All length-`len` factors of the characteristic word starting at a
/// position `≥ threshold`.
pub fn late_language(w: &PrimeWindow, len: usize, threshold: u64) -> Result<BTreeSet<Vec<u8>>> {
    check_late(w, len, threshold)?;
    Ok(w.char_word[threshold as usize..]
        .windows(len)
        .map(<[u8]>::to_vec)
        .collect())
}

/// Whether `word` occurs in the characteristic word at a position
/// `≥ threshold`.
pub fn late_contains(w: &PrimeWindow, word: &[u8], threshold: u64) -> Result<bool> {
    check_late(w, word.len(), threshold)?;
    Ok(w.char_word[threshold as usize..].windows(word.len()).any(|f| f == word))
}

/// Residue class `k mod N` with `k + i ≡ 0 (mod φ(i))` for `i < n`, and a
/// concrete start `s ≡ k (mod N)` whose run `s .. s + n` is composite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrtWitness {
    pub n: usize,
    pub injection: Vec<u64>,
    pub k: u128,
    pub modulus: u128,
    /// Least `s ≡ k (mod N)` with `s + i ≥ 2φ(i)` for every `i`.
    pub start: u128,
}

impl CrtWitness {
    /// `φ(i)` divides `start + i` and the quotient is at least 2.
    pub fn verify(&self) -> bool {
        self.injection.iter().enumerate().all(|(i, &q)| {
            let v = self.start + i as u128;
            v.is_multiple_of(q as u128) && v >= 2 * q as u128
        })
    }
}

/// The first `count` primes greater than `bound`.
pub fn primes_above(bound: u64, count: usize) -> Vec<u64> {
    (bound + 1..).filter(|&q| is_prime(q)).take(count).collect()
}

fn check_injection(injection: &[u64]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &q in injection {
        if !is_prime(q) {
            return Err(Error::InjectionNotPrime(q));
        }
        if !seen.insert(q) {
            return Err(Error::InjectionNotDistinct(q));
        }
    }
    Ok(())
}

/// Zero run of length `n` in the primes via `k ≡ -i (mod φ(i))`. The
/// default injection is the first `n` primes above `2n`.
pub fn crt_zero_run(n: usize, injection: Option<&[u64]>) -> Result<CrtWitness> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let injection = match injection {
        Some(q) if q.len() != n => {
            return Err(Error::InvalidArgument(format!("injection has {} primes, need {n}", q.len())))
        }
        Some(q) => q.to_vec(),
        None => primes_above(2 * n as u64, n),
    };
    check_injection(&injection)?;
    let congruences: Vec<(u128, u128)> = injection
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let q = q as u128;
            ((q - (i as u128 % q)) % q, q)
        })
        .collect();
    let (k, modulus) = crt(&congruences)?;
    let floor = injection
        .iter()
        .enumerate()
        .map(|(i, &q)| (2 * q as u128).saturating_sub(i as u128))
        .max()
        .unwrap_or(0);
    let start = if k >= floor {
        k
    } else {
        let steps = (floor - k).div_ceil(modulus);
        k.checked_add(steps.checked_mul(modulus).ok_or(Error::CoordinateOverflow)?)
            .ok_or(Error::CoordinateOverflow)?
    };
    let w = CrtWitness {
        n,
        injection,
        k,
        modulus,
        start,
    };
    debug_assert!(w.verify());
    Ok(w)
}

/// Least prime `p ≤ limit - n` with `p ± 1, …, p ± n` all composite.
pub fn isolated_prime_search(n: u64, w: &PrimeWindow) -> Option<u64> {
    w.primes
        .iter()
        .copied()
        .take_while(|&p| p + n <= w.limit)
        .find(|&p| (1..=n).all(|i| p >= i && w.is_composite(p - i) && w.is_composite(p + i)))
}

/// An isolated prime `p = k + ℓN` from the construction `k ≡ i (mod φ(i))`
/// over `i ∈ ±{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletWitness {
    pub n: u64,
    /// `(i, φ(i))` pairs.
    pub injection: Vec<(i64, u64)>,
    pub k: u128,
    pub modulus: u128,
    pub ell: u64,
    pub p: u64,
}

/// Builds `k, N` from the first `2n` primes above `2n`, assigned to
/// `i = 1, -1, 2, -2, …`, and scans `ℓ = 0..=scan_limit` for a prime
/// `p = k + ℓN` whose neighbours `p ± i`, `i ≤ n`, are composite.
pub fn dirichlet_isolated(n: u64, scan_limit: u64, injection: Option<&[u64]>) -> Result<DirichletWitness> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let count = 2 * n as usize;
    let primes = match injection {
        Some(q) if q.len() != count => {
            return Err(Error::InvalidArgument(format!("injection has {} primes, need {count}", q.len())))
        }
        Some(q) => {
            if let Some(&bad) = q.iter().find(|&&x| x <= 2 * n) {
                return Err(Error::InvalidArgument(format!("{bad} is not above 2n = {}", 2 * n)));
            }
            q.to_vec()
        }
        None => primes_above(2 * n, count),
    };
    check_injection(&primes)?;
    let labels: Vec<i64> = (1..=n as i64).flat_map(|i| [i, -i]).collect();
    let congruences: Vec<(u128, u128)> = labels
        .iter()
        .zip(&primes)
        .map(|(&i, &q)| (i.rem_euclid(q as i64) as u128, q as u128))
        .collect();
    let (k, modulus) = crt(&congruences)?;
    assert_eq!(arith::gcd(k, modulus), 1, "k must be a unit modulo N");
    for ell in 0..=scan_limit {
        let p = (ell as u128)
            .checked_mul(modulus)
            .and_then(|v| v.checked_add(k))
            .ok_or(Error::CoordinateOverflow)?;
        let p = u64::try_from(p).map_err(|_| Error::CoordinateOverflow)?;
        if !is_prime(p) {
            continue;
        }
        let isolated = (1..=n).all(|i| p > i + 3 && !is_prime(p - i) && !is_prime(p + i));
        if isolated {
            return Ok(DirichletWitness {
                n,
                injection: labels.iter().copied().zip(primes.iter().copied()).collect(),
                k,
                modulus,
                ell,
                p,
            });
        }
    }
    Err(Error::NoPrimeInRange(scan_limit))
}

/// Least gap between consecutive primes that are both `≥ threshold`.
pub fn gap_floor(w: &PrimeWindow, threshold: u64) -> Option<u64> {
    let start = w.primes.partition_point(|&p| p < threshold);
    w.primes[start..].windows(2).map(|p| p[1] - p[0]).min()
}
