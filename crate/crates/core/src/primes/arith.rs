use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    if m == 0 {
        return None;
    }
    let (mut old_r, mut r) = (i128::try_from(a % m).ok()?, i128::try_from(m).ok()?);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u128)
}

fn mul_mod(a: u128, b: u128, m: u128) -> Result<u128> {
    match a.checked_mul(b) {
        Some(v) => Ok(v % m),
        None => {
            // Double-and-add; operands are below m < 2^127.
            let (mut a, mut b, mut acc) = (a % m, b, 0u128);
            while b > 0 {
                if b & 1 == 1 {
                    acc = (acc + a) % m;
                }
                a = (a << 1) % m;
                b >>= 1;
            }
            Ok(acc)
        }
    }
}

/// Solves `x ≡ a_i (mod m_i)` for pairwise coprime moduli; returns
/// `(x, ∏ m_i)` with `0 ≤ x < ∏ m_i`.
pub fn crt(congruences: &[(u128, u128)]) -> Result<(u128, u128)> {
    let mut x = 0u128;
    let mut m = 1u128;
    for &(a, mi) in congruences {
        if mi == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let inv = mod_inverse(m % mi, mi)
            .ok_or_else(|| Error::InvalidArgument(format!("modulus {mi} is not coprime to the others")))?;
        let diff = (a % mi + mi - x % mi) % mi;
        let t = mul_mod(diff, inv, mi)?;
        let next_m = m.checked_mul(mi).ok_or(Error::CoordinateOverflow)?;
        x = x
            .checked_add(m.checked_mul(t).ok_or(Error::CoordinateOverflow)?)
            .ok_or(Error::CoordinateOverflow)?;
        m = next_m;
    }
    Ok((x, m))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
