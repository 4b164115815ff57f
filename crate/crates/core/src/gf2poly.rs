//! Polynomials over GF(2) packed into a `u128` (bit `i` is the coefficient of
//! `x^i`). Degrees stay below 64 everywhere in this crate, so products fit.

use alloc::vec::Vec;

/// Degree of `p`, or `None` for the zero polynomial.
pub fn degree(p: u128) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(127 - p.leading_zeros())
    }
}

/// Carryless product. Callers keep `deg a + deg b < 128`.
pub fn clmul(a: u128, b: u128) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(mut a: u128, m: u128) -> u128 {
    let dm = degree(m).expect("modulus must be nonzero");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

pub fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    rem(clmul(a, b), m)
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// `x^(2^k) mod m`, by `k` repeated squarings of `x`.
fn x_pow_two_pow(k: u32, m: u128) -> u128 {
    let mut r = rem(2, m);
    for _ in 0..k {
        r = mulmod(r, r, m);
    }
    r
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test: `p` of degree `n` is irreducible iff
/// `x^(2^n) = x (mod p)` and `gcd(x^(2^(n/r)) - x, p) = 1` for every prime `r | n`.
pub fn is_irreducible(p: u128) -> bool {
    let n = match degree(p) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    if x_pow_two_pow(n, p) != rem(2, p) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = x_pow_two_pow(n / r as u32, p) ^ rem(2, p);
        if degree(gcd(p, h)) != Some(0) {
            return false;
        }
    }
    true
}
