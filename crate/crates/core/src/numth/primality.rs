use super::modular::{mul_mod, pow_mod};
use crate::{Error, Result};

// These twelve bases are a deterministic witness set for every n < 3.3e24,
// which covers all of u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: i64) -> bool {
    n > 2 && is_prime(n as u64)
}

/// Contract check used at every public entry point that needs an odd prime.
pub fn require_odd_prime(p: i64) -> Result<u64> {
    if is_odd_prime(p) {
        Ok(p as u64)
    } else {
        Err(Error::NotOddPrime(p))
    }
}
