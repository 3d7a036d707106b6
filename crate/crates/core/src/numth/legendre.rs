use super::modular::{pow_mod, reduce};
use super::primality::require_odd_prime;
use crate::Result;

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi_symbol(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = reduce(a, n);
    let mut n = n;
    let mut s = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            s = -s;
        }
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        s
    } else {
        0
    }
}

/// Legendre symbol `(a/p)`; rejects `p` that is not an odd prime.
pub fn legendre_symbol(a: i64, p: i64) -> Result<i8> {
    let p = require_odd_prime(p)?;
    Ok(jacobi_symbol(a, p))
}

/// Euler's criterion `a^((p-1)/2) mod p`. Slow; kept as an independent oracle.
pub fn legendre_euler(a: i64, p: u64) -> i8 {
    match pow_mod(reduce(a, p), (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Precomputed `(x/p)` for every residue `x`, for O(1) lookups in hot loops.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    p: u64,
    values: Vec<i8>,
}

impl LegendreTable {
    pub fn new(p: i64) -> Result<Self> {
        let p = require_odd_prime(p)?;
        let mut values = vec![-1i8; p as usize];
        values[0] = 0;
        for x in 1..=(p - 1) / 2 {
            values[((x * x) % p) as usize] = 1;
        }
        Ok(LegendreTable { p, values })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `(x/p)` for a reduced residue `0 <= x < p`.
    #[inline]
    pub fn get(&self, x: u64) -> i8 {
        self.values[x as usize]
    }

    /// `(a/p)` for any signed integer.
    #[inline]
    pub fn symbol(&self, a: i64) -> i8 {
        self.values[reduce(a, self.p) as usize]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(legendre_symbol(4, 7), Ok(1));
        assert_eq!(legendre_symbol(7, 7), Ok(0));
        assert_eq!(legendre_symbol(3, 7), Ok(-1));
        assert_eq!(legendre_symbol(-1, 5), Ok(1));
        assert_eq!(legendre_symbol(-1, 7), Ok(-1));
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 15).is_err());
    }

    #[test]
    fn reciprocity_matches_euler() {
        for p in crate::numth::primes_in_range(3, 1000) {
            for a in -50i64..(p as i64 + 50) {
                assert_eq!(jacobi_symbol(a, p), legendre_euler(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_composite_modulus() {
        // (2/15) = (2/3)(2/5) = (-1)(-1)
        assert_eq!(jacobi_symbol(2, 15), 1);
        assert_eq!(jacobi_symbol(3, 15), 0);
        assert_eq!(jacobi_symbol(7, 1), 1);
    }

    #[test]
    fn table_matches_symbol() {
        let t = LegendreTable::new(101).unwrap();
        for a in -300..300 {
            assert_eq!(t.symbol(a), jacobi_symbol(a, 101));
        }
    }
}
