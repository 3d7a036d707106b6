use super::modular::{euler_phi, gcd};
use crate::{Error, Result};

const SEGMENT: usize = 1 << 18;

/// Primes up to `sqrt(hi)` by the plain sieve; used to seed the segments.
fn base_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Calls `f` on every prime in `[lo, hi]` in increasing order, sieving one
/// fixed-size segment at a time so memory stays at `O(sqrt(hi) + SEGMENT)`.
pub fn for_each_prime_in(lo: u64, hi: u64, mut f: impl FnMut(u64)) {
    let lo = lo.max(2);
    if hi < lo {
        return;
    }
    let base = base_primes(isqrt(hi));
    let mut seg = vec![false; SEGMENT];
    let mut start = lo;
    loop {
        let end = hi.min(start.saturating_add(SEGMENT as u64 - 1));
        let len = (end - start + 1) as usize;
        seg[..len].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (p * p).max(start.div_ceil(p) * p);
            let mut j = first;
            while j <= end {
                seg[(j - start) as usize] = true;
                j += p;
            }
        }
        for (i, &c) in seg[..len].iter().enumerate() {
            if !c {
                f(start + i as u64);
            }
        }
        if end == hi {
            break;
        }
        start = end + 1;
    }
}

/// Calls `f` on every prime `p < x`.
pub fn for_each_prime_below(x: u64, f: impl FnMut(u64)) {
    if x >= 3 {
        for_each_prime_in(2, x - 1, f);
    }
}

/// All primes in `[lo, hi]`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime_in(lo, hi, |p| out.push(p));
    out
}

/// All primes strictly below `x`.
pub fn primes_below(x: u64) -> Vec<u64> {
    if x < 3 {
        return Vec::new();
    }
    primes_in_range(2, x - 1)
}

/// `pi(x)`, the number of primes `<= x`.
pub fn prime_count(x: u64) -> u64 {
    let mut n = 0;
    for_each_prime_in(2, x, |_| n += 1);
    n
}

/// An ascending table of all primes up to `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        PrimeTable {
            limit,
            primes: primes_in_range(2, limit),
        }
    }

    /// Smallest table containing at least the first `n` primes.
    pub fn with_count(n: usize) -> Self {
        let nf = (n.max(6)) as f64;
        // Rosser: p_n < n (ln n + ln ln n) for n >= 6
        let bound = (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 16;
        let mut t = PrimeTable::new(bound);
        t.primes.truncate(t.primes.len().max(n));
        t
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `k`-th prime, 1-based (`nth(1) == 2`).
    pub fn nth(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.primes.get(i).copied())
    }

    /// Primes with 1-based ranks in `[lo_rank, hi_rank]`.
    pub fn rank_window(&self, lo_rank: usize, hi_rank: usize) -> &[u64] {
        let lo = lo_rank.max(1) - 1;
        let hi = hi_rank.min(self.primes.len());
        if lo >= hi {
            return &[];
        }
        &self.primes[lo..hi]
    }

    /// Primes `p` with `lo <= p <= hi` as a slice of the table.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        &self.primes[a..b.max(a)]
    }
}

/// `pi(x; m, a)`: primes `p <= x` with `p = a (mod m)`.
pub fn primes_in_class_count(x: f64, m: u64, a: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    if !(x >= 2.0) {
        return Ok(0);
    }
    let target = a % m;
    let mut n = 0;
    for_each_prime_in(2, x.floor() as u64, |p| {
        if p % m == target {
            n += 1;
        }
    });
    Ok(n)
}

/// The Brun–Titchmarsh majorant `2x / (phi(m) log(x/m))`, meaningful for `x > m`.
pub fn brun_titchmarsh_bound(x: f64, m: u64) -> f64 {
    2.0 * x / (euler_phi(m) as f64 * (x / m as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = PrimeTable::new(30);
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(t.nth(1), Some(2));
        assert_eq!(t.nth(10), Some(29));
        assert_eq!(t.nth(0), None);
        assert_eq!(t.range(5, 13), &[5, 7, 11, 13]);
        assert_eq!(t.rank_window(2, 4), &[3, 5, 7]);
        assert!(PrimeTable::new(1).is_empty());
    }

    #[test]
    fn segments_match_plain_sieve() {
        let plain = base_primes(2_000_000);
        let seg = primes_in_range(2, 2_000_000);
        assert_eq!(plain, seg);
        let mid = primes_in_range(999_000, 1_001_000);
        let expect: Vec<u64> = plain
            .iter()
            .copied()
            .filter(|&p| (999_000..=1_001_000).contains(&p))
            .collect();
        assert_eq!(mid, expect);
    }

    #[test]
    fn known_counts() {
        assert_eq!(prime_count(100), 25);
        assert_eq!(prime_count(1_000_000), 78_498);
        assert_eq!(primes_below(7), vec![2, 3, 5]);
        let t = PrimeTable::with_count(7000);
        assert_eq!(t.nth(1000), Some(7919));
        assert_eq!(t.nth(7000), Some(70_657));
    }

    #[test]
    fn class_counts() {
        assert_eq!(primes_in_class_count(100.0, 5, 1), Ok(5));
        assert_eq!(primes_in_class_count(10.0, 2, 1), Ok(3));
        assert_eq!(primes_in_class_count(1.0, 5, 1), Ok(0));
        assert!(matches!(
            primes_in_class_count(100.0, 6, 3),
            Err(Error::NotCoprime { .. })
        ));
    }
}
