use crate::{Error, Result};

/// An odd square-free modulus with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredModulus {
    m: u64,
    factors: Vec<u64>,
}

impl FactoredModulus {
    /// Factors `m` by trial division. Fails unless `m >= 3` is odd and
    /// square-free.
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 || m % 2 == 0 {
            return Err(Error::NotOddSquarefree(m));
        }
        let mut n = m;
        let mut factors = Vec::new();
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return Err(Error::NotOddSquarefree(m));
                }
                factors.push(d);
            }
            d += 2;
        }
        if n > 1 {
            factors.push(n);
        }
        Ok(FactoredModulus { m, factors })
    }

    fn from_parts(m: u64, factors: Vec<u64>) -> Self {
        debug_assert_eq!(factors.iter().product::<u64>(), m);
        FactoredModulus { m, factors }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Distinct prime factors in ascending order.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of prime factors.
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// `prod (m_i - 1) = phi(m)`.
    pub fn m1(&self) -> u64 {
        self.factors.iter().map(|q| q - 1).product()
    }

    /// `prod (m_i - 2)`, the number of primitive characters mod `m`.
    pub fn m2(&self) -> u64 {
        self.factors.iter().map(|q| q - 2).product()
    }

    /// Number of divisors, `2^r`.
    pub fn tau(&self) -> u64 {
        1 << self.r()
    }

    pub fn is_prime(&self) -> bool {
        self.r() == 1
    }
}

/// All odd square-free `m` in `[lo, hi]`, factored, in increasing order.
pub fn squarefree_enumerate(lo: u64, hi: u64) -> Result<Vec<FactoredModulus>> {
    if lo < 3 || hi < lo {
        return Err(Error::InvalidArgument(format!(
            "need 3 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    // smallest-prime-factor sieve up to hi
    let n = hi as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut out = Vec::new();
    'next: for m in (lo | 1..=hi).step_by(2) {
        let mut k = m as usize;
        let mut factors = Vec::new();
        while k > 1 {
            let q = spf[k] as usize;
            k /= q;
            if k % q == 0 {
                continue 'next;
            }
            factors.push(q as u64);
        }
        out.push(FactoredModulus::from_parts(m, factors));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        let got: Vec<(u64, usize)> = squarefree_enumerate(10, 20)
            .unwrap()
            .iter()
            .map(|f| (f.m(), f.r()))
            .collect();
        assert_eq!(got, [(11, 1), (13, 1), (15, 2), (17, 1), (19, 1)]);
        assert!(squarefree_enumerate(9, 9).unwrap().is_empty());
        let three = squarefree_enumerate(3, 3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].factors(), &[3]);
        assert!(squarefree_enumerate(2, 9).is_err());
    }

    #[test]
    fn counts_for_105() {
        let f = FactoredModulus::new(105).unwrap();
        assert_eq!(f.factors(), &[3, 5, 7]);
        assert_eq!((f.m1(), f.m2(), f.tau()), (48, 15, 8));
        assert!(FactoredModulus::new(45).is_err());
        assert!(FactoredModulus::new(30).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        for f in squarefree_enumerate(3, 20_000).unwrap() {
            assert_eq!(FactoredModulus::new(f.m()).unwrap(), f);
        }
    }
}
