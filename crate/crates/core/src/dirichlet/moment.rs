use crate::numth::{for_each_prime_below, is_prime, pow_mod};
use crate::{Error, Result};

/// `M2(F; X) = sum_{p < X} sum_chi chi(p)^2` and its ratio to `pi(X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoment {
    pub value: i64,
    /// Number of primes `p < X`.
    pub prime_count: u64,
    pub ratio: f64,
}

/// Second moment of the nontrivial characters mod a prime `q`, or of the
/// `l - 1` nontrivial characters of order `l` when `torsion = Some(l)`.
///
/// Per prime `p != q` the inner sum is `(q - 1)[p = +-1 mod q] - 1` for the
/// full family and `l [p^(2(q-1)/l) = 1 mod q] - 1` for the torsion family;
/// `p = q` contributes 0.
pub fn dirichlet_second_moment(q: u64, x: u64, torsion: Option<u64>) -> Result<SecondMoment> {
    if q < 3 || !is_prime(q) {
        return Err(Error::NotOddPrime(q as i64));
    }
    if let Some(l) = torsion {
        if !is_prime(l) || l == q || (q - 1) % l != 0 {
            return Err(Error::InvalidArgument(format!(
                "torsion order {l} must be a prime dividing q - 1 = {}",
                q - 1
            )));
        }
    }
    let mut value = 0i64;
    let mut prime_count = 0u64;
    for_each_prime_below(x, |p| {
        prime_count += 1;
        if p == q {
            return;
        }
        value += match torsion {
            None => {
                let r = p % q;
                if r == 1 || r == q - 1 {
                    q as i64 - 2
                } else {
                    -1
                }
            }
            Some(l) => {
                if pow_mod(p, 2 * (q - 1) / l, q) == 1 {
                    l as i64 - 1
                } else {
                    -1
                }
            }
        };
    });
    if prime_count == 0 {
        return Err(Error::Empty(format!("no primes below {x}")));
    }
    Ok(SecondMoment {
        value,
        prime_count,
        ratio: value as f64 / prime_count as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(dirichlet_second_moment(5, 50, None).unwrap().value, 6);
        assert_eq!(dirichlet_second_moment(5, 50, None).unwrap().prime_count, 15);
        assert_eq!(dirichlet_second_moment(5, 3, None).unwrap().value, -1);
        // (7, 3): p = 2, 3, 5 give -1 each, 7 gives 0, 13 = -1 mod 7 gives 2
        assert_eq!(dirichlet_second_moment(7, 14, Some(3)).unwrap().value, -1 - 1 - 1 + 0 - 1 + 2);
    }

    #[test]
    fn contract() {
        assert!(dirichlet_second_moment(9, 50, None).is_err());
        assert!(dirichlet_second_moment(7, 50, Some(5)).is_err());
        assert!(dirichlet_second_moment(7, 50, Some(7)).is_err());
        assert!(dirichlet_second_moment(7, 2, None).is_err());
    }
}
