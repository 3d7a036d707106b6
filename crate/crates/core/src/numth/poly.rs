use super::modular::reduce;
use super::primality::require_odd_prime;
use crate::{Error, Result};
use std::fmt;

/// A polynomial over `Z`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 T`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::new(vec![c0, c1])
    }

    /// `c T^n`.
    pub fn monomial(c: i64, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `T^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Value at `x` reduced mod `p`, by Horner's rule.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let x = x % p;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| {
            ((acc as u128 * x as u128 + reduce(c, p) as u128) % p as u128) as u64
        })
    }

    /// Coefficients reduced mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        self.coeffs.iter().map(|&c| reduce(c, p)).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

/// Number of roots of `poly` in `Z/pZ` for a polynomial of degree at most 3.
pub fn cubic_root_count(poly: &IntPolynomial, p: i64) -> Result<u32> {
    let p = require_odd_prime(p)?;
    if poly.degree().unwrap_or(0) > 3 {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds 3",
            poly.degree().unwrap_or(0)
        )));
    }
    let c = poly.reduce_mod(p);
    let c = |k: usize| c.get(k).copied().unwrap_or(0) as u128;
    let pm = p as u128;
    let mut n = 0;
    for x in 0..p as u128 {
        let v = ((c(3) * x % pm + c(2)) % pm * x % pm + c(1)) % pm * x % pm + c(0);
        if v % pm == 0 {
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        let cubic = IntPolynomial::new(vec![0, -1, 0, 1]);
        assert_eq!(cubic_root_count(&cubic, 5), Ok(3));
        assert!(cubic_root_count(&IntPolynomial::new(vec![1, 0, 0, 1]), 2).is_err());
        assert_eq!(cubic_root_count(&IntPolynomial::constant(1), 7), Ok(0));
        // the zero polynomial vanishes everywhere
        assert_eq!(cubic_root_count(&IntPolynomial::zero(), 7), Ok(7));
        assert!(cubic_root_count(&IntPolynomial::monomial(1, 4), 7).is_err());
    }

    #[test]
    fn trimming_and_eval() {
        let p = IntPolynomial::new(vec![1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval_mod(3, 5), 2);
        assert_eq!(IntPolynomial::new(vec![-1, 0, 1]).eval_mod(1, 7), 0);
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p.to_string(), "[1,2]");
    }
}
