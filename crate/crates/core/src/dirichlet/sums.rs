use super::character::DirichletCharacter;
use crate::numth::{euler_phi, gcd, is_prime, mobius, FactoredModulus};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Exact value of `sum_chi [chi(p)^nu + conj(chi)(p)^nu]` over the primitive
/// characters mod `m`. `ramified` is set (and `value` is 0) when `p | m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySum {
    pub value: i64,
    pub ramified: bool,
}

/// Closed-form family character sum for `nu` in `{1, 2}`.
///
/// Each factor `q` contributes `-1 + (q - 1) [p = 1 mod q]` for `nu = 1` and
/// `-1 + (q - 1) [p = +-1 mod q]` for `nu = 2`; the product is doubled for the
/// conjugate term.
pub fn family_sum_chi(m: &FactoredModulus, p: u64, nu: u32) -> Result<FamilySum> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if nu != 1 && nu != 2 {
        return Err(Error::InvalidArgument(format!("nu must be 1 or 2, got {nu}")));
    }
    if m.m() % p == 0 {
        return Ok(FamilySum {
            value: 0,
            ramified: true,
        });
    }
    Ok(FamilySum {
        value: 2 * family_sum_unchecked(m.factors(), p, nu),
        ramified: false,
    })
}

/// `sum_chi chi(p)^nu` without the conjugate doubling or argument checks.
/// Hot-loop form used by the density sums.
#[inline]
pub(crate) fn family_sum_unchecked(factors: &[u64], p: u64, nu: u32) -> i64 {
    let mut prod = 1i64;
    for &q in factors {
        let r = p % q;
        let hit = r == 1 || (nu == 2 && r == q - 1);
        prod *= if hit { q as i64 - 2 } else { -1 };
    }
    prod
}

/// `sum_{d | gcd(p - 1, m)} phi(d) mu(m / d)`, the sum of `chi(p)` over the
/// primitive characters mod any `m >= 3`.
pub fn primitive_sum_divisor_identity(m: u64, p: u64) -> Result<i64> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("modulus {m} < 3")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if m % p == 0 {
        return Err(Error::NotCoprime { a: p, m });
    }
    let g = gcd(p - 1, m);
    let mut total = 0i64;
    let mut d = 1;
    while d * d <= g {
        if g % d == 0 {
            total += euler_phi(d) as i64 * mobius(m / d);
            let e = g / d;
            if e != d {
                total += euler_phi(e) as i64 * mobius(m / e);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// The Gauss sum `sum_{k < m} chi(k) e(k/m)` of a primitive character.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let m = chi.modulus().m();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..m {
        if let Some(t) = chi.value_turn(k) {
            let turn = *t.numer() as f64 / *t.denom() as f64 + k as f64 / m as f64;
            acc += Complex64::from_polar(1.0, TAU * turn);
        }
    }
    Ok(acc)
}
