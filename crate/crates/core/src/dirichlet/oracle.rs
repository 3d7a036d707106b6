//! Brute-force character-by-character evaluations.
//!
//! These enumerate every character explicitly and sum complex values, then
//! round. They share nothing with the closed forms beyond the character
//! tables and exist to cross-check them.

use super::character::{PrimitiveFamily, RootChoice};
use crate::numth::{for_each_prime_below, FactoredModulus};
use crate::{Error, Result};
use num_complex::Complex64;

const ROUNDING_SLACK: f64 = 1e-6;

fn to_integer(z: Complex64) -> Result<i64> {
    let r = z.re.round();
    if (z.re - r).abs() > ROUNDING_SLACK || z.im.abs() > ROUNDING_SLACK {
        return Err(Error::InvalidArgument(format!(
            "character sum {z} is not an integer"
        )));
    }
    Ok(r as i64)
}

/// `sum_chi [chi(p)^nu + conj(chi)(p)^nu]` over primitive characters, one
/// character at a time.
pub fn family_sum_brute(m: &FactoredModulus, p: u64, nu: u32, roots: RootChoice) -> Result<i64> {
    let fam = PrimitiveFamily::with_roots(m.clone(), roots)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in fam.iter() {
        let v = chi.value(p).powu(nu);
        acc += v + v.conj();
    }
    to_integer(acc)
}

/// `sum_chi chi(p)` over primitive characters mod a square-free `m`.
pub fn primitive_sum_brute(m: &FactoredModulus, p: u64) -> Result<i64> {
    let fam = PrimitiveFamily::new(m.clone())?;
    to_integer(fam.iter().map(|chi| chi.value(p)).sum())
}

/// `sum_chi chi(k)` over all characters mod `m`; orthogonality says this is
/// `phi(m)` when `k = 1 mod m` and 0 otherwise.
pub fn all_character_sum(m: &FactoredModulus, k: u64) -> Result<i64> {
    let fam = PrimitiveFamily::new(m.clone())?;
    to_integer(fam.all_characters().map(|chi| chi.value(k)).sum())
}

/// `sum_{p < x} sum_chi chi(p)^2` over nontrivial characters mod prime `q`
/// (or those of order `l`), enumerating characters explicitly.
pub fn second_moment_brute(q: u64, x: u64, torsion: Option<u64>) -> Result<i64> {
    let fam = PrimitiveFamily::new(FactoredModulus::new(q)?)?;
    let chars: Vec<_> = fam
        .all_characters()
        .filter(|c| {
            let l = c.exponents()[0];
            l != 0 && torsion.map_or(true, |ord| (l * ord) % (q - 1) == 0)
        })
        .collect();
    let mut total = 0i64;
    let mut err = None;
    for_each_prime_below(x, |p| {
        let s: Complex64 = chars.iter().map(|c| c.value(p).powu(2)).sum();
        match to_integer(s) {
            Ok(v) => total += v,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
