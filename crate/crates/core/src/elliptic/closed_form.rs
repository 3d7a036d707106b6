//! Exact complete second moments `sum_{t mod p} a_t(p)^2` for the built-in
//! family shapes.

use super::surface::FamilyKind;
use super::traces::require_scan_prime;
use crate::numth::{cubic_root_count, jacobi_symbol, reduce, IntPolynomial, LegendreTable};
use crate::{Error, Result};

fn not_applicable(kind: FamilyKind, p: u64, why: &str) -> Error {
    Error::NotApplicable(format!("{kind} at p = {p}: {why}"))
}

fn leg(a: i64, p: u64) -> i64 {
    jacobi_symbol(a, p) as i64
}

/// `sum_x ((x^3 + b x + c)/p)` over all residues.
fn cubic_character_sum(b: i64, c: i64, p: u64) -> i64 {
    let t = LegendreTable::new(p as i64).expect("p prime");
    let (b, c) = (reduce(b, p), reduce(c, p));
    (0..p)
        .map(|x| {
            let v = ((x * x % p + b) % p * x + c) % p;
            t.get(v) as i64
        })
        .sum()
}

/// `sum_{t mod p} a_t(p)^2` from the closed form for `kind`.
///
/// Returns [`Error::NotApplicable`] when the prime violates the shape's
/// coprimality conditions.
pub fn closed_form_a2(kind: FamilyKind, p: u64) -> Result<i64> {
    require_scan_prime(p)?;
    let pi = p as i64;
    let divides = |x: i64| x.rem_euclid(pi) == 0;
    match kind {
        FamilyKind::TConst { a, b, c, e, .. } => {
            let delta = b * b - 3 * a * c;
            if divides(a) || divides(e) || divides(delta) {
                return Err(not_applicable(kind, p, "p divides a, e or b^2 - 3ac"));
            }
            Ok(pi * pi - pi * (1 + leg(delta, p) + leg(-3, p)))
        }
        FamilyKind::TLin { a, b, c, .. } => {
            if divides(a) || divides(b) || divides(c) {
                return Err(not_applicable(kind, p, "p divides a, b or c"));
            }
            Ok(pi * pi - pi * (2 + leg(-1, p)))
        }
        FamilyKind::TPowX { n } => {
            if n == 0 {
                return Err(not_applicable(kind, p, "n = 0 is a constant family"));
            }
            if n % 2 == 0 {
                let s = cubic_character_sum(1, 0, p);
                Ok((pi - 1) * s * s)
            } else {
                Ok((pi * pi - pi) * (1 + leg(-1, p)))
            }
        }
        FamilyKind::TPow { n } => {
            if n == 0 {
                return Err(not_applicable(kind, p, "n = 0 is a constant family"));
            }
            if n % 3 == 0 {
                let s = cubic_character_sum(0, 1, p);
                Ok((pi - 1) * s * s)
            } else {
                Ok((pi * pi - pi) * (1 + leg(-3, p)))
            }
        }
        FamilyKind::Wash { m } => {
            if divides(m) {
                return Err(not_applicable(kind, p, "p divides m"));
            }
            Ok(pi * pi - pi * (2 + 2 * leg(-3, p)) - 1)
        }
        FamilyKind::LinearX { .. } => {
            let (c0, c1) = c0_c1(kind, p)?;
            Ok(pi * pi + pi * c1 - pi * c0)
        }
    }
}

fn linear_x_params(kind: FamilyKind, p: u64) -> Result<(u64, u64, u64)> {
    let FamilyKind::LinearX { a, c, d, g, .. } = kind else {
        return Err(Error::InvalidArgument(format!(
            "{kind} is not of the form a x^3 + c x^2 + (d T + e) x + g"
        )));
    };
    if reduce(d, p) == 0 || reduce(g, p) == 0 {
        return Err(not_applicable(kind, p, "p divides d or g"));
    }
    Ok((reduce(a, p), reduce(c, p), reduce(g, p)))
}

/// Square roots mod `p`: `root[v]` squares to `v` when `v` is a square.
fn sqrt_table(p: u64) -> Vec<u32> {
    let mut root = vec![u32::MAX; p as usize];
    for y in 0..=(p / 2) {
        root[(y * y % p) as usize] = y as u32;
    }
    root
}

/// `(c0, c1)` for `y^2 = a x^3 + c x^2 + (d T + e) x + g`:
/// `c0` counts roots of `2a x^3 + c x^2 - g` and
/// `c1 = sum ((x y)/p)` over solutions of `a x y^2 + (a x^2 + c x) y - g = 0`.
///
/// `c1` is computed per `x` from the discriminant of the quadratic in `y`,
/// in `O(p)` total.
pub fn c0_c1(kind: FamilyKind, p: u64) -> Result<(i64, i64)> {
    require_scan_prime(p)?;
    let (a, c, g) = linear_x_params(kind, p)?;
    let c0 = cubic_root_count(
        &IntPolynomial::new(vec![-(g as i64), 0, c as i64, 2 * a as i64]),
        p as i64,
    )? as i64;
    let t = LegendreTable::new(p as i64)?;
    let root = sqrt_table(p);
    let mut c1 = 0i64;
    for x in 1..p {
        let qa = a * x % p;
        let qb = (a * x % p * x + c * x) % p;
        let cx = t.get(x) as i64;
        if qa == 0 {
            // linear: qb y = g
            if qb != 0 {
                c1 += cx * t.get(g) as i64 * t.get(qb) as i64;
            }
            continue;
        }
        let disc = (qb * qb + 4 * qa % p * g) % p;
        let two_a = t.get(2 * qa % p) as i64;
        let minus_b = (p - qb) % p;
        match t.get(disc) {
            -1 => {}
            0 => c1 += cx * two_a * t.get(minus_b) as i64,
            _ => {
                let s = root[disc as usize] as u64;
                c1 += cx
                    * two_a
                    * (t.get((minus_b + s) % p) as i64 + t.get((minus_b + p - s) % p) as i64);
            }
        }
    }
    Ok((c0, c1))
}

/// Exhaustive `O(p^2)` evaluation of `(c0, c1)` over all `(x, y)`.
pub fn c0_c1_brute(kind: FamilyKind, p: u64) -> Result<(i64, i64)> {
    require_scan_prime(p)?;
    let (a, c, g) = linear_x_params(kind, p)?;
    let t = LegendreTable::new(p as i64)?;
    let mut c0 = 0;
    let mut c1 = 0;
    for x in 0..p {
        let v = (2 * a % p * x % p * x % p * x + c * x % p * x + (p - g)) % p;
        if v == 0 {
            c0 += 1;
        }
        for y in 0..p {
            let w = (a * x % p * y % p * y + (a * x % p * x + c * x) % p * y + (p - g)) % p;
            if w == 0 {
                c1 += t.get(x * y % p) as i64;
            }
        }
    }
    Ok((c0, c1))
}
