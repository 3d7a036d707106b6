//! Frobenius traces `a_t(p) = -sum_x ((f(x, t))/p)`.
//!
//! The brute path costs `O(p)` per fiber. For surfaces that split as
//! `g(x) + k(T) h(x)`, every trace at a prime comes out of one circular
//! cross-correlation:
//!
//! ```text
//! A(u) = -sum_{h(x) = 0} (g(x)/p) - sum_r w[r] ((r + u)/p),
//! w[r] = sum_{h(x) != 0, g(x)/h(x) = r} (h(x)/p)
//! ```
//!
//! so `a_t = A(k(t))` and all `p` traces cost `O(p log p)`.

use super::surface::{EllipticSurface, Separation};
use crate::numth::{is_prime, mul_mod, reduce, LegendreTable};
use crate::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Elliptic scans use primes `p >= 5` only.
pub(crate) fn require_scan_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a prime >= 5"
        )));
    }
    Ok(())
}

/// A single trace with its reduction flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trace {
    pub a: i64,
    /// `p` divides the leading coefficient or the discriminant of the fiber.
    pub singular: bool,
}

#[inline]
fn cubic_at(f: &[u64; 4], x: u64, p: u64) -> u64 {
    let v = mul_mod(f[3], x, p) + f[2];
    let v = mul_mod(v % p, x, p) + f[1];
    let v = mul_mod(v % p, x, p) + f[0];
    v % p
}

fn trace_with_table(surface: &EllipticSurface, t: i64, p: u64, leg: &LegendreTable) -> i64 {
    let f = surface.fiber_mod(t, p);
    -(0..p).map(|x| leg.get(cubic_at(&f, x, p)) as i64).sum::<i64>()
}

/// `a_t(p)` for one fiber by direct Legendre summation.
pub fn frobenius_trace(surface: &EllipticSurface, t: i64, p: u64) -> Result<Trace> {
    require_scan_prime(p)?;
    let leg = LegendreTable::new(p as i64)?;
    Ok(Trace {
        a: trace_with_table(surface, t, p, &leg),
        singular: surface.is_singular(t, p),
    })
}

/// All `a_t(p)`, `t = 0..p`, fiber by fiber. `O(p^2)`; the test oracle.
pub fn traces_brute(surface: &EllipticSurface, p: u64) -> Result<Vec<i64>> {
    require_scan_prime(p)?;
    let leg = LegendreTable::new(p as i64)?;
    Ok((0..p as i64).map(|t| trace_with_table(surface, t, p, &leg)).collect())
}

/// Values `A(u)` for every residue `u`: the trace of `g(x) + u h(x)`.
pub(crate) fn traces_by_k_value(sep: &Separation, p: u64, leg: &LegendreTable) -> Vec<i64> {
    let g = sep.g.map(|c| reduce(c, p));
    let h = sep.h.map(|c| reduce(c, p));
    let n = p as usize;
    let mut constant = 0i64;
    let mut w = vec![0i64; n];
    for x in 0..p {
        let hx = cubic_at(&h, x, p);
        let gx = cubic_at(&g, x, p);
        if hx == 0 {
            constant += leg.get(gx) as i64;
        } else {
            let inv = crate::numth::inv_mod(hx, p).expect("p prime");
            w[mul_mod(gx, inv, p) as usize] += leg.get(hx) as i64;
        }
    }
    let corr = correlate(&w, leg.as_slice()).unwrap_or_else(|| correlate_direct(&w, leg.as_slice()));
    corr.into_iter().map(|c| -constant - c).collect()
}

/// `c[u] = sum_r w[r] chi[(r + u) mod n]` via FFT. Returns `None` if any
/// output is not within 0.25 of an integer.
fn correlate(w: &[i64], chi: &[i8]) -> Option<Vec<i64>> {
    let n = w.len();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut a: Vec<Complex64> = w.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect();
    let mut b: Vec<Complex64> = chi.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect();
    fwd.process(&mut a);
    fwd.process(&mut b);
    let mut c: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x.conj() * y).collect();
    inv.process(&mut c);
    let scale = 1.0 / n as f64;
    let mut out = Vec::with_capacity(n);
    for z in c {
        let v = z.re * scale;
        let r = v.round();
        if (v - r).abs() > 0.25 {
            return None;
        }
        out.push(r as i64);
    }
    Some(out)
}

fn correlate_direct(w: &[i64], chi: &[i8]) -> Vec<i64> {
    let n = w.len();
    (0..n)
        .map(|u| {
            w.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(r, &v)| v * chi[(r + u) % n] as i64)
                .sum()
        })
        .collect()
}

/// All `a_t(p)`, `t = 0..p`: the correlation path when the surface splits,
/// otherwise fiber by fiber.
pub fn traces(surface: &EllipticSurface, p: u64) -> Result<Vec<i64>> {
    require_scan_prime(p)?;
    let leg = LegendreTable::new(p as i64)?;
    Ok(traces_with_table(surface, p, &leg))
}

pub(crate) fn traces_with_table(surface: &EllipticSurface, p: u64, leg: &LegendreTable) -> Vec<i64> {
    match surface.separation() {
        Some(sep) => {
            let by_u = traces_by_k_value(&sep, p, leg);
            (0..p).map(|t| by_u[sep.k.eval_mod(t, p) as usize]).collect()
        }
        None => (0..p as i64).map(|t| trace_with_table(surface, t, p, leg)).collect(),
    }
}
