//! The moment expansion of the elliptic-family prime sum.
//!
//! With `lambda = a_t(p)/sqrt(p)`, `alpha + beta = lambda`, `alpha beta = 1`
//! at good fibers and `s_m = alpha^m + beta^m`, the prime side is
//!
//! ```text
//! S = -2 sum_p sum_{m >= 1} avg_t(s_m) p^{-m/2} (log p / L) phi_hat(m log p / L).
//! ```
//!
//! Replacing `phi_hat(m log p / L)` by `phi_hat(0)` for `m >= 3` and
//! expanding `sum_{m >= 3} s_m p^{-m/2}` as a power series in `lambda` gives
//! the terms `S_A'`, `S_0`, `S_1`, `S_2`, `S_A`; summing the tail of that
//! series geometrically gives `S_A~`. Bad fibers (`p` dividing the
//! discriminant or the leading coefficient) carry the single parameter
//! `lambda` and go entirely into `S_A'`.
//!
//! Family weights are uniform: `A_r(p) = (1/W) sum_{good t} lambda^r` with
//! `W` the number of `t`.

use super::surface::EllipticSurface;
use super::traces::frobenius_trace;
use crate::numth::primes_in_range;
use crate::testfn::TestFunctionPair;
use crate::{Error, Result};

const SERIES_EPS: f64 = 1e-22;
const SERIES_MAX: u32 = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerms {
    pub s_a_prime: f64,
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s_a: f64,
    pub s_a_tilde: f64,
    /// `S_A' + S_0 + S_1 + S_2 + S_A`.
    pub total: f64,
    /// The prime sum evaluated term by term from the definition.
    pub direct: f64,
    /// `total - direct` computed independently: the effect of replacing
    /// `phi_hat(m log p / L)` by `phi_hat(0)` for `m >= 3`.
    pub tail_exact: f64,
    /// Majorant of `|total - direct|` using `|s_m| <= 2`.
    pub tail_budget: f64,
    pub primes: usize,
    pub family_size: usize,
}

struct PrimeData {
    p: f64,
    good: Vec<f64>,
    bad: Vec<f64>,
}

/// Expansion terms for `t` in `[t_lo, t_hi]` and primes `5 <= p <= prime_bound`,
/// at scale `L = log_r`.
pub fn expansion_terms(
    surface: &EllipticSurface,
    t_lo: i64,
    t_hi: i64,
    pair: &TestFunctionPair,
    log_r: f64,
    prime_bound: u64,
) -> Result<ExpansionTerms> {
    if t_hi < t_lo {
        return Err(Error::Empty(format!("t range [{t_lo}, {t_hi}]")));
    }
    if !(log_r > 0.0) {
        return Err(Error::InvalidArgument(format!("log R = {log_r} must be positive")));
    }
    let w = (t_hi - t_lo + 1) as f64;
    let mut data = Vec::new();
    for p in primes_in_range(5, prime_bound) {
        let mut d = PrimeData {
            p: p as f64,
            good: Vec::new(),
            bad: Vec::new(),
        };
        for t in t_lo..=t_hi {
            let tr = frobenius_trace(surface, t, p)?;
            if tr.a.unsigned_abs() >= p {
                return Err(Error::NotApplicable(format!(
                    "fiber t = {t} is constant in x mod {p}"
                )));
            }
            let lambda = tr.a as f64 / d.p.sqrt();
            if tr.singular {
                d.bad.push(lambda);
            } else {
                let bound = (2.0 * d.p.sqrt()).floor();
                assert!(
                    (tr.a as f64).abs() <= bound,
                    "Hasse bound violated at t = {t}, p = {p}"
                );
                d.good.push(lambda);
            }
        }
        data.push(d);
    }

    let h0 = pair.phi_hat(0.0);
    let mut out = ExpansionTerms {
        s_a_prime: 0.0,
        s0: 0.0,
        s1: 0.0,
        s2: 0.0,
        s_a: 0.0,
        s_a_tilde: 0.0,
        total: 0.0,
        direct: 0.0,
        tail_exact: 0.0,
        tail_budget: 0.0,
        primes: data.len(),
        family_size: w as usize,
    };

    for d in &data {
        let p = d.p;
        let sp = p.sqrt();
        let lp = p.ln() / log_r;
        let hat = |m: u32| pair.phi_hat(m as f64 * lp);
        let avg = |xs: &[f64], r: i32| xs.iter().map(|l| l.powi(r)).sum::<f64>() / w;
        let a0 = d.good.len() as f64 / w;
        let a1 = avg(&d.good, 1);
        let a2 = avg(&d.good, 2);

        // bad fibers: every m, one parameter lambda
        for &l in &d.bad {
            let mut m = 1;
            let mut pw = l / sp;
            while m <= SERIES_MAX && pw.abs() > SERIES_EPS {
                out.s_a_prime += -2.0 * pw * lp * hat(m) / w;
                m += 1;
                pw *= l / sp;
            }
        }

        out.s0 += -2.0 * h0 * 2.0 * a0 * lp / (p * (p + 1.0)) + 2.0 * 2.0 * a0 * lp / p * hat(2);
        out.s1 += -2.0 * a1 / sp * lp * hat(1)
            + 2.0 * h0 * a1 * (3.0 * p + 1.0) / (sp * (p + 1.0).powi(2)) * lp;
        out.s2 += -2.0 * a2 * lp / p * hat(2)
            + 2.0 * h0 * a2 * (4.0 * p * p + 3.0 * p + 1.0) * lp / (p * (p + 1.0).powi(3));

        // S_A: sum over r >= 3 of A_r p^{r/2} (p - 1) / (p + 1)^{r + 1}
        let mut sa = 0.0;
        for &l in &d.good {
            let q = l * sp / (p + 1.0);
            let mut term = q.powi(3) / (p + 1.0);
            let mut r = 3;
            while r <= SERIES_MAX && term.abs() > SERIES_EPS {
                sa += term;
                term *= q;
                r += 1;
            }
        }
        out.s_a += -2.0 * h0 * (p - 1.0) * lp * sa / w;

        let a_tilde = d.good.iter().map(|&l| l.powi(3) / (p + 1.0 - l * sp)).sum::<f64>() / w;
        out.s_a_tilde += -2.0 * h0 * a_tilde * p.powf(1.5) * (p - 1.0) * lp / (p + 1.0).powi(3);

        // direct sum and the m >= 3 replacement effect at good fibers
        for &l in &d.good {
            let (mut prev, mut cur) = (2.0, l);
            let mut m = 1;
            let mut pw = 1.0 / sp;
            while m <= SERIES_MAX && pw > SERIES_EPS {
                out.direct += -2.0 * cur * pw * lp * hat(m) / w;
                if m >= 3 {
                    let gap = h0 - hat(m);
                    out.tail_exact += -2.0 * cur * pw * lp * gap / w;
                    out.tail_budget += 2.0 * 2.0 * pw * lp * gap.abs() / w;
                }
                (prev, cur) = (cur, l * cur - prev);
                m += 1;
                pw /= sp;
            }
        }
        for &l in &d.bad {
            let mut m = 1;
            let mut pw = l / sp;
            while m <= SERIES_MAX && pw.abs() > SERIES_EPS {
                out.direct += -2.0 * pw * lp * hat(m) / w;
                m += 1;
                pw *= l / sp;
            }
        }
    }
    out.total = out.s_a_prime + out.s0 + out.s1 + out.s2 + out.s_a;
    Ok(out)
}
