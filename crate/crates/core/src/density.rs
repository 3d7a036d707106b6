//! Prime side of the family-averaged explicit formula for primitive
//! Dirichlet characters.
//!
//! For the primitive characters mod `m`, scale `L = log(m/pi)` and family
//! size `M2`:
//!
//! ```text
//! S1 = (1/M2) sum_p (log p/L) phi_hat(log p/L)   F1(p) p^{-1/2}
//! S2 = (1/M2) sum_p (log p/L) phi_hat(2 log p/L) F2(p) p^{-1}
//! ```
//!
//! where `F_nu(p) = sum_chi [chi(p)^nu + conj(chi)(p)^nu]` is the exact
//! integer from [`crate::dirichlet::family_sum_chi`]. The 1-level prime side
//! is `phi_hat(0) - S1 - S2`; the Gamma-factor and `p^nu, nu >= 3` terms are
//! `O(1/L)` and are reported only as an uncertainty budget.

use crate::dirichlet::{family_sum_chi, PrimitiveFamily};
use crate::numth::{primes_below, squarefree_enumerate, FactoredModulus};
use crate::testfn::TestFunctionPair;
use crate::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;

/// Constant `C` in the declared remainder budget `C phi_hat(0) / log(m/pi)`.
pub const REMAINDER_CONSTANT: f64 = 10.0;

/// Default bound on `2N` for square-free family aggregation.
pub const SQUAREFREE_GUARD: u64 = 100_000;

/// How zeros of a character mod `m` are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// By `log(m/pi)`, the character's own conductor.
    #[default]
    PerConductor,
    /// By `log(N/pi)` for every `m` in `[N, 2N]`.
    Fixed,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::PerConductor => "per-conductor",
            Normalization::Fixed => "fixed",
        })
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-conductor" | "conductor" => Ok(Normalization::PerConductor),
            "fixed" => Ok(Normalization::Fixed),
            _ => Err(Error::InvalidArgument(format!("unknown normalization '{s}'"))),
        }
    }
}

/// Aggregate over the moduli of one prime-factor count `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RBreakdown {
    pub r: usize,
    pub moduli: usize,
    pub family_size: u64,
    pub s1: f64,
    pub s2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub descriptor: String,
    /// The modulus for single-modulus reports.
    pub m: Option<u64>,
    /// Number of prime factors for single-modulus reports.
    pub r: Option<usize>,
    pub sigma: f64,
    pub s1: f64,
    pub s2: f64,
    pub main_term: f64,
    /// `main_term - s1 - s2`.
    pub one_level: f64,
    pub family_size: u64,
    pub normalization: Normalization,
    /// Declared size of the omitted `O(1/log)` remainder.
    pub uncertainty: f64,
    /// `(1/|N|) sum_m log(m/pi)/log(N/pi)` for family reports.
    pub conductor_factor: Option<f64>,
    pub per_r: Vec<RBreakdown>,
}

fn scale(m: u64) -> Result<f64> {
    let l = (m as f64 / PI).ln();
    if l <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "modulus {m} must exceed pi so that log(m/pi) > 0"
        )));
    }
    Ok(l)
}

/// Primes `p < scale_base^exponent`, i.e. those with `log p / L < exponent`.
fn primes_in_support(l: f64, exponent: f64) -> Vec<u64> {
    let x = (l * exponent).exp();
    if !x.is_finite() || x > 1e11 {
        return Vec::new();
    }
    primes_below(x.ceil() as u64 + 1)
        .into_iter()
        .filter(|&p| (p as f64).ln() / l < exponent)
        .collect()
}

/// `(S1, S2)` for the primitive characters mod `m` at scale `l`, summed in
/// increasing prime order.
fn sums_at_scale(m: &FactoredModulus, pair: &TestFunctionPair, l: f64) -> (f64, f64) {
    if pair.is_zero() {
        return (0.0, 0.0);
    }
    let sigma = pair.sigma();
    let size = m.m2() as f64;
    let mut s1 = 0.0;
    for p in primes_in_support(l, sigma) {
        let f = family_sum_chi(m, p, 1).expect("p is prime").value;
        if f != 0 {
            let lp = (p as f64).ln() / l;
            s1 += lp * pair.phi_hat(lp) * f as f64 / (p as f64).sqrt();
        }
    }
    let mut s2 = 0.0;
    for p in primes_in_support(l, sigma / 2.0) {
        let f = family_sum_chi(m, p, 2).expect("p is prime").value;
        if f != 0 {
            let lp = (p as f64).ln() / l;
            s2 += lp * pair.phi_hat(2.0 * lp) * f as f64 / p as f64;
        }
    }
    (s1 / size, s2 / size)
}

/// The first sum `S1(m; phi)`.
pub fn s1_sum(m: &FactoredModulus, pair: &TestFunctionPair) -> Result<f64> {
    Ok(sums_at_scale(m, pair, scale(m.m())?).0)
}

/// The second sum `S2(m; phi)`.
pub fn s2_sum(m: &FactoredModulus, pair: &TestFunctionPair) -> Result<f64> {
    Ok(sums_at_scale(m, pair, scale(m.m())?).1)
}

fn single_report(
    m: &FactoredModulus,
    pair: &TestFunctionPair,
    l: f64,
    main_term: f64,
    normalization: Normalization,
) -> DensityReport {
    let (s1, s2) = sums_at_scale(m, pair, l);
    DensityReport {
        descriptor: format!("m={}", m.m()),
        m: Some(m.m()),
        r: Some(m.r()),
        sigma: pair.sigma(),
        s1,
        s2,
        main_term,
        one_level: main_term - s1 - s2,
        family_size: m.m2(),
        normalization,
        uncertainty: REMAINDER_CONSTANT * pair.integral_phi().abs() / l,
        conductor_factor: None,
        per_r: Vec::new(),
    }
}

/// Prime side of the 1-level density for the primitive characters mod `m`.
pub fn one_level_prime_side(m: &FactoredModulus, pair: &TestFunctionPair) -> Result<DensityReport> {
    let l = scale(m.m())?;
    Ok(single_report(
        m,
        pair,
        l,
        pair.integral_phi(),
        Normalization::PerConductor,
    ))
}

/// Options for [`squarefree_family_density`].
#[derive(Debug, Clone, Copy, Default)]
pub struct FamilyOptions {
    pub normalization: Normalization,
    /// Lift the `2N <= 10^5` guard.
    pub override_guard: bool,
}

/// Per-modulus reports for the odd square-free `m` in `[N, 2N]`, computed
/// in parallel and returned in increasing `m`.
pub fn squarefree_reports(
    n: u64,
    pair: &TestFunctionPair,
    opts: FamilyOptions,
) -> Result<Vec<DensityReport>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "N = {n} must be at least 4 so that log(N/pi) > 0"
        )));
    }
    if 2 * n > SQUAREFREE_GUARD && !opts.override_guard {
        return Err(Error::ResourceLimit(format!(
            "2N = {} exceeds {SQUAREFREE_GUARD}; pass the override to proceed",
            2 * n
        )));
    }
    let moduli = squarefree_enumerate(n, 2 * n)?;
    let ln = scale(n)?;
    let reports = moduli
        .par_iter()
        .map(|m| {
            let lm = scale(m.m()).expect("m >= N > pi");
            match opts.normalization {
                Normalization::PerConductor => {
                    single_report(m, pair, lm, pair.integral_phi(), Normalization::PerConductor)
                }
                Normalization::Fixed => single_report(
                    m,
                    pair,
                    ln,
                    lm / ln * pair.integral_phi(),
                    Normalization::Fixed,
                ),
            }
        })
        .collect();
    Ok(reports)
}

/// 1-level prime side for the family of primitive characters to odd
/// square-free moduli in `[N, 2N]`, weighting each modulus by its family
/// size `M2(m)`.
pub fn squarefree_family_density(
    n: u64,
    pair: &TestFunctionPair,
    opts: FamilyOptions,
) -> Result<DensityReport> {
    let reports = squarefree_reports(n, pair, opts)?;
    aggregate(n, pair, opts.normalization, &reports)
}

/// Combines per-modulus reports (in the given order) into a family report.
pub fn aggregate(
    n: u64,
    pair: &TestFunctionPair,
    normalization: Normalization,
    reports: &[DensityReport],
) -> Result<DensityReport> {
    if reports.is_empty() {
        return Err(Error::Empty(format!("no odd square-free moduli in [{n}, {}]", 2 * n)));
    }
    let ln = scale(n)?;
    let total: u64 = reports.iter().map(|r| r.family_size).sum();
    let w = |r: &DensityReport| r.family_size as f64 / total as f64;
    let s1: f64 = reports.iter().map(|r| w(r) * r.s1).sum();
    let s2: f64 = reports.iter().map(|r| w(r) * r.s2).sum();
    let main_term: f64 = reports.iter().map(|r| w(r) * r.main_term).sum();
    let uncertainty: f64 = reports.iter().map(|r| w(r) * r.uncertainty).sum();
    let conductor_factor = reports
        .iter()
        .map(|r| scale(r.m.expect("single-modulus report")).expect("m > pi") / ln)
        .sum::<f64>()
        / reports.len() as f64;

    let max_r = reports.iter().filter_map(|r| r.r).max().unwrap_or(0);
    let per_r = (1..=max_r)
        .filter_map(|r| {
            let group: Vec<&DensityReport> = reports.iter().filter(|x| x.r == Some(r)).collect();
            if group.is_empty() {
                return None;
            }
            let size: u64 = group.iter().map(|x| x.family_size).sum();
            let wr = |x: &DensityReport| x.family_size as f64 / size as f64;
            Some(RBreakdown {
                r,
                moduli: group.len(),
                family_size: size,
                s1: group.iter().map(|x| wr(x) * x.s1).sum(),
                s2: group.iter().map(|x| wr(x) * x.s2).sum(),
            })
        })
        .collect();

    Ok(DensityReport {
        descriptor: format!("N={n}"),
        m: None,
        r: None,
        sigma: pair.sigma(),
        s1,
        s2,
        main_term,
        one_level: main_term - s1 - s2,
        family_size: total,
        normalization,
        uncertainty,
        conductor_factor: Some(conductor_factor),
        per_r,
    })
}

/// Character-by-character evaluation of `(S1, S2)`: for each primitive
/// `chi` sum `(chi(p) + conj chi(p))` and `(chi^2(p) + conj chi^2(p))`
/// directly, then average. Independent of the closed-form family sums.
pub fn sums_brute(m: &FactoredModulus, pair: &TestFunctionPair) -> Result<(f64, f64)> {
    let l = scale(m.m())?;
    let fam = PrimitiveFamily::new(m.clone())?;
    let sigma = pair.sigma();
    let p1 = primes_in_support(l, sigma);
    let p2 = primes_in_support(l, sigma / 2.0);
    let (mut s1, mut s2) = (0.0, 0.0);
    for chi in fam.iter() {
        for &p in &p1 {
            let v = chi.value(p);
            let lp = (p as f64).ln() / l;
            s1 += lp * pair.phi_hat(lp) * 2.0 * v.re / (p as f64).sqrt();
        }
        for &p in &p2 {
            let v = chi.value(p).powu(2);
            let lp = (p as f64).ln() / l;
            s2 += lp * pair.phi_hat(2.0 * lp) * 2.0 * v.re / p as f64;
        }
    }
    let size = fam.size() as f64;
    Ok((s1 / size, s2 / size))
}
