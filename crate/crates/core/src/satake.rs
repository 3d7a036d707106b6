//! Families described by local Satake parameters.
//!
//! A member is known through its power sums `lambda(p^nu) = sum_i alpha_i(p)^nu`.
//! The Rankin-Selberg product of two members has the pairwise products
//! `alpha_i beta_j` as parameters, so its power sums are the products of the
//! factors' power sums, which is all [`Convolution`] needs.

use crate::dirichlet::{turn_to_complex, DirichletCharacter, PrimitiveFamily};
use crate::elliptic::{frobenius_trace, traces, EllipticSurface};
use crate::numth::{for_each_prime_below, is_prime, jacobi_symbol, primes_below, squarefree_enumerate, FactoredModulus};
use crate::rmt::{classify_symmetry, Classification};
use crate::testfn::TestFunctionPair;
use crate::{Error, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use std::sync::Arc;

/// `(2 sum_p log p / p^2, 4 sum_p (log p)^2 / p^2)` over `p <= 10^7`.
pub const PRIME_SUM_LIMITS: (f64, f64) = (0.986_182_018_7, 2.966_384_572_5);

/// Power sums of the unramified members at one prime.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LocalSums {
    /// Row per unramified member; entry `nu - 1` holds `lambda(p^nu)`.
    pub members: Vec<Vec<Complex64>>,
    pub ramified: usize,
}

impl LocalSums {
    pub fn total(&self) -> usize {
        self.members.len() + self.ramified
    }
}

pub trait SatakeFamily: Send + Sync {
    /// Number of Satake parameters per member.
    fn degree(&self) -> usize;
    fn label(&self) -> String;
    /// Power sums for `nu = 1..=max_nu` at the prime `p`.
    fn local(&self, p: u64, max_nu: u32) -> Result<LocalSums>;
}

fn power_sums(alphas: &[Complex64], max_nu: u32) -> Vec<Complex64> {
    let mut pw = alphas.to_vec();
    let mut out = Vec::with_capacity(max_nu as usize);
    for _ in 0..max_nu {
        out.push(pw.iter().sum());
        for (w, a) in pw.iter_mut().zip(alphas) {
            *w *= a;
        }
    }
    out
}

/// Members with fixed parameters, the same at every prime.
#[derive(Debug, Clone)]
pub struct ExplicitFamily {
    degree: usize,
    members: Vec<Vec<Complex64>>,
}

impl ExplicitFamily {
    pub fn new(members: Vec<Vec<Complex64>>) -> Result<Self> {
        let degree = members
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Empty("explicit family".into()))?;
        if degree == 0 || members.iter().any(|m| m.len() != degree) {
            return Err(Error::InvalidArgument(
                "explicit members need the same positive number of parameters".into(),
            ));
        }
        Ok(ExplicitFamily { degree, members })
    }

    /// One member with `lambda(p^nu) = 1`.
    pub fn trivial() -> Self {
        ExplicitFamily {
            degree: 1,
            members: vec![vec![Complex64::new(1.0, 0.0)]],
        }
    }
}

impl SatakeFamily for ExplicitFamily {
    fn degree(&self) -> usize {
        self.degree
    }

    fn label(&self) -> String {
        format!("explicit({} members, degree {})", self.members.len(), self.degree)
    }

    fn local(&self, _p: u64, max_nu: u32) -> Result<LocalSums> {
        Ok(LocalSums {
            members: self.members.iter().map(|a| power_sums(a, max_nu)).collect(),
            ramified: 0,
        })
    }
}

/// All primitive characters to one odd square-free modulus.
#[derive(Debug, Clone)]
pub struct DirichletFamily {
    m: u64,
    chars: Vec<DirichletCharacter>,
}

impl DirichletFamily {
    pub fn new(m: u64) -> Result<Self> {
        let fam = PrimitiveFamily::new(FactoredModulus::new(m)?)?;
        let chars: Vec<_> = fam.iter().collect();
        if chars.is_empty() {
            return Err(Error::Empty(format!("primitive characters mod {m}")));
        }
        Ok(DirichletFamily { m, chars })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

impl SatakeFamily for DirichletFamily {
    fn degree(&self) -> usize {
        1
    }

    fn label(&self) -> String {
        format!("dirichlet(m={})", self.m)
    }

    fn local(&self, p: u64, max_nu: u32) -> Result<LocalSums> {
        if self.m % p == 0 {
            return Ok(LocalSums {
                members: Vec::new(),
                ramified: self.chars.len(),
            });
        }
        let members = self
            .chars
            .iter()
            .map(|chi| {
                let t = chi.value_turn(p % self.m).expect("p coprime to m");
                (1..=max_nu as u64)
                    .map(|nu| turn_to_complex((t * Ratio::from_integer(nu)).fract()))
                    .collect()
            })
            .collect();
        Ok(LocalSums { members, ramified: 0 })
    }
}

/// Real characters `n -> (n/d)` for odd square-free `d` in a range.
#[derive(Debug, Clone)]
pub struct QuadraticFamily {
    ds: Vec<u64>,
}

impl QuadraticFamily {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        let ds: Vec<u64> = squarefree_enumerate(lo.max(3), hi)?
            .iter()
            .map(|f| f.m())
            .collect();
        if ds.is_empty() {
            return Err(Error::Empty(format!("odd square-free d in [{lo}, {hi}]")));
        }
        Ok(QuadraticFamily { ds })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.ds
    }
}

impl SatakeFamily for QuadraticFamily {
    fn degree(&self) -> usize {
        1
    }

    fn label(&self) -> String {
        format!(
            "quadratic(d={}..{}, {} members)",
            self.ds[0],
            self.ds[self.ds.len() - 1],
            self.ds.len()
        )
    }

    fn local(&self, p: u64, max_nu: u32) -> Result<LocalSums> {
        let mut out = LocalSums::default();
        for &d in &self.ds {
            let s = jacobi_symbol(p as i64, d);
            if s == 0 {
                out.ramified += 1;
                continue;
            }
            out.members.push(
                (1..=max_nu)
                    .map(|nu| Complex64::new(if s < 0 && nu % 2 == 1 { -1.0 } else { 1.0 }, 0.0))
                    .collect(),
            );
        }
        Ok(out)
    }
}

/// Which fibers of an elliptic surface form the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberRange {
    /// Every `t mod p`; the family size changes with `p`.
    Complete,
    /// `t` in `[lo, hi]`.
    Range { lo: i64, hi: i64 },
}

/// Fibers of an elliptic surface with `lambda(p) = a_t(p) / sqrt(p)`.
///
/// Singular fibers count as ramified, and so does every fiber at `p = 2, 3`.
#[derive(Debug, Clone)]
pub struct EllipticFamily {
    surface: EllipticSurface,
    range: FiberRange,
}

/// `lambda(p^2) = a^2 / p - 2`, exactly.
pub fn elliptic_lambda_sq(a: i64, p: u64) -> Ratio<i64> {
    Ratio::new(a * a, p as i64) - 2
}

impl EllipticFamily {
    pub fn new(surface: EllipticSurface, range: FiberRange) -> Result<Self> {
        if let FiberRange::Range { lo, hi } = range {
            if hi < lo {
                return Err(Error::Empty(format!("t range [{lo}, {hi}]")));
            }
        }
        Ok(EllipticFamily { surface, range })
    }

    fn members_at(&self, p: u64) -> Result<Vec<(i64, bool)>> {
        let pi = p as i64;
        match self.range {
            FiberRange::Complete => {
                let a = traces(&self.surface, p)?;
                Ok(a.into_iter()
                    .enumerate()
                    .map(|(t, a)| (a, self.surface.is_singular(t as i64, p)))
                    .collect())
            }
            FiberRange::Range { lo, hi } if (hi - lo) as u64 >= 32 => {
                let a = traces(&self.surface, p)?;
                Ok((lo..=hi)
                    .map(|t| (a[t.rem_euclid(pi) as usize], self.surface.is_singular(t, p)))
                    .collect())
            }
            FiberRange::Range { lo, hi } => (lo..=hi)
                .map(|t| frobenius_trace(&self.surface, t, p).map(|tr| (tr.a, tr.singular)))
                .collect(),
        }
    }
}

impl SatakeFamily for EllipticFamily {
    fn degree(&self) -> usize {
        2
    }

    fn label(&self) -> String {
        match self.range {
            FiberRange::Complete => format!("elliptic({}, t mod p)", self.surface),
            FiberRange::Range { lo, hi } => format!("elliptic({}, t={lo}..{hi})", self.surface),
        }
    }

    fn local(&self, p: u64, max_nu: u32) -> Result<LocalSums> {
        if p < 5 {
            let ramified = match self.range {
                FiberRange::Complete => p as usize,
                FiberRange::Range { lo, hi } => (hi - lo + 1) as usize,
            };
            return Ok(LocalSums {
                members: Vec::new(),
                ramified,
            });
        }
        let sp = (p as f64).sqrt();
        let mut out = LocalSums::default();
        for (a, singular) in self.members_at(p)? {
            if singular {
                out.ramified += 1;
                continue;
            }
            let l = a as f64 / sp;
            let mut row = Vec::with_capacity(max_nu as usize);
            let (mut prev, mut cur) = (2.0, l);
            for nu in 1..=max_nu {
                let v = if nu == 2 {
                    let r = elliptic_lambda_sq(a, p);
                    *r.numer() as f64 / *r.denom() as f64
                } else {
                    cur
                };
                row.push(Complex64::new(v, 0.0));
                (prev, cur) = (cur, l * cur - prev);
            }
            out.members.push(row);
        }
        Ok(out)
    }
}

/// Members are pairs; power sums multiply.
///
/// The pole that appears when one factor is contragredient to the other is
/// not detected.
#[derive(Clone)]
pub struct Convolution {
    f: Arc<dyn SatakeFamily>,
    g: Arc<dyn SatakeFamily>,
}

pub fn convolve(f: Arc<dyn SatakeFamily>, g: Arc<dyn SatakeFamily>) -> Convolution {
    Convolution { f, g }
}

impl SatakeFamily for Convolution {
    fn degree(&self) -> usize {
        self.f.degree() * self.g.degree()
    }

    fn label(&self) -> String {
        format!("{} x {}", self.f.label(), self.g.label())
    }

    fn local(&self, p: u64, max_nu: u32) -> Result<LocalSums> {
        let a = self.f.local(p, max_nu)?;
        let b = self.g.local(p, max_nu)?;
        let mut members = Vec::with_capacity(a.members.len() * b.members.len());
        for x in &a.members {
            for y in &b.members {
                members.push(x.iter().zip(y).map(|(u, v)| u * v).collect());
            }
        }
        let ramified = a.total() * b.total() - members.len();
        Ok(LocalSums { members, ramified })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryEstimate {
    /// Mean of `per_prime`.
    pub c_hat: f64,
    /// Primes that had at least one unramified member.
    pub primes: Vec<u64>,
    /// Average of `Re lambda(p^2)` over unramified members at each prime.
    pub per_prime: Vec<f64>,
    /// Ramified members skipped at each prime of `primes`.
    pub ramified: Vec<usize>,
    /// Primes dropped because every member ramified there.
    pub dropped: Vec<u64>,
    /// `None` when `c_hat` is outside the three-anchor model.
    pub classification: Option<Classification>,
}

impl SymmetryEstimate {
    /// `(p, average, running mean)` rows.
    pub fn running(&self) -> Vec<(u64, f64, f64)> {
        let mut acc = 0.0;
        self.primes
            .iter()
            .zip(&self.per_prime)
            .enumerate()
            .map(|(i, (&p, &v))| {
                acc += v;
                (p, v, acc / (i + 1) as f64)
            })
            .collect()
    }
}

/// Estimate `c_F` as the prime average of the member average of `lambda(p^2)`.
pub fn symmetry_constant(family: &dyn SatakeFamily, primes: &[u64]) -> Result<SymmetryEstimate> {
    if primes.is_empty() {
        return Err(Error::Empty("prime range".into()));
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let local: Vec<(u64, Option<f64>, usize)> = primes
        .par_iter()
        .map(|&p| {
            let l = family.local(p, 2)?;
            let avg = (!l.members.is_empty())
                .then(|| l.members.iter().map(|r| r[1].re).sum::<f64>() / l.members.len() as f64);
            Ok((p, avg, l.ramified))
        })
        .collect::<Result<_>>()?;

    let mut est = SymmetryEstimate {
        c_hat: 0.0,
        primes: Vec::new(),
        per_prime: Vec::new(),
        ramified: Vec::new(),
        dropped: Vec::new(),
        classification: None,
    };
    for (p, avg, ram) in local {
        match avg {
            Some(v) => {
                est.primes.push(p);
                est.per_prime.push(v);
                est.ramified.push(ram);
            }
            None => est.dropped.push(p),
        }
    }
    if est.primes.is_empty() {
        return Err(Error::Empty(format!(
            "{}: every member ramifies at every prime",
            family.label()
        )));
    }
    est.c_hat = est.per_prime.iter().sum::<f64>() / est.per_prime.len() as f64;
    est.classification = classify_symmetry(est.c_hat).ok();
    Ok(est)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnuTail {
    /// `-2 sum_{nu >= 3} sum_p avg(lambda(p^nu)) log p / (p^{nu/2} L) phi_hat(nu log p / L)`.
    pub value: f64,
    /// The same sum with `avg(lambda(p^nu))` replaced by the degree and
    /// `phi_hat` by its supremum.
    pub majorant: f64,
}

fn phi_hat_sup(pair: &TestFunctionPair) -> f64 {
    let s = pair.sigma();
    (0..=2000)
        .map(|k| pair.phi_hat(s * k as f64 / 2000.0).abs())
        .fold(0.0, f64::max)
}

/// The `nu >= 3` part of the prime side at scale `L = log_r`. Member averages
/// divide by the full family size, ramified members contributing zero.
pub fn snu_tail(family: &dyn SatakeFamily, pair: &TestFunctionPair, log_r: f64) -> Result<SnuTail> {
    if !(log_r > 0.0) {
        return Err(Error::InvalidArgument(format!("log R = {log_r} must be positive")));
    }
    let sigma = pair.sigma();
    if pair.is_zero() || sigma * log_r / 3.0 <= 2f64.ln() {
        return Ok(SnuTail { value: 0.0, majorant: 0.0 });
    }
    let sup = phi_hat_sup(pair);
    let n = family.degree() as f64;
    let bound = (sigma * log_r / 3.0).exp().ceil() as u64;
    let parts: Vec<(f64, f64)> = primes_below(bound + 1)
        .into_par_iter()
        .map(|p| {
            let lp = (p as f64).ln() / log_r;
            let max_nu = (sigma / lp).ceil() as u32;
            if max_nu < 3 {
                return Ok((0.0, 0.0));
            }
            let l = family.local(p, max_nu)?;
            let total = l.total().max(1) as f64;
            let (mut v, mut maj) = (0.0, 0.0);
            for nu in 3..=max_nu {
                let h = pair.phi_hat(nu as f64 * lp);
                if h == 0.0 {
                    continue;
                }
                let w = lp * (p as f64).powf(-(nu as f64) / 2.0);
                let s: f64 = l.members.iter().map(|r| r[nu as usize - 1].re).sum();
                v += -2.0 * s / total * w * h;
                maj += 2.0 * n * sup * w;
            }
            Ok((v, maj))
        })
        .collect::<Result<_>>()?;
    let (value, majorant) = parts
        .iter()
        .fold((0.0, 0.0), |(a, b), (v, m)| (a + v, b + m));
    Ok(SnuTail { value, majorant })
}

/// `(2 sum_{p <= x} log p / p^2, 4 sum_{p <= x} (log p)^2 / p^2)`.
pub fn prime_sum_constants(x: u64) -> Result<(f64, f64)> {
    if x < 1000 {
        return Err(Error::InvalidArgument(format!("cutoff {x} below 1000")));
    }
    let (mut a, mut b) = (0.0, 0.0);
    for_each_prime_below(x + 1, |p| {
        let l = (p as f64).ln();
        let q = (p as f64) * (p as f64);
        a += l / q;
        b += l * l / q;
    });
    Ok((2.0 * a, 4.0 * b))
}

/// Average-rank bound `1/sigma + r + 1/2 + (c1/sigma - c2/(sigma^2 log R)) m_E / log R`
/// with the limiting prime-sum constants.
pub fn rank_upper_bound(r: f64, sigma: f64, log_r: f64, m_e: f64) -> Result<f64> {
    rank_upper_bound_with(PRIME_SUM_LIMITS, r, sigma, log_r, m_e)
}

/// [`rank_upper_bound`] with caller-supplied constants, e.g. from
/// [`prime_sum_constants`] at a finite cutoff.
pub fn rank_upper_bound_with(consts: (f64, f64), r: f64, sigma: f64, log_r: f64, m_e: f64) -> Result<f64> {
    if !(sigma > 0.0) || !(log_r > 0.0) || !(m_e >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need sigma > 0, log R > 0, m_E >= 0 (got {sigma}, {log_r}, {m_e})"
        )));
    }
    let (c1, c2) = consts;
    let correction = (c1 / sigma - c2 / (sigma * sigma * log_r)) * m_e / log_r;
    Ok(1.0 / sigma + r + 0.5 + correction)
}
