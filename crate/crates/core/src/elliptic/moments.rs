use super::surface::EllipticSurface;
use super::traces::{require_scan_prime, traces_with_table};
use crate::numth::LegendreTable;
use crate::Result;
use num_rational::Ratio;
use rayon::prelude::*;

/// `sum_{t mod p} a_t(p)^r` and the normalized `A_r(p) = (1/p) sum_t a_t^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Moment {
    pub p: u64,
    pub r: u32,
    pub sum: i128,
}

impl Moment {
    pub fn normalized(&self) -> Ratio<i128> {
        Ratio::new(self.sum, self.p as i128)
    }
}

/// Complete moment of order `r` over `t mod p`.
pub fn moment(surface: &EllipticSurface, p: u64, r: u32) -> Result<Moment> {
    require_scan_prime(p)?;
    if r == 0 {
        return Err(crate::Error::InvalidArgument("moment order must be >= 1".into()));
    }
    let leg = LegendreTable::new(p as i64)?;
    let sum = traces_with_table(surface, p, &leg)
        .into_iter()
        .map(|a| (a as i128).pow(r))
        .sum();
    Ok(Moment { p, r, sum })
}

/// First and second complete moments at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentRecord {
    pub p: u64,
    pub m1: i64,
    pub m2: i64,
    /// Number of `t mod p` with a singular fiber.
    pub singular_count: u64,
}

impl MomentRecord {
    pub fn a1(&self) -> Ratio<i64> {
        Ratio::new(self.m1, self.p as i64)
    }

    pub fn a2(&self) -> Ratio<i64> {
        Ratio::new(self.m2, self.p as i64)
    }
}

pub(crate) fn record_at(surface: &EllipticSurface, p: u64) -> Result<MomentRecord> {
    require_scan_prime(p)?;
    let leg = LegendreTable::new(p as i64)?;
    let tr = traces_with_table(surface, p, &leg);
    let singular_count = (0..p as i64).filter(|&t| surface.is_singular(t, p)).count() as u64;
    Ok(MomentRecord {
        p,
        m1: tr.iter().sum(),
        m2: tr.iter().map(|a| a * a).sum(),
        singular_count,
    })
}

/// Per-prime complete moments of a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    pub surface: String,
    pub records: Vec<MomentRecord>,
}

/// Moments at every listed prime, computed in parallel and returned in the
/// order given.
pub fn moment_series(surface: &EllipticSurface, primes: &[u64]) -> Result<MomentSeries> {
    let records = primes
        .par_iter()
        .map(|&p| record_at(surface, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSeries {
        surface: surface.to_string(),
        records,
    })
}
