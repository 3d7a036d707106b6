//! Aggregate statistics over prime ranges.

use super::closed_form::c0_c1;
use super::moments::{record_at, MomentRecord};
use super::surface::{EllipticSurface, FamilyKind};
use super::traces::{require_scan_prime, traces_with_table};
use crate::numth::{mul_mod, reduce, LegendreTable, PrimeTable};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// A set of primes, by magnitude or by 1-based rank. Primes below 5 are
/// always dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeRange {
    /// Primes `p` with `lo <= p <= hi`.
    Magnitude { lo: u64, hi: u64 },
    /// The `lo`-th through `hi`-th primes, 1-based, inclusive.
    Rank { lo: usize, hi: usize },
}

impl PrimeRange {
    /// The primes in the range, ascending, together with the 1-based rank of
    /// the first one.
    pub fn resolve(&self) -> (Vec<u64>, usize) {
        match *self {
            PrimeRange::Magnitude { lo, hi } => {
                let t = PrimeTable::new(hi);
                let lo = lo.max(5);
                let first = t.primes().partition_point(|&p| p < lo);
                (t.range(lo, hi).to_vec(), first + 1)
            }
            PrimeRange::Rank { lo, hi } => {
                let lo = lo.max(3);
                if hi < lo {
                    return (Vec::new(), lo);
                }
                let t = PrimeTable::with_count(hi);
                (t.rank_window(lo, hi).to_vec(), lo)
            }
        }
    }
}

impl fmt::Display for PrimeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRange::Magnitude { lo, hi } => write!(f, "{lo}..{hi}"),
            PrimeRange::Rank { lo, hi } => write!(f, "#{lo}..#{hi}"),
        }
    }
}

impl FromStr for PrimeRange {
    type Err = Error;

    /// `lo..hi` by magnitude or `#lo..#hi` by rank.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad prime range '{s}' (use lo..hi or #lo..#hi)"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        match (a.strip_prefix('#'), b.strip_prefix('#')) {
            (Some(a), Some(b)) => Ok(PrimeRange::Rank {
                lo: a.parse().map_err(|_| bad())?,
                hi: b.parse().map_err(|_| bad())?,
            }),
            (None, None) => Ok(PrimeRange::Magnitude {
                lo: a.parse().map_err(|_| bad())?,
                hi: b.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Second-moment bias statistics over a prime range. Both statistics use the
/// complete sum `M2(p) = sum_t a_t(p)^2`:
/// `stat32 = E_p[(M2 - p^2)/p^{3/2}]` and `stat1 = E_p[(M2 - p^2)/p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasReport {
    pub range: PrimeRange,
    /// 1-based ranks of the first and last prime used.
    pub p_lo_rank: usize,
    pub p_hi_rank: usize,
    pub stat32: f64,
    pub stat1: f64,
    /// Sign of `stat1`.
    pub sign: i8,
    pub records: Vec<MomentRecord>,
}

impl BiasReport {
    /// Recomputes both statistics from the stored integers.
    pub fn from_records(range: PrimeRange, first_rank: usize, records: Vec<MomentRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::Empty(format!("no primes >= 5 in {range}")));
        }
        let n = records.len() as f64;
        let dev = |r: &MomentRecord| {
            let p = r.p as f64;
            r.m2 as f64 - p * p
        };
        let stat32 = records.iter().map(|r| dev(r) / (r.p as f64).powf(1.5)).sum::<f64>() / n;
        let stat1 = records.iter().map(|r| dev(r) / r.p as f64).sum::<f64>() / n;
        Ok(BiasReport {
            range,
            p_lo_rank: first_rank,
            p_hi_rank: first_rank + records.len() - 1,
            stat32,
            stat1,
            sign: if stat1 > 0.0 {
                1
            } else if stat1 < 0.0 {
                -1
            } else {
                0
            },
            records,
        })
    }
}

pub fn bias_statistics(surface: &EllipticSurface, range: PrimeRange) -> Result<BiasReport> {
    let (primes, first_rank) = range.resolve();
    let records = primes
        .par_iter()
        .map(|&p| record_at(surface, p))
        .collect::<Result<Vec<_>>>()?;
    BiasReport::from_records(range, first_rank, records)
}

/// `sum_{t mod p} a_t(p)`. For `g(x) + (c T) h(x)` with `p` not dividing
/// `c`, the sum over `t` kills every `x` with `h(x) != 0`, leaving
/// `-p sum_{h(x) = 0} (g(x)/p)`; otherwise the traces are summed.
pub fn first_moment(surface: &EllipticSurface, p: u64) -> Result<i64> {
    require_scan_prime(p)?;
    let leg = LegendreTable::new(p as i64)?;
    if let Some(sep) = surface.separation() {
        let k = sep.k.coeffs();
        if k.len() == 2 && reduce(k[1], p) != 0 {
            let g = sep.g.map(|c| reduce(c, p));
            let h = sep.h.map(|c| reduce(c, p));
            let eval = |f: &[u64; 4], x: u64| {
                let v = (mul_mod(f[3], x, p) + f[2]) % p;
                let v = (mul_mod(v, x, p) + f[1]) % p;
                (mul_mod(v, x, p) + f[0]) % p
            };
            let s: i64 = (0..p)
                .filter(|&x| eval(&h, x) == 0)
                .map(|x| leg.get(eval(&g, x)) as i64)
                .sum();
            return Ok(-(p as i64) * s);
        }
    }
    Ok(traces_with_table(surface, p, &leg).iter().sum())
}

/// `-(1/X) sum_{5 <= p <= X} (sum_t a_t(p)) log p / p`, which tends to the
/// rank of the surface over `Q(T)`.
pub fn rosen_silverman(surface: &EllipticSurface, x: u64) -> Result<f64> {
    if x < 5 {
        return Err(Error::InvalidArgument(format!("X = {x} < 5")));
    }
    let primes = PrimeTable::new(x);
    let terms = primes.range(5, x)
        .par_iter()
        .map(|&p| first_moment(surface, p).map(|m1| m1 as f64 * (p as f64).ln() / p as f64))
        .collect::<Result<Vec<f64>>>()?;
    Ok(-terms.iter().sum::<f64>() / x as f64)
}

/// `max_p |M2(p) - p^2| / p^{3/2}` over the given primes.
pub fn michel_ratio(surface: &EllipticSurface, primes: &[u64]) -> Result<f64> {
    if let Some(k) = surface.kind() {
        if k.constant_j() {
            return Err(Error::NotApplicable(format!("{k} has constant j-invariant")));
        }
    }
    if primes.is_empty() {
        return Err(Error::Empty("no primes".into()));
    }
    let ratios = primes
        .par_iter()
        .map(|&p| {
            record_at(surface, p).map(|r| {
                let pf = p as f64;
                (r.m2 as f64 - pf * pf).abs() / pf.powf(1.5)
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// Averages of `c1(p)/sqrt(p)` and `c0(p)` over a window of primes.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub kind: FamilyKind,
    pub range: PrimeRange,
    pub primes: usize,
    /// Mean of `c1(p)/sqrt(p)`, the coefficient of `p^{3/2}`.
    pub avg_c1: f64,
    /// Mean of the raw integer `c1(p)`.
    pub avg_c1_raw: f64,
    pub avg_c0: f64,
}

pub fn table1_row(kind: FamilyKind, range: PrimeRange) -> Result<Table1Row> {
    let (primes, _) = range.resolve();
    if primes.is_empty() {
        return Err(Error::Empty(format!("no primes >= 5 in {range}")));
    }
    let vals = primes
        .par_iter()
        .map(|&p| c0_c1(kind, p).map(|(c0, c1)| (p, c0, c1)))
        .collect::<Result<Vec<_>>>()?;
    let n = vals.len() as f64;
    Ok(Table1Row {
        kind,
        range,
        primes: vals.len(),
        avg_c1: vals.iter().map(|&(p, _, c1)| c1 as f64 / (p as f64).sqrt()).sum::<f64>() / n,
        avg_c1_raw: vals.iter().map(|&(_, _, c1)| c1 as f64).sum::<f64>() / n,
        avg_c0: vals.iter().map(|&(_, c0, _)| c0 as f64).sum::<f64>() / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::traces;
    use crate::numth::primes_in_range;

    #[test]
    fn ranges() {
        let (p, r) = PrimeRange::Magnitude { lo: 1, hi: 20 }.resolve();
        assert_eq!(p, [5, 7, 11, 13, 17, 19]);
        assert_eq!(r, 3);
        let (p, r) = PrimeRange::Rank { lo: 1, hi: 5 }.resolve();
        assert_eq!(p, [5, 7, 11]);
        assert_eq!(r, 3);
        assert_eq!("#6001..#7000".parse::<PrimeRange>().unwrap(), PrimeRange::Rank { lo: 6001, hi: 7000 });
        assert_eq!("5..100".parse::<PrimeRange>().unwrap(), PrimeRange::Magnitude { lo: 5, hi: 100 });
        assert!("#5..100".parse::<PrimeRange>().is_err());
        for s in ["#6001..#7000", "5..100"] {
            assert_eq!(s.parse::<PrimeRange>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn single_prime_statistic() {
        let e: EllipticSurface = "tlin:1,1,1,0".parse().unwrap();
        let b = bias_statistics(&e, PrimeRange::Magnitude { lo: 5, hi: 5 }).unwrap();
        // M2(5) = 10: (10 - 25)/5 = -3
        assert_eq!(b.stat1, -3.0);
        assert_eq!((b.p_lo_rank, b.p_hi_rank), (3, 3));
        assert_eq!(b.sign, -1);
        assert!(bias_statistics(&e, PrimeRange::Magnitude { lo: 2, hi: 4 }).is_err());
    }

    #[test]
    fn first_moment_shortcut() {
        for s in ["tlin:1,1,1,0", "wash:4", "wash:3", "tconst:1,2,3,4,5", "tnx:2", "linx:4,1,4,6,9"] {
            let e: EllipticSurface = s.parse().unwrap();
            for p in primes_in_range(5, 200) {
                let direct: i64 = traces(&e, p).unwrap().iter().sum();
                assert_eq!(first_moment(&e, p).unwrap(), direct, "{s} p={p}");
            }
        }
    }

    #[test]
    fn rosen_silverman_single_term() {
        let e: EllipticSurface = "wash:4".parse().unwrap();
        let m1 = first_moment(&e, 5).unwrap() as f64;
        let v = rosen_silverman(&e, 5).unwrap();
        assert_eq!(v, -m1 * 5f64.ln() / 5.0 / 5.0);
        assert!(rosen_silverman(&e, 4).is_err());
    }

    #[test]
    fn michel_ratio_checks() {
        let tconst: EllipticSurface = "tconst:1,1,1,1,1".parse().unwrap();
        let primes = primes_in_range(5, 499);
        assert!(michel_ratio(&tconst, &primes).unwrap() <= 3.0);
        let one = michel_ratio(&tconst, &[7]).unwrap();
        assert!((one - 7.0 / 7f64.powf(1.5)).abs() < 1e-15);
        let cm: EllipticSurface = "tn:1".parse().unwrap();
        assert!(matches!(michel_ratio(&cm, &primes), Err(Error::NotApplicable(_))));
    }
}
