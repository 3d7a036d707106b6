use crate::numth::{is_prime, pow_mod, FactoredModulus};
use crate::{Error, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use std::sync::Arc;

/// Which primitive root to fix for each prime factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootChoice {
    #[default]
    Smallest,
    /// The `k`-th smallest primitive root (1-based), or the largest one
    /// when there are fewer than `k` (mod 3 there is only 2).
    Nth(usize),
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primitive root of the odd prime `q` chosen by `choice`.
pub fn primitive_root(q: u64, choice: RootChoice) -> Result<u64> {
    if q < 3 || !is_prime(q) {
        return Err(Error::NotOddPrime(q as i64));
    }
    let k = match choice {
        RootChoice::Smallest => 1,
        RootChoice::Nth(k) if k >= 1 => k,
        RootChoice::Nth(_) => return Err(Error::InvalidArgument("root index is 1-based".into())),
    };
    let fs = distinct_prime_factors(q - 1);
    let mut found = None;
    for g in (2..q).filter(|&g| fs.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1)).take(k) {
        found = Some(g);
    }
    // every odd prime has a primitive root
    Ok(found.expect("primitive root exists"))
}

/// Per-factor generators and full discrete-log tables for one modulus.
#[derive(Debug, Clone)]
pub struct CharacterTables {
    modulus: FactoredModulus,
    generators: Vec<u64>,
    // dlog[i][k] = a with g_i^a = k (mod m_i); u32::MAX at k = 0
    dlog: Vec<Vec<u32>>,
}

impl CharacterTables {
    pub fn new(modulus: FactoredModulus, choice: RootChoice) -> Result<Self> {
        let mut generators = Vec::with_capacity(modulus.r());
        let mut dlog = Vec::with_capacity(modulus.r());
        for &q in modulus.factors() {
            let g = primitive_root(q, choice)?;
            let mut table = vec![u32::MAX; q as usize];
            let mut x = 1u64;
            for a in 0..q - 1 {
                table[x as usize] = a as u32;
                x = x * g % q;
            }
            generators.push(g);
            dlog.push(table);
        }
        Ok(CharacterTables {
            modulus,
            generators,
            dlog,
        })
    }

    pub fn modulus(&self) -> &FactoredModulus {
        &self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Discrete log of `k` to base `g_i` mod the `i`-th factor, if coprime.
    #[inline]
    pub fn dlog(&self, i: usize, k: u64) -> Option<u64> {
        let q = self.modulus.factors()[i];
        match self.dlog[i][(k % q) as usize] {
            u32::MAX => None,
            a => Some(a as u64),
        }
    }
}

/// A Dirichlet character mod an odd square-free `m`, given by exponents
/// `l_i` in `[0, m_i - 1)`: `chi(g_i) = exp(2 pi i l_i / (m_i - 1))` on the
/// `i`-th component. Primitive exactly when every `l_i` is nonzero.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    tables: Arc<CharacterTables>,
    exponents: Vec<u64>,
}

impl DirichletCharacter {
    pub fn new(tables: Arc<CharacterTables>, exponents: Vec<u64>) -> Result<Self> {
        let fs = tables.modulus().factors();
        if exponents.len() != fs.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                fs.len(),
                exponents.len()
            )));
        }
        if let Some((l, q)) = exponents.iter().zip(fs).find(|(l, q)| **l >= **q - 1) {
            return Err(Error::InvalidArgument(format!(
                "exponent {l} out of range for factor {q}"
            )));
        }
        Ok(DirichletCharacter { tables, exponents })
    }

    pub fn modulus(&self) -> &FactoredModulus {
        self.tables.modulus()
    }

    pub fn tables(&self) -> &Arc<CharacterTables> {
        &self.tables
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_primitive(&self) -> bool {
        self.exponents.iter().all(|&l| l != 0)
    }

    /// `chi(k)` as an exact turn in `[0, 1)`, or `None` when `gcd(k, m) > 1`.
    pub fn value_turn(&self, k: u64) -> Option<Ratio<u64>> {
        let mut t = Ratio::from_integer(0u64);
        for (i, (&l, &q)) in self
            .exponents
            .iter()
            .zip(self.modulus().factors())
            .enumerate()
        {
            let a = self.tables.dlog(i, k)?;
            t += Ratio::new(l * a % (q - 1), q - 1);
        }
        Some(t.fract())
    }

    /// `chi(k)` as a complex number (zero off the unit group).
    pub fn value(&self, k: u64) -> Complex64 {
        self.value_turn(k)
            .map(super::turn_to_complex)
            .unwrap_or_default()
    }

    /// The complex-conjugate character.
    pub fn conj(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.modulus().factors())
            .map(|(&l, &q)| (q - 1 - l) % (q - 1))
            .collect();
        DirichletCharacter {
            tables: Arc::clone(&self.tables),
            exponents,
        }
    }
}

/// Free function form of [`DirichletCharacter::value`].
pub fn char_value(chi: &DirichletCharacter, k: u64) -> Complex64 {
    chi.value(k)
}

/// All primitive characters mod `m`, in lexicographic order of exponents.
#[derive(Debug, Clone)]
pub struct PrimitiveFamily {
    tables: Arc<CharacterTables>,
}

impl PrimitiveFamily {
    pub fn new(modulus: FactoredModulus) -> Result<Self> {
        Self::with_roots(modulus, RootChoice::Smallest)
    }

    pub fn with_roots(modulus: FactoredModulus, choice: RootChoice) -> Result<Self> {
        Ok(PrimitiveFamily {
            tables: Arc::new(CharacterTables::new(modulus, choice)?),
        })
    }

    pub fn modulus(&self) -> &FactoredModulus {
        self.tables.modulus()
    }

    pub fn tables(&self) -> &Arc<CharacterTables> {
        &self.tables
    }

    /// Number of primitive characters, `M2 = prod (m_i - 2)`.
    pub fn size(&self) -> u64 {
        self.modulus().m2()
    }

    pub fn iter(&self) -> impl Iterator<Item = DirichletCharacter> + '_ {
        let ranges: Vec<(u64, u64)> = self.modulus().factors().iter().map(|&q| (1, q - 1)).collect();
        exponent_tuples(ranges).map(move |exponents| DirichletCharacter {
            tables: Arc::clone(&self.tables),
            exponents,
        })
    }

    /// Every character mod `m`, primitive or not (`phi(m)` of them).
    pub fn all_characters(&self) -> impl Iterator<Item = DirichletCharacter> + '_ {
        let ranges: Vec<(u64, u64)> = self.modulus().factors().iter().map(|&q| (0, q - 1)).collect();
        exponent_tuples(ranges).map(move |exponents| DirichletCharacter {
            tables: Arc::clone(&self.tables),
            exponents,
        })
    }
}

/// Lexicographic walk over the box `prod [lo_i, hi_i)`.
fn exponent_tuples(ranges: Vec<(u64, u64)>) -> impl Iterator<Item = Vec<u64>> {
    let empty = ranges.iter().any(|&(lo, hi)| lo >= hi);
    let mut cur: Option<Vec<u64>> = if empty {
        None
    } else {
        Some(ranges.iter().map(|r| r.0).collect())
    };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < ranges[i].1 {
                cur = Some(next);
                break;
            }
            next[i] = ranges[i].0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(m: u64) -> PrimitiveFamily {
        PrimitiveFamily::new(FactoredModulus::new(m).unwrap()).unwrap()
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5, RootChoice::Smallest), Ok(2));
        assert_eq!(primitive_root(7, RootChoice::Smallest), Ok(3));
        assert_eq!(primitive_root(7, RootChoice::Nth(2)), Ok(5));
        assert_eq!(primitive_root(23, RootChoice::Smallest), Ok(5));
        assert_eq!(primitive_root(3, RootChoice::Nth(2)), Ok(2));
        assert!(primitive_root(9, RootChoice::Smallest).is_err());
    }

    #[test]
    fn values_mod_5() {
        let f = family(5);
        let chi1 = f.iter().next().unwrap();
        assert_eq!(chi1.exponents(), &[1]);
        assert_eq!(chi1.value_turn(2), Some(Ratio::new(1, 4)));
        assert!((chi1.value(2) - Complex64::i()).norm() < 1e-15);
        assert!((chi1.value(4) + 1.0).norm() < 1e-15);
        assert_eq!(chi1.value(10), Complex64::new(0.0, 0.0));
        assert_eq!(chi1.value_turn(1), Some(Ratio::from_integer(0)));
    }

    #[test]
    fn enumeration_counts_and_order() {
        for m in [3u64, 15, 21, 105] {
            let f = family(m);
            assert_eq!(f.iter().count() as u64, f.size());
            assert_eq!(f.all_characters().count() as u64, f.modulus().m1());
            assert!(f.iter().all(|c| c.is_primitive()));
        }
        let ex: Vec<Vec<u64>> = family(15).iter().map(|c| c.exponents().to_vec()).collect();
        assert_eq!(ex, vec![vec![1, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn multiplicative_and_conjugate() {
        let f = family(105);
        for chi in f.all_characters().step_by(5) {
            let bar = chi.conj();
            for a in 0..105u64 {
                for b in 0..105u64 {
                    let lhs = chi.value_turn(a * b);
                    let rhs = match (chi.value_turn(a), chi.value_turn(b)) {
                        (Some(x), Some(y)) => Some((x + y).fract()),
                        _ => None,
                    };
                    assert_eq!(lhs, rhs);
                }
                if let (Some(x), Some(y)) = (chi.value_turn(a), bar.value_turn(a)) {
                    assert_eq!((x + y).fract(), Ratio::from_integer(0));
                }
            }
        }
    }

    #[test]
    fn exponent_validation() {
        let f = family(7);
        assert!(DirichletCharacter::new(Arc::clone(f.tables()), vec![6]).is_err());
        assert!(DirichletCharacter::new(Arc::clone(f.tables()), vec![1, 1]).is_err());
        assert!(!DirichletCharacter::new(Arc::clone(f.tables()), vec![0])
            .unwrap()
            .is_primitive());
    }
}
