use crate::numth::{reduce, IntPolynomial};
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// The one-parameter family shapes with known second moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `y^2 = a x^3 + b x^2 + c x + d + e T`
    TConst { a: i64, b: i64, c: i64, d: i64, e: i64 },
    /// `y^2 = a x^3 + b x^2 + (c T + d) x`
    TLin { a: i64, b: i64, c: i64, d: i64 },
    /// `y^2 = x^3 + T^n x`
    TPowX { n: u32 },
    /// `y^2 = x^3 + T^n`
    TPow { n: u32 },
    /// `y^2 = x^3 + T x^2 + (m T - 3 m^2) x - m^3`
    Wash { m: i64 },
    /// `y^2 = a x^3 + c x^2 + (d T + e) x + g`
    LinearX { a: i64, c: i64, d: i64, e: i64, g: i64 },
}

impl FamilyKind {
    /// Coefficients `(a3, a2, a1, a0)` as polynomials in `T`.
    pub fn coefficients(&self) -> [IntPolynomial; 4] {
        use IntPolynomial as P;
        match *self {
            FamilyKind::TConst { a, b, c, d, e } => {
                [P::constant(a), P::constant(b), P::constant(c), P::linear(d, e)]
            }
            FamilyKind::TLin { a, b, c, d } => {
                [P::constant(a), P::constant(b), P::linear(d, c), P::zero()]
            }
            FamilyKind::TPowX { n } => [P::constant(1), P::zero(), P::monomial(1, n as usize), P::zero()],
            FamilyKind::TPow { n } => [P::constant(1), P::zero(), P::zero(), P::monomial(1, n as usize)],
            FamilyKind::Wash { m } => [
                P::constant(1),
                P::linear(0, 1),
                P::linear(-3 * m * m, m),
                P::constant(-m * m * m),
            ],
            FamilyKind::LinearX { a, c, d, e, g } => {
                [P::constant(a), P::constant(c), P::linear(e, d), P::constant(g)]
            }
        }
    }

    /// Rank over `Q(T)` where it is known for the shape.
    pub fn known_rank(&self) -> Option<u32> {
        match *self {
            FamilyKind::TConst { .. }
            | FamilyKind::TLin { .. }
            | FamilyKind::TPowX { .. }
            | FamilyKind::TPow { .. } => Some(0),
            FamilyKind::Wash { m } => {
                let r = (m.max(0) as f64).sqrt().round() as i64;
                Some(if m > 0 && r * r == m { 1 } else { 0 })
            }
            FamilyKind::LinearX { .. } => None,
        }
    }

    /// Average coefficient of the `p` term in the second moment as stated for
    /// the shape, where one is stated.
    pub fn stated_bias(&self) -> Option<f64> {
        match *self {
            FamilyKind::TConst { .. } | FamilyKind::TLin { .. } => Some(-1.0),
            FamilyKind::TPowX { n } => Some(if n % 2 == 0 { -4.0 / 3.0 } else { -1.0 }),
            FamilyKind::TPow { n } => Some(if n % 3 == 0 { -4.0 / 3.0 } else { -1.0 }),
            FamilyKind::Wash { .. } => Some(-2.0),
            FamilyKind::LinearX { .. } => None,
        }
    }

    /// Whether the `j`-invariant of the shape is constant in `T`.
    pub fn constant_j(&self) -> bool {
        matches!(self, FamilyKind::TPowX { .. } | FamilyKind::TPow { .. })
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer '{x}'")))
        })
        .collect()
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// `tconst:a,b,c,d,e`, `tlin:a,b,c,d`, `tnx:n`, `tn:n`, `wash:m`,
    /// `linx:a,c,d,e,g`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("family '{s}' needs name:params")))?;
        let v = parse_list(args)?;
        let want = |n: usize| -> Result<()> {
            if v.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "family '{name}' takes {n} parameters, got {}",
                    v.len()
                )))
            }
        };
        let nonneg = |x: i64| -> Result<u32> {
            u32::try_from(x).map_err(|_| Error::InvalidArgument(format!("exponent {x} < 0")))
        };
        match name {
            "tconst" => {
                want(5)?;
                Ok(FamilyKind::TConst { a: v[0], b: v[1], c: v[2], d: v[3], e: v[4] })
            }
            "tlin" => {
                want(4)?;
                Ok(FamilyKind::TLin { a: v[0], b: v[1], c: v[2], d: v[3] })
            }
            "tnx" => {
                want(1)?;
                Ok(FamilyKind::TPowX { n: nonneg(v[0])? })
            }
            "tn" => {
                want(1)?;
                Ok(FamilyKind::TPow { n: nonneg(v[0])? })
            }
            "wash" => {
                want(1)?;
                if v[0] == 0 {
                    return Err(Error::InvalidArgument("wash needs m != 0".into()));
                }
                Ok(FamilyKind::Wash { m: v[0] })
            }
            "linx" => {
                want(5)?;
                Ok(FamilyKind::LinearX { a: v[0], c: v[1], d: v[2], e: v[3], g: v[4] })
            }
            _ => Err(Error::InvalidArgument(format!("unknown family '{name}'"))),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyKind::TConst { a, b, c, d, e } => write!(f, "tconst:{a},{b},{c},{d},{e}"),
            FamilyKind::TLin { a, b, c, d } => write!(f, "tlin:{a},{b},{c},{d}"),
            FamilyKind::TPowX { n } => write!(f, "tnx:{n}"),
            FamilyKind::TPow { n } => write!(f, "tn:{n}"),
            FamilyKind::Wash { m } => write!(f, "wash:{m}"),
            FamilyKind::LinearX { a, c, d, e, g } => write!(f, "linx:{a},{c},{d},{e},{g}"),
        }
    }
}

/// `y^2 = a3(T) x^3 + a2(T) x^2 + a1(T) x + a0(T)` over `Q(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticSurface {
    coeffs: [IntPolynomial; 4],
    kind: Option<FamilyKind>,
    declared_rank: Option<u32>,
}

/// `f = g(x) + k(T) h(x)` with `g`, `h` constant-first cubics in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Separation {
    pub g: [i64; 4],
    pub h: [i64; 4],
    pub k: IntPolynomial,
}

impl EllipticSurface {
    /// Builds a surface from `(a3, a2, a1, a0)`; `a3` must be nonzero.
    pub fn new(
        a3: IntPolynomial,
        a2: IntPolynomial,
        a1: IntPolynomial,
        a0: IntPolynomial,
    ) -> Result<Self> {
        if a3.is_zero() {
            return Err(Error::InvalidArgument("a3(T) is identically zero".into()));
        }
        Ok(EllipticSurface {
            coeffs: [a3, a2, a1, a0],
            kind: None,
            declared_rank: None,
        })
    }

    pub fn from_kind(kind: FamilyKind) -> Self {
        let [a3, a2, a1, a0] = kind.coefficients();
        let mut s = EllipticSurface::new(a3, a2, a1, a0).expect("built-in shapes have a3 != 0");
        s.kind = Some(kind);
        s.declared_rank = kind.known_rank();
        s
    }

    /// Tags an existing surface with a shape; the coefficients must match.
    pub fn with_kind(mut self, kind: FamilyKind) -> Result<Self> {
        if kind.coefficients() != self.coeffs {
            return Err(Error::InvalidArgument(format!(
                "coefficients do not match shape {kind}"
            )));
        }
        self.kind = Some(kind);
        Ok(self)
    }

    pub fn with_declared_rank(mut self, rank: u32) -> Self {
        self.declared_rank = Some(rank);
        self
    }

    pub fn kind(&self) -> Option<FamilyKind> {
        self.kind
    }

    pub fn declared_rank(&self) -> Option<u32> {
        self.declared_rank
    }

    pub fn a3(&self) -> &IntPolynomial {
        &self.coeffs[0]
    }
    pub fn a2(&self) -> &IntPolynomial {
        &self.coeffs[1]
    }
    pub fn a1(&self) -> &IntPolynomial {
        &self.coeffs[2]
    }
    pub fn a0(&self) -> &IntPolynomial {
        &self.coeffs[3]
    }

    /// The fiber cubic at `t`, reduced mod `p`, constant term first.
    pub fn fiber_mod(&self, t: i64, p: u64) -> [u64; 4] {
        let tt = reduce(t, p);
        [
            self.coeffs[3].eval_mod(tt, p),
            self.coeffs[2].eval_mod(tt, p),
            self.coeffs[1].eval_mod(tt, p),
            self.coeffs[0].eval_mod(tt, p),
        ]
    }

    /// True when `p` divides the leading coefficient or the discriminant of
    /// the fiber cubic at `t`.
    pub fn is_singular(&self, t: i64, p: u64) -> bool {
        let [d, c, b, a] = self.fiber_mod(t, p);
        a == 0 || cubic_discriminant_mod([d, c, b, a], p) == 0
    }

    /// Splits the surface as `g(x) + k(T) h(x)` when every coefficient is
    /// affine in one common polynomial `k` with `k(0) = 0`.
    pub(crate) fn separation(&self) -> Option<Separation> {
        // constant-first in x: index 0 is a0
        let by_x = [&self.coeffs[3], &self.coeffs[2], &self.coeffs[1], &self.coeffs[0]];
        let mut g = [0i64; 4];
        for (i, c) in by_x.iter().enumerate() {
            g[i] = c.coeff(0);
        }
        let varying: Vec<IntPolynomial> = by_x
            .iter()
            .map(|c| {
                let mut v = c.coeffs().to_vec();
                if !v.is_empty() {
                    v[0] = 0;
                }
                IntPolynomial::new(v)
            })
            .collect();
        let Some(first) = varying.iter().find(|v| !v.is_zero()) else {
            return None;
        };
        let content = first.coeffs().iter().fold(0i64, |acc, &c| gcd_i(acc, c));
        let sign = first.coeffs().last().map_or(1, |c| c.signum());
        let k = IntPolynomial::new(first.coeffs().iter().map(|c| c / (content * sign)).collect());
        let mut h = [0i64; 4];
        for (i, v) in varying.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let lead = v.coeffs().last().copied()?;
            let kl = *k.coeffs().last()?;
            if lead % kl != 0 {
                return None;
            }
            let mult = lead / kl;
            let scaled: Vec<i64> = k.coeffs().iter().map(|c| c * mult).collect();
            if IntPolynomial::new(scaled) != *v {
                return None;
            }
            h[i] = mult;
        }
        Some(Separation { g, h, k })
    }
}

fn gcd_i(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Discriminant of `a x^3 + b x^2 + c x + d` mod `p`, from constant-first
/// residues `[d, c, b, a]`.
pub fn cubic_discriminant_mod(f: [u64; 4], p: u64) -> u64 {
    let [d, c, b, a] = f.map(|x| x as i128);
    let p = p as i128;
    let disc = b * b % p * c % p * c % p - 4 * a * c % p * c % p * c % p - 4 * b * b % p * b % p * d % p
        - 27 * a * a % p * d % p * d % p
        + 18 * a * b % p * c % p * d % p;
    disc.rem_euclid(p) as u64
}

impl FromStr for EllipticSurface {
    type Err = Error;

    /// A family shape (`tlin:1,1,1,0`, ...) or `poly:A3;A2;A1;A0` with each
    /// coefficient a comma-separated, constant-first list in `T`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("poly:") {
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != 4 {
                return Err(Error::InvalidArgument(
                    "poly surface needs four ';'-separated coefficients".into(),
                ));
            }
            let polys: Vec<IntPolynomial> = parts
                .iter()
                .map(|p| parse_list(p).map(IntPolynomial::new))
                .collect::<Result<_>>()?;
            let [a3, a2, a1, a0]: [IntPolynomial; 4] = polys.try_into().expect("four parts");
            return EllipticSurface::new(a3, a2, a1, a0);
        }
        Ok(EllipticSurface::from_kind(s.parse()?))
    }
}

impl fmt::Display for EllipticSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.kind {
            return write!(f, "{k}");
        }
        let list = |p: &IntPolynomial| {
            if p.is_zero() {
                "0".to_string()
            } else {
                p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        write!(
            f,
            "poly:{};{};{};{}",
            list(self.a3()),
            list(self.a2()),
            list(self.a1()),
            list(self.a0())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "tconst:1,1,1,1,1",
            "tlin:1,1,1,0",
            "tnx:2",
            "tn:3",
            "wash:4",
            "linx:4,-7,4,0,4",
            "poly:1;0;1;0,1",
            "poly:1;0;0,1;0",
        ] {
            let e: EllipticSurface = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_string().parse::<EllipticSurface>().unwrap(), e);
        }
        assert!("tlin:1,1".parse::<EllipticSurface>().is_err());
        assert!("poly:0;1;1;1".parse::<EllipticSurface>().is_err());
        assert!("wash:0".parse::<EllipticSurface>().is_err());
        assert!("nope:1".parse::<EllipticSurface>().is_err());
    }

    #[test]
    fn kind_tag_must_match() {
        let e: EllipticSurface = "poly:1;1;0,1;0".parse().unwrap();
        let tagged = e.clone().with_kind(FamilyKind::TLin { a: 1, b: 1, c: 1, d: 0 });
        assert!(tagged.is_ok());
        assert!(e.with_kind(FamilyKind::TLin { a: 1, b: 1, c: 2, d: 0 }).is_err());
    }

    #[test]
    fn separations() {
        let wash = EllipticSurface::from_kind(FamilyKind::Wash { m: 2 });
        let s = wash.separation().unwrap();
        assert_eq!(s.k, IntPolynomial::linear(0, 1));
        assert_eq!(s.h, [0, 2, 1, 0]);
        assert_eq!(s.g, [-8, -12, 0, 1]);
        let tnx = EllipticSurface::from_kind(FamilyKind::TPowX { n: 3 });
        assert_eq!(tnx.separation().unwrap().k, IntPolynomial::monomial(1, 3));
        // T in two places with different polynomials is not separable
        let mixed: EllipticSurface = "poly:1;0;0,1;0,0,1".parse().unwrap();
        assert!(mixed.separation().is_none());
        let constant: EllipticSurface = "poly:1;0;1;1".parse().unwrap();
        assert!(constant.separation().is_none());
    }

    #[test]
    fn discriminant() {
        // x^3 - x has discriminant 4
        assert_eq!(cubic_discriminant_mod([0, 6, 0, 1], 7), 4);
        // x^3 is singular everywhere
        let e: EllipticSurface = "poly:1;0;0,1;0".parse().unwrap();
        assert!(e.is_singular(0, 5));
        assert!(!e.is_singular(1, 5));
    }
}
