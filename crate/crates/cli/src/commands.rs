//! Subcommand table and runners. Each runner turns resolved parameters into
//! a [`Table`]; `main` handles output.

use crate::error::CliError;
use lowlying::density::{
    one_level_prime_side, squarefree_reports, aggregate, FamilyOptions, Normalization,
};
use lowlying::dirichlet::oracle::{family_sum_brute, primitive_sum_brute};
use lowlying::dirichlet::{
    dirichlet_second_moment, family_sum_chi, gauss_sum, primitive_sum_divisor_identity,
    RootChoice,
};
use lowlying::elliptic::{bias_statistics, moment_series, table1_row, FamilyKind, PrimeRange};
use lowlying::numth::{primes_in_range, FactoredModulus, PrimeTable};
use lowlying::satake::{
    convolve, prime_sum_constants, rank_upper_bound, rank_upper_bound_with, symmetry_constant,
    DirichletFamily, EllipticFamily, ExplicitFamily, FiberRange, QuadraticFamily, SatakeFamily,
    SymmetryEstimate, PRIME_SUM_LIMITS,
};
use lowlying::{EllipticSurface, PrimitiveFamily, TestFunctionPair};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;
use std::sync::Arc;

pub struct Key {
    pub name: &'static str,
    /// `None` marks a key that is required or simply optional (see `required`).
    pub default: Option<&'static str>,
    pub required: bool,
    pub help: &'static str,
}

pub struct CommandDef {
    pub name: &'static str,
    pub about: &'static str,
    pub keys: &'static [Key],
    pub columns: &'static [(&'static str, &'static str)],
}

impl CommandDef {
    pub fn accepted(&self) -> String {
        self.keys.iter().map(|k| k.name).collect::<Vec<_>>().join(", ")
    }

    pub fn help_text(&self) -> String {
        let mut s = String::from("Parameters (key=value):\n");
        for k in self.keys {
            let tag = match (k.required, k.default) {
                (true, _) => " [required]".to_string(),
                (false, Some(d)) => format!(" [default: {d}]"),
                (false, None) => String::new(),
            };
            s.push_str(&format!("  {:<16}{}{}\n", k.name, k.help, tag));
        }
        s.push_str("\nCSV columns:\n");
        for (c, d) in self.columns {
            s.push_str(&format!("  {c:<16}{d}\n"));
        }
        s
    }
}

const fn req(name: &'static str, help: &'static str) -> Key {
    Key { name, default: None, required: true, help }
}

const fn dflt(name: &'static str, default: &'static str, help: &'static str) -> Key {
    Key { name, default: Some(default), required: false, help }
}

const fn opt(name: &'static str, help: &'static str) -> Key {
    Key { name, default: None, required: false, help }
}

const SYMMETRY_COLUMNS: &[(&str, &str)] = &[
    ("p", "prime"),
    ("avg_lambda_p2", "average of Re lambda(p^2) over unramified members"),
    ("ramified", "members skipped at p"),
    ("running_c_hat", "mean of avg_lambda_p2 over primes so far"),
];

const FAMILY_HELP: &str =
    "trivial | quadratic:LO..HI | dirichlet:M | elliptic:SURFACE[@LO..HI] (complete t mod p without @)";

pub const COMMANDS: &[CommandDef] = &[
    CommandDef {
        name: "density",
        about: "Prime side of the 1-level density for primitive characters mod m",
        keys: &[
            req("m", "odd square-free modulus > pi"),
            dflt("sigma", "1", "Fejer support radius"),
        ],
        columns: &[
            ("m", "modulus"),
            ("r", "number of prime factors"),
            ("family_size", "number of primitive characters"),
            ("sigma", "support radius"),
            ("s1", "first prime sum"),
            ("s2", "second prime sum"),
            ("main_term", "phi_hat(0)"),
            ("one_level", "main_term - s1 - s2"),
            ("uncertainty", "declared size of the omitted O(1/log m) terms"),
        ],
    },
    CommandDef {
        name: "sqfree-density",
        about: "1-level prime side over odd square-free moduli in [N, 2N]",
        keys: &[
            req("n", "lower end N >= 4"),
            dflt("sigma", "1", "Fejer support radius"),
            dflt("normalization", "per-conductor", "per-conductor | fixed"),
        ],
        columns: &[
            ("scope", "family, or r=K for moduli with K prime factors"),
            ("moduli", "number of moduli"),
            ("family_size", "total primitive characters"),
            ("s1", "first prime sum (family-size weighted)"),
            ("s2", "second prime sum (family-size weighted)"),
            ("main_term", "weighted main term (family row only)"),
            ("one_level", "main_term - s1 - s2 (family row only)"),
            ("uncertainty", "declared remainder size (family row only)"),
            ("conductor_factor", "mean log(m/pi)/log(N/pi) (family row only)"),
        ],
    },
    CommandDef {
        name: "bias",
        about: "Second-moment bias statistics of an elliptic surface",
        keys: &[
            req("family", "surface: tconst:a,b,c,d,e | tlin:a,b,c,d | tnx:n | tn:n | wash:m | linx:a,c,d,e,g | poly:A3;A2;A1;A0"),
            dflt("range", "5..10000", "primes lo..hi or ranks #lo..#hi"),
            dflt("series", "false", "emit per-prime moments instead of the summary"),
        ],
        columns: &[
            ("p_lo_rank", "rank of the first prime (summary)"),
            ("p_hi_rank", "rank of the last prime (summary)"),
            ("stat32", "mean of (M2 - p^2)/p^{3/2} (summary)"),
            ("stat1", "mean of (M2 - p^2)/p (summary)"),
            ("sign", "sign of stat1 (summary)"),
            ("p, M1, M2", "prime and complete moments (series)"),
            ("A1_num, A1_den", "M1/p as a reduced fraction (series)"),
            ("A2_num, A2_den", "M2/p as a reduced fraction (series)"),
            ("singular_count", "singular fibers mod p (series)"),
        ],
    },
    CommandDef {
        name: "table1",
        about: "Averages of c1(p)/sqrt(p) and c0(p) for y^2 = ax^3 + cx^2 + (dT + e)x + g",
        keys: &[
            opt("family", "linx:a,c,d,e,g (default: eleven rank-one families)"),
            dflt("range", "#6001..#7000", "primes lo..hi or ranks #lo..#hi"),
        ],
        columns: &[
            ("family", "linx descriptor"),
            ("primes", "number of primes averaged"),
            ("avg_c1", "mean of c1(p)/sqrt(p)"),
            ("avg_c1_raw", "mean of c1(p)"),
            ("avg_c0", "mean of c0(p)"),
        ],
    },
    CommandDef {
        name: "rank-bound",
        about: "Average-rank upper bound from the Fejer pair and a second-moment bias",
        keys: &[
            dflt("rank", "0", "rank r of the family"),
            dflt("sigma", "1", "Fejer support radius"),
            dflt("conductor", "1e12", "scale R"),
            dflt("m_e", "1", "bias magnitude"),
            opt("cutoff", "compute the prime-sum constants up to this X instead of the limits"),
        ],
        columns: &[
            ("rank", "r"),
            ("sigma", "support radius"),
            ("log_r", "log R"),
            ("m_e", "bias magnitude"),
            ("c1", "2 sum log p / p^2"),
            ("c2", "4 sum (log p)^2 / p^2"),
            ("bound", "1/sigma + r + 1/2 + (c1/sigma - c2/(sigma^2 log R)) m_e / log R"),
        ],
    },
    CommandDef {
        name: "symmetry",
        about: "Symmetry constant c_hat of a Satake family",
        keys: &[
            req("family", FAMILY_HELP),
            req("primes", "primes lo..hi or ranks #lo..#hi"),
        ],
        columns: SYMMETRY_COLUMNS,
    },
    CommandDef {
        name: "convolve",
        about: "Symmetry constant of the Rankin-Selberg product of two Satake families",
        keys: &[
            req("f", FAMILY_HELP),
            req("g", FAMILY_HELP),
            req("primes", "primes lo..hi or ranks #lo..#hi"),
        ],
        columns: SYMMETRY_COLUMNS,
    },
    CommandDef {
        name: "dirichlet-moment",
        about: "Second moment of characters mod a prime q over primes below X",
        keys: &[
            req("q", "odd prime"),
            dflt("x", "1000000", "prime cutoff (strict)"),
            opt("torsion", "prime l dividing q - 1: restrict to characters of order l"),
        ],
        columns: &[
            ("q", "modulus"),
            ("torsion", "order l, empty for the full family"),
            ("x", "cutoff"),
            ("m2", "sum over p < x of sum_chi chi(p)^2"),
            ("prime_count", "primes below x"),
            ("ratio", "m2 / prime_count"),
        ],
    },
    CommandDef {
        name: "constants",
        about: "Prime sums 2 sum log p/p^2 and 4 sum (log p)^2/p^2 up to X",
        keys: &[dflt("x", "10000000", "cutoff X >= 1000")],
        columns: &[
            ("x", "cutoff"),
            ("first", "2 sum_{p <= x} log p / p^2"),
            ("second", "4 sum_{p <= x} (log p)^2 / p^2"),
        ],
    },
    CommandDef {
        name: "oracle-check",
        about: "Closed-form character sums against character-by-character enumeration",
        keys: &[
            req("m", "odd square-free modulus"),
            dflt("p_max", "1000", "largest prime tested"),
        ],
        columns: &[
            ("check", "family_sum (nu = 1, 2), divisor_identity or gauss_modulus"),
            ("cases", "number of comparisons"),
            ("mismatches", "comparisons that disagreed"),
        ],
    },
];

pub fn def(name: &str) -> Option<&'static CommandDef> {
    COMMANDS.iter().find(|c| c.name == name)
}

/// Rejects unknown keys and missing required ones, then fills defaults.
pub fn resolve(
    def: &CommandDef,
    given: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, String>, CliError> {
    if let Some(k) = given.keys().find(|k| !def.keys.iter().any(|s| s.name == k.as_str())) {
        return Err(CliError::UnknownKey {
            key: k.clone(),
            accepted: def.accepted(),
        });
    }
    let mut out = given.clone();
    for k in def.keys {
        if !out.contains_key(k.name) {
            match k.default {
                Some(d) => {
                    out.insert(k.name.to_string(), d.to_string());
                }
                None if k.required => return Err(CliError::MissingKey(k.name.to_string())),
                None => {}
            }
        }
    }
    Ok(out)
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Trailing `#` lines.
    pub notes: Vec<String>,
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        let v = self.0.get(key).ok_or_else(|| CliError::MissingKey(key.into()))?;
        v.parse().map_err(|e: T::Err| CliError::BadValue {
            key: key.into(),
            reason: format!("'{v}': {e}"),
        })
    }

    fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        if self.0.contains_key(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }
}

fn cells<const N: usize>(v: [String; N]) -> Vec<String> {
    v.into()
}

pub fn run(name: &str, params: &BTreeMap<String, String>, override_guard: bool) -> Result<Table, CliError> {
    let p = Params(params);
    match name {
        "density" => density(&p),
        "sqfree-density" => sqfree_density(&p, override_guard),
        "bias" => bias(&p),
        "table1" => table1(&p),
        "rank-bound" => rank_bound(&p),
        "symmetry" => {
            let f = parse_family(&p.get::<String>("family")?)?;
            symmetry(f.as_ref(), &prime_list(&p)?, Vec::new())
        }
        "convolve" => {
            let f = parse_family(&p.get::<String>("f")?)?;
            let g = parse_family(&p.get::<String>("g")?)?;
            let primes = prime_list(&p)?;
            let cf = symmetry_constant(f.as_ref(), &primes)?.c_hat;
            let cg = symmetry_constant(g.as_ref(), &primes)?.c_hat;
            let conv = convolve(f, g);
            symmetry(&conv, &primes, vec![format!("c_hat(f)={cf} c_hat(g)={cg} product={}", cf * cg)])
        }
        "dirichlet-moment" => dirichlet_moment(&p),
        "constants" => {
            let x: u64 = p.get("x")?;
            let (a, b) = prime_sum_constants(x)?;
            Ok(Table {
                header: vec!["x", "first", "second"],
                rows: vec![cells([x.to_string(), a.to_string(), b.to_string()])],
                notes: Vec::new(),
            })
        }
        "oracle-check" => oracle_check(&p),
        _ => Err(CliError::Config(format!("unknown command '{name}'"))),
    }
}

fn pair(p: &Params) -> Result<TestFunctionPair, CliError> {
    Ok(TestFunctionPair::fejer(p.get("sigma")?)?)
}

fn density(p: &Params) -> Result<Table, CliError> {
    let m = FactoredModulus::new(p.get("m")?)?;
    let r = one_level_prime_side(&m, &pair(p)?)?;
    Ok(Table {
        header: vec!["m", "r", "family_size", "sigma", "s1", "s2", "main_term", "one_level", "uncertainty"],
        rows: vec![cells([
            m.m().to_string(),
            m.r().to_string(),
            r.family_size.to_string(),
            r.sigma.to_string(),
            r.s1.to_string(),
            r.s2.to_string(),
            r.main_term.to_string(),
            r.one_level.to_string(),
            r.uncertainty.to_string(),
        ])],
        notes: Vec::new(),
    })
}

fn sqfree_density(p: &Params, override_guard: bool) -> Result<Table, CliError> {
    let n: u64 = p.get("n")?;
    let normalization: Normalization = p.get("normalization")?;
    let pair = pair(p)?;
    let opts = FamilyOptions { normalization, override_guard };
    let reports = squarefree_reports(n, &pair, opts)?;
    let fam = aggregate(n, &pair, normalization, &reports)?;
    let mut rows = vec![cells([
        "family".into(),
        reports.len().to_string(),
        fam.family_size.to_string(),
        fam.s1.to_string(),
        fam.s2.to_string(),
        fam.main_term.to_string(),
        fam.one_level.to_string(),
        fam.uncertainty.to_string(),
        fam.conductor_factor.map(|c| c.to_string()).unwrap_or_default(),
    ])];
    for b in &fam.per_r {
        rows.push(cells([
            format!("r={}", b.r),
            b.moduli.to_string(),
            b.family_size.to_string(),
            b.s1.to_string(),
            b.s2.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]));
    }
    Ok(Table {
        header: vec![
            "scope", "moduli", "family_size", "s1", "s2", "main_term", "one_level", "uncertainty",
            "conductor_factor",
        ],
        rows,
        notes: Vec::new(),
    })
}

fn surface(p: &Params) -> Result<EllipticSurface, CliError> {
    Ok(p.get::<String>("family")?.parse::<EllipticSurface>()?)
}

fn bias(p: &Params) -> Result<Table, CliError> {
    let s = surface(p)?;
    let range: PrimeRange = p.get("range")?;
    if p.get::<bool>("series")? {
        let (primes, _) = range.resolve();
        let series = moment_series(&s, &primes)?;
        let rows = series
            .records
            .iter()
            .map(|r| {
                let (a1, a2) = (r.a1(), r.a2());
                cells([
                    r.p.to_string(),
                    r.m1.to_string(),
                    r.m2.to_string(),
                    a1.numer().to_string(),
                    a1.denom().to_string(),
                    a2.numer().to_string(),
                    a2.denom().to_string(),
                    r.singular_count.to_string(),
                ])
            })
            .collect();
        return Ok(Table {
            header: vec!["p", "M1", "M2", "A1_num", "A1_den", "A2_num", "A2_den", "singular_count"],
            rows,
            notes: Vec::new(),
        });
    }
    let r = bias_statistics(&s, range)?;
    Ok(Table {
        header: vec!["p_lo_rank", "p_hi_rank", "stat32", "stat1", "sign"],
        rows: vec![cells([
            r.p_lo_rank.to_string(),
            r.p_hi_rank.to_string(),
            r.stat32.to_string(),
            r.stat1.to_string(),
            r.sign.to_string(),
        ])],
        notes: Vec::new(),
    })
}

const RANK_ONE_FAMILIES: &[&str] = &[
    "linx:4,-7,4,0,4",
    "linx:4,5,4,-2,1",
    "linx:4,5,4,2,1",
    "linx:4,1,4,2,1",
    "linx:4,1,4,0,4",
    "linx:4,1,4,6,9",
    "linx:4,4,4,0,1",
    "linx:4,5,4,4,4",
    "linx:4,4,4,0,9",
    "linx:4,5,4,0,4",
    "linx:4,5,4,6,9",
];

fn table1(p: &Params) -> Result<Table, CliError> {
    let range: PrimeRange = p.get("range")?;
    let kinds: Vec<FamilyKind> = match p.opt::<String>("family")? {
        Some(f) => vec![f.parse()?],
        None => RANK_ONE_FAMILIES.iter().map(|f| f.parse().expect("valid")).collect(),
    };
    let mut rows = Vec::new();
    for k in kinds {
        let r = table1_row(k, range)?;
        rows.push(cells([
            k.to_string(),
            r.primes.to_string(),
            r.avg_c1.to_string(),
            r.avg_c1_raw.to_string(),
            r.avg_c0.to_string(),
        ]));
    }
    Ok(Table {
        header: vec!["family", "primes", "avg_c1", "avg_c1_raw", "avg_c0"],
        rows,
        notes: Vec::new(),
    })
}

fn rank_bound(p: &Params) -> Result<Table, CliError> {
    let rank: f64 = p.get("rank")?;
    let sigma: f64 = p.get("sigma")?;
    let conductor: f64 = p.get("conductor")?;
    let m_e: f64 = p.get("m_e")?;
    if !(conductor > 1.0) {
        return Err(CliError::BadValue {
            key: "conductor".into(),
            reason: format!("{conductor} must exceed 1"),
        });
    }
    let log_r = conductor.ln();
    let (consts, bound) = match p.opt::<u64>("cutoff")? {
        Some(x) => {
            let c = prime_sum_constants(x)?;
            (c, rank_upper_bound_with(c, rank, sigma, log_r, m_e)?)
        }
        None => (PRIME_SUM_LIMITS, rank_upper_bound(rank, sigma, log_r, m_e)?),
    };
    Ok(Table {
        header: vec!["rank", "sigma", "log_r", "m_e", "c1", "c2", "bound"],
        rows: vec![cells([
            rank.to_string(),
            sigma.to_string(),
            log_r.to_string(),
            m_e.to_string(),
            consts.0.to_string(),
            consts.1.to_string(),
            bound.to_string(),
        ])],
        notes: Vec::new(),
    })
}

fn bad_family(s: &str) -> CliError {
    CliError::BadValue {
        key: "family".into(),
        reason: format!("'{s}': expected {FAMILY_HELP}"),
    }
}

fn parse_span(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once("..")?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn parse_family(s: &str) -> Result<Arc<dyn SatakeFamily>, CliError> {
    if s == "trivial" {
        return Ok(Arc::new(ExplicitFamily::trivial()));
    }
    let (tag, rest) = s.split_once(':').ok_or_else(|| bad_family(s))?;
    match tag {
        "quadratic" => {
            let (lo, hi) = parse_span(rest).ok_or_else(|| bad_family(s))?;
            if lo < 0 || hi < 0 {
                return Err(bad_family(s));
            }
            Ok(Arc::new(QuadraticFamily::new(lo as u64, hi as u64)?))
        }
        "dirichlet" => {
            let m: u64 = rest.parse().map_err(|_| bad_family(s))?;
            Ok(Arc::new(DirichletFamily::new(m)?))
        }
        "elliptic" => {
            let (surf, range) = match rest.split_once('@') {
                Some((a, b)) => {
                    let (lo, hi) = parse_span(b).ok_or_else(|| bad_family(s))?;
                    (a, FiberRange::Range { lo, hi })
                }
                None => (rest, FiberRange::Complete),
            };
            Ok(Arc::new(EllipticFamily::new(surf.parse()?, range)?))
        }
        _ => Err(bad_family(s)),
    }
}

fn prime_list(p: &Params) -> Result<Vec<u64>, CliError> {
    Ok(match p.get::<PrimeRange>("primes")? {
        PrimeRange::Magnitude { lo, hi } => primes_in_range(lo, hi),
        PrimeRange::Rank { lo, hi } => PrimeTable::with_count(hi).rank_window(lo.max(1), hi).to_vec(),
    })
}

fn symmetry(f: &dyn SatakeFamily, primes: &[u64], mut notes: Vec<String>) -> Result<Table, CliError> {
    let est: SymmetryEstimate = symmetry_constant(f, primes)?;
    let rows = est
        .running()
        .iter()
        .zip(&est.ramified)
        .map(|(&(p, v, run), ram)| cells([p.to_string(), v.to_string(), ram.to_string(), run.to_string()]))
        .collect();
    notes.push(format!("family={}", f.label()));
    match est.classification {
        Some(c) => notes.push(format!(
            "c_hat={} group={} margin={} flavor_determined={}",
            est.c_hat, c.group, c.margin, c.flavor_determined
        )),
        None => notes.push(format!("c_hat={} group=out_of_model", est.c_hat)),
    }
    if !est.dropped.is_empty() {
        notes.push(format!("dropped_primes={:?}", est.dropped));
    }
    Ok(Table {
        header: vec!["p", "avg_lambda_p2", "ramified", "running_c_hat"],
        rows,
        notes,
    })
}

fn dirichlet_moment(p: &Params) -> Result<Table, CliError> {
    let q: u64 = p.get("q")?;
    let x: u64 = p.get("x")?;
    let torsion: Option<u64> = p.opt("torsion")?;
    let m = dirichlet_second_moment(q, x, torsion)?;
    Ok(Table {
        header: vec!["q", "torsion", "x", "m2", "prime_count", "ratio"],
        rows: vec![cells([
            q.to_string(),
            torsion.map(|l| l.to_string()).unwrap_or_default(),
            x.to_string(),
            m.value.to_string(),
            m.prime_count.to_string(),
            m.ratio.to_string(),
        ])],
        notes: Vec::new(),
    })
}

fn oracle_check(p: &Params) -> Result<Table, CliError> {
    let m = FactoredModulus::new(p.get("m")?)?;
    let p_max: u64 = p.get("p_max")?;
    let primes = primes_in_range(2, p_max);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for nu in [1u32, 2] {
        let mut bad = 0;
        for &q in &primes {
            let cf = family_sum_chi(&m, q, nu)?.value;
            if cf != family_sum_brute(&m, q, nu, RootChoice::Smallest)? {
                bad += 1;
            }
        }
        rows.push(cells([format!("family_sum_nu{nu}"), primes.len().to_string(), bad.to_string()]));
        if bad > 0 {
            failures.push(format!("family_sum nu={nu}"));
        }
    }
    let coprime: Vec<u64> = primes.iter().copied().filter(|q| m.m() % q != 0).collect();
    let mut bad = 0;
    for &q in &coprime {
        if primitive_sum_divisor_identity(m.m(), q)? != primitive_sum_brute(&m, q)? {
            bad += 1;
        }
    }
    rows.push(cells(["divisor_identity".into(), coprime.len().to_string(), bad.to_string()]));
    if bad > 0 {
        failures.push("divisor_identity".into());
    }
    let fam = PrimitiveFamily::new(m.clone())?;
    let root = (m.m() as f64).sqrt();
    let (mut cases, mut bad) = (0, 0);
    for chi in fam.iter() {
        cases += 1;
        if (gauss_sum(&chi)?.norm() - root).abs() > 1e-10 * root {
            bad += 1;
        }
    }
    rows.push(cells(["gauss_modulus".into(), cases.to_string(), bad.to_string()]));
    if bad > 0 {
        failures.push("gauss_modulus".into());
    }
    if !failures.is_empty() {
        return Err(CliError::Check(failures.join(", ")));
    }
    Ok(Table {
        header: vec!["check", "cases", "mismatches"],
        rows,
        notes: Vec::new(),
    })
}
