//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! (run with `--nocapture` to see them) and fails when the criterion does.

use lowlying::density::one_level_prime_side;
use lowlying::dirichlet::oracle::{family_sum_brute, primitive_sum_brute};
use lowlying::dirichlet::{
    dirichlet_second_moment, family_sum_chi, gauss_sum, primitive_sum_divisor_identity,
    PrimitiveFamily, RootChoice,
};
use lowlying::elliptic::{
    bias_statistics, closed_form_a2, expansion_terms, rosen_silverman, table1_row, traces_brute,
    FamilyKind, PrimeRange,
};
use lowlying::numth::{primes_below, primes_in_range, squarefree_enumerate, FactoredModulus, PrimeTable};
use lowlying::satake::{
    convolve, prime_sum_constants, rank_upper_bound, symmetry_constant, DirichletFamily,
    EllipticFamily, FiberRange, QuadraticFamily, SatakeFamily,
};
use lowlying::{EllipticSurface, TestFunctionPair};
use std::sync::Arc;
use std::time::Instant;

fn report(n: u32, pass: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn lemma_families() -> Vec<FamilyKind> {
    [
        "tconst:1,1,1,1,1",
        "tlin:1,1,1,0",
        "tnx:1",
        "tnx:2",
        "tn:1",
        "tn:2",
        "tn:3",
        "wash:1",
        "wash:2",
        "wash:4",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

#[test]
fn criterion_01_closed_forms() {
    let t0 = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for kind in lemma_families() {
        let s = EllipticSurface::from_kind(kind);
        for p in primes_in_range(5, 199) {
            let Ok(cf) = closed_form_a2(kind, p) else { continue };
            let brute: i64 = traces_brute(&s, p).unwrap().iter().map(|a| a * a).sum();
            checked += 1;
            if cf != brute {
                bad.push(format!("{kind} p={p}: {cf} vs {brute}"));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    report(
        1,
        bad.is_empty() && checked > 0 && secs < 60.0,
        &format!("{checked} (family, p) pairs, {} mismatches {bad:?}, {secs:.1}s", bad.len()),
    );
}

#[test]
fn criterion_02_table1() {
    let t0 = Instant::now();
    let window = PrimeRange::Rank { lo: 6001, hi: 7000 };
    let rows = [
        ("linx:4,-7,4,0,4", 0.0068, 0.974),
        ("linx:4,1,4,6,9", -0.0113, 1.988),
        ("linx:4,4,4,0,1", 0.0072, 0.974),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, c1, c0) in rows {
        let r = table1_row(k.parse().unwrap(), window).unwrap();
        let good = (r.avg_c1 - c1).abs() <= 0.0005 && (r.avg_c0 - c0).abs() <= 0.001;
        ok &= good;
        detail.push(format!(
            "{k}: c1 {:.4} (want {c1}), c0 {:.4} (want {c0}) {}",
            r.avg_c1,
            r.avg_c0,
            if good { "ok" } else { "off" }
        ));
    }
    let secs = t0.elapsed().as_secs_f64();
    report(2, ok && secs < 120.0, &format!("{}; {secs:.1}s", detail.join("; ")));
}

#[test]
fn criterion_03_prime_sum_constants() {
    let t0 = Instant::now();
    let (a, b) = prime_sum_constants(10_000_000).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    report(
        3,
        (a - 0.986).abs() <= 1e-3 && (b - 2.966).abs() <= 1e-2 && secs < 30.0,
        &format!("({a:.6}, {b:.6}) in {secs:.2}s"),
    );
}

#[test]
fn criterion_04_rank_bounds() {
    let lr = 1e12f64.ln();
    let b1 = rank_upper_bound(0.0, 1.0, lr, 1.0).unwrap();
    let b2 = rank_upper_bound(0.0, 2.0, lr, 1.0).unwrap();
    report(
        4,
        (b1 - 1.53).abs() <= 0.01 && (b2 - 1.02).abs() <= 0.01,
        &format!("sigma=1: {b1:.4}, sigma=2: {b2:.4}"),
    );
}

#[test]
fn criterion_05_character_sum_oracles() {
    let t0 = Instant::now();
    let moduli = squarefree_enumerate(3, 105).unwrap();
    let primes = primes_below(1001);
    let mut cases = 0;
    let mut bad = Vec::new();
    for m in &moduli {
        for &p in &primes {
            for nu in [1, 2] {
                let cf = family_sum_chi(m, p, nu).unwrap().value;
                let bf = family_sum_brute(m, p, nu, RootChoice::Smallest).unwrap();
                cases += 1;
                if cf != bf {
                    bad.push(format!("m={} p={p} nu={nu}", m.m()));
                }
            }
            if m.m() % p == 0 {
                continue;
            }
            let d = primitive_sum_divisor_identity(m.m(), p).unwrap();
            let b = primitive_sum_brute(m, p).unwrap();
            cases += 1;
            if d != b {
                bad.push(format!("divisor m={} p={p}", m.m()));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    report(
        5,
        bad.is_empty() && secs < 60.0,
        &format!("{cases} cases over {} moduli, mismatches {bad:?}, {secs:.1}s", moduli.len()),
    );
}

#[test]
fn criterion_06_gauss_sum_modulus() {
    let mut worst = 0f64;
    let mut count = 0;
    for m in squarefree_enumerate(3, 199).unwrap() {
        let root = (m.m() as f64).sqrt();
        let fam = PrimitiveFamily::new(m.clone()).unwrap();
        for chi in fam.iter() {
            let g = gauss_sum(&chi).unwrap();
            worst = worst.max((g.norm() - root).abs() / root);
            count += 1;
        }
    }
    report(6, worst <= 1e-10, &format!("{count} characters, worst relative error {worst:.2e}"));
}

#[test]
fn criterion_07_explicit_formula_convergence() {
    let pair = TestFunctionPair::fejer(1.0).unwrap();
    let reps: Vec<_> = [101u64, 1009, 10007, 100003]
        .iter()
        .map(|&m| one_level_prime_side(&FactoredModulus::new(m).unwrap(), &pair).unwrap())
        .collect();
    let dev: Vec<f64> = reps.iter().map(|r| (r.one_level - 0.25).abs()).collect();
    let s1: Vec<f64> = reps.iter().map(|r| r.s1.abs()).collect();
    let s2: Vec<f64> = reps.iter().map(|r| r.s2.abs()).collect();
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" > ");
    report(
        7,
        decreasing(&dev) && decreasing(&s1) && decreasing(&s2),
        &format!("|one_level - 1/4|: {}; |S1|: {}; |S2|: {}", fmt(&dev), fmt(&s1), fmt(&s2)),
    );
}

#[test]
fn criterion_08_bias_signs() {
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in lemma_families() {
        let s = EllipticSurface::from_kind(kind);
        let r = bias_statistics(&s, PrimeRange::Magnitude { lo: 5, hi: 10_000 }).unwrap();
        let want = kind.stated_bias().unwrap();
        let good = r.stat1 < 0.0 && (r.stat1 - want).abs() <= 0.1 && r.stat32.abs() <= 0.1;
        ok &= good;
        detail.push(format!(
            "{kind}: stat1 {:.3} (stated {want:.3}), stat32 {:.3} {}",
            r.stat1,
            r.stat32,
            if good { "ok" } else { "off" }
        ));
    }
    report(8, ok, &detail.join("; "));
}

#[test]
fn criterion_09_symmetry_constants() {
    let t = PrimeTable::with_count(1000);
    let quad = Arc::new(QuadraticFamily::new(10, 50).unwrap());
    let cq = symmetry_constant(quad.as_ref(), t.rank_window(100, 200)).unwrap().c_hat;
    let cd = symmetry_constant(&DirichletFamily::new(101).unwrap(), &primes_below(10_001))
        .unwrap()
        .c_hat;
    let surface: EllipticSurface = "poly:1;0;0,1;1".parse().unwrap();
    let ell = Arc::new(EllipticFamily::new(surface, FiberRange::Complete).unwrap());
    let window = t.rank_window(500, 1000);
    let ce = symmetry_constant(ell.as_ref(), window).unwrap().c_hat;
    let qe: Arc<dyn SatakeFamily> = quad;
    let conv = convolve(qe.clone(), ell);
    let cqw = symmetry_constant(qe.as_ref(), window).unwrap().c_hat;
    let cc = symmetry_constant(&conv, window).unwrap().c_hat;
    let ok = cq == 1.0
        && cd.abs() <= 0.05
        && (ce + 1.0).abs() <= 0.1
        && (cc + 1.0).abs() <= 0.1
        && (cc - cqw * ce).abs() <= 0.05;
    report(
        9,
        ok,
        &format!("quadratic {cq}, dirichlet(101) {cd:.4}, elliptic {ce:.4}, convolution {cc:.4} vs product {:.4}", cqw * ce),
    );
}

#[test]
fn criterion_10_dirichlet_biases() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for q in [5, 7, 11] {
        let r = dirichlet_second_moment(q, 1_000_000, None).unwrap().ratio;
        ok &= (0.8..=1.2).contains(&r);
        detail.push(format!("q={q}: {r:.4}"));
    }
    for (q, l) in [(7, 3), (13, 3), (11, 5)] {
        let r = dirichlet_second_moment(q, 1_000_000, Some(l)).unwrap().ratio;
        ok &= r.abs() <= 0.05;
        detail.push(format!("q={q} l={l}: {r:.5}"));
    }
    let secs = t0.elapsed().as_secs_f64();
    report(10, ok && secs < 120.0, &format!("{}; {secs:.1}s", detail.join(", ")));
}

#[test]
fn criterion_11_rosen_silverman() {
    let wash = EllipticSurface::from_kind("wash:4".parse().unwrap());
    let tlin = EllipticSurface::from_kind("tlin:1,1,1,0".parse().unwrap());
    let a = rosen_silverman(&wash, 100_000).unwrap();
    let b = rosen_silverman(&tlin, 100_000).unwrap();
    report(11, a - b > 0.3, &format!("wash:4 {a:.4}, tlin {b:.4}, difference {:.4}", a - b));
}

#[test]
fn criterion_12_expansion_consistency() {
    let s: EllipticSurface = "poly:1;0;0,1;0".parse().unwrap();
    let pair = TestFunctionPair::fejer(1.0).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for log_r in [3.0, 4.0, 6.0] {
        let e = expansion_terms(&s, 5, 10, &pair, log_r, 47).unwrap();
        let geo = (e.s_a - e.s_a_tilde).abs();
        let gap = (e.total - e.direct).abs();
        ok &= geo <= 1e-10 && gap <= e.tail_budget;
        detail.push(format!(
            "log R={log_r}: |S_A - S_A~| {geo:.1e}, |total - direct| {gap:.2e} <= budget {:.2e}",
            e.tail_budget
        ));
    }
    report(12, ok, &detail.join("; "));
}
