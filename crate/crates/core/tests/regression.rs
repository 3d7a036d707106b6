use lowlying::density::one_level_prime_side;
use lowlying::dirichlet::dirichlet_second_moment;
use lowlying::elliptic::{
    bias_statistics, expansion_terms, michel_ratio, rosen_silverman, table1_row, PrimeRange,
};
use lowlying::numth::{primes_in_range, FactoredModulus};
use lowlying::satake::{prime_sum_constants, snu_tail, QuadraticFamily};
use lowlying::{EllipticSurface, TestFunctionPair};
use toml::Value;

fn fixture() -> Value {
    let text = include_str!("fixtures/regression.toml");
    text.parse().expect("fixture parses")
}

fn f(v: &Value) -> f64 {
    v.as_float().or_else(|| v.as_integer().map(|i| i as f64)).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(f).collect()
}

fn close(got: f64, want: f64, rel: f64) {
    let scale = want.abs().max(1e-12);
    assert!(
        (got - want).abs() <= rel * scale,
        "got {got}, frozen {want}"
    );
}

#[test]
fn density_grid() {
    let fx = fixture();
    let d = &fx["density"];
    let rel = f(&d["rel_tol"]);
    let pair = TestFunctionPair::fejer(1.0).unwrap();
    let moduli = floats(&d["moduli"]);
    let (one, s1, s2) = (floats(&d["one_level"]), floats(&d["s1"]), floats(&d["s2"]));
    for (i, m) in moduli.iter().enumerate() {
        let r = one_level_prime_side(&FactoredModulus::new(*m as u64).unwrap(), &pair).unwrap();
        close(r.one_level, one[i], rel);
        close(r.s1, s1[i], rel);
        close(r.s2, s2[i], rel);
    }
}

#[test]
fn second_moments_exact() {
    let fx = fixture();
    let s = &fx["second_moment"];
    let x = s["x"].as_integer().unwrap() as u64;
    for row in s["full"].as_array().unwrap() {
        let r = row.as_array().unwrap();
        let m = dirichlet_second_moment(r[0].as_integer().unwrap() as u64, x, None).unwrap();
        assert_eq!(m.value, r[1].as_integer().unwrap());
        assert_eq!(m.prime_count as i64, s["prime_count"].as_integer().unwrap());
    }
    for row in s["torsion"].as_array().unwrap() {
        let r: Vec<i64> = row.as_array().unwrap().iter().map(|v| v.as_integer().unwrap()).collect();
        let m = dirichlet_second_moment(r[0] as u64, x, Some(r[1] as u64)).unwrap();
        assert_eq!(m.value, r[2]);
    }
}

#[test]
fn elliptic_statistics() {
    let fx = fixture();
    let e = &fx["elliptic"];
    let rel = f(&e["rel_tol"]);
    let s: EllipticSurface = "poly:1;0;0,1;0,1".parse().unwrap();
    close(michel_ratio(&s, &primes_in_range(5, 499)).unwrap(), f(&e["michel_ratio"]), rel);
    for row in e["rosen_silverman"].as_array().unwrap() {
        let r = row.as_array().unwrap();
        let fam = EllipticSurface::from_kind(r[0].as_str().unwrap().parse().unwrap());
        let got = rosen_silverman(&fam, 100_000).unwrap();
        if f(&r[1]) == 0.0 {
            assert_eq!(got, 0.0);
        } else {
            close(got, f(&r[1]), rel);
        }
    }
    for row in e["table1"].as_array().unwrap() {
        let r = row.as_array().unwrap();
        let t = table1_row(r[0].as_str().unwrap().parse().unwrap(), PrimeRange::Rank { lo: 6001, hi: 7000 })
            .unwrap();
        close(t.avg_c1, f(&r[1]), rel);
        close(t.avg_c0, f(&r[2]), rel);
    }
    for row in e["bias"].as_array().unwrap() {
        let r = row.as_array().unwrap();
        let fam = EllipticSurface::from_kind(r[0].as_str().unwrap().parse().unwrap());
        let b = bias_statistics(&fam, PrimeRange::Magnitude { lo: 5, hi: 10_000 }).unwrap();
        close(b.stat1, f(&r[1]), rel);
        close(b.stat32, f(&r[2]), rel);
    }
}

#[test]
fn expansion_terms_frozen() {
    let fx = fixture();
    let x = &fx["expansion"];
    let rel = f(&x["rel_tol"]);
    let t = &x["terms"];
    let s: EllipticSurface = "poly:1;0;0,1;0".parse().unwrap();
    let pair = TestFunctionPair::fejer(1.0).unwrap();
    let e = expansion_terms(&s, 5, 10, &pair, 4.0, 47).unwrap();
    close(e.s0, f(&t["s0"]), rel);
    close(e.s1, f(&t["s1"]), rel);
    close(e.s2, f(&t["s2"]), rel);
    close(e.s_a, f(&t["s_a"]), rel);
    close(e.direct, f(&t["direct"]), rel);
}

#[test]
fn satake_constants() {
    let fx = fixture();
    let s = &fx["satake"];
    let rel = f(&s["rel_tol"]);
    let (a, b) = prime_sum_constants(100_000).unwrap();
    let want = floats(&s["prime_sum_constants_1e5"]);
    close(a, want[0], rel);
    close(b, want[1], rel);
    let lr = 1e4f64.ln();
    let q = QuadraticFamily::new(10, 50).unwrap();
    let t = snu_tail(&q, &TestFunctionPair::fejer(1.0).unwrap(), lr).unwrap();
    close(t.value.abs() * lr, f(&s["snu_quadratic_scaled"]), rel);
    assert!(t.value.abs() <= t.majorant);
}
