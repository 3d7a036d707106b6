use lowlying::rmt::*;
use lowlying::testfn::*;
use proptest::prelude::*;

#[test]
fn fejer_values() {
    let f = TestFunctionPair::fejer(1.0).unwrap();
    assert!((f.phi(0.0) - 0.25).abs() < 1e-15);
    assert_eq!(f.phi_hat(0.0), 0.25);
    assert_eq!(f.phi_hat(1.0), 0.0);
    assert_eq!(f.phi_hat(1.5), 0.0);
    assert!(TestFunctionPair::fejer(0.0).is_err());
    assert!(TestFunctionPair::fejer(-1.0).is_err());
}

#[test]
fn fourier_pair_consistency() {
    for sigma in [0.5, 1.0, 2.0] {
        let f = TestFunctionPair::fejer(sigma).unwrap();
        assert!(f.self_test(400.0) < 1e-3, "sigma={sigma}");
    }
}

#[test]
fn custom_pair_checks() {
    let bad = TestFunctionPair::custom("odd", |x| x, |u| u, 1.0);
    assert!(bad.is_err());
    let unsupported = TestFunctionPair::custom("wide", |_| 1.0, |_| 1.0, 1.0);
    assert!(unsupported.is_err());
    let fejer = TestFunctionPair::fejer(1.0).unwrap();
    let copy = TestFunctionPair::custom(
        "copy",
        move |x| TestFunctionPair::fejer(1.0).unwrap().phi(x),
        |u| if u.abs() < 1.0 { (1.0 - u.abs()) / 4.0 } else { 0.0 },
        1.0,
    )
    .unwrap();
    for x in [0.0, 0.3, 2.7] {
        assert_eq!(copy.phi(x), fejer.phi(x));
        assert_eq!(pair_eval(&copy, Side::PhiHat, x), fejer.phi_hat(x));
    }
}

#[test]
fn kernel_averages_hat_vs_quadrature() {
    for sigma in [0.5, 1.0, 1.7] {
        let f = TestFunctionPair::fejer(sigma).unwrap();
        for g in SymmetryType::ALL {
            let a = predicted_average(g, &f);
            let b = predicted_average_quadrature(g, &f);
            assert!((a - b).abs() < 1e-6, "{g} sigma={sigma}: {a} vs {b}");
        }
    }
}

#[test]
fn unitary_average_is_phi_hat_zero() {
    let f = TestFunctionPair::fejer(1.3).unwrap();
    assert!((predicted_average(SymmetryType::Unitary, &f) - f.phi_hat(0.0)).abs() < 1e-15);
}

#[test]
fn orthogonal_groups_agree_for_small_support() {
    // with support inside (-1, 1) the three orthogonal kernels give the same average
    let f = TestFunctionPair::fejer(0.9).unwrap();
    let o = predicted_average(SymmetryType::Orthogonal, &f);
    assert!((predicted_average(SymmetryType::SOEven, &f) - o).abs() < 1e-12);
    assert!((predicted_average(SymmetryType::SOOdd, &f) - o).abs() < 1e-12);
    let f = TestFunctionPair::fejer(1.5).unwrap();
    let e = predicted_average(SymmetryType::SOEven, &f);
    let d = predicted_average(SymmetryType::SOOdd, &f);
    assert!((e - d).abs() > 1e-3);
}

#[test]
fn classification() {
    assert_eq!(classify_symmetry(0.01).unwrap().group, SymmetryType::Unitary);
    assert_eq!(classify_symmetry(0.97).unwrap().group, SymmetryType::Symplectic);
    let o = classify_symmetry(-1.02).unwrap();
    assert_eq!(o.group, SymmetryType::Orthogonal);
    assert!(!o.flavor_determined);
    assert!(classify_symmetry(2.0).is_err());
    assert!(classify_symmetry(f64::NAN).is_err());
}

#[test]
fn group_names_roundtrip() {
    for g in SymmetryType::ALL {
        assert_eq!(g.to_string().parse::<SymmetryType>().unwrap(), g);
    }
    assert!("so(3)".parse::<SymmetryType>().is_err());
}

proptest! {
    #[test]
    fn phi_even_and_nonnegative(x in -50.0f64..50.0, sigma in 0.1f64..3.0) {
        let f = TestFunctionPair::fejer(sigma).unwrap();
        prop_assert!(f.phi(x) >= 0.0);
        prop_assert!((f.phi(x) - f.phi(-x)).abs() <= 1e-15 * f.phi(x).max(1.0));
        prop_assert!((f.phi_hat(x) - f.phi_hat(-x)).abs() == 0.0);
    }

    #[test]
    fn hat_mass_matches_simpson(a in 0.0f64..3.0, sigma in 0.1f64..3.0) {
        let f = TestFunctionPair::fejer(sigma).unwrap();
        let want = lowlying::quad::simpson(|u| f.phi_hat(u), -a, a, 20_000);
        prop_assert!((f.hat_mass(a) - want).abs() < 1e-6);
    }
}
