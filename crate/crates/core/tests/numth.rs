use lowlying::numth::*;
use proptest::prelude::*;

fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn sieve_agrees_with_trial_division() {
    let ps = primes_below(20_000);
    let want: Vec<u64> = (0..20_000).filter(|&n| trial_division_prime(n)).collect();
    assert_eq!(ps, want);
    assert_eq!(prime_count(1_000_000), 78_498);
    // segment boundaries
    let lo = (1 << 18) - 100;
    let hi = (1 << 18) + 100;
    let want: Vec<u64> = (lo..=hi).filter(|&n| trial_division_prime(n)).collect();
    assert_eq!(primes_in_range(lo, hi), want);
}

#[test]
fn prime_table_ranks() {
    let t = PrimeTable::with_count(7000);
    assert_eq!(t.nth(1), Some(2));
    assert_eq!(t.nth(1000), Some(7919));
    assert_eq!(t.nth(7000), Some(70657));
    assert_eq!(t.rank_window(6001, 7000).len(), 1000);
}

#[test]
fn large_primality() {
    assert!(is_prime(18_446_744_073_709_551_557));
    assert!(!is_prime(3_215_031_751));
    assert!(!is_prime(341_550_071_728_321));
}

#[test]
fn squarefree_errors_and_counts() {
    assert!(squarefree_enumerate(2, 10).is_err());
    assert!(squarefree_enumerate(10, 9).is_err());
    let v: Vec<u64> = squarefree_enumerate(3, 30).unwrap().iter().map(|f| f.m()).collect();
    assert_eq!(v, [3, 5, 7, 11, 13, 15, 17, 19, 21, 23, 29]);
    assert!(FactoredModulus::new(9).is_err());
    assert!(FactoredModulus::new(10).is_err());
    let f = FactoredModulus::new(105).unwrap();
    assert_eq!((f.r(), f.m1(), f.m2(), f.tau()), (3, 48, 15, 8));
}

#[test]
fn legendre_errors() {
    assert!(legendre_symbol(3, 9).is_err());
    assert!(legendre_symbol(3, 2).is_err());
    assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
    assert_eq!(legendre_symbol(14, 7).unwrap(), 0);
}

#[test]
fn cubic_roots() {
    // x^3 - x = x(x - 1)(x + 1)
    let p = IntPolynomial::new(vec![0, -1, 0, 1]);
    assert_eq!(cubic_root_count(&p, 7).unwrap(), 3);
    assert!(cubic_root_count(&IntPolynomial::new(vec![1, 0, 0, 0, 1]), 7).is_err());
}

proptest! {
    #[test]
    fn jacobi_matches_euler(a in -10_000i64..10_000, k in 0usize..300) {
        let ps = primes_in_range(3, 2000);
        let p = ps[k % ps.len()];
        prop_assert_eq!(jacobi_symbol(a, p), legendre_euler(a, p));
    }

    #[test]
    fn jacobi_multiplicative(a in -5000i64..5000, m in 1u64..500, n in 1u64..500) {
        let (m, n) = (2 * m + 1, 2 * n + 1);
        prop_assert_eq!(jacobi_symbol(a, m * n), jacobi_symbol(a, m) * jacobi_symbol(a, n));
    }

    #[test]
    fn pow_mod_matches_naive(b in 0u64..1000, e in 0u64..40, m in 2u64..10_000) {
        let mut want = 1 % m;
        for _ in 0..e { want = want * b % m; }
        prop_assert_eq!(pow_mod(b, e, m), want);
    }

    #[test]
    fn inverse_is_inverse(a in 1u64..100_000, m in 2u64..100_000) {
        match inv_mod(a, m) {
            Some(i) => prop_assert_eq!(mul_mod(a, i, m), 1 % m),
            None => prop_assert!(gcd(a, m) > 1),
        }
    }

    #[test]
    fn factored_modulus_roundtrip(lo in 3u64..5000) {
        for f in squarefree_enumerate(lo, lo + 50).unwrap() {
            prop_assert_eq!(f.factors().iter().product::<u64>(), f.m());
            prop_assert_eq!(f.m1(), euler_phi(f.m()));
            prop_assert!(mobius(f.m()) != 0);
        }
    }

    #[test]
    fn poly_eval_mod(c in prop::collection::vec(-1000i64..1000, 0..5), x in 0u64..97) {
        let poly = IntPolynomial::new(c.clone());
        let want = c.iter().rev().fold(0i64, |acc, &k| (acc * x as i64 + k).rem_euclid(97));
        prop_assert_eq!(poly.eval_mod(x, 97) as i64, want);
    }
}
