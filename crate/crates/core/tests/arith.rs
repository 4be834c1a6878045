use mgbar_core::arith::{bernoulli, binomial, double_factorial, factorial, format_rational, parse_rational};
use mgbar_core::Rational;
use num::{BigInt, One, Zero};
use proptest::prelude::*;

/// Akiyama-Tanigawa algorithm; gives B_1 = +1/2, which does not matter for
/// the even indices compared here.
fn akiyama_tanigawa(n: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = Rational::from_integer(BigInt::from(j)) * diff;
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_matches_second_algorithm() {
    for k in (2..=30).step_by(2) {
        assert_eq!(bernoulli(k).unwrap(), akiyama_tanigawa(k as usize), "B_{k}");
    }
}

#[test]
fn bernoulli_convention_and_errors() {
    assert_eq!(format_rational(&bernoulli(2).unwrap()), "1/6");
    assert_eq!(format_rational(&bernoulli(4).unwrap()), "-1/30");
    assert_eq!(format_rational(&bernoulli(6).unwrap()), "1/42");
    assert!(bernoulli(0).is_err());
    assert!(bernoulli(3).is_err());
}

#[test]
fn double_factorials() {
    assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
    assert_eq!(double_factorial(0).unwrap(), BigInt::one());
    assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
    assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
    assert!(double_factorial(-2).is_err());
    assert_eq!(factorial(5), BigInt::from(120));
    assert_eq!(binomial(10, 3), BigInt::from(120));
}

#[test]
fn formatting_is_always_a_fraction() {
    assert_eq!(format_rational(&Rational::from_integer(BigInt::from(-7))), "-7/1");
    assert_eq!(format_rational(&Rational::zero()), "0/1");
    assert_eq!(parse_rational("6/-4"), Some(Rational::new(BigInt::from(-3), BigInt::from(2))));
    assert_eq!(parse_rational("1/0"), None);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn add_then_subtract(a in small_rational(), b in small_rational()) {
        prop_assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn multiply_then_divide(a in small_rational(), b in small_rational()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b) / &b, a);
    }

    #[test]
    fn lowest_terms_and_round_trip(a in small_rational()) {
        prop_assert!(a.denom() > &BigInt::zero());
        prop_assert!(num::Integer::gcd(a.numer(), a.denom()).is_one());
        prop_assert_eq!(parse_rational(&format_rational(&a)), Some(a));
    }
}
