use mgbar_core::hodge::lambda_to_ch;
use mgbar_core::{bernoulli, parse, ChQuery, Engine, LambdaMonomial, Rational};
use num::{Signed, Zero};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn lam(e: &Engine, g: u32, idx: &[u32]) -> Rational {
    e.lambda_number(&LambdaMonomial::from_indices(g, idx).unwrap()).unwrap()
}

#[test]
fn newton_identities() {
    assert_eq!(lambda_to_ch(&[1], 3), vec![(r(1, 1), vec![1])]);
    assert_eq!(lambda_to_ch(&[0, 1], 3), vec![(r(1, 2), vec![1, 1])]);
    assert_eq!(lambda_to_ch(&[1, 1], 3), vec![(r(1, 2), vec![1, 1, 1])]);
    assert!(lambda_to_ch(&[1, 1], 2).is_empty());
}

#[test]
fn genus_one_base() {
    let e = Engine::new();
    assert_eq!(e.ch_number(&ChQuery::new(1, vec![0], vec![], vec![1]).unwrap()), r(1, 24));
    assert_eq!(lam(&e, 1, &[1]), r(1, 24));
    assert!(ChQuery::new(2, vec![], vec![], vec![2]).is_err());
    assert!(ChQuery::new(1, vec![], vec![], vec![1]).is_err());
}

#[test]
fn ch3_in_genus_two_from_lambdas() {
    // p_3 = e_1^3 - 3 e_1 e_2 + 3 e_3 and ch_3 = p_3 / 3!, with lambda_3 = 0
    let e = Engine::new();
    let via_lambda = (lam(&e, 2, &[1, 1, 1]) - r(3, 1) * lam(&e, 2, &[1, 2])) / r(6, 1);
    let direct = e.ch_number(&ChQuery::new(2, vec![], vec![], vec![3]).unwrap());
    assert_eq!(direct, via_lambda);
    assert_eq!(lam(&e, 2, &[1, 2]), r(1, 5760));
}

#[test]
fn lambda_g_with_psi_powers() {
    // int_{M(g,1)} psi^{2g-2} lambda_g = (2^{2g-1} - 1) |B_{2g}| / (2^{2g-1} (2g)!)
    let e = Engine::new();
    for g in 1..=5u32 {
        let text = if g == 1 { "M(1,1): la1".to_string() } else { format!("M({g},1): psi1^{} * la{g}", 2 * g - 2) };
        let got = e.evaluate(parse(&text).unwrap().monomial());
        let p = Rational::from_integer(num::BigInt::from(2).pow(2 * g - 1));
        let mut fact = Rational::from_integer(1.into());
        for i in 1..=2 * g {
            fact *= r(i as i64, 1);
        }
        let want = (&p - r(1, 1)) * bernoulli(2 * g).unwrap().abs() / (p * fact);
        assert_eq!(got, want, "g={g}");
    }
}

#[test]
fn mumford_relations() {
    let e = Engine::new();
    assert!(lam(&e, 3, &[3, 3]).is_zero());
    assert!(lam(&e, 4, &[4, 4, 1]).is_zero());
    assert_eq!(lam(&e, 3, &[2, 2, 2]), r(2, 1) * lam(&e, 3, &[1, 2, 3]));
    assert_eq!(lam(&e, 4, &[3, 3, 3]), r(2, 1) * lam(&e, 4, &[2, 3, 4]));
    assert_eq!(r(10, 1) * lam(&e, 5, &[3, 4, 5]), r(3, 1) * lam(&e, 5, &[1, 2, 4, 5]));
}

#[test]
fn lambda_numbers_from_tables() {
    let e = Engine::new();
    assert_eq!(lam(&e, 4, &[1; 9]), r(1, 113400));
    assert_eq!(lam(&e, 5, &[1; 12]), r(31, 680400));
    assert_eq!(lam(&e, 6, &[1; 15]), r(431, 481140));
    assert!(lam(&e, 4, &[1; 8]).is_zero());
    assert!(e.lambda_number(&LambdaMonomial::new(0, vec![]).unwrap()).is_err());
}

#[test]
fn mixed_lambda_boundary_agrees_with_kappa_substitution() {
    // lambda_1 = (kappa_1 + delta)/12 on M(3)
    let e = Engine::new();
    let ev = |t: &str| e.evaluate(parse(t).unwrap().monomial());
    let lhs = ev("M(3,0): la1 * d_irr^3 * d1^2");
    let rhs = (ev("M(3,0): ka1 * d_irr^3 * d1^2") + ev("M(3,0): d_irr^4 * d1^2") + ev("M(3,0): d_irr^3 * d1^3")) / r(12, 1);
    assert_eq!(lhs, rhs);
}
