use mgbar_core::taut::{
    all_monomials, conjecture1_coefficient, conjecture2_coefficient, integrate_via_class,
    jacobian_codim, proportionality_value, solve, square_free, TautRing,
};
use mgbar_core::{Engine, Error, LambdaMonomial, Rational};
use num::{One, Zero};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// The top-degree functional found as the unique solution of the linear
/// system "vanish on every relation multiple, fixed on lambda_1...lambda_g".
fn functional_by_linear_algebra(g: u32) -> Vec<(Vec<u32>, Rational)> {
    let top = g * (g + 1) / 2;
    let monos = all_monomials(g, top);
    let index = |e: &[u32]| monos.iter().position(|m| m == e);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in 1..=g {
        // sum_{a+b=2k} (-1)^a lambda_a lambda_b, lambda_0 = 1
        let mut rel: Vec<(Rational, Vec<u32>)> = Vec::new();
        for a in 0..=2 * k {
            let b = 2 * k - a;
            if a > g || b > g {
                continue;
            }
            let mut e = vec![0; g as usize];
            if a > 0 {
                e[a as usize - 1] += 1;
            }
            if b > 0 {
                e[b as usize - 1] += 1;
            }
            let s = if a % 2 == 0 { Rational::one() } else { -Rational::one() };
            rel.push((s, e));
        }
        if 2 * k > top {
            continue;
        }
        for m in all_monomials(g, top - 2 * k) {
            let mut row = vec![Rational::zero(); monos.len()];
            for (c, e) in &rel {
                let t: Vec<u32> = e.iter().zip(&m).map(|(x, y)| x + y).collect();
                row[index(&t).unwrap()] += c;
            }
            rows.push(row);
        }
    }
    // reduce to echelon form, then read the functional off the free column
    let cols = monos.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = Rational::one() / &rows[rank][c];
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let v = &f * &rows[rank][j];
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    assert_eq!(rank, cols - 1, "top degree must be one-dimensional");
    let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
    let mut phi = vec![Rational::zero(); cols];
    phi[free] = Rational::one();
    for (i, &c) in pivots.iter().enumerate() {
        phi[c] = -rows[i][free].clone();
    }
    let socle = index(&vec![1; g as usize]).unwrap();
    let scale = proportionality_value(g).unwrap() / &phi[socle];
    monos.into_iter().zip(phi).map(|(m, v)| (m, v * &scale)).collect()
}

#[test]
fn square_rewrite_matches_linear_algebra() {
    for g in 1..=6 {
        let ring = TautRing::new(g).unwrap();
        for (m, v) in functional_by_linear_algebra(g) {
            assert_eq!(ring.evaluate_top(&m).unwrap(), v, "g={g} {m:?}");
        }
    }
}

#[test]
fn proportionality_values() {
    assert_eq!(proportionality_value(1).unwrap(), r(1, 24));
    assert_eq!(proportionality_value(2).unwrap(), r(1, 5760));
    let four = proportionality_value(4).unwrap();
    assert_eq!(four, r(1, 24) * r(1, 240) * r(1, 504) * r(1, 480));
    assert!(proportionality_value(0).is_err());
}

#[test]
fn top_degree_values() {
    let ring = TautRing::new(4).unwrap();
    assert_eq!(ring.evaluate_top(&[10]).unwrap(), r(1, 1814400));
    assert_eq!(ring.evaluate_top(&[1, 1, 1, 1]).unwrap(), proportionality_value(4).unwrap());
    assert!(ring.evaluate_top(&[9]).is_err());
    // lambda_g^2 at the top degree of genus 3 reduces to zero
    let ring = TautRing::new(3).unwrap();
    assert!(ring.evaluate_top(&[0, 0, 2]).unwrap().is_zero());
}

#[test]
fn basis_sizes_and_order() {
    let sizes: Vec<usize> = (4..=7).map(|g| square_free(g, jacobian_codim(g)).len()).collect();
    assert_eq!(sizes, vec![1, 2, 4, 7]);
    assert_eq!(square_free(5, 3), vec![vec![1, 2], vec![3]]);
}

#[test]
fn pairing_matrices_are_nonsingular() {
    for g in 5..=6 {
        let ring = TautRing::new(g).unwrap();
        let basis = square_free(g, jacobian_codim(g));
        let tests = mgbar_core::taut::default_test_monomials(&ring).unwrap();
        let a: Vec<Vec<Rational>> =
            tests.iter().map(|m| basis.iter().map(|b| ring.pair(b, m).unwrap()).collect()).collect();
        let rhs = vec![Rational::one(); basis.len()];
        assert!(solve(a, rhs).is_ok());
    }
    let ring = TautRing::new(4).unwrap();
    let m = LambdaMonomial::new(4, vec![9]).unwrap();
    assert_eq!(ring.pair(&[1], &m).unwrap(), ring.evaluate_top(&[10]).unwrap());
}

#[test]
fn jacobian_classes() {
    let e = Engine::new();
    assert_eq!(e.jacobian_class(4).unwrap().to_string(), "8 * la1");
    assert_eq!(e.jacobian_class(5).unwrap().to_string(), "72 * la1la2 + -48 * la3");
    assert!(matches!(e.jacobian_class(2), Err(Error::InvalidArgument(_))));
}

#[test]
fn jacobian_class_does_not_depend_on_test_monomials() {
    let e = Engine::new();
    for g in 5..=6u32 {
        let ring = TautRing::new(g).unwrap();
        let default = e.jacobian_class(g).unwrap();
        let k = default.basis.len();
        // take the powers-first ordering instead and keep any independent set
        let mut picked: Vec<LambdaMonomial> = Vec::new();
        let mut candidates = all_monomials(g, 3 * g - 3);
        candidates.reverse();
        for c in candidates {
            if picked.len() == k {
                break;
            }
            let mut trial = picked.clone();
            trial.push(LambdaMonomial::new(g, c).unwrap());
            let basis = &default.basis;
            let rows: Vec<Vec<Rational>> = trial
                .iter()
                .map(|m| basis.iter().map(|b| ring.pair(b, m).unwrap()).collect())
                .collect();
            // independent iff the square system restricted to the leading
            // columns stays solvable
            let n = rows.len();
            let square: Vec<Vec<Rational>> = rows.iter().map(|r| r[..n].to_vec()).collect();
            if solve(square, vec![Rational::one(); n]).is_ok() {
                picked = trial;
            }
        }
        assert_eq!(picked.len(), k);
        let other = e.jacobian_class_with(&ring, &picked).unwrap();
        assert_eq!(other, default, "g={g}");
    }
}

#[test]
fn class_recovers_hard_lambda_numbers() {
    let e = Engine::new();
    for g in 4..=6u32 {
        let ring = TautRing::new(g).unwrap();
        let class = e.jacobian_class(g).unwrap();
        let m = LambdaMonomial::new(g, vec![3 * g - 3]).unwrap();
        assert_eq!(integrate_via_class(&ring, &class, &m).unwrap(), e.lambda_number(&m).unwrap());
    }
}

#[test]
fn conjectures_match_computed_classes() {
    let e = Engine::new();
    for g in 4..=7u32 {
        let class = e.jacobian_class(g).unwrap();
        let first: Vec<u32> = (1..=g - 3).collect();
        assert_eq!(class.coefficient(&first), Some(&conjecture1_coefficient(g).unwrap()));
    }
    assert_eq!(e.jacobian_class(6).unwrap().coefficient(&[2, 4]), Some(&conjecture2_coefficient(6).unwrap()));
    assert_eq!(e.jacobian_class(7).unwrap().coefficient(&[2, 3, 5]), Some(&conjecture2_coefficient(7).unwrap()));
    assert_eq!(conjecture1_coefficient(3).unwrap(), r(1, 1));
    assert!(conjecture2_coefficient(4).is_err());
}
