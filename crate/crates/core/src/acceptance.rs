//! The acceptance checks, shared by the test suite and `mgbar selftest`.
//! Every comparison is exact.

use num::Zero;

use crate::arith::{format_rational, int, is_integer, parse_rational, Rational};
use crate::divisor::{divisor_monomials, enumerate_classes, ClassMonomial, DivClass, Factor, Space};
use crate::engine::Engine;
use crate::expr::parse;
use crate::hodge::LambdaMonomial;
use crate::taut::{
    conjecture1_coefficient, conjecture2_coefficient, integrate_via_class, TautRing,
};

pub type Check = fn(&Engine) -> Result<(), String>;

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub check: Check,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "tau base cases, string and dilaton", check: tau_suite },
        Criterion { id: 2, title: "M(3,0) divisor table (28 monomials)", check: genus3_table },
        Criterion { id: 3, title: "M(4,0) divisor table, d_irr^9, la1^9", check: genus4 },
        Criterion { id: 4, title: "M(5,0) d_irr^12, la1^12", check: genus5 },
        Criterion { id: 5, title: "M(6,0) lambda values, vanishing, d_irr^15", check: genus6 },
        Criterion { id: 6, title: "M(7,0) la1^18", check: genus7 },
        Criterion { id: 7, title: "Jacobian classes g=4..7", check: jacobians },
        Criterion { id: 8, title: "conjectural coefficient formulas", check: conjectures },
        Criterion { id: 9, title: "property suites", check: properties },
        Criterion { id: 10, title: "full divisor tables on M(5,0) and M(6,0)", check: full_tables },
    ]
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal rational")
}

fn expect(label: &str, got: &Rational, want: &Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {}, expected {}", format_rational(got), format_rational(want)))
    }
}

fn eval(e: &Engine, text: &str) -> Result<Rational, String> {
    let x = parse(text).map_err(|err| format!("{text}: {err}"))?;
    Ok(e.evaluate(x.monomial()))
}

fn lambda(e: &Engine, g: u32, idx: &[u32]) -> Result<Rational, String> {
    let m = LambdaMonomial::from_indices(g, idx).map_err(|x| x.to_string())?;
    e.lambda_number(&m).map_err(|x| x.to_string())
}

fn check_value(e: &Engine, text: &str, want: &str) -> Result<(), String> {
    expect(text, &eval(e, text)?, &q(want))
}

/// Descending exponent vectors of length `n` summing to `total`.
fn exponent_vectors(total: u32, n: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in (0..=max.min(left)).rev() {
            cur.push(x);
            rec(left - x, slots - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, n, total, &mut Vec::new(), &mut out);
    out
}

fn tau_suite(e: &Engine) -> Result<(), String> {
    let t = |g: u32, d: &[u32]| e.tau(g, d);
    expect("<t0^3>_0", &t(0, &[0, 0, 0]), &int(1))?;
    expect("<t1>_1", &t(1, &[1]), &q("1/24"))?;
    let mut checked = 0;
    for g in 0..=3u32 {
        for n in 1..=15u32 {
            if 2 * g + n <= 2 || 3 * g + n > 15 {
                continue;
            }
            let dim = 3 * g + n - 3;
            for d in exponent_vectors(dim, n) {
                let value = t(g, &d);
                let smaller_stable = 2 * g + n - 1 > 2;
                if !smaller_stable {
                    continue;
                }
                if d.last() == Some(&0) {
                    let rest = &d[..d.len() - 1];
                    let mut sum = Rational::zero();
                    for j in 0..rest.len() {
                        if rest[j] > 0 {
                            let mut r = rest.to_vec();
                            r[j] -= 1;
                            sum += t(g, &r);
                        }
                    }
                    expect(&format!("string at g={g} d={d:?}"), &value, &sum)?;
                    checked += 1;
                }
                if let Some(pos) = d.iter().position(|&x| x == 1) {
                    let mut rest = d.clone();
                    rest.remove(pos);
                    let want = int(2 * g as i64 - 2 + n as i64 - 1) * t(g, &rest);
                    expect(&format!("dilaton at g={g} d={d:?}"), &value, &want)?;
                    checked += 1;
                }
            }
        }
    }
    if checked == 0 {
        return Err("no string or dilaton instances checked".into());
    }
    Ok(())
}

fn genus3_table(e: &Engine) -> Result<(), String> {
    let s = Space { g: 3, n: 0 };
    let ms = divisor_monomials(s, 6);
    if ms.len() != 28 {
        return Err(format!("expected 28 monomials, found {}", ms.len()));
    }
    for m in &ms {
        e.evaluate(m);
    }
    let kappa = e.kappa_psi(3, &[], &[1; 6]);
    expect("ka1^6 via kappa reduction", &eval(e, "M(3,0): ka1^6")?, &kappa)
}

fn genus4(e: &Engine) -> Result<(), String> {
    let ms = divisor_monomials(Space { g: 4, n: 0 }, 9);
    if ms.len() != 220 {
        return Err(format!("expected 220 monomials, found {}", ms.len()));
    }
    for m in &ms {
        e.evaluate(m);
    }
    check_value(e, "M(4,0): d_irr^9", "-251987683/4320")?;
    expect("la1^9", &lambda(e, 4, &[1; 9])?, &q("1/113400"))
}

fn genus5(e: &Engine) -> Result<(), String> {
    check_value(e, "M(5,0): d_irr^12", "-1766321028967/6048")?;
    expect("la1^12", &lambda(e, 5, &[1; 12])?, &q("31/680400"))
}

fn genus6(e: &Engine) -> Result<(), String> {
    expect("la1^15", &lambda(e, 6, &[1; 15])?, &q("431/481140"))?;
    expect("la2la3la4la6", &lambda(e, 6, &[2, 3, 4, 6])?, &q("1697/2988969984000"))?;
    expect("la1la2la3la4la5", &lambda(e, 6, &[1, 2, 3, 4, 5])?, &q("150719/15692092416000"))?;
    check_value(e, "M(6,0): la1^13 * d_irr * ka1", "0")?;
    check_value(e, "M(6,0): la1^13 * d_irr^2", "0")?;
    check_value(e, "M(6,0): la1^15", "431/481140")?;
    check_value(e, "M(6,0): d_irr^15", "-32467988437272065977/7257600")
}

fn genus7(e: &Engine) -> Result<(), String> {
    let want = q("32017001/638512875");
    let ring = TautRing::new(7).map_err(|x| x.to_string())?;
    let class = e.jacobian_class(7).map_err(|x| x.to_string())?;
    let m = LambdaMonomial::new(7, vec![18]).map_err(|x| x.to_string())?;
    let via = integrate_via_class(&ring, &class, &m).map_err(|x| x.to_string())?;
    expect("la1^18 from the Jacobian class", &via, &want)?;
    expect("la1^18 directly", &lambda(e, 7, &[1; 18])?, &want)
}

fn jacobians(e: &Engine) -> Result<(), String> {
    let want = [
        "8 * la1",
        "72 * la1la2 + -48 * la3",
        "384 * la1la2la3 + 474048/691 * la1la5 + -1152 * la2la4 + -248064/691 * la6",
        "768 * la1la2la3la4 + -3276672/691 * la1la2la7 + 7522176/691 * la1la3la6 \
         + 2209152/691 * la1la4la5 + -6912 * la2la3la5 + 968832/691 * la3la7 \
         + -8842752/691 * la4la6",
    ];
    let mut six = None;
    for (g, w) in (4..=7).zip(want) {
        let c = e.jacobian_class(g).map_err(|x| x.to_string())?;
        if c.to_string() != w {
            return Err(format!("got '{c}', expected '{w}'"));
        }
        if g == 6 {
            six = Some(c);
        }
    }
    let six = six.expect("genus 6 computed");
    let c6 = six.coefficient(&[6]).cloned().unwrap_or_default();
    let c15 = six.coefficient(&[1, 5]).cloned().unwrap_or_default();
    expect("C6 + 16 C15", &(&c6 + int(16) * &c15), &q("7336704/691"))?;
    expect("15 C6 + 28 C15", &(int(15) * &c6 + int(28) * &c15), &int(13824))
}

fn conjectures(_: &Engine) -> Result<(), String> {
    let c1 = |g| conjecture1_coefficient(g).map_err(|x| x.to_string());
    let c2 = |g| conjecture2_coefficient(g).map_err(|x| x.to_string());
    for (g, w) in (3..=7).zip([1, 8, 72, 384, 768]) {
        expect(&format!("first formula at g={g}"), &c1(g)?, &int(w))?;
    }
    for (g, w) in (5..=7).zip([-48, -1152, -6912]) {
        expect(&format!("second formula at g={g}"), &c2(g)?, &int(w))?;
    }
    for g in 8..=12 {
        if is_integer(&c1(g)?) || is_integer(&c2(g)?) {
            return Err(format!("formula value at g={g} is an integer"));
        }
    }
    Ok(())
}

fn boundary(space: Space) -> Vec<Factor> {
    enumerate_classes(space)
        .into_iter()
        .filter(|c| matches!(c, DivClass::DeltaIrr | DivClass::DeltaRed(_)))
        .map(Factor::from)
        .collect()
}

fn order_independence(e: &Engine, space: Space) -> Result<(), String> {
    let bs = boundary(space);
    for m in divisor_monomials(space, space.dim()) {
        let present: Vec<Factor> =
            bs.iter().copied().filter(|b| m.factors().iter().any(|(f, _)| f == b)).collect();
        if present.len() < 2 {
            continue;
        }
        let first = e.evaluate_via(&m, present[0]).expect("factor present");
        for b in &present[1..] {
            let other = e.evaluate_via(&m, *b).expect("factor present");
            expect(&format!("{space}: {m} restricted in two orders"), &other, &first)?;
        }
    }
    Ok(())
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n);
            out.push(q);
        }
    }
    out
}

fn relabel_symmetry(e: &Engine, space: Space) -> Result<(), String> {
    let perms = permutations(space.n);
    for m in divisor_monomials(space, space.dim()) {
        if !m.has_boundary() {
            continue;
        }
        let base = e.evaluate(&m);
        for p in &perms {
            let r = m.relabel(p);
            let first = r
                .factors()
                .into_iter()
                .map(|(f, _)| f)
                .find(|f| matches!(f, Factor::DeltaIrr | Factor::DeltaRed(_)))
                .expect("relabelled boundary factor");
            let v = e.evaluate_via(&r, first).expect("factor present");
            expect(&format!("{space}: {m} relabelled by {p:?}"), &v, &base)?;
        }
    }
    Ok(())
}

fn times(m: &ClassMonomial, f: Factor) -> ClassMonomial {
    m.clone().with(f, 1).expect("class valid on its own space")
}

/// `kappa_1 = 12 lambda_1 - delta + psi` against every cofactor of the
/// complementary degree in the divisor classes.
fn fundamental_identity(e: &Engine, space: Space) -> Result<(), String> {
    let bs = boundary(space);
    for x in divisor_monomials(space, space.dim() - 1) {
        let lhs = e.evaluate(&times(&x, Factor::Kappa(1)));
        let mut rhs = int(12) * e.evaluate(&times(&x, Factor::Lambda(1)));
        for b in &bs {
            rhs -= e.evaluate(&times(&x, *b));
        }
        for i in 1..=space.n {
            rhs += e.evaluate(&times(&x, Factor::Psi(i)));
        }
        expect(&format!("{space}: identity against {x}"), &lhs, &rhs)?;
    }
    Ok(())
}

fn properties(e: &Engine) -> Result<(), String> {
    let sp = |g, n| Space { g, n };
    for s in [sp(3, 0), sp(2, 1), sp(1, 3), sp(0, 6)] {
        order_independence(e, s)?;
    }
    for s in [sp(1, 3), sp(0, 5), sp(2, 2)] {
        relabel_symmetry(e, s)?;
    }
    for s in [sp(2, 0), sp(3, 0), sp(1, 2), sp(2, 1)] {
        fundamental_identity(e, s)?;
    }
    check_value(e, "M(1,1): d_irr", "1/2")?;
    for text in [
        "M(2,1): la2 * la1 * d_irr",
        "M(2,1): la2 * la1 * d1_{1}",
        "M(3,0): la3 * la2 * d_irr",
        "M(3,0): la3 * la2 * d1",
        "M(3,1): la3 * la2 * d1_{1} * psi1",
        "M(3,1): la3 * la2 * d_irr * ka1",
        "M(3,1): la3 * la2 * d2_{1} * d_irr",
    ] {
        check_value(e, text, "0")?;
    }
    let l345 = lambda(e, 5, &[3, 4, 5])?;
    let l1245 = lambda(e, 5, &[1, 2, 4, 5])?;
    expect("10 la3la4la5 vs 3 la1la2la4la5", &(int(10) * l345), &(int(3) * l1245))?;
    let cube = lambda(e, 4, &[3, 3, 3])?;
    expect("la3^3 vs 2 la2la3la4", &cube, &(int(2) * lambda(e, 4, &[2, 3, 4])?))?;
    // la1 = (ka1 + d_irr + d1 + d2)/12 on M(4,0), summed over the 220 monomials
    let s = sp(4, 0);
    let classes = enumerate_classes(s);
    let mut total = Rational::zero();
    for m in divisor_monomials(s, 9) {
        let mut coeff = Rational::from_integer(crate::arith::factorial(9));
        for c in &classes {
            let f = Factor::from(*c);
            let ex = m.factors().iter().find(|(g, _)| *g == f).map_or(0, |x| x.1);
            coeff /= Rational::from_integer(crate::arith::factorial(ex));
        }
        total += coeff * e.evaluate(&m);
    }
    total /= Rational::from_integer(num::BigInt::from(12).pow(9));
    expect("la1^9 through divisors", &total, &lambda(e, 4, &[1; 9])?)
}

fn full_tables(e: &Engine) -> Result<(), String> {
    for (g, count) in [(5u32, 455usize), (6, 3876)] {
        let s = Space { g, n: 0 };
        let ms = divisor_monomials(s, s.dim());
        if ms.len() != count {
            return Err(format!("{s}: expected {count} monomials, found {}", ms.len()));
        }
        for m in &ms {
            e.evaluate(m);
        }
    }
    fundamental_identity(e, Space { g: 5, n: 0 })
}

/// Runs every criterion and returns `(id, title, outcome)` in order.
pub fn run_all(e: &Engine) -> Vec<(u32, &'static str, Result<(), String>)> {
    criteria().into_iter().map(|c| (c.id, c.title, (c.check)(e))).collect()
}
