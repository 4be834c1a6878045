//! The lambda ring of the moduli of principally polarized abelian varieties:
//! `Q[lambda_1..lambda_g]` modulo the vanishing of the even Chern characters
//! of the Hodge bundle, with top degree evaluated by proportionality.

use std::collections::HashMap;
use std::fmt;

use num::{One, Signed, Zero};
use parking_lot::RwLock;

use crate::arith::{bernoulli, format_rational, int, is_integer, Rational};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::hodge::LambdaMonomial;

/// `prod_{i=1}^g |B_{2i}| / (4i)`, the degree of `lambda_1 ... lambda_g`.
pub fn proportionality_value(g: u32) -> Result<Rational> {
    if g < 1 {
        return Err(Error::invalid("proportionality needs g >= 1"));
    }
    let mut acc = Rational::one();
    for i in 1..=g {
        acc *= bernoulli(2 * i)?.abs() / int(4 * i as i64);
    }
    Ok(acc)
}

fn top_degree(g: u32) -> u32 {
    g * (g + 1) / 2
}

fn weighted(e: &[u32]) -> u32 {
    e.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum()
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

/// Square-free monomials of weighted degree `d` in `lambda_1..lambda_g`, as
/// ascending index lists in lexicographic order.
pub fn square_free(g: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, g: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..=g.min(left) {
            cur.push(j);
            rec(j + 1, g, left - j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, g, d, &mut Vec::new(), &mut out);
    out
}

/// All monomials of weighted degree `d`, as exponent vectors of length `g`.
pub fn all_monomials(g: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(j: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left / j).rev() {
            cur[j as usize - 1] = e;
            rec(j - 1, left - e * j, cur, out);
        }
        cur[j as usize - 1] = 0;
    }
    let mut out = Vec::new();
    rec(g, d, &mut vec![0; g as usize], &mut out);
    out
}

fn indices_to_exps(g: u32, idx: &[u32]) -> Vec<u32> {
    let mut e = vec![0; g as usize];
    for &j in idx {
        e[j as usize - 1] += 1;
    }
    e
}

/// Evaluation data for one genus. Top-degree values are memoized and the
/// ring may be shared between threads.
pub struct TautRing {
    g: u32,
    top: Rational,
    memo: RwLock<HashMap<Vec<u32>, Rational>>,
}

impl TautRing {
    pub fn new(g: u32) -> Result<Self> {
        let top = proportionality_value(g)?;
        Ok(TautRing { g, top, memo: RwLock::new(HashMap::new()) })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Integral over the compactified moduli space of the monomial with
    /// exponent vector `e` (`e[0]` is the exponent of `lambda_1`).
    pub fn evaluate_top(&self, e: &[u32]) -> Result<Rational> {
        if e.len() > self.g as usize && e[self.g as usize..].iter().any(|&x| x > 0) {
            return Ok(Rational::zero());
        }
        let d = weighted(e);
        if d != top_degree(self.g) {
            return Err(Error::invalid(format!(
                "degree {d} is not the top degree {} in genus {}",
                top_degree(self.g),
                self.g
            )));
        }
        Ok(self.reduce(trim(e.to_vec())) * &self.top)
    }

    /// Coefficient of `lambda_1 ... lambda_g` in the reduction of `e`, using
    /// `lambda_k^2 = 2 sum_{a<k} (-1)^{k+a+1} lambda_a lambda_{2k-a}` until the
    /// monomial is square-free.
    fn reduce(&self, e: Vec<u32>) -> Rational {
        let g = self.g as usize;
        if e.len() > g {
            return Rational::zero();
        }
        let Some(k) = e.iter().position(|&x| x >= 2) else {
            return if e.len() == g && e.iter().all(|&x| x == 1) {
                Rational::one()
            } else {
                Rational::zero()
            };
        };
        if let Some(v) = self.memo.read().get(&e) {
            return v.clone();
        }
        let k1 = k as u32 + 1;
        let mut acc = Rational::zero();
        for a in 0..k1 {
            let b = 2 * k1 - a;
            if b as usize > g {
                continue;
            }
            let mut t = e.clone();
            t[k] -= 2;
            if a > 0 {
                t[a as usize - 1] += 1;
            }
            if t.len() < b as usize {
                t.resize(b as usize, 0);
            }
            t[b as usize - 1] += 1;
            let sign = if (k1 + a + 1).is_multiple_of(2) { 2 } else { -2 };
            acc += int(sign) * self.reduce(trim(t));
        }
        self.memo.write().insert(e, acc.clone());
        acc
    }

    /// `evaluate_top` of the product of a basis monomial (index list) with a
    /// lambda monomial of complementary degree.
    pub fn pair(&self, basis: &[u32], other: &LambdaMonomial) -> Result<Rational> {
        let mut e = indices_to_exps(self.g, basis);
        for (i, &x) in other.exponents().iter().enumerate() {
            e[i] += x;
        }
        self.evaluate_top(&e)
    }
}

/// An element of the lambda ring written over the square-free basis of its
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub g: u32,
    pub degree: u32,
    pub basis: Vec<Vec<u32>>,
    pub coeffs: Vec<Rational>,
}

impl RingElement {
    pub fn coefficient(&self, indices: &[u32]) -> Option<&Rational> {
        self.basis.iter().position(|b| b == indices).map(|i| &self.coeffs[i])
    }
}

fn format_coeff(c: &Rational) -> String {
    if is_integer(c) {
        c.numer().to_string()
    } else {
        format_rational(c)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .basis
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| {
                if b.is_empty() {
                    return format_coeff(c);
                }
                let m: String = b.iter().map(|j| format!("la{j}")).collect();
                format!("{} * {m}", format_coeff(c))
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Exact Gaussian elimination; `Singular` when the matrix is not invertible.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col} of {n}")))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Codimension of the Jacobian locus in the moduli of abelian varieties.
pub fn jacobian_codim(g: u32) -> u32 {
    (g - 2) * (g - 3) / 2
}

/// Default test monomials for the Jacobian solve: square-free ones of degree
/// `3g - 3` first, then the rest by number of distinct factors, keeping only
/// those that add a new row to the pairing matrix.
pub fn default_test_monomials(ring: &TautRing) -> Result<Vec<LambdaMonomial>> {
    let g = ring.g;
    let basis = square_free(g, jacobian_codim(g));
    let mut candidates: Vec<Vec<u32>> =
        square_free(g, 3 * g - 3).into_iter().map(|idx| indices_to_exps(g, &idx)).collect();
    let mut rest: Vec<Vec<u32>> = all_monomials(g, 3 * g - 3)
        .into_iter()
        .filter(|e| e.iter().any(|&x| x >= 2))
        .collect();
    rest.sort_by_key(|e| (e.iter().filter(|&&x| x > 0).count(), std::cmp::Reverse(e.clone())));
    candidates.extend(rest);
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in candidates {
        if chosen.len() == basis.len() {
            break;
        }
        let m = LambdaMonomial::new(g, e)?;
        let row: Vec<Rational> = basis.iter().map(|b| ring.pair(b, &m)).collect::<Result<_>>()?;
        rows.push(row);
        if rank(&rows) == rows.len() {
            chosen.push(m);
        } else {
            rows.pop();
        }
    }
    if chosen.len() < basis.len() {
        return Err(Error::Singular(format!("pairing in genus {g} is degenerate")));
    }
    Ok(chosen)
}

impl Engine {
    /// The projection of `[J_g] = t_* 1 / 2` to the lambda ring, over the
    /// square-free basis of degree `(g-2)(g-3)/2`.
    pub fn jacobian_class(&self, g: u32) -> Result<RingElement> {
        if g < 3 {
            return Err(Error::invalid(format!("jacobian class needs g >= 3, got {g}")));
        }
        let ring = TautRing::new(g)?;
        let tests = default_test_monomials(&ring)?;
        self.jacobian_class_with(&ring, &tests)
    }

    /// Same as [`Engine::jacobian_class`] with explicit test monomials of
    /// degree `3g - 3`.
    pub fn jacobian_class_with(
        &self,
        ring: &TautRing,
        tests: &[LambdaMonomial],
    ) -> Result<RingElement> {
        let g = ring.g;
        let basis = square_free(g, jacobian_codim(g));
        if tests.len() != basis.len() {
            return Err(Error::invalid(format!(
                "need {} test monomials in genus {g}, got {}",
                basis.len(),
                tests.len()
            )));
        }
        let mut a = Vec::new();
        let mut rhs = Vec::new();
        for m in tests {
            if m.genus() != g || m.degree() != 3 * g - 3 {
                return Err(Error::invalid("test monomials must have degree 3g-3"));
            }
            a.push(basis.iter().map(|b| ring.pair(b, m)).collect::<Result<Vec<_>>>()?);
            rhs.push(self.lambda_number(m)? / int(2));
        }
        let coeffs = solve(a, rhs)?;
        Ok(RingElement { g, degree: jacobian_codim(g), basis, coeffs })
    }
}

/// `int_{M(g)} m` recovered from the Jacobian class as `2 int [J_g] m`.
pub fn integrate_via_class(ring: &TautRing, class: &RingElement, m: &LambdaMonomial) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (b, c) in class.basis.iter().zip(&class.coeffs) {
        acc += c * ring.pair(b, m)?;
    }
    Ok(acc * int(2))
}

/// `1/(2g-2) prod_{i=1}^{g-2} 2 / ((2i+1) |B_{2i}|)`.
pub fn conjecture1_coefficient(g: u32) -> Result<Rational> {
    if g < 3 {
        return Err(Error::invalid(format!("needs g >= 3, got {g}")));
    }
    let mut acc = Rational::one() / int(2 * g as i64 - 2);
    for i in 1..=g - 2 {
        acc *= int(2) / (int(2 * i as i64 + 1) * bernoulli(2 * i)?.abs());
    }
    Ok(acc)
}

/// `(g(2g-2)/12 - 2^{g-3})` times the first conjectural coefficient.
pub fn conjecture2_coefficient(g: u32) -> Result<Rational> {
    if g < 5 {
        return Err(Error::invalid(format!("needs g >= 5, got {g}")));
    }
    let g_r = int(g as i64);
    let factor = &g_r * (int(2) * &g_r - int(2)) / int(12) - int(1i64 << (g - 3));
    Ok(factor * conjecture1_coefficient(g)?)
}
