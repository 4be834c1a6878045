//! Hodge integrals: odd Chern characters of the Hodge bundle against psi and
//! kappa classes, evaluated with Mumford's formula for `ch(E)` on `M(g)`.

use std::collections::HashMap;

use num::{One, Zero};

use crate::arith::{
    bernoulli, counts_minus, factorial, from_counts, rat, sub_multisets, to_counts, Rational,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::kappa::forget_point;
use crate::tau::{check_stable, dim, is_stable};

/// `int prod psi_i^{d_i} prod kappa_{a_j} prod ch_{k_l}(E)` over `M(g, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChQuery {
    g: u32,
    /// sorted descending
    d: Vec<u32>,
    /// sorted ascending
    kappas: Vec<u32>,
    /// odd indices, sorted ascending
    chs: Vec<u32>,
}

impl ChQuery {
    pub fn new(
        g: u32,
        d: impl Into<Vec<u32>>,
        kappas: impl Into<Vec<u32>>,
        chs: impl Into<Vec<u32>>,
    ) -> Result<Self> {
        let (d, kappas, chs) = (d.into(), kappas.into(), chs.into());
        check_stable(g, d.len() as u32)?;
        if kappas.contains(&0) {
            return Err(Error::invalid("kappa indices start at 1"));
        }
        if let Some(k) = chs.iter().find(|&&k| k % 2 == 0) {
            return Err(Error::invalid(format!(
                "ch{k}: even Chern characters of the Hodge bundle vanish and are not admitted"
            )));
        }
        Ok(Self::normalized(g, d, kappas, chs))
    }

    fn normalized(g: u32, mut d: Vec<u32>, mut kappas: Vec<u32>, mut chs: Vec<u32>) -> Self {
        d.sort_unstable_by(|a, b| b.cmp(a));
        kappas.sort_unstable();
        chs.sort_unstable();
        ChQuery { g, d, kappas, chs }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn psi(&self) -> &[u32] {
        &self.d
    }

    pub fn kappas(&self) -> &[u32] {
        &self.kappas
    }

    pub fn chs(&self) -> &[u32] {
        &self.chs
    }
}

/// A monomial `prod lambda_j^{e_j}` on `M(g)`; `e[0]` is the exponent of
/// `lambda_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaMonomial {
    g: u32,
    e: Vec<u32>,
}

impl LambdaMonomial {
    pub fn new(g: u32, e: impl Into<Vec<u32>>) -> Result<Self> {
        let mut e = e.into();
        while e.last() == Some(&0) {
            e.pop();
        }
        if e.len() > g as usize {
            return Err(Error::invalid(format!("lambda_{} does not exist in genus {g}", e.len())));
        }
        Ok(LambdaMonomial { g, e })
    }

    /// Builds the monomial from a list of lambda indices with repetition.
    pub fn from_indices(g: u32, indices: &[u32]) -> Result<Self> {
        let mut e = Vec::new();
        for &j in indices {
            if j == 0 {
                return Err(Error::invalid("lambda indices start at 1"));
            }
            if e.len() < j as usize {
                e.resize(j as usize, 0);
            }
            e[j as usize - 1] += 1;
        }
        Self::new(g, e)
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn exponents(&self) -> &[u32] {
        &self.e
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum()
    }
}

type ChPoly = HashMap<Vec<u32>, Rational>;

fn poly_mul(a: &ChPoly, b: &ChPoly) -> ChPoly {
    let mut out = ChPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend(mb);
            m.sort_unstable();
            *out.entry(m).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `lambda_k` as a polynomial in the odd `ch` classes, from Newton's
/// identities with power sums `p_i = i! ch_i` and `p_even = 0`.
fn elementary(k: u32) -> Vec<ChPoly> {
    let mut e: Vec<ChPoly> = vec![ChPoly::from([(Vec::new(), Rational::one())])];
    for m in 1..=k {
        let mut acc = ChPoly::new();
        for i in (1..=m).step_by(2) {
            let p = Rational::from_integer(factorial(i));
            for (mono, c) in &e[(m - i) as usize] {
                let mut t = mono.clone();
                t.push(i);
                t.sort_unstable();
                *acc.entry(t).or_insert_with(Rational::zero) += c * &p;
            }
        }
        let inv = rat(1, m as i64);
        for c in acc.values_mut() {
            *c *= &inv;
        }
        acc.retain(|_, c| !c.is_zero());
        e.push(acc);
    }
    e
}

/// Rewrites `prod lambda_j^{e_j}` as a combination of `ch` monomials, each
/// given as a sorted list of odd indices. Empty when the weighted degree
/// exceeds `max_degree`.
pub fn lambda_to_ch(lambda_exps: &[u32], max_degree: u32) -> Vec<(Rational, Vec<u32>)> {
    let degree: u32 = lambda_exps.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum();
    if degree > max_degree {
        return Vec::new();
    }
    let e = elementary(lambda_exps.len() as u32);
    let mut acc: ChPoly = ChPoly::from([(Vec::new(), Rational::one())]);
    for (i, &x) in lambda_exps.iter().enumerate() {
        for _ in 0..x {
            acc = poly_mul(&acc, &e[i + 1]);
        }
    }
    let mut out: Vec<(Rational, Vec<u32>)> = acc.into_iter().map(|(m, c)| (c, m)).collect();
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

fn sign(b: u32) -> Rational {
    if b.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl Engine {
    pub fn ch_number(&self, q: &ChQuery) -> Rational {
        self.ch(q.g, &q.d, &q.kappas, &q.chs)
    }

    pub(crate) fn ch(&self, g: u32, d: &[u32], kappas: &[u32], chs: &[u32]) -> Rational {
        if chs.is_empty() {
            return self.kappa_psi(g, d, kappas);
        }
        let n = d.len() as u32;
        if g == 0 || !is_stable(g, n) {
            return Rational::zero();
        }
        let total: u32 = d.iter().sum::<u32>() + kappas.iter().sum::<u32>() + chs.iter().sum::<u32>();
        if total as i64 != dim(g, n) {
            return Rational::zero();
        }
        let base = if g == 1 { 1 } else { 3 * g - 3 };
        if chs.iter().sum::<u32>() > base {
            return Rational::zero();
        }
        let q = ChQuery::normalized(g, d.to_vec(), kappas.to_vec(), chs.to_vec());
        if let Some(v) = self.hodge_memo.get(&q) {
            return v;
        }
        let v = self.ch_compute(&q);
        self.hodge_memo.insert(q, v.clone());
        v
    }

    fn ch_compute(&self, q: &ChQuery) -> Rational {
        let (g, n) = (q.g, q.d.len());
        if n > 0 && !(g == 1 && n == 1) {
            let mut acc = Rational::zero();
            for (c, psi, kappas) in forget_point(g, &q.d, n - 1, &q.kappas) {
                acc += c * self.ch(g, &psi, &kappas, &q.chs);
            }
            return acc;
        }
        if g == 1 {
            // only ch_1 = lambda_1 = 1/24 fits on M(1,1)
            return rat(1, 24);
        }
        let (&c, rest) = q.chs.split_last().expect("nonempty");
        let i = c.div_ceil(2);
        let coeff = bernoulli(2 * i).expect("even index") / Rational::from_integer(factorial(2 * i));

        let mut kappas = q.kappas.clone();
        kappas.push(c);
        let mut acc = self.ch(g, &[], &kappas, rest);

        let half = rat(1, 2);
        let mut boundary = Rational::zero();
        for a in 0..c {
            let b = c - 1 - a;
            boundary += sign(b) * self.ch(g - 1, &[a, b], &q.kappas, rest);
        }
        let kc = to_counts(&q.kappas);
        let cc = to_counts(rest);
        for (k1, wk) in sub_multisets(&kc) {
            let k2 = from_counts(&counts_minus(&kc, &k1));
            let k1 = from_counts(&k1);
            for (c1, wc) in sub_multisets(&cc) {
                let c2 = from_counts(&counts_minus(&cc, &c1));
                let c1 = from_counts(&c1);
                let w = Rational::from_integer(&wk * &wc);
                let fixed: u32 = k1.iter().sum::<u32>() + c1.iter().sum::<u32>();
                for a in 0..c {
                    let b = c - 1 - a;
                    // the left factor is M(h, 1), of dimension 3h - 2
                    let left_deg = fixed + a + 2;
                    if !left_deg.is_multiple_of(3) {
                        continue;
                    }
                    let h = left_deg / 3;
                    if h == 0 || h >= g {
                        continue;
                    }
                    let l = self.ch(h, &[a], &k1, &c1);
                    if l.is_zero() {
                        continue;
                    }
                    let r = self.ch(g - h, &[b], &k2, &c2);
                    boundary += sign(b) * &w * l * r;
                }
            }
        }
        acc += half * boundary;
        coeff * acc
    }

    /// `int prod lambda_j^{e_j}` over `M(g)`, or over `M(1,1)` in genus 1.
    pub fn lambda_number(&self, m: &LambdaMonomial) -> Result<Rational> {
        let g = m.g;
        if g == 0 {
            return Err(Error::invalid("the Hodge bundle is zero in genus 0; no lambda numbers"));
        }
        let base = if g == 1 { 1 } else { 3 * g - 3 };
        if m.degree() != base {
            return Ok(Rational::zero());
        }
        let key = (g, m.e.clone());
        if let Some(v) = self.lambda_memo.get(&key) {
            return Ok(v);
        }
        let d: Vec<u32> = if g == 1 { vec![0] } else { Vec::new() };
        let mut acc = Rational::zero();
        for (c, chs) in lambda_to_ch(&m.e, base) {
            acc += c * self.ch(g, &d, &[], &chs);
        }
        self.lambda_memo.insert(key, acc.clone());
        Ok(acc)
    }
}
