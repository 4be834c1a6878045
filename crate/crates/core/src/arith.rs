//! Exact arithmetic shared by every engine: rationals, Bernoulli numbers,
//! double factorials and a few combinatorial helpers.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One, Signed, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

// B_0 .. B_k, all indices, B_1 = -1/2.
static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_k` for even `k >= 2`, with `B_2 = 1/6`, `B_4 = -1/30`.
pub fn bernoulli(k: u32) -> Result<Rational> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::invalid(format!(
            "bernoulli index must be even and >= 2, got {k}"
        )));
    }
    let table = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = table.read().get(k as usize) {
        return Ok(b.clone());
    }
    let mut t = table.write();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while t.len() <= k as usize {
        let m = t.len();
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, b) in t.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom is now C(m+1, m)
        t.push(-acc / Rational::from_integer(binom));
    }
    Ok(t[k as usize].clone())
}

/// `k!!` for `k >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::invalid(format!("double factorial of {k}")));
    }
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    Ok(acc)
}

pub(crate) fn dfact(k: i64) -> BigInt {
    double_factorial(k).expect("double factorial argument >= -1")
}

pub fn factorial(k: u32) -> BigInt {
    (2..=k as u64).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// All sub-multisets of a multiset given as `(value, count)` pairs, each with
/// the number of ways to pick it when the elements are labelled.
pub(crate) fn sub_multisets(counts: &[(u32, u32)]) -> Vec<(Vec<(u32, u32)>, BigInt)> {
    let mut out = vec![(Vec::new(), BigInt::one())];
    for &(v, c) in counts {
        let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
        for (picked, w) in &out {
            for t in 0..=c {
                let mut p = picked.clone();
                if t > 0 {
                    p.push((v, t));
                }
                next.push((p, w * binomial(c, t)));
            }
        }
        out = next;
    }
    out
}

/// Groups a slice of values into sorted `(value, count)` pairs.
pub(crate) fn to_counts(values: &[u32]) -> Vec<(u32, u32)> {
    let mut v = values.to_vec();
    v.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub(crate) fn from_counts(counts: &[(u32, u32)]) -> Vec<u32> {
    counts
        .iter()
        .flat_map(|&(v, c)| std::iter::repeat_n(v, c as usize))
        .collect()
}

/// Multiset difference `all - part`, both as count lists.
pub(crate) fn counts_minus(all: &[(u32, u32)], part: &[(u32, u32)]) -> Vec<(u32, u32)> {
    all.iter()
        .filter_map(|&(v, c)| {
            let t = part.iter().find(|p| p.0 == v).map_or(0, |p| p.1);
            (c > t).then_some((v, c - t))
        })
        .collect()
}
