use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};

use super::{enumerate_classes, DivClass, Factor, RedDivisor, Space};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A monomial in the classes of [`Factor`] on one moduli space.
///
/// Exponent vectors are indexed from 1 (`kappa[0]` is the exponent of
/// `kappa_1`) and kept without trailing zeros, so equal classes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassMonomial {
    space: Space,
    psi: Vec<u32>,
    kappa: Vec<u32>,
    delta_irr: u32,
    /// sorted by divisor order, exponents positive
    delta_red: Vec<(RedDivisor, u32)>,
    lambda: Vec<u32>,
    ch: Vec<u32>,
}

fn bump(v: &mut Vec<u32>, idx: u32, e: u32) {
    let i = idx as usize - 1;
    if v.len() <= i {
        v.resize(i + 1, 0);
    }
    v[i] += e;
}

fn weighted(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum()
}

fn expand(v: &[u32]) -> Vec<u32> {
    v.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i as u32 + 1, e as usize))
        .collect()
}

impl ClassMonomial {
    pub fn one(space: Space) -> Self {
        ClassMonomial {
            space,
            psi: vec![0; space.n as usize],
            kappa: Vec::new(),
            delta_irr: 0,
            delta_red: Vec::new(),
            lambda: Vec::new(),
            ch: Vec::new(),
        }
    }

    /// Product of divisor classes, validated against the space.
    pub fn from_classes(space: Space, classes: &[(DivClass, u32)]) -> Result<Self> {
        let mut m = Self::one(space);
        for &(c, e) in classes {
            m.try_mul(c.into(), e)?;
        }
        Ok(m)
    }

    /// Multiplies by `f^e` after checking that `f` makes sense on this space.
    pub fn try_mul(&mut self, f: Factor, e: u32) -> Result<()> {
        let s = self.space;
        match f {
            Factor::Psi(i) if i == 0 || i > s.n => {
                return Err(Error::invalid(format!("psi{i} needs 1 <= i <= n on {s}")))
            }
            Factor::Kappa(0) => return Err(Error::invalid("kappa indices start at 1")),
            Factor::Lambda(j) if j == 0 || j > s.g => {
                return Err(Error::invalid(format!("la{j} needs 1 <= j <= g on {s}")))
            }
            Factor::Ch(k) if k % 2 == 0 => {
                return Err(Error::invalid(format!(
                    "ch{k}: even Chern characters of the Hodge bundle vanish and are not admitted"
                )))
            }
            Factor::DeltaRed(d) if !d.is_valid(s) => {
                return Err(Error::invalid(format!("boundary divisor {d:?} is not valid on {s}")))
            }
            _ => {}
        }
        self.mul(f, e);
        Ok(())
    }

    pub(crate) fn mul(&mut self, f: Factor, e: u32) {
        if e == 0 {
            return;
        }
        match f {
            Factor::Psi(i) => self.psi[i as usize - 1] += e,
            Factor::Kappa(a) => bump(&mut self.kappa, a, e),
            Factor::DeltaIrr => self.delta_irr += e,
            Factor::DeltaRed(d) => match self.delta_red.binary_search_by(|(x, _)| x.cmp(&d)) {
                Ok(pos) => self.delta_red[pos].1 += e,
                Err(pos) => self.delta_red.insert(pos, (d, e)),
            },
            Factor::Lambda(j) => bump(&mut self.lambda, j, e),
            Factor::Ch(k) => bump(&mut self.ch, k, e),
        }
    }

    pub(crate) fn times(mut self, f: Factor, e: u32) -> Self {
        self.mul(f, e);
        self
    }

    /// Validated product with `f^e`.
    pub fn with(mut self, f: Factor, e: u32) -> Result<Self> {
        self.try_mul(f, e)?;
        Ok(self)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn psi(&self) -> &[u32] {
        &self.psi
    }

    /// Kappa indices as a sorted multiset.
    pub fn kappas(&self) -> Vec<u32> {
        expand(&self.kappa)
    }

    pub fn delta_irr(&self) -> u32 {
        self.delta_irr
    }

    pub fn delta_red(&self) -> &[(RedDivisor, u32)] {
        &self.delta_red
    }

    pub fn lambda_exps(&self) -> &[u32] {
        &self.lambda
    }

    /// Odd Chern character indices as a sorted multiset.
    pub fn chs(&self) -> Vec<u32> {
        expand(&self.ch)
    }

    pub fn has_boundary(&self) -> bool {
        self.delta_irr > 0 || !self.delta_red.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.psi.iter().sum::<u32>()
            + weighted(&self.kappa)
            + self.delta_irr
            + self.delta_red.iter().map(|(_, e)| e).sum::<u32>()
            + weighted(&self.lambda)
            + weighted(&self.ch)
    }

    /// Total degree of the part pulled back from the point-free space.
    pub(crate) fn base_degree(&self) -> u32 {
        self.delta_irr + weighted(&self.lambda) + weighted(&self.ch)
    }

    /// True when the monomial is the zero class for a structural reason:
    /// Hodge classes or `delta_irr` in genus 0, `lambda_j` with `j > g`,
    /// `lambda_g^2`, or more degree pulled back from the point-free space than
    /// that space has dimensions.
    pub fn is_zero_class(&self) -> bool {
        let g = self.space.g;
        if self.degree() > self.space.dim() {
            return true;
        }
        if g == 0 && (self.delta_irr > 0 || !self.lambda.is_empty() || !self.ch.is_empty()) {
            return true;
        }
        if self.lambda.len() > g as usize {
            return true;
        }
        if g >= 1 && self.lambda.len() == g as usize && self.lambda[g as usize - 1] >= 2 {
            return true;
        }
        self.base_degree() > self.space.base_dim()
    }

    /// All factors with exponents, in class order: psi, kappa, delta_irr,
    /// reducible divisors, lambda, ch.
    pub fn factors(&self) -> Vec<(Factor, u32)> {
        let mut out = Vec::new();
        for (i, &e) in self.psi.iter().enumerate() {
            if e > 0 {
                out.push((Factor::Psi(i as u32 + 1), e));
            }
        }
        for (i, &e) in self.kappa.iter().enumerate() {
            if e > 0 {
                out.push((Factor::Kappa(i as u32 + 1), e));
            }
        }
        if self.delta_irr > 0 {
            out.push((Factor::DeltaIrr, self.delta_irr));
        }
        for &(d, e) in &self.delta_red {
            out.push((Factor::DeltaRed(d), e));
        }
        for (i, &e) in self.lambda.iter().enumerate() {
            if e > 0 {
                out.push((Factor::Lambda(i as u32 + 1), e));
            }
        }
        for (i, &e) in self.ch.iter().enumerate() {
            if e > 0 {
                out.push((Factor::Ch(i as u32 + 1), e));
            }
        }
        out
    }

    /// Drops one power of `f`; the caller guarantees it is present.
    pub(crate) fn without(&self, f: Factor) -> Self {
        let mut m = self.clone();
        match f {
            Factor::Psi(i) => m.psi[i as usize - 1] -= 1,
            Factor::DeltaIrr => m.delta_irr -= 1,
            Factor::DeltaRed(d) => {
                let pos = m.delta_red.iter().position(|(x, _)| *x == d).expect("divisor present");
                m.delta_red[pos].1 -= 1;
                if m.delta_red[pos].1 == 0 {
                    m.delta_red.remove(pos);
                }
            }
            Factor::Kappa(a) => unbump(&mut m.kappa, a),
            Factor::Lambda(j) => unbump(&mut m.lambda, j),
            Factor::Ch(k) => unbump(&mut m.ch, k),
        }
        m
    }

    /// Applies the relabelling `perm` (point `i` becomes `perm[i-1]`), which
    /// must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let s = self.space;
        let mut psi = vec![0; s.n as usize];
        for (i, &e) in self.psi.iter().enumerate() {
            psi[perm[i] as usize - 1] = e;
        }
        let mut red: Vec<(RedDivisor, u32)> = self
            .delta_red
            .iter()
            .map(|&(d, e)| {
                let mut mask = 0u32;
                for p in d.points() {
                    mask |= 1 << (perm[p as usize - 1] - 1);
                }
                (RedDivisor::canonical(s, d.h, mask).expect("relabelling keeps stability"), e)
            })
            .collect();
        red.sort_by_key(|a| a.0);
        ClassMonomial { psi, delta_red: red, ..self.clone() }
    }

    /// Compares the dense exponent vectors over the class order; only the
    /// label-dependent parts (psi and reducible divisors) can differ between
    /// relabellings of the same monomial.
    fn label_cmp(&self, other: &Self) -> Ordering {
        self.psi.cmp(&other.psi).then_with(|| {
            let (a, b) = (&self.delta_red, &other.delta_red);
            for i in 0..a.len().max(b.len()) {
                match (a.get(i), b.get(i)) {
                    (Some(x), Some(y)) if x == y => continue,
                    (Some(x), Some(y)) if x.0 == y.0 => return x.1.cmp(&y.1),
                    // an earlier divisor with a positive exponent is the larger vector
                    (Some(x), Some(y)) => return y.0.cmp(&x.0),
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => unreachable!(),
                }
            }
            Ordering::Equal
        })
    }

    /// The representative of the relabelling orbit whose exponent vector,
    /// read in class order, is lexicographically greatest.
    pub fn canonicalize(&self) -> Self {
        let n = self.space.n as usize;
        if n <= 1 {
            return self.clone();
        }
        // The maximum has psi sorted descending, so only permutations that
        // sort psi and then shuffle within equal-exponent blocks are tried.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.psi[b].cmp(&self.psi[a]).then(a.cmp(&b)));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match blocks.last_mut() {
                Some(bl) if self.psi[bl[0]] == self.psi[i] => bl.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        let mut perm = vec![0u32; n];
        let mut pos = 0u32;
        for bl in &blocks {
            for &i in bl {
                pos += 1;
                perm[i] = pos;
            }
        }
        let base = self.relabel(&perm);
        if self.delta_red.is_empty() || blocks.iter().all(|b| b.len() == 1) {
            return base;
        }
        // enumerate permutations inside each block of base's labels
        let mut best = base.clone();
        let mut start = 0usize;
        let ranges: Vec<(usize, usize)> = blocks
            .iter()
            .map(|b| {
                let r = (start, start + b.len());
                start += b.len();
                r
            })
            .collect();
        let mut labels: Vec<u32> = (1..=n as u32).collect();
        permute_blocks(&ranges, 0, &mut labels, &mut |lab| {
            let cand = base.relabel(lab);
            if cand.label_cmp(&best) == Ordering::Greater {
                best = cand;
            }
        });
        best
    }
}

fn unbump(v: &mut Vec<u32>, idx: u32) {
    v[idx as usize - 1] -= 1;
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn permute_blocks(
    ranges: &[(usize, usize)],
    k: usize,
    labels: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if k == ranges.len() {
        f(labels);
        return;
    }
    let (lo, hi) = ranges[k];
    heap_permute(labels, lo, hi - lo, &mut |l| permute_blocks(ranges, k + 1, l, f));
}

fn heap_permute(
    labels: &mut Vec<u32>,
    lo: usize,
    size: usize,
    f: &mut impl FnMut(&mut Vec<u32>),
) {
    if size <= 1 {
        f(labels);
        return;
    }
    heap_permute(labels, lo, size - 1, f);
    for i in 0..size - 1 {
        let j = if size.is_multiple_of(2) { lo + i } else { lo };
        labels.swap(j, lo + size - 1);
        heap_permute(labels, lo, size - 1, f);
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .into_iter()
            .map(|(fac, e)| {
                let t = factor_token(self.space, &fac);
                if e == 1 {
                    t
                } else {
                    format!("{t}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

pub(crate) fn factor_token(space: Space, f: &Factor) -> String {
    match f {
        Factor::Psi(i) => format!("psi{i}"),
        Factor::Kappa(a) => format!("ka{a}"),
        Factor::DeltaIrr => "d_irr".to_string(),
        Factor::DeltaRed(d) if space.n == 0 => format!("d{}", d.h),
        Factor::DeltaRed(d) => {
            let pts: Vec<String> = d.points().iter().map(|p| p.to_string()).collect();
            format!("d{}_{{{}}}", d.h, pts.join(","))
        }
        Factor::Lambda(j) => format!("la{j}"),
        Factor::Ch(k) => format!("ch{k}"),
    }
}

/// Every monomial of the given degree in the divisor classes of `space`,
/// ordered by descending exponent vector over the class order.
pub fn divisor_monomials(space: Space, degree: u32) -> Vec<ClassMonomial> {
    let classes = enumerate_classes(space);
    let mut out = Vec::new();
    let mut exps = vec![0u32; classes.len()];
    fn rec(
        i: usize,
        left: u32,
        exps: &mut Vec<u32>,
        classes: &[DivClass],
        space: Space,
        out: &mut Vec<ClassMonomial>,
    ) {
        if i + 1 == classes.len() {
            exps[i] = left;
            let pairs: Vec<(DivClass, u32)> =
                classes.iter().copied().zip(exps.iter().copied()).collect();
            out.push(ClassMonomial::from_classes(space, &pairs).expect("enumerated classes are valid"));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, classes, space, out);
        }
    }
    rec(0, degree, &mut exps, &classes, space, &mut out);
    out
}

/// A rational linear combination of monomials on one space.
#[derive(Clone, Debug)]
pub struct ClassPolynomial {
    space: Space,
    terms: HashMap<ClassMonomial, Rational>,
}

impl ClassPolynomial {
    pub fn from_monomial(m: ClassMonomial) -> Self {
        let space = m.space;
        let mut terms = HashMap::new();
        terms.insert(m, Rational::one());
        ClassPolynomial { space, terms }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Multiplies by a linear form, dropping terms that are zero classes.
    pub fn mul_linear(&mut self, form: &[(Rational, Factor)]) {
        let mut next: HashMap<ClassMonomial, Rational> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            for (a, f) in form {
                let t = m.clone().times(*f, 1);
                if t.is_zero_class() {
                    continue;
                }
                *next.entry(t).or_insert_with(Rational::zero) += c * a;
            }
        }
        next.retain(|_, c| !c.is_zero());
        self.terms = next;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A rational linear combination of pairs of monomials on the two factors
/// of a reducible boundary divisor.
#[derive(Clone, Debug)]
pub struct ProductPolynomial {
    left: Space,
    right: Space,
    terms: HashMap<(ClassMonomial, ClassMonomial), Rational>,
}

impl ProductPolynomial {
    pub fn new(left: ClassMonomial, right: ClassMonomial) -> Self {
        let (ls, rs) = (left.space, right.space);
        let mut terms = HashMap::new();
        if !left.is_zero_class() && !right.is_zero_class() {
            terms.insert((left, right), Rational::one());
        }
        ProductPolynomial { left: ls, right: rs, terms }
    }

    pub fn spaces(&self) -> (Space, Space) {
        (self.left, self.right)
    }

    pub fn mul_terms(&mut self, form: &[super::ProductTerm]) {
        let mut next = HashMap::with_capacity(self.terms.len());
        for ((l, r), c) in &self.terms {
            for (a, fl, fr) in form {
                let l2 = match fl {
                    Some(f) => l.clone().times(*f, 1),
                    None => l.clone(),
                };
                if l2.is_zero_class() {
                    continue;
                }
                let r2 = match fr {
                    Some(f) => r.clone().times(*f, 1),
                    None => r.clone(),
                };
                if r2.is_zero_class() {
                    continue;
                }
                *next.entry((l2, r2)).or_insert_with(Rational::zero) += c * a;
            }
        }
        next.retain(|_, c: &mut Rational| !c.is_zero());
        self.terms = next;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ClassMonomial, ClassMonomial), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(g: u32, n: u32) -> Space {
        Space::new(g, n).unwrap()
    }

    #[test]
    fn canonicalize_swaps_labels() {
        let s = sp(3, 2);
        let d = RedDivisor::canonical(s, 1, 0b10).unwrap();
        let m = ClassMonomial::from_classes(s, &[(DivClass::Psi(2), 2), (DivClass::DeltaRed(d), 1)])
            .unwrap();
        let c = m.canonicalize();
        let expected = ClassMonomial::from_classes(
            s,
            &[(DivClass::Psi(1), 2), (DivClass::DeltaRed(RedDivisor { h: 1, mask: 0b01 }), 1)],
        )
        .unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn orbit_collapses() {
        let s = sp(0, 5);
        let d = |mask| DivClass::DeltaRed(RedDivisor::canonical(s, 0, mask).unwrap());
        let a = ClassMonomial::from_classes(s, &[(d(0b00011), 1), (DivClass::Psi(5), 1)]).unwrap();
        let b = ClassMonomial::from_classes(s, &[(d(0b11000), 1), (DivClass::Psi(2), 1)]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.canonicalize(), b.canonicalize());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(divisor_monomials(sp(3, 0), 6).len(), 28);
        assert_eq!(divisor_monomials(sp(4, 0), 9).len(), 220);
    }

    #[test]
    fn display_tokens() {
        let s = sp(3, 2);
        let m = ClassMonomial::from_classes(
            s,
            &[
                (DivClass::Psi(1), 2),
                (DivClass::DeltaRed(RedDivisor { h: 1, mask: 0b01 }), 1),
                (DivClass::Kappa1, 3),
            ],
        )
        .unwrap();
        assert_eq!(m.to_string(), "psi1^2 * ka1^3 * d1_{1}");
        assert_eq!(ClassMonomial::one(s).to_string(), "1");
    }

    #[test]
    fn zero_classes() {
        let s = sp(2, 0);
        let mut m = ClassMonomial::one(s);
        m.try_mul(Factor::Lambda(2), 2).unwrap();
        assert!(m.is_zero_class());
        let mut m = ClassMonomial::one(sp(0, 4));
        m.mul(Factor::DeltaIrr, 1);
        assert!(m.is_zero_class());
        let mut m = ClassMonomial::one(sp(4, 0));
        m.mul(Factor::DeltaIrr, 10);
        assert!(m.is_zero_class());
        assert!(ClassMonomial::one(s).try_mul(Factor::Ch(2), 1).is_err());
    }
}
