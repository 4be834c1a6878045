use num::Zero;

use super::pullback::{pullback_to_irr, pullback_to_red, split_target};
use super::{ClassMonomial, ClassPolynomial, Factor, ProductPolynomial, RedDivisor, Space};
use crate::arith::{rat, Rational};
use crate::engine::Engine;
use crate::kappa::forget_point;

impl Engine {
    /// Top intersection number of a monomial; zero unless its degree is the
    /// dimension of the space.
    pub fn evaluate(&self, m: &ClassMonomial) -> Rational {
        if m.degree() != m.space().dim() || m.is_zero_class() {
            return Rational::zero();
        }
        let m = m.canonicalize();
        if let Some(v) = self.divisor_memo.get(&m) {
            return v;
        }
        let v = self.evaluate_uncached(&m);
        self.divisor_memo.insert(m, v.clone());
        v
    }

    fn evaluate_uncached(&self, m: &ClassMonomial) -> Rational {
        let s = m.space();
        if let Some(d) = most_balanced(m) {
            return self.restrict(m, Factor::DeltaRed(d));
        }
        if m.delta_irr() == 0 {
            return self.boundary_free(m);
        }
        if s.n > 0 && !(s.g == 1 && s.n == 1) {
            return self.pushdown(m);
        }
        self.restrict(m, Factor::DeltaIrr)
    }

    /// Evaluates by restricting to the boundary divisor `first`, which must be
    /// a factor of `m`. Any valid choice gives the same number.
    pub fn evaluate_via(&self, m: &ClassMonomial, first: Factor) -> Option<Rational> {
        let present = m.factors().iter().any(|(f, _)| *f == first);
        if !present || !matches!(first, Factor::DeltaIrr | Factor::DeltaRed(_)) {
            return None;
        }
        if m.degree() != m.space().dim() || m.is_zero_class() {
            return Some(Rational::zero());
        }
        Some(self.restrict(m, first))
    }

    fn restrict(&self, m: &ClassMonomial, first: Factor) -> Rational {
        let s = m.space();
        let rest = m.without(first);
        match first {
            Factor::DeltaIrr => {
                let target = Space { g: s.g - 1, n: s.n + 2 };
                let mut poly = ClassPolynomial::from_monomial(ClassMonomial::one(target));
                for (f, e) in rest.factors() {
                    let form = pullback_to_irr(s, f);
                    for _ in 0..e {
                        poly.mul_linear(&form);
                    }
                }
                let mut acc = Rational::zero();
                for (t, c) in poly.terms() {
                    acc += c * self.evaluate(t);
                }
                acc * rat(1, 2)
            }
            Factor::DeltaRed(d) => {
                let split = split_target(s, d);
                let mut poly = ProductPolynomial::new(
                    ClassMonomial::one(split.left),
                    ClassMonomial::one(split.right),
                );
                for (f, e) in rest.factors() {
                    let form = pullback_to_red(s, d, f);
                    for _ in 0..e {
                        poly.mul_terms(&form);
                    }
                }
                let mut acc = Rational::zero();
                for ((l, r), c) in poly.terms() {
                    if l.degree() != split.left.dim() {
                        continue;
                    }
                    let lv = self.evaluate(l);
                    if lv.is_zero() {
                        continue;
                    }
                    acc += c * lv * self.evaluate(r);
                }
                if s.n == 0 && 2 * d.h == s.g {
                    acc * rat(1, 2)
                } else {
                    acc
                }
            }
            _ => unreachable!("restriction to a non-boundary class"),
        }
    }

    /// Forgets the last marked point; only psi and kappa classes change.
    fn pushdown(&self, m: &ClassMonomial) -> Rational {
        let s = m.space();
        let target = Space { g: s.g, n: s.n - 1 };
        let mut acc = Rational::zero();
        for (c, psi, kappas) in forget_point(s.g, m.psi(), s.n as usize - 1, &m.kappas()) {
            let mut t = ClassMonomial::one(target);
            for (i, &e) in psi.iter().enumerate() {
                t.mul(Factor::Psi(i as u32 + 1), e);
            }
            for &a in &kappas {
                t.mul(Factor::Kappa(a), 1);
            }
            t.mul(Factor::DeltaIrr, m.delta_irr());
            for (j, &e) in m.lambda_exps().iter().enumerate() {
                t.mul(Factor::Lambda(j as u32 + 1), e);
            }
            for k in m.chs() {
                t.mul(Factor::Ch(k), 1);
            }
            acc += c * self.evaluate(&t);
        }
        acc
    }

    fn boundary_free(&self, m: &ClassMonomial) -> Rational {
        let s = m.space();
        let kappas = m.kappas();
        let mut psi = m.psi().to_vec();
        psi.sort_unstable_by(|a, b| b.cmp(a));
        if m.lambda_exps().is_empty() && m.chs().is_empty() {
            return self.kappa_psi(s.g, &psi, &kappas);
        }
        let mut acc = Rational::zero();
        for (c, chs) in crate::hodge::lambda_to_ch(m.lambda_exps(), s.base_dim()) {
            let mut all = chs;
            all.extend(m.chs());
            acc += c * self.ch(s.g, &psi, &kappas, &all);
        }
        acc
    }
}

/// The reducible boundary factor whose two sides have the closest
/// dimensions; ties go to the first in class order.
fn most_balanced(m: &ClassMonomial) -> Option<RedDivisor> {
    let s = m.space();
    m.delta_red().iter().map(|&(d, _)| d).min_by_key(|d| {
        let (l, r) = d.sides(s);
        (l.dim() as i64 - r.dim() as i64).abs()
    })
}
