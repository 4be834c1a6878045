//! Mixed kappa/psi numbers on `M(g, n)`, reduced to psi numbers one kappa
//! factor at a time.
//!
//! The kappa classes are the log-twisted ones, so under the forgetful map
//! `pi: M(g, n+1) -> M(g, n)` they satisfy `kappa_a = pi^* kappa_a + psi_{n+1}^a`.

use num::{BigInt, Zero};

use crate::arith::{from_counts, sub_multisets, to_counts, Rational};
use crate::engine::Engine;
use crate::error::Result;
use crate::tau::{check_stable, dim, is_stable};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KappaPsiQuery {
    g: u32,
    /// psi exponents, sorted descending
    d: Vec<u32>,
    /// kappa indices (all >= 1), sorted ascending
    kappas: Vec<u32>,
}

impl KappaPsiQuery {
    pub fn new(g: u32, d: impl Into<Vec<u32>>, kappas: impl Into<Vec<u32>>) -> Result<Self> {
        let d = d.into();
        let kappas = kappas.into();
        check_stable(g, d.len() as u32)?;
        if kappas.contains(&0) {
            return Err(crate::error::Error::invalid("kappa indices start at 1"));
        }
        Ok(Self::normalized(g, d, kappas))
    }

    fn normalized(g: u32, mut d: Vec<u32>, mut kappas: Vec<u32>) -> Self {
        d.sort_unstable_by(|a, b| b.cmp(a));
        kappas.sort_unstable();
        KappaPsiQuery { g, d, kappas }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.d.len() as u32
    }

    pub fn psi(&self) -> &[u32] {
        &self.d
    }

    pub fn kappas(&self) -> &[u32] {
        &self.kappas
    }

    pub fn degree(&self) -> u32 {
        self.d.iter().sum::<u32>() + self.kappas.iter().sum::<u32>()
    }
}

/// Removes the largest kappa factor `kappa_a`:
///
/// `X kappa_a = int_{n+1} X psi_{n+1}^{a+1} - sum_{T != {}} X_T kappa_{a + a_T}`
///
/// where the first term keeps the remaining kappas on `M(g, n+1)` and the
/// corrections merge `a` with every nonempty sub-multiset `T` of the others.
pub fn kappa_reduce_step(q: &KappaPsiQuery) -> Vec<(Rational, KappaPsiQuery)> {
    let Some((&a, rest)) = q.kappas.split_last() else {
        return vec![(Rational::from_integer(1.into()), q.clone())];
    };
    let mut out = Vec::new();
    let mut d = q.d.clone();
    d.push(a + 1);
    out.push((
        Rational::from_integer(1.into()),
        KappaPsiQuery::normalized(q.g, d, rest.to_vec()),
    ));
    let counts = to_counts(rest);
    for (picked, w) in sub_multisets(&counts) {
        if picked.is_empty() {
            continue;
        }
        let merged: u32 = a + picked.iter().map(|&(v, c)| v * c).sum::<u32>();
        let mut k = from_counts(&crate::arith::counts_minus(&counts, &picked));
        k.push(merged);
        out.push((-Rational::from_integer(w), KappaPsiQuery::normalized(q.g, q.d.clone(), k)));
    }
    out
}

/// Pushes `psi^d prod kappa_{a_j}` forward along the map forgetting point `idx`.
/// Classes pulled back from the target pass through untouched, so callers
/// may carry them alongside.
pub(crate) fn forget_point(
    g: u32,
    psi: &[u32],
    idx: usize,
    kappas: &[u32],
) -> Vec<(Rational, Vec<u32>, Vec<u32>)> {
    let n = psi.len() as i64;
    let e = psi[idx];
    let mut rest = psi.to_vec();
    rest.remove(idx);
    let kappa0 = 2 * g as i64 - 2 + (n - 1);
    let counts = to_counts(kappas);
    let mut out = Vec::new();
    for (picked, w) in sub_multisets(&counts) {
        let s = e + picked.iter().map(|&(v, c)| v * c).sum::<u32>();
        if s == 0 {
            continue;
        }
        let mut k = from_counts(&crate::arith::counts_minus(&counts, &picked));
        let mut coeff = Rational::from_integer(w);
        if s == 1 {
            coeff *= Rational::from_integer(BigInt::from(kappa0));
        } else {
            k.push(s - 1);
        }
        out.push((coeff, rest.clone(), k));
    }
    if e == 0 {
        for i in 0..rest.len() {
            if rest[i] > 0 {
                let mut r = rest.clone();
                r[i] -= 1;
                out.push((Rational::from_integer(1.into()), r, kappas.to_vec()));
            }
        }
    }
    out
}

impl Engine {
    /// `int prod psi_i^{d_i} prod kappa_{a_j}` over `M(g, n)`.
    pub fn kappa_psi_number(&self, q: &KappaPsiQuery) -> Rational {
        self.kappa_psi(q.g, &q.d, &q.kappas)
    }

    pub(crate) fn kappa_psi(&self, g: u32, d: &[u32], kappas: &[u32]) -> Rational {
        let n = d.len() as u32;
        if !is_stable(g, n) {
            return Rational::zero();
        }
        let deg = d.iter().sum::<u32>() as i64 + kappas.iter().sum::<u32>() as i64;
        if deg != dim(g, n) {
            return Rational::zero();
        }
        if kappas.is_empty() {
            return self.tau(g, d);
        }
        let q = KappaPsiQuery::normalized(g, d.to_vec(), kappas.to_vec());
        if let Some(v) = self.kappa_memo.get(&q) {
            return v;
        }
        let mut acc = Rational::zero();
        for (c, t) in kappa_reduce_step(&q) {
            acc += c * self.kappa_psi(t.g, &t.d, &t.kappas);
        }
        self.kappa_memo.insert(q, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::tau::TauQuery;

    fn kp(g: u32, d: &[u32], k: &[u32]) -> Rational {
        Engine::new().kappa_psi_number(&KappaPsiQuery::new(g, d.to_vec(), k.to_vec()).unwrap())
    }

    #[test]
    fn genus_one_values() {
        assert_eq!(kp(1, &[0], &[1]), rat(1, 24));
        assert_eq!(kp(1, &[1], &[]), rat(1, 24));
        assert_eq!(kp(1, &[0], &[2]), int(0));
    }

    #[test]
    fn single_kappa_step_has_no_corrections() {
        let q = KappaPsiQuery::new(3, vec![], vec![6]).unwrap();
        let step = kappa_reduce_step(&q);
        assert_eq!(step.len(), 1);
        assert_eq!(step[0].1, KappaPsiQuery::new(3, vec![7], vec![]).unwrap());
    }

    #[test]
    fn two_kappa_step_matches_expected_shape() {
        let q = KappaPsiQuery::new(2, vec![], vec![1, 2]).unwrap();
        let step = kappa_reduce_step(&q);
        assert_eq!(
            step,
            vec![
                (int(1), KappaPsiQuery::new(2, vec![3], vec![1]).unwrap()),
                (int(-1), KappaPsiQuery::new(2, vec![], vec![3]).unwrap()),
            ]
        );
    }

    #[test]
    fn kappa_on_one_pointed_genus_one_reduces_to_string() {
        let q = KappaPsiQuery::new(1, vec![0], vec![1]).unwrap();
        let step = kappa_reduce_step(&q);
        assert_eq!(step, vec![(int(1), KappaPsiQuery::new(1, vec![0, 2], vec![]).unwrap())]);
        let e = Engine::new();
        assert_eq!(e.tau_number(&TauQuery::new(1, vec![0, 2]).unwrap()), rat(1, 24));
    }

    #[test]
    fn no_kappas_is_tau() {
        let e = Engine::new();
        assert_eq!(
            e.kappa_psi_number(&KappaPsiQuery::new(2, vec![2, 3], vec![]).unwrap()),
            e.tau_number(&TauQuery::new(2, vec![3, 2]).unwrap())
        );
    }

    #[test]
    fn mumford_kappa_values() {
        // kappa_1 on M(1,1) and kappa_3 on M(2)
        assert_eq!(kp(2, &[], &[3]), rat(1, 1152));
        assert_eq!(kp(0, &[0, 0, 0, 0], &[1]), int(1));
    }
}
