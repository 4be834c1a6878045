//! Witten–Kontsevich numbers `<tau_{d_1} ... tau_{d_n}>_g`.
//!
//! String and dilaton remove `tau_0` and `tau_1` insertions; everything else
//! goes through the DVV (Virasoro) recursion on the largest exponent, with
//! genus-splitting sums taken over sub-multisets weighted by the number of
//! labelled choices.

use std::fmt::Write as _;

use num::{BigInt, One, Zero};

use crate::arith::{dfact, format_rational, from_counts, rat, sub_multisets, to_counts, Rational};
use crate::engine::Engine;
use crate::error::{Error, Result};

/// A psi-monomial on `M(g, n)`, stored with exponents sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauQuery {
    g: u32,
    d: Vec<u32>,
}

impl TauQuery {
    pub fn new(g: u32, d: impl Into<Vec<u32>>) -> Result<Self> {
        let mut d = d.into();
        check_stable(g, d.len() as u32)?;
        d.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TauQuery { g, d })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn exponents(&self) -> &[u32] {
        &self.d
    }

    pub fn n(&self) -> u32 {
        self.d.len() as u32
    }
}

pub(crate) fn check_stable(g: u32, n: u32) -> Result<()> {
    if 2 * g + n <= 2 {
        Err(Error::Unstable { g, n })
    } else {
        Ok(())
    }
}

pub(crate) fn is_stable(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

/// `3g - 3 + n` as a signed number (negative only for unstable spaces).
pub(crate) fn dim(g: u32, n: u32) -> i64 {
    3 * g as i64 - 3 + n as i64
}

impl Engine {
    /// `<prod tau_{d_i}>_g`; zero when the degree does not match the dimension.
    pub fn tau_number(&self, q: &TauQuery) -> Rational {
        self.tau(q.g, &q.d)
    }

    /// Every stable query with `g <= g_max` whose exponents are all at least 2,
    /// ordered by `(g, n, d)`.
    pub fn export_tau_table(&self, g_max: u32) -> Result<Vec<(TauQuery, Rational)>> {
        if g_max < 2 {
            return Err(Error::invalid(format!("tau table needs g_max >= 2, got {g_max}")));
        }
        let mut rows = Vec::new();
        for g in 2..=g_max {
            let excess = 3 * g - 3;
            for n in 1..=excess {
                let mut parts = partitions_into(excess, n, excess);
                for p in parts.iter_mut() {
                    for x in p.iter_mut() {
                        *x += 1;
                    }
                }
                parts.sort();
                for d in parts {
                    let q = TauQuery { g, d };
                    let v = self.tau_number(&q);
                    rows.push((q, v));
                }
            }
        }
        Ok(rows)
    }

    pub(crate) fn tau(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len() as u32;
        if !is_stable(g, n) {
            return Rational::zero();
        }
        let total: i64 = d.iter().map(|&x| x as i64).sum();
        if total != dim(g, n) {
            return Rational::zero();
        }
        let mut key = d.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        let key = (g, key);
        if let Some(v) = self.tau_memo.get(&key) {
            return v;
        }
        let v = self.tau_compute(g, &key.1);
        self.tau_memo.insert(key, v.clone());
        v
    }

    fn tau_compute(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len();
        if g == 0 && n == 3 {
            return Rational::one();
        }
        if g == 1 && d == [1] {
            return rat(1, 24);
        }
        // d is sorted descending
        if d[n - 1] == 0 {
            let rest = &d[..n - 1];
            let mut acc = Rational::zero();
            for j in 0..rest.len() {
                if rest[j] == 0 {
                    continue;
                }
                // equal values give equal terms; skip repeats and multiply
                if j > 0 && rest[j] == rest[j - 1] {
                    continue;
                }
                let mult = rest.iter().filter(|&&x| x == rest[j]).count();
                let mut e = rest.to_vec();
                e[j] -= 1;
                acc += self.tau(g, &e) * Rational::from_integer(BigInt::from(mult));
            }
            return acc;
        }
        if let Some(pos) = d.iter().position(|&x| x == 1) {
            let mut rest = d.to_vec();
            rest.remove(pos);
            let factor = 2 * g as i64 - 2 + rest.len() as i64;
            return self.tau(g, &rest) * Rational::from_integer(BigInt::from(factor));
        }
        self.dvv(g, d[0] - 1, &d[1..])
    }

    /// `<tau_{k+1} tau_S>_g` via DVV.
    fn dvv(&self, g: u32, k: u32, s: &[u32]) -> Rational {
        let k64 = k as i64;
        let mut acc = Rational::zero();
        let counts = to_counts(s);

        for &(dj, mult) in &counts {
            let mut e = Vec::with_capacity(s.len());
            let mut removed = false;
            for &x in s {
                if x == dj && !removed {
                    removed = true;
                    e.push(k + dj);
                } else {
                    e.push(x);
                }
            }
            let coeff = dfact(2 * k64 + 2 * dj as i64 + 1) / dfact(2 * dj as i64 - 1) * mult;
            acc += self.tau(g, &e) * Rational::from_integer(coeff);
        }

        let mut split = Rational::zero();
        for r in 0..k {
            let s_idx = k - 1 - r;
            let w = Rational::from_integer(dfact(2 * r as i64 + 1) * dfact(2 * s_idx as i64 + 1));
            if g >= 1 {
                let mut e = s.to_vec();
                e.push(r);
                e.push(s_idx);
                split += self.tau(g - 1, &e) * &w;
            }
            for (left, mult) in sub_multisets(&counts) {
                let mut e1 = from_counts(&left);
                let sum1: u32 = e1.iter().sum::<u32>() + r;
                let n1 = e1.len() as u32 + 1;
                // degree pins the genus of the first factor
                let three_g1 = sum1 as i64 + 3 - n1 as i64;
                if three_g1 < 0 || three_g1 % 3 != 0 || three_g1 / 3 > g as i64 {
                    continue;
                }
                let g1 = (three_g1 / 3) as u32;
                e1.push(r);
                let mut e2 = from_counts(&crate::arith::counts_minus(&counts, &left));
                e2.push(s_idx);
                let a = self.tau(g1, &e1);
                if a.is_zero() {
                    continue;
                }
                let b = self.tau(g - g1, &e2);
                split += a * b * &w * Rational::from_integer(mult);
            }
        }
        acc += split / Rational::from_integer(BigInt::from(2));
        acc / Rational::from_integer(dfact(2 * k64 + 3))
    }
}

/// Partitions of `total` into exactly `parts` positive parts, each at most
/// `max`, as descending vectors.
pub(crate) fn partitions_into(total: u32, parts: u32, max: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if total < parts {
        return vec![];
    }
    let mut out = Vec::new();
    let hi = max.min(total - (parts - 1));
    for first in (1..=hi).rev() {
        if first * parts < total {
            break;
        }
        for mut tail in partitions_into(total - first, parts - 1, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Tab-separated `g n d1,...,dn p/q` rows, one per line.
pub fn format_tau_table(rows: &[(TauQuery, Rational)]) -> String {
    let mut out = String::new();
    for (q, v) in rows {
        let d: Vec<String> = q.d.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}\t{}\t{}\t{}", q.g, q.n(), d.join(","), format_rational(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn t(g: u32, d: &[u32]) -> Rational {
        Engine::new().tau_number(&TauQuery::new(g, d.to_vec()).unwrap())
    }

    #[test]
    fn base_values() {
        assert_eq!(t(0, &[0, 0, 0]), int(1));
        assert_eq!(t(1, &[1]), rat(1, 24));
        assert_eq!(t(0, &[1, 0, 0, 0]), int(1));
    }

    #[test]
    fn known_low_genus_values() {
        assert_eq!(t(2, &[4]), rat(1, 1152));
        assert_eq!(t(1, &[2, 0]), rat(1, 24));
        assert_eq!(t(3, &[7]), rat(1, 82944));
        // genus 0 closed form (n-3)!/prod d_i!
        assert_eq!(t(0, &[1, 1, 0, 0, 0]), int(2));
        assert_eq!(t(0, &[2, 2, 0, 0, 0, 0, 0]), int(6));
    }

    #[test]
    fn off_dimension_is_zero() {
        assert_eq!(t(2, &[3]), int(0));
        assert_eq!(t(1, &[0]), int(0));
    }

    #[test]
    fn unstable_query_rejected() {
        assert!(TauQuery::new(0, vec![0, 0]).is_err());
        assert!(TauQuery::new(1, vec![]).is_err());
    }

    #[test]
    fn permutation_invariant() {
        assert_eq!(t(2, &[2, 3, 0]), t(2, &[0, 2, 3]));
    }

    #[test]
    fn table_rows_and_order() {
        let e = Engine::new();
        let rows = e.export_tau_table(2).unwrap();
        let ds: Vec<Vec<u32>> = rows.iter().map(|(q, _)| q.d.clone()).collect();
        assert_eq!(ds, vec![vec![4], vec![3, 2], vec![2, 2, 2]]);
        for (q, _) in &rows {
            assert!(q.n() <= 3 * q.g - 3);
        }
        let text = format_tau_table(&rows);
        assert!(text.starts_with("2\t1\t4\t1/1152\n"));
        assert!(e.export_tau_table(1).is_err());
    }

    #[test]
    fn table_row_count_g3() {
        let rows = Engine::new().export_tau_table(3).unwrap();
        // partitions of 3 and of 6
        assert_eq!(rows.len(), 3 + 11);
    }

    #[test]
    fn partitions_basic() {
        assert_eq!(partitions_into(6, 2, 6), vec![vec![5, 1], vec![4, 2], vec![3, 3]]);
    }
}
