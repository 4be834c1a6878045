//! Pull-backs of single classes along the gluing maps onto boundary divisors.
//!
//! On the irreducible side the glued points are `n+1` and `n+2`. On a
//! reducible divisor the left factor carries the points of the component
//! containing point 1 (renumbered in order) followed by the node `*`; the right
//! factor carries the node as point 1 followed by the remaining points.

use num::One;

use super::{Factor, RedDivisor, Space};
use crate::arith::Rational;

/// One term of a pulled-back class on a product: a coefficient times a class
/// on the left factor times a class on the right factor (`None` is `1`).
pub type ProductTerm = (Rational, Option<Factor>, Option<Factor>);

fn one() -> Rational {
    Rational::one()
}

fn neg() -> Rational {
    -Rational::one()
}

/// The two factors of a reducible divisor and where the marked points go.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTarget {
    pub left: Space,
    pub right: Space,
    /// original labels on the left, in order; the node is `left.n`
    pub left_points: Vec<u32>,
    /// original labels on the right, in order; the node is point 1
    pub right_points: Vec<u32>,
}

impl SplitTarget {
    fn left_mask(&self, original: u32) -> u32 {
        let mut m = 0;
        for (i, p) in self.left_points.iter().enumerate() {
            if original >> (p - 1) & 1 == 1 {
                m |= 1 << i;
            }
        }
        m
    }

    fn right_mask(&self, original: u32) -> u32 {
        let mut m = 0;
        for (i, p) in self.right_points.iter().enumerate() {
            if original >> (p - 1) & 1 == 1 {
                m |= 1 << (i + 1);
            }
        }
        m
    }

    fn star(&self) -> u32 {
        1 << (self.left.n - 1)
    }
}

pub fn split_target(space: Space, d: RedDivisor) -> SplitTarget {
    let (left, right) = d.sides(space);
    let left_points = d.points();
    let right_points = (1..=space.n).filter(|p| d.mask >> (p - 1) & 1 == 0).collect();
    SplitTarget { left, right, left_points, right_points }
}

/// `xi^* f` along `M(g-1, n+2) -> M(g, n)`.
pub fn pullback_to_irr(space: Space, f: Factor) -> Vec<(Rational, Factor)> {
    let (g, n) = (space.g, space.n);
    let target = Space { g: g - 1, n: n + 2 };
    let red = |h: u32, mask: u32| RedDivisor::canonical(target, h, mask).map(Factor::DeltaRed);
    let (a, b) = (1u32 << n, 1u32 << (n + 1));
    match f {
        Factor::DeltaIrr => {
            let mut out = vec![
                (neg(), Factor::Psi(n + 1)),
                (neg(), Factor::Psi(n + 2)),
                (one(), Factor::DeltaIrr),
            ];
            if n == 0 {
                for h in 1..g.saturating_sub(1) {
                    out.extend(red(h, 0b01).map(|c| (one(), c)));
                }
            } else {
                // divisors separating the two branches, listed by the side
                // holding point 1
                for h in 0..g {
                    for rest in 0..(1u32 << (n - 1)) {
                        let m = (rest << 1) | 1;
                        if h == g - 1 && m == space.all_points() {
                            continue;
                        }
                        out.extend(red(h, m | a).map(|c| (one(), c)));
                        out.extend(red(h, m | b).map(|c| (one(), c)));
                    }
                }
            }
            out
        }
        Factor::DeltaRed(d) if n == 0 => {
            let mut out: Vec<(Rational, Factor)> = Vec::new();
            out.extend(red(d.h - 1, a | b).map(|c| (one(), c)));
            if 2 * d.h != g {
                out.extend(red(g - d.h - 1, a | b).map(|c| (one(), c)));
            }
            out
        }
        Factor::DeltaRed(d) => {
            let mut out = Vec::new();
            if d.h >= 1 {
                out.extend(red(d.h - 1, d.mask | a | b).map(|c| (one(), c)));
            }
            if d.h < g {
                out.extend(red(d.h, d.mask).map(|c| (one(), c)));
            }
            out
        }
        // psi, kappa and the Hodge classes restrict to the same classes
        other => vec![(one(), other)],
    }
}

/// `xi^* f` along the gluing map of the reducible divisor `d`.
pub fn pullback_to_red(space: Space, d: RedDivisor, f: Factor) -> Vec<ProductTerm> {
    let t = split_target(space, d);
    let left = |c: Factor| (one(), Some(c), None);
    let right = |c: Factor| (one(), None, Some(c));
    match f {
        Factor::Psi(i) => match t.left_points.iter().position(|&p| p == i) {
            Some(k) => vec![left(Factor::Psi(k as u32 + 1))],
            None => {
                let k = t.right_points.iter().position(|&p| p == i).expect("point on one side");
                vec![right(Factor::Psi(k as u32 + 2))]
            }
        },
        Factor::Kappa(_) | Factor::DeltaIrr | Factor::Ch(_) => vec![left(f), right(f)],
        Factor::Lambda(j) => (0..=j)
            .map(|a| {
                let l = (a > 0).then_some(Factor::Lambda(a));
                let r = (a < j).then_some(Factor::Lambda(j - a));
                (one(), l, r)
            })
            .collect(),
        Factor::DeltaRed(e) => {
            let mut out = Vec::new();
            if e == d {
                out.push((neg(), Some(Factor::Psi(t.left.n)), None));
                out.push((neg(), None, Some(Factor::Psi(1))));
            }
            if space.n == 0 {
                let (g1, g2) = (t.left.g, t.right.g);
                let mut splits = vec![e.h, space.g - e.h];
                splits.dedup();
                for &x in &splits {
                    if x >= 1 && x < g1 {
                        out.push(left(Factor::DeltaRed(RedDivisor { h: g1 - x, mask: 1 })));
                    }
                }
                for &y in &splits {
                    if y >= 1 && y < g2 {
                        out.push(right(Factor::DeltaRed(RedDivisor { h: g2 - y, mask: 1 })));
                    }
                }
                return out;
            }
            let (g1, g2) = (t.left.g, t.right.g);
            let (n1, n2) = (d.mask, space.all_points() & !d.mask);
            let valid_left = |h: u32, m: u32| {
                let c = RedDivisor { h, mask: m };
                c.is_valid(t.left).then_some(Factor::DeltaRed(c))
            };
            let valid_right = |h: u32, m: u32| {
                let c = RedDivisor { h, mask: m };
                c.is_valid(t.right).then_some(Factor::DeltaRed(c))
            };
            // second node on the left, away from the first node
            if e.h <= g1 && e.mask & !n1 == 0 {
                out.extend(valid_left(e.h, t.left_mask(e.mask)).map(left));
            }
            // second node on the right
            if e.h >= g1 && e.mask & n1 == n1 {
                out.extend(valid_right(e.h - g1, t.right_mask(e.mask & !n1) | 1).map(right));
            }
            // second node on the left, with the right factor on point 1's side
            if e.h >= g2 && e.mask & n2 == n2 {
                out.extend(valid_left(e.h - g2, t.left_mask(e.mask & !n2) | t.star()).map(left));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(g: u32, n: u32) -> Space {
        Space::new(g, n).unwrap()
    }

    #[test]
    fn irr_self_intersection_n0() {
        let p = pullback_to_irr(sp(4, 0), Factor::DeltaIrr);
        let reds: Vec<u32> = p
            .iter()
            .filter_map(|(_, f)| match f {
                Factor::DeltaRed(d) => Some(d.h),
                _ => None,
            })
            .collect();
        assert_eq!(p.len(), 5);
        assert_eq!(reds, vec![1, 2]);
    }

    #[test]
    fn middle_divisor_counted_once() {
        assert_eq!(pullback_to_irr(sp(4, 0), Factor::DeltaRed(RedDivisor { h: 2, mask: 0 })).len(), 1);
        assert_eq!(pullback_to_irr(sp(5, 0), Factor::DeltaRed(RedDivisor { h: 2, mask: 0 })).len(), 2);
    }

    #[test]
    fn red_self_intersection_generic() {
        let s = sp(2, 2);
        let d = RedDivisor { h: 1, mask: 0b01 };
        let p = pullback_to_red(s, d, Factor::DeltaRed(d));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn red_lambda_splits() {
        let d = RedDivisor { h: 1, mask: 0 };
        let p = pullback_to_red(sp(3, 0), d, Factor::Lambda(2));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn split_relabels_points() {
        let t = split_target(sp(1, 4), RedDivisor { h: 0, mask: 0b0101 });
        assert_eq!(t.left, Space { g: 0, n: 3 });
        assert_eq!(t.right, Space { g: 1, n: 3 });
        assert_eq!(t.left_points, vec![1, 3]);
        assert_eq!(t.right_points, vec![2, 4]);
    }
}
