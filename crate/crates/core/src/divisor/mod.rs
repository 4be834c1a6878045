//! Intersection numbers of divisor classes (and the tautological classes that
//! ride along with them) on `M(g, n)`, computed by restricting to boundary
//! divisors until only psi, kappa and Hodge classes remain.

mod eval;
mod monomial;
mod pullback;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::tau::{check_stable, dim};

pub use monomial::{divisor_monomials, ClassMonomial, ClassPolynomial, ProductPolynomial};
pub use pullback::{pullback_to_irr, pullback_to_red, split_target, ProductTerm, SplitTarget};

/// A stable moduli space `M(g, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    pub g: u32,
    pub n: u32,
}

impl Space {
    pub fn new(g: u32, n: u32) -> Result<Self> {
        check_stable(g, n)?;
        if n > 30 {
            return Err(Error::invalid(format!("at most 30 marked points supported, got {n}")));
        }
        Ok(Space { g, n })
    }

    pub fn dim(&self) -> u32 {
        dim(self.g, self.n) as u32
    }

    /// Dimension of the point-free space the Hodge bundle and `delta_irr`
    /// are pulled back from.
    pub(crate) fn base_dim(&self) -> u32 {
        match self.g {
            0 => 0,
            1 => 1,
            g => 3 * g - 3,
        }
    }

    pub(crate) fn all_points(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.g, self.n)
    }
}

/// A reducible boundary divisor: the component containing point 1 has genus
/// `h` and carries the points in `mask` (bit `i-1` is point `i`). With no
/// marked points `mask` is empty and `h` is the smaller genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RedDivisor {
    pub h: u32,
    pub mask: u32,
}

impl RedDivisor {
    /// Builds the canonical label of the divisor whose "first" side has genus
    /// `h` and points `mask`, swapping sides when needed. `None` when unstable.
    pub fn canonical(space: Space, h: u32, mask: u32) -> Option<RedDivisor> {
        if h > space.g {
            return None;
        }
        let d = if space.n == 0 {
            RedDivisor { h: h.min(space.g - h), mask: 0 }
        } else if mask & 1 == 1 {
            RedDivisor { h, mask }
        } else {
            RedDivisor { h: space.g - h, mask: space.all_points() & !mask }
        };
        d.is_valid(space).then_some(d)
    }

    pub fn is_valid(&self, space: Space) -> bool {
        if self.h > space.g || self.mask & !space.all_points() != 0 {
            return false;
        }
        if space.n == 0 {
            return self.mask == 0 && self.h >= 1 && 2 * self.h <= space.g;
        }
        let k = self.mask.count_ones();
        self.mask & 1 == 1
            && (self.h >= 1 || k >= 2)
            && (space.g - self.h >= 1 || space.n - k >= 2)
    }

    pub fn points(&self) -> Vec<u32> {
        (0..32).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Genus and point count of the two gluing factors.
    pub(crate) fn sides(&self, space: Space) -> (Space, Space) {
        let k = self.mask.count_ones();
        (
            Space { g: self.h, n: k + 1 },
            Space { g: space.g - self.h, n: space.n - k + 1 },
        )
    }
}

impl Ord for RedDivisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.h
            .cmp(&other.h)
            .then(self.mask.count_ones().cmp(&other.mask.count_ones()))
            .then_with(|| {
                let diff = self.mask ^ other.mask;
                if diff == 0 {
                    Ordering::Equal
                } else if self.mask & diff & diff.wrapping_neg() != 0 {
                    // the smallest differing point belongs to self
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for RedDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The divisor classes that generate the rational Picard group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivClass {
    Psi(u32),
    Kappa1,
    DeltaIrr,
    DeltaRed(RedDivisor),
}

/// Any class the engine can carry in a monomial: the divisor classes, higher
/// kappas, Chern classes `lambda_j` and odd Chern characters `ch_k` of the
/// Hodge bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Psi(u32),
    Kappa(u32),
    DeltaIrr,
    DeltaRed(RedDivisor),
    Lambda(u32),
    Ch(u32),
}

impl From<DivClass> for Factor {
    fn from(c: DivClass) -> Self {
        match c {
            DivClass::Psi(i) => Factor::Psi(i),
            DivClass::Kappa1 => Factor::Kappa(1),
            DivClass::DeltaIrr => Factor::DeltaIrr,
            DivClass::DeltaRed(d) => Factor::DeltaRed(d),
        }
    }
}

impl Factor {
    pub fn degree(&self) -> u32 {
        match *self {
            Factor::Psi(_) | Factor::DeltaIrr | Factor::DeltaRed(_) => 1,
            Factor::Kappa(a) => a,
            Factor::Lambda(j) => j,
            Factor::Ch(k) => k,
        }
    }
}

/// All divisor classes on `space`: psi_1..psi_n, kappa_1, delta_irr, then the
/// reducible boundary divisors by (genus, number of points, lexicographic set).
pub fn enumerate_classes(space: Space) -> Vec<DivClass> {
    let mut out: Vec<DivClass> = (1..=space.n).map(DivClass::Psi).collect();
    out.push(DivClass::Kappa1);
    out.push(DivClass::DeltaIrr);
    out.extend(reducible_divisors(space).into_iter().map(DivClass::DeltaRed));
    out
}

pub fn reducible_divisors(space: Space) -> Vec<RedDivisor> {
    let mut out = Vec::new();
    if space.n == 0 {
        for h in 1..=space.g / 2 {
            out.push(RedDivisor { h, mask: 0 });
        }
        return out;
    }
    for h in 0..=space.g {
        for rest in 0..(1u32 << (space.n - 1)) {
            let d = RedDivisor { h, mask: (rest << 1) | 1 };
            if d.is_valid(space) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}
