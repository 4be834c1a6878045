//! Exact intersection numbers on the moduli spaces `M(g, n)` of stable
//! pointed curves: psi/kappa numbers, divisor monomials evaluated by boundary
//! restriction, Hodge integrals, and the lambda ring of abelian varieties.

pub mod acceptance;
pub mod arith;
pub mod cache;
pub mod divisor;
mod engine;
pub mod error;
pub mod expr;
pub mod hodge;
pub mod kappa;
mod memo;
pub mod tau;
pub mod taut;

pub use arith::{bernoulli, double_factorial, format_rational, Rational};
pub use divisor::{enumerate_classes, ClassMonomial, DivClass, Factor, RedDivisor, Space};
pub use engine::Engine;
pub use error::{Error, Result};

pub use expr::{parse, Expression};
pub use hodge::{ChQuery, LambdaMonomial};
pub use kappa::KappaPsiQuery;
pub use tau::TauQuery;
