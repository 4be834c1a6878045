//! Text form of monomials: `M(g,n): factor (* factor)*` where a factor is
//! `psi<i>`, `ka<a>`, `la<j>`, `ch<k>`, `d_irr`, `d<h>` (no marked points)
//! or `d<h>_{i1,i2,...}`, optionally raised to `^<e>`.

use std::fmt;

use crate::divisor::{ClassMonomial, Factor, RedDivisor, Space};
use crate::error::{Error, Result};
use crate::hodge::LambdaMonomial;

/// A parsed monomial together with the space it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    monomial: ClassMonomial,
}

impl Expression {
    pub fn space(&self) -> Space {
        self.monomial.space()
    }

    pub fn monomial(&self) -> &ClassMonomial {
        &self.monomial
    }

    pub fn into_monomial(self) -> ClassMonomial {
        self.monomial
    }

    /// The same monomial as a pure lambda monomial, when it is one and the
    /// space has no marked points.
    pub fn lambda_monomial(&self) -> Option<LambdaMonomial> {
        let m = &self.monomial;
        let s = m.space();
        let pure = m.factors().iter().all(|(f, _)| matches!(f, Factor::Lambda(_)));
        (pure && s.n == 0).then(|| LambdaMonomial::new(s.g, m.lambda_exps().to_vec()).ok())?
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.space(), self.monomial)
    }
}

impl std::str::FromStr for Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses a full expression including its `M(g,n):` prefix.
pub fn parse(text: &str) -> Result<Expression> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.ws();
    let start = p.pos;
    p.expect(b'M')?;
    p.ws();
    p.expect(b'(')?;
    let g = p.number()?;
    p.expect(b',')?;
    let n = p.number()?;
    p.expect(b')')?;
    p.ws();
    p.expect(b':')?;
    let space = Space::new(g, n).map_err(|e| p.error_at(start, e.to_string()))?;
    let monomial = p.factors(space)?;
    Ok(Expression { monomial })
}

/// Parses only the factor list on a known space; `offset` is added to error
/// positions so they refer to the enclosing text.
pub fn parse_monomial(space: Space, text: &str, offset: usize) -> Result<ClassMonomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.factors(space).map_err(|e| match e {
        Error::Parse { offset: o, message } => Error::Parse { offset: o + offset, message },
        other => other,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse { offset, message: message.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn eat(&mut self, word: &str) -> bool {
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.error_at(start, format!("number {s} is too large")))
    }

    /// A number glued to the preceding token name (no whitespace allowed).
    fn index(&mut self, what: &str) -> Result<u32> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error_at(self.pos, format!("expected an index after '{what}'")));
        }
        self.number()
    }

    fn factors(&mut self, space: Space) -> Result<ClassMonomial> {
        let mut m = ClassMonomial::one(space);
        loop {
            self.factor(space, &mut m)?;
            self.ws();
            match self.peek() {
                None => return Ok(m),
                Some(b'*') => self.pos += 1,
                Some(c) => {
                    return Err(self.error_at(self.pos, format!("unexpected '{}'", c as char)))
                }
            }
        }
    }

    fn factor(&mut self, space: Space, m: &mut ClassMonomial) -> Result<()> {
        self.ws();
        let start = self.pos;
        let f = if self.eat("psi") {
            Some(Factor::Psi(self.index("psi")?))
        } else if self.eat("ka") {
            Some(Factor::Kappa(self.index("ka")?))
        } else if self.eat("la") {
            Some(Factor::Lambda(self.index("la")?))
        } else if self.eat("ch") {
            Some(Factor::Ch(self.index("ch")?))
        } else if self.eat("d_irr") {
            Some(Factor::DeltaIrr)
        } else if self.eat("d") {
            Some(Factor::DeltaRed(self.red_divisor(space, start)?))
        } else if self.eat("1") {
            None
        } else {
            return Err(self.error_at(start, "unknown token"));
        };
        self.ws();
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            e = self.number()?;
            if e == 0 {
                return Err(self.error_at(at, "exponent must be positive"));
            }
        }
        match f {
            Some(f) => m.try_mul(f, e).map_err(|err| {
                let msg = match err {
                    Error::InvalidArgument(s) => s,
                    other => other.to_string(),
                };
                self.error_at(start, msg)
            }),
            None => Ok(()),
        }
    }

    fn red_divisor(&mut self, space: Space, start: usize) -> Result<RedDivisor> {
        let h = self.index("d")?;
        if self.peek() != Some(b'_') {
            if space.n > 0 {
                return Err(self.error_at(self.pos, "boundary divisor needs a point set _{...}"));
            }
            if h == 0 || h >= space.g {
                return Err(self.error_at(start, format!("d{h} is not a boundary divisor of {space}")));
            }
            return Ok(RedDivisor { h: h.min(space.g - h), mask: 0 });
        }
        self.pos += 1;
        if space.n == 0 {
            return Err(self.error_at(self.pos - 1, "no point set allowed without marked points"));
        }
        self.expect(b'{')?;
        let mut mask = 0u32;
        let mut last = 0u32;
        loop {
            let at = self.pos;
            let i = self.number()?;
            if i == 0 || i > space.n {
                return Err(self.error_at(at, format!("point {i} is not on {space}")));
            }
            if i <= last {
                return Err(self.error_at(at, "point set must be strictly increasing"));
            }
            last = i;
            mask |= 1 << (i - 1);
            self.ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error_at(self.pos, "malformed point set")),
            }
        }
        if mask & 1 == 0 {
            return Err(self.error_at(start, "point set must contain 1"));
        }
        let d = RedDivisor { h, mask };
        if !d.is_valid(space) {
            return Err(self.error_at(start, format!("not a stable boundary divisor of {space}")));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_parses() {
        let e = parse("M(4,0): d_irr^9").unwrap();
        assert_eq!(e.monomial().delta_irr(), 9);
        let e = parse("M(3,2): psi1^2 * d1_{1} * ka1^3").unwrap();
        assert_eq!(e.monomial().degree(), 6);
        assert_eq!(e.to_string(), "M(3,2): psi1^2 * ka1^3 * d1_{1}");
    }

    #[test]
    fn errors_have_offsets() {
        assert_eq!(
            parse("M(2,0): psi1"),
            Err(Error::Parse {
                offset: 8,
                message: "psi1 needs 1 <= i <= n on M(2,0)".into()
            })
        );
        assert!(matches!(parse("M(1,0): ka1"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse("M(2,0): ka1^0"), Err(Error::Parse { offset: 12, .. })));
        assert!(matches!(parse("M(2,2): d1_{2}"), Err(Error::Parse { .. })));
        assert!(matches!(parse("M(2,3): d0_{1,3,2}"), Err(Error::Parse { .. })));
        assert!(matches!(parse("M(2,0): foo"), Err(Error::Parse { offset: 8, .. })));
        assert!(matches!(parse("M(2,0): ch2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn genus_split_normalized() {
        assert_eq!(parse("M(5,0): d3").unwrap().to_string(), "M(5,0): d2");
        assert!(parse("M(5,0): d5").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse(" M ( 3 , 1 ) :psi1*d_irr ^ 2* ka1 ").unwrap();
        assert_eq!(a.to_string(), "M(3,1): psi1 * ka1 * d_irr^2");
    }
}
