//! Polynomial expressions in `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-')* power
//! power  := atom ('^' digits)?
//! atom   := digits | 'x' | '(' expr ')'
//! ```
//!
//! Division is only by nonzero constants, so `3/4*x` and `(x^2+1)/2` parse.

use num_bigint::BigInt;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 4096;

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = &acc * &rhs;
            } else if rhs.is_constant() && !rhs.is_zero() {
                acc = acc.scale(&rhs.coeff(0).recip());
            } else {
                return Err(Error::Syntax { pos: at, msg: "division by a nonconstant or zero".into() });
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        let mut negate = false;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            negate ^= op == b'-';
        }
        let p = self.power()?;
        Ok(if negate { p.scale(&Rat::from_int(-1)) } else { p })
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let Some(d) = self.digits() else {
            return Err(self.error("exponent must be a nonnegative integer"));
        };
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(self.error("exponent must be a nonnegative integer"));
        }
        let k: u32 = d
            .parse()
            .ok()
            .filter(|k| *k <= MAX_EXPONENT)
            .ok_or_else(|| Error::Syntax { pos: at, msg: format!("exponent above {MAX_EXPONENT}") })?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit ahead");
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(self.error("decimal literals are not supported, use a/b"));
                }
                let n: BigInt = d.parse().expect("digits");
                Ok(Poly::constant(Rat::from_bigint(n)))
            }
            Some(c) => Err(self.error(&format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals_and_powers() {
        let f = parse_poly("x^4+2*x^3+3*x^2+2*x-1").unwrap();
        assert_eq!(f, Poly::from_ints(&[-1, 2, 3, 2, 1]));
        assert_eq!(parse_poly("(x^2+x+1)^2-2").unwrap(), f);
        assert_eq!(parse_poly(" - x ^ 2 + 1 ").unwrap(), Poly::from_ints(&[1, 0, -1]));
        assert_eq!(parse_poly("3/2^2*x").unwrap(), Poly::from_coeffs(vec![Rat::zero(), Rat::frac(3, 4)]));
        assert_eq!(parse_poly("(x^2+1)/2").unwrap().coeff(0), Rat::frac(1, 2));
        assert_eq!(parse_poly("x^0").unwrap(), Poly::one());
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_poly(s) {
            Err(Error::Syntax { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("x^-1"), 2);
        assert_eq!(pos("x^1.5"), 3);
        assert_eq!(pos("x+"), 2);
        assert_eq!(pos("(x+1"), 4);
        assert_eq!(pos("x/x"), 1);
        assert_eq!(pos("y"), 0);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("2 x"), 2);
        assert_eq!(pos("1/0"), 1);
    }

    proptest! {
        #[test]
        fn render_round_trips(c in proptest::collection::vec((-50i64..50, 1i64..9), 0..7)) {
            let f = Poly::from_coeffs(c.iter().map(|&(n, d)| Rat::frac(n, d)).collect());
            let g = parse_poly(&f.render()).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(parse_poly(&g.render()).unwrap(), g);
        }
    }
}
