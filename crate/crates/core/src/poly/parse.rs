//! Recursive-descent parser for polynomial expressions:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | ident | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::polynomial::{PolyRing, Polynomial};
use super::PolyError;
use crate::scalar::Scalar;

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing<S>,
}

pub(crate) fn parse_poly<S: Scalar>(text: &str, ring: &PolyRing<S>) -> Result<Polynomial<S>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl<S: Scalar> Parser<'_, S> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial<S>, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<S>, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<S>, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Polynomial<S>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digit string");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    den = d.parse().expect("digit string");
                }
                let c = S::from_ratio(&num, &den).ok_or_else(|| self.error("denominator vanishes in the field"))?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.ring.signature().var_index(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(PolyError::UnknownVariable { pos: start, name }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::{MonomialOrder, PolyError, PolyRing};
    use crate::scalar::Rational;

    fn ring() -> PolyRing<Rational> {
        PolyRing::with_vars(&["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = ring();
        assert_eq!(r.parse("x^2 + x*y + y^2").unwrap().len(), 3);
        assert!(r.parse("0").unwrap().is_zero());
        assert_eq!(r.parse("(x+y)^2 - x^2 - 2*x*y").unwrap(), r.parse("y^2").unwrap());
        assert_eq!(r.format(&r.parse("-y + 1/2*x").unwrap()), "1/2*x - y");
    }

    #[test]
    fn reports_errors() {
        let r = ring();
        assert!(matches!(r.parse("x + z"), Err(PolyError::UnknownVariable { pos: 4, .. })));
        assert!(matches!(r.parse("x y"), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(r.parse("(x"), Err(PolyError::Syntax { .. })));
        assert!(matches!(r.parse("x^"), Err(PolyError::Syntax { .. })));
        assert!(matches!(r.parse("1/0"), Err(PolyError::Syntax { .. })));
    }
}
