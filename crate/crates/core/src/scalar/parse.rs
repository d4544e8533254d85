//! Recursive-descent parser for expressions in the single symbol `q`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/')? unary)*`,
//! `unary := ('+'|'-') unary | power`, `power := atom ('^' exponent)?`,
//! `exponent := '-'? int | '(' '-'? int ('/' int)? ')'`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{QScalar, ScalarError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    acc = acc / d;
                }
                // juxtaposition: 2q, 3(q+1)
                Some(c) if c == b'q' || c == b'(' => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if e.is_integer() {
            let k: i64 = e.numer().try_into().map_err(|_| self.err("exponent too large"))?;
            if k < 0 && base.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.pow(k));
        }
        if base == QScalar::q_pow(1) {
            return Ok(QScalar::q_pow_rational(&e));
        }
        Err(self.err("fractional exponents are only allowed on q"))
    }

    fn exponent(&mut self) -> Result<BigRational, ScalarError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let n = self.signed_int()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.signed_int()?
            } else {
                BigInt::from(1)
            };
            self.expect(b')')?;
            if d == BigInt::from(0) {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from(self.signed_int()?))
    }

    fn signed_int(&mut self) -> Result<BigInt, ScalarError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<BigInt, ScalarError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn atom(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QScalar::from_bigint(self.uint()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_qscalar(text: &str) -> Result<QScalar, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QScalar {
        parse_qscalar(s).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(p("q - q^-1").to_string(), "(q^2 - 1)/q");
        assert_eq!(p("(q^2-1)/(q-1)"), p("q+1"));
        assert_eq!(p("q^0"), QScalar::one());
    }

    #[test]
    fn juxtaposition_and_rational_exponent() {
        assert_eq!(p("2q^2"), p("2*q^2"));
        assert_eq!(p("q^(1/2)*q^(1/2)"), p("q"));
        assert_eq!(p("q^(-2/4)"), p("1/q^(1/2)"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_qscalar("1/(q-q)"), Err(ScalarError::DivisionByZero)));
        assert!(matches!(parse_qscalar("q +"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse_qscalar("x"), Err(ScalarError::Syntax { .. })));
    }
}
