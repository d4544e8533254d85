//! Text syntax for algebra elements: `t[2,1]`, `tb[1,2]`, `tb[1,1]^-1`,
//! products with `*`, sums with `+`/`-`, coefficients in parentheses.

use thiserror::Error;

use super::algebra::RttAlgebra;
use super::element::AlgebraElement;
use super::gens::{GenKind, GenSymbol};
use crate::scalar::{QScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator {0} is out of range")]
    OutOfRange(String),
    #[error("negative power of a non-diagonal generator {0}")]
    NegativePower(String),
    #[error("bad coefficient: {0}")]
    Coefficient(#[from] ScalarError),
}

struct Parser<'a> {
    alg: &'a RttAlgebra,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, ElementParseError> {
        Err(ElementParseError::Syntax { pos: self.pos, msg: msg.to_string() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ElementParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, ElementParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .map_or_else(|| self.err("expected an integer"), Ok)
    }

    fn expr(&mut self) -> Result<AlgebraElement, ElementParseError> {
        let mut acc = if self.eat(b'-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ElementParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = self.alg.mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AlgebraElement, ElementParseError> {
        match self.peek() {
            Some(b'(') => {
                let start = self.pos + 1;
                let mut depth = 0usize;
                while self.pos < self.src.len() {
                    match self.src[self.pos] {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return self.err("unbalanced parenthesis");
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.pos += 1;
                let c: QScalar = text.parse()?;
                Ok(self.alg.scalar(c))
            }
            Some(b't') => {
                self.pos += 1;
                let kind = if self.src.get(self.pos) == Some(&b'b') {
                    self.pos += 1;
                    GenKind::TBar
                } else {
                    GenKind::T
                };
                self.expect(b'[')?;
                let row = self.int()?;
                self.expect(b',')?;
                let col = self.int()?;
                self.expect(b']')?;
                let n = self.alg.seq().len() as i64;
                let g = GenSymbol { kind, row: row.max(0) as usize, col: col.max(0) as usize };
                if !(1..=n).contains(&row) || !(1..=n).contains(&col) {
                    return Err(ElementParseError::OutOfRange(g.to_string()));
                }
                let e = if self.eat(b'^') { self.int()? } else { 1 };
                if row == col {
                    let sign = if kind == GenKind::T { -1 } else { 1 };
                    return Ok(self.alg.tb_diag_pow(g.row, (sign * e) as i32));
                }
                if e < 0 {
                    return Err(ElementParseError::NegativePower(g.to_string()));
                }
                let x = self.alg.gen(g);
                Ok((0..e).fold(self.alg.one(), |acc, _| self.alg.mul(&acc, &x)))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.int()?;
                Ok(self.alg.scalar(QScalar::from_int(v)))
            }
            _ => self.err("expected a generator or a parenthesized coefficient"),
        }
    }
}

impl RttAlgebra {
    /// Parses and straightens an element.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement, ElementParseError> {
        let mut p = Parser { alg: self, src: text.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}
