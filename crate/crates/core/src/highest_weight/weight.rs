use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::HwError;
use crate::parity::ParitySeq;
use crate::scalar::QScalar;

/// A highest weight `λ_i = ε_i q_i^{Λ_i}`, stored as signs `ε_i` and exponents
/// `Λ_i` relative to `q_i = q^{d_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HWeight {
    pub owner: ParitySeq,
    pub signs: Vec<i8>,
    pub exps: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl HWeight {
    pub fn new(owner: &ParitySeq, signs: Vec<i8>, exps: Vec<BigRational>) -> Result<Self, HwError> {
        if signs.len() != owner.len() || exps.len() != owner.len() {
            return Err(HwError::Length { expected: owner.len(), got: signs.len().min(exps.len()) });
        }
        if signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(HwError::Parse("signs must be ±1".into()));
        }
        Ok(HWeight { owner: owner.clone(), signs, exps })
    }

    /// Integer exponents `Λ_i`, all signs `+`.
    pub fn from_ints(owner: &ParitySeq, exps: &[i64]) -> Result<Self, HwError> {
        Self::new(owner, vec![1; exps.len()], exps.iter().map(|&e| rat(e)).collect())
    }

    /// Parses a comma list of eigenvalues `±q^<rational>` (also `±q`, `±1`).
    /// The exponents are powers of `q` itself, so `Λ_i = d_i · exponent`.
    pub fn parse(owner: &ParitySeq, text: &str) -> Result<Self, HwError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != owner.len() {
            return Err(HwError::Length { expected: owner.len(), got: parts.len() });
        }
        let mut signs = Vec::new();
        let mut exps = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let (sign, rest) = match part.as_bytes().first() {
                Some(b'+') => (1, &part[1..]),
                Some(b'-') => (-1, &part[1..]),
                _ => (1, *part),
            };
            let rest = rest.trim();
            let e = if rest == "1" {
                BigRational::zero()
            } else if rest == "q" {
                BigRational::one()
            } else if let Some(x) = rest.strip_prefix("q^") {
                let x = x.trim().trim_start_matches('(').trim_end_matches(')').trim();
                x.parse::<BigRational>().map_err(|_| HwError::Parse(format!("bad exponent '{x}' in entry {}", k + 1)))?
            } else {
                return Err(HwError::Parse(format!("entry {} ('{part}') is not of the form ±q^r", k + 1)));
            };
            signs.push(sign);
            exps.push(e * rat(owner.d(k + 1) as i64));
        }
        Self::new(owner, signs, exps)
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Power of `q` in `λ_i`.
    pub fn q_exponent(&self, i: usize) -> BigRational {
        &self.exps[i - 1] * rat(self.owner.d(i) as i64)
    }

    /// `λ_i^e`.
    pub fn lambda_pow(&self, i: usize, e: i32) -> QScalar {
        let x = QScalar::q_pow_rational(&(self.q_exponent(i) * rat(e as i64)));
        if self.signs[i - 1] == -1 && e % 2 != 0 {
            -x
        } else {
            x
        }
    }

    pub fn lambda(&self, i: usize) -> QScalar {
        self.lambda_pow(i, 1)
    }

    /// Every sign flipped.
    pub fn negated(&self) -> Self {
        HWeight { signs: self.signs.iter().map(|e| -e).collect(), ..self.clone() }
    }
}

impl fmt::Display for HWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            if i > 1 {
                write!(f, ",")?;
            }
            let e = self.q_exponent(i);
            let sign = if self.signs[i - 1] == 1 { '+' } else { '-' };
            if e.is_negative() || !e.is_integer() {
                write!(f, "{sign}q^({e})")?;
            } else {
                write!(f, "{sign}q^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for HWeight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}
