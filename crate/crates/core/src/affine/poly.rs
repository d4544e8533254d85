//! Polynomials in one variable `u` with `QScalar` coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::scalar::QScalar;

/// Coefficients from degree 0 upward, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UPoly(Vec<QScalar>);

impl UPoly {
    pub fn new(mut coeffs: Vec<QScalar>) -> Self {
        while coeffs.last().is_some_and(QScalar::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn one() -> Self {
        UPoly(vec![QScalar::one()])
    }

    pub fn constant(c: QScalar) -> Self {
        UPoly::new(vec![c])
    }

    /// `c0 + c1 u`.
    pub fn linear(c0: QScalar, c1: QScalar) -> Self {
        UPoly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> QScalar {
        self.0.get(k).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> QScalar {
        self.0.last().cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// `p(c u)`.
    pub fn dilate(&self, c: &QScalar) -> Self {
        let mut pw = QScalar::one();
        let mut out = Vec::with_capacity(self.0.len());
        for x in &self.0 {
            out.push(x * &pw);
            pw = &pw * c;
        }
        UPoly::new(out)
    }

    /// Product of `(1 - x u)` over the given roots' reciprocals.
    pub fn from_reciprocal_roots(xs: &[QScalar]) -> Self {
        xs.iter().fold(UPoly::one(), |acc, x| &acc * &UPoly::linear(QScalar::one(), -x.clone()))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![QScalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        Ok(())
    }
}

/// The coprime pair `(a, b)` of least degree with `a / b = num / den`, found
/// as the kernel of `num·b − den·a = 0` at increasing degree bounds.
/// `b` is scaled to have constant term 1 when that term is nonzero, else
/// leading coefficient 1.
pub fn reduce_ratio(num: &UPoly, den: &UPoly) -> Option<(UPoly, UPoly)> {
    if den.is_zero() {
        return None;
    }
    if num.is_zero() {
        return Some((UPoly::default(), UPoly::one()));
    }
    let bound = num.0.len().max(den.0.len());
    for k in 0..bound {
        // unknowns a_0..a_k, b_0..b_k
        let cols = 2 * (k + 1);
        let rows = k + bound;
        let mut m = vec![vec![QScalar::zero(); cols]; rows];
        for r in 0..rows {
            for c in 0..=k {
                if r >= c {
                    m[r][k + 1 + c] = num.coeff(r - c);
                    m[r][c] = -den.coeff(r - c);
                }
            }
        }
        let ker = linalg::kernel(&m, cols);
        if let Some(v) = ker.into_iter().next() {
            let a = UPoly::new(v[..=k].to_vec());
            let b = UPoly::new(v[k + 1..].to_vec());
            let norm = if b.coeff(0).is_zero() { b.leading() } else { b.coeff(0) };
            let inv = norm.checked_inv()?;
            return Some((a.scale(&inv), b.scale(&inv)));
        }
    }
    None
}

/// Exact square root of a value `c q^e` with `c` a positive rational square.
pub fn monomial_sqrt(x: &QScalar) -> Option<QScalar> {
    let (c, e) = x.as_monomial()?;
    if !c.is_positive() {
        return None;
    }
    let rn = c.numer().sqrt();
    let rd = c.denom().sqrt();
    if &rn * &rn != *c.numer() || &rd * &rd != *c.denom() {
        return None;
    }
    let root = num_rational::BigRational::new(rn, rd);
    let half = e / num_rational::BigRational::from_integer(2.into());
    Some(QScalar::from_rational(&root) * QScalar::q_pow_rational(&half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| QScalar::from_int(x)).collect())
    }

    #[test]
    fn reduce_common_factor() {
        let num = &p(&[1, 1]) * &p(&[2, -1]);
        let den = &p(&[1, 1]) * &p(&[3, 1]);
        let (a, b) = reduce_ratio(&num, &den).unwrap();
        assert_eq!(b.coeff(0), QScalar::one());
        assert_eq!(&a * &p(&[3, 1]), &b * &p(&[2, -1]));
        assert_eq!(a.degree(), Some(1));
    }

    #[test]
    fn sqrt_of_monomials() {
        let x = QScalar::from_int(4) * QScalar::q_pow(2);
        assert_eq!(monomial_sqrt(&x), Some(QScalar::from_int(2) * QScalar::q_pow(1)));
        assert_eq!(monomial_sqrt(&QScalar::from_int(-1)), None);
        assert_eq!(monomial_sqrt(&QScalar::from_int(2)), None);
    }
}
