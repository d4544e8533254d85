use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{self, IPoly};
use super::{Field, QField, ScalarError};

/// An element of the field of rational functions in `q` over the rationals.
///
/// Internally the value is `x^lo * num(x) / den(x)` where `x = q^(1/root)`.
/// Fractional powers of `q` only appear when weights with rational exponents
/// are used; for everything else `root == 1`.
///
/// Canonical form: `num(0) != 0`, `den(0) > 0`, `num` and `den` coprime,
/// the joint integer content is 1 and `root` is minimal. Structural equality is
/// therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    root: u32,
    lo: i64,
    num: IPoly,
    den: IPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { root: 1, lo: 0, num: Vec::new(), den: vec![BigInt::one()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar { root: 1, lo: 0, num: vec![c], den: vec![BigInt::one()] }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer().clone()) / Self::from_bigint(r.denom().clone())
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        QScalar { root: 1, lo: e, num: vec![BigInt::one()], den: vec![BigInt::one()] }
    }

    /// `q^(p/r)` for a rational exponent.
    pub fn q_pow_rational(e: &BigRational) -> Self {
        let r = e.denom().to_u32().expect("exponent denominator too large");
        let p = e.numer().to_i64().expect("exponent numerator too large");
        Self::normalize(r, p, vec![BigInt::one()], vec![BigInt::one()])
    }

    /// `q^k - q^-k`.
    pub fn q_diff(k: i64) -> Self {
        Self::q_pow(k) - Self::q_pow(-k)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    /// True when the value is a Laurent polynomial in `q^(1/root)`.
    pub fn is_laurent(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// If the value is `c * q^e` returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(BigRational, BigRational)> {
        if self.num.len() == 1 && self.den.len() == 1 {
            let c = BigRational::new(self.num[0].clone(), self.den[0].clone());
            return Some((c, BigRational::new(self.lo.into(), self.root.into())));
        }
        None
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, e)) if e.is_zero() => Some(c),
            _ => None,
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.root, -self.lo, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.checked_inv().expect("zero to a negative power").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        // x^lo n(x)/d(x) with x -> 1/x
        let dn = self.num.len() as i64 - 1;
        let dd = self.den.len() as i64 - 1;
        let mut n = self.num.clone();
        n.reverse();
        let mut d = self.den.clone();
        d.reverse();
        Self::normalize(self.root, -self.lo - dn + dd, n, d)
    }

    /// Evaluates at a rational value of `q` (only for integral exponents).
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        if self.root != 1 {
            return None;
        }
        let horner = |p: &IPoly| {
            p.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + BigRational::from(c.clone()))
        };
        let d = horner(&self.den);
        if d.is_zero() || q.is_zero() {
            return None;
        }
        let qpow = if self.lo >= 0 {
            num_traits::pow(q.clone(), self.lo as usize)
        } else {
            num_traits::pow(q.recip(), (-self.lo) as usize)
        };
        Some(qpow * horner(&self.num) / d)
    }

    /// Numerator and denominator as ordinary polynomials in `q^(1/root)`,
    /// coefficients from degree 0.
    pub fn numerator_denominator(&self) -> (Vec<BigInt>, Vec<BigInt>, u32) {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        if self.lo >= 0 {
            let mut z = vec![BigInt::zero(); self.lo as usize];
            z.extend(n);
            n = z;
        } else {
            let mut z = vec![BigInt::zero(); (-self.lo) as usize];
            z.extend(d);
            d = z;
        }
        (n, d, self.root)
    }

    fn lift(&self, root: u32) -> (i64, IPoly, IPoly) {
        let k = (root / self.root) as usize;
        if k == 1 {
            return (self.lo, self.num.clone(), self.den.clone());
        }
        let spread = |p: &IPoly| {
            let mut out = vec![BigInt::zero(); (p.len() - 1) * k + 1];
            for (i, c) in p.iter().enumerate() {
                out[i * k] = c.clone();
            }
            out
        };
        (self.lo * k as i64, spread(&self.num), spread(&self.den))
    }

    fn common_root(a: &Self, b: &Self) -> u32 {
        if a.root == b.root {
            a.root
        } else {
            a.root.lcm(&b.root)
        }
    }

    fn normalize(root: u32, mut lo: i64, mut num: IPoly, mut den: IPoly) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let nz = num.iter().position(|c| !c.is_zero()).unwrap();
        if nz > 0 {
            num.drain(..nz);
            lo += nz as i64;
        }
        let dz = den.iter().position(|c| !c.is_zero()).unwrap();
        if dz > 0 {
            den.drain(..dz);
            lo -= dz as i64;
        }
        if den.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::exact_div(&num, &g);
                den = poly::exact_div(&den, &g);
            }
        }
        let c = poly::content(&num).gcd(&poly::content(&den));
        let c = if den[0].is_negative() { -c } else { c };
        if !c.is_one() {
            num = num.iter().map(|x| x / &c).collect();
            den = den.iter().map(|x| x / &c).collect();
        }
        let mut root = root;
        if root > 1 {
            let mut g = BigInt::from(root).gcd(&BigInt::from(lo));
            for (i, x) in num.iter().enumerate().chain(den.iter().enumerate()) {
                if !x.is_zero() {
                    g = g.gcd(&BigInt::from(i));
                }
            }
            let g = g.to_usize().unwrap();
            if g > 1 {
                let squeeze = |p: &IPoly| p.iter().step_by(g).cloned().collect::<IPoly>();
                num = squeeze(&num);
                den = squeeze(&den);
                lo /= g as i64;
                root /= g as u32;
            }
        }
        QScalar { root, lo, num, den }
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let root = Self::common_root(self, other);
        let (la, na, da) = self.lift(root);
        let (lb, nb, db) = other.lift(root);
        let lo = la.min(lb);
        let shift = |l: i64, p: IPoly| {
            let mut z = vec![BigInt::zero(); (l - lo) as usize];
            z.extend(p);
            z
        };
        let na = shift(la, na);
        let nb = shift(lb, nb);
        if da == db {
            return Self::normalize(root, lo, poly::add(&na, &nb), da);
        }
        let num = poly::add(&poly::mul(&na, &db), &poly::mul(&nb, &da));
        Self::normalize(root, lo, num, poly::mul(&da, &db))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let root = Self::common_root(self, other);
        let (la, na, da) = self.lift(root);
        let (lb, nb, db) = other.lift(root);
        let lo = la + lb;
        if poly::is_one(&da) && poly::is_one(&db) {
            return Self::normalize(root, lo, poly::mul(&na, &nb), da);
        }
        Self::normalize(root, lo, poly::mul(&na, &nb), poly::mul(&da, &db))
    }

    fn fmt_exponent(e: i64, root: u32) -> String {
        let r = BigRational::new(e.into(), root.into());
        if r.is_integer() {
            format!("{}", r.numer())
        } else {
            format!("({}/{})", r.numer(), r.denom())
        }
    }

    fn fmt_poly(p: &[BigInt], lo: i64, root: u32) -> (String, usize) {
        let mut out = String::new();
        let mut terms = 0;
        for (i, c) in p.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = lo + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if terms == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                _ if e == root as i64 => "q".to_string(),
                _ => format!("q^{}", Self::fmt_exponent(e, root)),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
            terms += 1;
        }
        (out, terms)
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (n, d, root) = self.numerator_denominator();
        let (ns, nt) = Self::fmt_poly(&n, 0, root);
        if poly::is_one(&d) {
            return write!(f, "{ns}");
        }
        let (ds, dt) = Self::fmt_poly(&d, 0, root);
        let single = |terms: usize, s: &str| terms == 1 && !s.contains('*') && !s.starts_with('-');
        let ns = if nt > 1 { format!("({ns})") } else { ns };
        let ds = if single(dt, &ds) { ds } else { format!("({ds})") };
        write!(f, "{ns}/{ds}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl FromStr for QScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_qscalar(s)
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                $imp(self, rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                $imp(&self, rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, QScalar::add_impl);
forward_binop!(Mul, mul, QScalar::mul_impl);
forward_binop!(Sub, sub, |a: &QScalar, b: &QScalar| a.add_impl(&-b));
forward_binop!(Div, div, |a: &QScalar, b: &QScalar| a
    .mul_impl(&b.checked_inv().expect("division by zero in QScalar")));

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: poly::neg(&self.num), ..self.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(mut self) -> QScalar {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = self.mul_impl(rhs);
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

impl Field for QScalar {
    fn inv(&self) -> Option<Self> {
        self.checked_inv()
    }
}

impl QField for QScalar {
    fn q_pow(e: i64) -> Self {
        QScalar::q_pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    #[test]
    fn canonical_forms() {
        let x = q(1) - q(-1);
        let (n, d, _) = x.numerator_denominator();
        assert_eq!(n, vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        assert_eq!(d, vec![BigInt::zero(), BigInt::one()]);
        assert_eq!(x.to_string(), "(q^2 - 1)/q");
        let y = (q(2) - QScalar::one()) / (q(1) - QScalar::one());
        assert_eq!(y, q(1) + QScalar::one());
    }

    #[test]
    fn fractional_roots_reduce() {
        let half = QScalar::q_pow_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(&half * &half, q(1));
        assert_eq!(half.to_string(), "q^(1/2)");
    }

    #[test]
    fn bar_inverts_q() {
        let x = (q(3) + QScalar::from_int(2)) / (q(1) - QScalar::from_int(5));
        let expect = (q(-3) + QScalar::from_int(2)) / (q(-1) - QScalar::from_int(5));
        assert_eq!(x.bar(), expect);
    }
}
