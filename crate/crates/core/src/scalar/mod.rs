//! Coefficient fields.
//!
//! [`QScalar`] is the exact field of rational functions in `q` used by the whole
//! library. The linear-algebra and R-matrix layers are generic over [`QField`]
//! so they can also run over [`RationalAt`], the rationals with `q` fixed to an
//! integer, which serves as an independent specialization check.

mod parse;
mod poly;
mod qscalar;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use qscalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn inv(&self) -> Option<Self>;
}

/// A field containing a distinguished invertible element `q`.
pub trait QField: Field {
    fn q_pow(e: i64) -> Self;
}

/// Rationals with `q` specialized to the integer `Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalAt<const Q: i64>(pub BigRational);

impl<const Q: i64> fmt::Display for RationalAt<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! rational_at_op {
    ($tr:ident, $m:ident) => {
        impl<const Q: i64> $tr for RationalAt<Q> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                RationalAt(self.0.$m(rhs.0))
            }
        }
    };
}
rational_at_op!(Add, add);
rational_at_op!(Sub, sub);
rational_at_op!(Mul, mul);
rational_at_op!(Div, div);

impl<const Q: i64> Neg for RationalAt<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalAt(-self.0)
    }
}

impl<const Q: i64> Zero for RationalAt<Q> {
    fn zero() -> Self {
        RationalAt(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const Q: i64> One for RationalAt<Q> {
    fn one() -> Self {
        RationalAt(BigRational::one())
    }
}

impl<const Q: i64> Field for RationalAt<Q> {
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| RationalAt(self.0.recip()))
    }
}

impl<const Q: i64> QField for RationalAt<Q> {
    fn q_pow(e: i64) -> Self {
        let q = BigRational::from(BigInt::from(Q));
        RationalAt(if e >= 0 {
            num_traits::pow(q, e as usize)
        } else {
            num_traits::pow(q.recip(), (-e) as usize)
        })
    }
}

impl<const Q: i64> RationalAt<Q> {
    /// Image of an exact scalar under `q -> Q`, when defined.
    pub fn specialize(x: &QScalar) -> Option<Self> {
        x.eval(&BigRational::from(BigInt::from(Q))).map(RationalAt)
    }
}

/// `q_i^e` where `d` is the sign `d_i`.
pub fn qd<S: QField>(d: i8, e: i64) -> S {
    S::q_pow(d as i64 * e)
}

/// `q_i - q_i^{-1}` for the sign `d_i`.
pub fn qd_diff<S: QField>(d: i8) -> S {
    qd::<S>(d, 1) - qd::<S>(d, -1)
}
