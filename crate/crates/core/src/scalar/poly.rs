//! Dense integer polynomials stored from degree 0 upward, no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> IPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> IPoly {
    let c = content(a);
    if c.is_zero() || c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &lr * y;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd in Z[x] with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    if x.last().is_some_and(Signed::is_negative) {
        x = neg(&x);
    }
    x
}

/// Exact quotient `a / b`; the caller guarantees divisibility in Z[x].
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> IPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] / lb;
        debug_assert!((&c * lb) == r[dr], "inexact polynomial division");
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut quot);
    quot
}

pub(crate) fn is_one(a: &[BigInt]) -> bool {
    a.len() == 1 && a[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[1, 0, -1]);
        assert_eq!(exact_div(&a, &p(&[1, 1])), p(&[1, -1]));
    }
}
