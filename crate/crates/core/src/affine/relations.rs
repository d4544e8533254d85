//! The explicit affine relations as identities of Laurent polynomials in
//! `u`, `v` with matrix coefficients.

use std::collections::BTreeMap;

use serde::Serialize;

use super::rep::{AffineRep, Series};
use crate::graded::GradedMatrix;
use crate::scalar::{qd, qd_diff, QScalar};

/// The ordered pair of series `(X(u), Y(v))` a relation is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AffineFamily {
    /// `t(u), t(v)`
    TT,
    /// `t̄(u), t̄(v)`
    BarBar,
    /// `t(u), t̄(v)`
    TBar,
    /// `t̄(u), t(v)`
    BarT,
}

impl AffineFamily {
    pub const ALL: [AffineFamily; 4] = [AffineFamily::TT, AffineFamily::BarBar, AffineFamily::TBar, AffineFamily::BarT];

    fn series(self) -> (Series, Series) {
        match self {
            AffineFamily::TT => (Series::T, Series::T),
            AffineFamily::BarBar => (Series::TBar, Series::TBar),
            AffineFamily::TBar => (Series::T, Series::TBar),
            AffineFamily::BarT => (Series::TBar, Series::T),
        }
    }
}

/// A nonzero coefficient of a relation residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineFailure {
    pub family: AffineFamily,
    pub indices: (usize, usize, usize, usize),
    pub u_power: i64,
    pub v_power: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineRelationReport {
    pub instances: usize,
    pub failures: Vec<AffineFailure>,
}

impl AffineRelationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Matrix coefficients keyed by `(u power, v power)`.
type Laurent2 = BTreeMap<(i64, i64), GradedMatrix<QScalar>>;

fn accumulate(acc: &mut Laurent2, key: (i64, i64), m: GradedMatrix<QScalar>) {
    if m.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(x) => {
            *x = &*x + &m;
            if x.is_zero() {
                acc.remove(&key);
            }
        }
        None => {
            acc.insert(key, m);
        }
    }
}

/// Adds `(cu·u + cv·v) · A(x) B(y)` to `acc`, where `A` is the entry `a` of
/// series `sa` in variable `x` and similarly for `B`. `x_is_u` says which
/// variable the first factor carries.
#[allow(clippy::too_many_arguments)]
fn add_product(
    acc: &mut Laurent2,
    rep: &AffineRep,
    (sa, a): (Series, (usize, usize)),
    (sb, b): (Series, (usize, usize)),
    x_is_u: bool,
    cu: &QScalar,
    cv: &QScalar,
) {
    if cu.is_zero() && cv.is_zero() {
        return;
    }
    let bound = rep.mode_bound();
    for r in 0..=bound {
        let ma = rep.mode(sa, r, a.0, a.1);
        if ma.is_zero() {
            continue;
        }
        for p in 0..=bound {
            let mb = rep.mode(sb, p, b.0, b.1);
            if mb.is_zero() {
                continue;
            }
            let prod = ma.matmul(mb);
            if prod.is_zero() {
                continue;
            }
            let (ea, eb) = (sa.power(r), sb.power(p));
            let (eu, ev) = if x_is_u { (ea, eb) } else { (eb, ea) };
            if !cu.is_zero() {
                accumulate(acc, (eu + 1, ev), prod.scale(cu));
            }
            if !cv.is_zero() {
                accumulate(acc, (eu, ev + 1), prod.scale(cv));
            }
        }
    }
}

fn int(c: i64) -> QScalar {
    QScalar::from_int(c)
}

/// Residual `LHS − RHS` of the relation of `family` at `(i, j, k, l)`:
///
/// `(q_i^{-δik} v − q_i^{δik} u) X_ij(u) Y_kl(v) − ς_{ij;kl} (q_j^{-δjl} v − q_j^{δjl} u) Y_kl(v) X_ij(u)`
/// `− ς_{ik;kl} (q_k − q_k^{-1}) [(δ_{k<i} u + δ_{i<k} v) X_kj(u) Y_il(v) − (δ_{j<l} u + δ_{l<j} v) Y_kj(v) X_il(u)]`.
pub fn relation_residual(rep: &AffineRep, family: AffineFamily, (i, j, k, l): (usize, usize, usize, usize)) -> Laurent2 {
    let s = &rep.seq;
    let (x, y) = family.series();
    let d = |b: bool| b as i64;
    let mut acc = Laurent2::new();
    let qi = |e| qd::<QScalar>(s.d(i), e);
    let qj = |e| qd::<QScalar>(s.d(j), e);
    add_product(&mut acc, rep, (x, (i, j)), (y, (k, l)), true, &-qi(d(i == k)), &qi(-d(i == k)));
    let sg = int(s.sign(i, j, k, l) as i64);
    add_product(&mut acc, rep, (y, (k, l)), (x, (i, j)), false, &(&sg * &qj(d(j == l))), &-(&sg * &qj(-d(j == l))));
    let c = int(s.sign(i, k, k, l) as i64) * qd_diff::<QScalar>(s.d(k));
    add_product(&mut acc, rep, (x, (k, j)), (y, (i, l)), true, &-(&c * &int(d(k < i))), &-(&c * &int(d(i < k))));
    add_product(&mut acc, rep, (y, (k, j)), (x, (i, l)), false, &(&c * &int(d(j < l))), &(&c * &int(d(l < j))));
    acc
}

/// Checks every instance of the four explicit affine relation families.
pub fn verify_affine_relations(rep: &AffineRep) -> AffineRelationReport {
    let n = rep.n();
    let mut failures = Vec::new();
    let mut instances = 0;
    for family in AffineFamily::ALL {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        instances += 1;
                        for &(u_power, v_power) in relation_residual(rep, family, (i, j, k, l)).keys() {
                            failures.push(AffineFailure { family, indices: (i, j, k, l), u_power, v_power });
                        }
                    }
                }
            }
        }
    }
    AffineRelationReport { instances, failures }
}
