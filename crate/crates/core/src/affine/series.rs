//! Highest-weight series of an affine representation.

use serde::Serialize;

use super::poly::UPoly;
use super::rep::{AffineRep, Series};
use crate::linalg;
use crate::parity::ParitySeq;
use crate::scalar::QScalar;

/// `λ_i(u) = Σ_r lambda[i][r] u^{-r}` and `λ̄_i(u) = Σ_r lambda_bar[i][r] u^r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HWSeries {
    pub seq: ParitySeq,
    pub lambda: Vec<Vec<QScalar>>,
    pub lambda_bar: Vec<Vec<QScalar>>,
}

fn trimmed(mut v: Vec<QScalar>) -> Vec<QScalar> {
    while v.last().is_some_and(QScalar::is_zero) {
        v.pop();
    }
    v
}

fn convolve(a: &[QScalar], b: &[QScalar]) -> Vec<QScalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trimmed(out)
}

impl HWSeries {
    pub fn new(seq: &ParitySeq, lambda: Vec<Vec<QScalar>>, lambda_bar: Vec<Vec<QScalar>>) -> Self {
        HWSeries {
            seq: seq.clone(),
            lambda: lambda.into_iter().map(trimmed).collect(),
            lambda_bar: lambda_bar.into_iter().map(trimmed).collect(),
        }
    }

    /// The series of an evaluation module: `μ_i(u) = μ_i^{-1} − μ_i a^{-1} u^{-1}`,
    /// `μ̄_i(u) = μ_i − μ_i^{-1} a u`.
    pub fn evaluation(seq: &ParitySeq, mu: &[QScalar], a: &QScalar) -> Self {
        let a_inv = a.checked_inv().expect("nonzero evaluation parameter");
        let lambda = mu.iter().map(|m| vec![m.checked_inv().expect("nonzero"), -(m * &a_inv)]).collect();
        let lambda_bar = mu.iter().map(|m| vec![m.clone(), -(m.checked_inv().expect("nonzero") * a)]).collect();
        HWSeries::new(seq, lambda, lambda_bar)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// Coefficient-wise product of the series.
    pub fn product(&self, other: &HWSeries) -> HWSeries {
        let lambda = self.lambda.iter().zip(&other.lambda).map(|(a, b)| convolve(a, b)).collect();
        let lambda_bar = self.lambda_bar.iter().zip(&other.lambda_bar).map(|(a, b)| convolve(a, b)).collect();
        HWSeries::new(&self.seq, lambda, lambda_bar)
    }

    /// `λ_i^{(0)} λ̄_i^{(0)} = 1` for every `i`.
    pub fn is_unit(&self) -> bool {
        self.lambda.iter().zip(&self.lambda_bar).all(|(a, b)| match (a.first(), b.first()) {
            (Some(x), Some(y)) => (x * y).is_one(),
            _ => false,
        })
    }

    /// `λ_i(u)·u^{D}` as a polynomial in `u`, `D` the largest `u^{-1}` degree
    /// among all `λ_k`.
    pub fn lambda_poly(&self, i: usize) -> UPoly {
        let d = self.lambda.iter().map(Vec::len).max().unwrap_or(0);
        let c = &self.lambda[i - 1];
        UPoly::new((0..d).map(|k| c.get(d - 1 - k).cloned().unwrap_or_else(QScalar::zero)).collect())
    }

    pub fn lambda_bar_poly(&self, i: usize) -> UPoly {
        UPoly::new(self.lambda_bar[i - 1].clone())
    }

    /// The series after `T(u) ↦ f(u)T(u)`, `T̄(u) ↦ g(u)T̄(u)`, truncated at
    /// mode `order` when `f` or `g` is a truncated inverse.
    pub fn twisted(&self, f: &[QScalar], g: &[QScalar], order: Option<usize>) -> HWSeries {
        let cut = |v: Vec<QScalar>| match order {
            Some(o) => v.into_iter().take(o + 1).collect(),
            None => v,
        };
        let lambda = self.lambda.iter().map(|a| cut(convolve(a, f))).collect();
        let lambda_bar = self.lambda_bar.iter().map(|a| cut(convolve(a, g))).collect();
        HWSeries::new(&self.seq, lambda, lambda_bar)
    }
}

/// First `order + 1` coefficients of `1 / c(x)` for a power series `c` with
/// invertible constant term.
pub fn inverse_series(c: &[QScalar], order: usize) -> Option<Vec<QScalar>> {
    let c0_inv = c.first()?.checked_inv()?;
    let mut out: Vec<QScalar> = vec![c0_inv.clone()];
    for r in 1..=order {
        let mut acc = QScalar::zero();
        for k in 1..=r.min(c.len().saturating_sub(1)) {
            acc += &(&c[k] * &out[r - k]);
        }
        out.push(-(acc * &c0_inv));
    }
    Some(out)
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SeriesOutcome {
    Found {
        series: HWSeries,
        vector: Vec<QScalar>,
        /// Dimension of the joint kernel of the raising modes.
        singular_dim: usize,
        unique: bool,
    },
    NoJointMaximalVector { singular_dim: usize },
}

impl SeriesOutcome {
    pub fn series(&self) -> Option<&HWSeries> {
        match self {
            SeriesOutcome::Found { series, .. } => Some(series),
            SeriesOutcome::NoJointMaximalVector { .. } => None,
        }
    }
}

/// Scalar `c` with `w = c v`, if any.
fn proportionality(v: &[QScalar], w: &[QScalar]) -> Option<QScalar> {
    let p = v.iter().position(|x| !x.is_zero())?;
    let c = &w[p] * &v[p].checked_inv()?;
    v.iter().zip(w).all(|(a, b)| *b == a * &c).then_some(c)
}

/// Solves `t^{(r)}_{ij} v = t̄^{(r)}_{ij} v = 0` for `i < j` and every mode,
/// then looks for a joint eigenvector of the diagonal modes among the known
/// maximal vector and the kernel basis.
pub fn highest_weight_series(rep: &AffineRep) -> SeriesOutcome {
    let n = rep.n();
    let dim = rep.dim();
    let mut rows: Vec<Vec<QScalar>> = Vec::new();
    for ((_, _, i, j), m) in rep.nonzero_modes() {
        if i < j {
            rows.extend(m.to_dense());
        }
    }
    let kernel = if rows.is_empty() {
        (0..dim).map(|k| (0..dim).map(|c| if c == k { QScalar::one() } else { QScalar::zero() }).collect()).collect()
    } else {
        linalg::kernel(&rows, dim)
    };
    let singular_dim = kernel.len();
    let mut candidates: Vec<Vec<QScalar>> = Vec::new();
    if let Some(v) = &rep.maximal_vector {
        if rows.iter().all(|row| row.iter().zip(v).fold(QScalar::zero(), |acc, (a, b)| acc + a * b).is_zero()) {
            candidates.push(v.clone());
        }
    }
    candidates.extend(kernel);
    'candidate: for v in candidates {
        let mut lambda = vec![Vec::new(); n];
        let mut lambda_bar = vec![Vec::new(); n];
        for i in 1..=n {
            for r in 0..=rep.mode_bound() {
                for (series, out) in [(Series::T, &mut lambda), (Series::TBar, &mut lambda_bar)] {
                    let w = rep.mode(series, r, i, i).apply(&v);
                    let Some(c) = proportionality(&v, &w) else {
                        continue 'candidate;
                    };
                    out[i - 1].push(c);
                }
            }
        }
        let series = HWSeries::new(&rep.seq, lambda, lambda_bar);
        return SeriesOutcome::Found { series, vector: v, singular_dim, unique: singular_dim == 1 };
    }
    SeriesOutcome::NoJointMaximalVector { singular_dim }
}
