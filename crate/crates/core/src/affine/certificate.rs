//! Polynomial certificates of finite type for highest-weight series.

use serde::Serialize;

use super::poly::{monomial_sqrt, reduce_ratio, UPoly};
use super::series::HWSeries;
use crate::linalg;
use crate::parity::ParitySeq;
use crate::scalar::QScalar;

use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("pair ({i},{j}): {reason}")]
    Refused { i: usize, j: usize, reason: String },
    #[error("{0}")]
    Shape(String),
}

fn refuse(i: usize, j: usize, reason: impl Into<String>) -> CertificateError {
    CertificateError::Refused { i, j, reason: reason.into() }
}

/// Odd pair: `λ_b/λ_c = Q/Q̃ = λ̄_b/λ̄_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddPairCertificate {
    pub b: usize,
    pub c: usize,
    pub q: UPoly,
    pub q_tilde: UPoly,
    pub k: usize,
    /// Whether the scaling `Q̃_0 Q̃_K = 1` was reachable inside the field.
    pub normalized: bool,
}

/// Even pair: `ε_i λ_i / ε_j λ_j = q_i^{deg P} P(q_i^{-2} u) / P(u)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenPairCertificate {
    pub i: usize,
    pub j: usize,
    pub p: UPoly,
    pub eps: (i8, i8),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum PolyCertificate {
    T1(OddPairCertificate),
    T2(EvenPairCertificate),
    T3 { even: Vec<EvenPairCertificate>, odd: Vec<OddPairCertificate>, factorizations_checked: usize },
}

/// The reduced ratio of `λ_i/λ_j`, checked against `λ̄_i/λ̄_j`.
fn pair_ratio(hw: &HWSeries, i: usize, j: usize) -> Result<(UPoly, UPoly), CertificateError> {
    let (a, b) = reduce_ratio(&hw.lambda_poly(i), &hw.lambda_poly(j)).ok_or_else(|| refuse(i, j, "λ_j(u) vanishes"))?;
    let (ab, bb) = reduce_ratio(&hw.lambda_bar_poly(i), &hw.lambda_bar_poly(j)).ok_or_else(|| refuse(i, j, "λ̄_j(u) vanishes"))?;
    if &a * &bb != &ab * &b {
        return Err(refuse(i, j, format!("λ ratio {a} / {b} differs from λ̄ ratio {ab} / {bb}")));
    }
    Ok((a, b))
}

fn check_shape(hw: &HWSeries, i: usize, j: usize) -> Result<(), CertificateError> {
    if hw.n() != hw.seq.len() || i == 0 || j > hw.n() || i >= j {
        return Err(CertificateError::Shape(format!("pair ({i},{j}) outside 1..={}", hw.n())));
    }
    Ok(())
}

/// The gl(1|1)-type certificate for an odd pair `b < c`.
pub fn odd_pair(hw: &HWSeries, b: usize, c: usize) -> Result<OddPairCertificate, CertificateError> {
    check_shape(hw, b, c)?;
    let (q, qt) = pair_ratio(hw, b, c)?;
    let (dq, dqt) = (q.degree().unwrap_or(0), qt.degree().unwrap_or(0));
    if q.is_zero() {
        return Err(refuse(b, c, "λ_b(u) vanishes"));
    }
    if dq != dqt {
        return Err(refuse(b, c, format!("coprime pair has degrees {dq} and {dqt}")));
    }
    let pq = q.coeff(0) * q.leading();
    let pqt = qt.coeff(0) * qt.leading();
    if pqt.is_zero() {
        return Err(refuse(b, c, "Q̃ has zero constant term"));
    }
    if pq != pqt {
        return Err(refuse(b, c, format!("Q_0 Q_K = {pq} but Q̃_0 Q̃_K = {pqt}")));
    }
    let (q, qt, normalized) = match monomial_sqrt(&pqt).and_then(|r| r.checked_inv()) {
        Some(s) => (q.scale(&s), qt.scale(&s), true),
        None => (q, qt, false),
    };
    Ok(OddPairCertificate { b, c, q, q_tilde: qt, k: dq, normalized })
}

/// The rank-two even certificate for `i < j` of equal parity, with `q_i = q^{d_i}`.
pub fn even_pair(hw: &HWSeries, i: usize, j: usize) -> Result<EvenPairCertificate, CertificateError> {
    check_shape(hw, i, j)?;
    let d = hw.seq.d(i) as i64;
    let (a, b) = pair_ratio(hw, i, j)?;
    if b.coeff(0).is_zero() {
        return Err(refuse(i, j, "ratio has a pole at u = 0"));
    }
    let r0 = a.coeff(0) * b.coeff(0).checked_inv().expect("nonzero");
    let Some((c, e)) = r0.as_monomial() else {
        return Err(refuse(i, j, format!("ratio at u = 0 is {r0}, not ±q^k")));
    };
    if !c.abs().is_one() || !e.is_integer() {
        return Err(refuse(i, j, format!("ratio at u = 0 is {r0}, not ±q^k")));
    }
    let g = e.to_integer() * d;
    if g.is_negative() {
        return Err(refuse(i, j, format!("ratio at u = 0 is q_i^{g}, negative degree")));
    }
    let g: usize = g.try_into().map_err(|_| refuse(i, j, "degree too large"))?;
    let eps = if c.is_positive() { 1 } else { -1 };
    // ε q_i^g P(q_i^{-2} u) B(u) = A(u) P(u), unknowns p_1..p_g with p_0 = 1.
    let pref = QScalar::from_int(eps) * QScalar::q_pow(d * g as i64);
    let shrink = QScalar::q_pow(-2 * d);
    let rows = g + a.coeffs().len().max(b.coeffs().len());
    let mut m = vec![vec![QScalar::zero(); g]; rows];
    let mut rhs = vec![QScalar::zero(); rows];
    for k in 0..=g {
        let lhs_coeff = &pref * &shrink.pow(k as i64);
        for r in 0..rows {
            if r < k {
                continue;
            }
            let x = &lhs_coeff * &b.coeff(r - k) - a.coeff(r - k);
            if k == 0 {
                rhs[r] = -x;
            } else {
                m[r][k - 1] = x;
            }
        }
    }
    let coeffs = if g == 0 {
        rhs.iter().all(QScalar::is_zero).then(Vec::new)
    } else {
        linalg::solve(&m, &rhs, g)
    };
    let Some(coeffs) = coeffs else {
        return Err(refuse(i, j, format!("no P of degree {g} fits the ratio")));
    };
    let mut all = vec![QScalar::one()];
    all.extend(coeffs);
    let p = UPoly::new(all);
    if p.degree() != Some(g) {
        return Err(refuse(i, j, format!("solution has degree below {g}")));
    }
    Ok(EvenPairCertificate { i, j, p, eps: (eps as i8, 1) })
}

fn pair_series(hw: &HWSeries, idx: [usize; 2]) -> HWSeries {
    let sub: Vec<u8> = idx.iter().map(|&k| hw.seq.parity(k)).collect();
    HWSeries::new(
        &ParitySeq::new(sub).expect("binary"),
        idx.iter().map(|&k| hw.lambda[k - 1].clone()).collect(),
        idx.iter().map(|&k| hw.lambda_bar[k - 1].clone()).collect(),
    )
}

/// Certificate for `N = 2` with one even and one odd index.
pub fn check_t1(hw: &HWSeries) -> Result<PolyCertificate, CertificateError> {
    if hw.n() != 2 || hw.seq.parity(1) == hw.seq.parity(2) {
        return Err(CertificateError::Shape("check_t1 needs s = 01 or 10".into()));
    }
    odd_pair(hw, 1, 2).map(PolyCertificate::T1)
}

/// Certificate for `s = 00` or `s = 11`.
pub fn check_t2(hw: &HWSeries) -> Result<PolyCertificate, CertificateError> {
    if hw.n() != 2 || hw.seq.parity(1) != hw.seq.parity(2) {
        return Err(CertificateError::Shape("check_t2 needs s = 00 or 11".into()));
    }
    even_pair(hw, 1, 2).map(PolyCertificate::T2)
}

/// Pairwise certificates for every `i < j` plus the factorizations
/// `P_ij = P_ih P_hj` through intermediate indices of the same parity.
pub fn check_t3(hw: &HWSeries) -> Result<PolyCertificate, CertificateError> {
    let n = hw.n();
    if n < 2 || n != hw.seq.len() {
        return Err(CertificateError::Shape(format!("check_t3 needs N ≥ 2 matching the sequence, got {n}")));
    }
    let s = &hw.seq;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if s.parity(i) == s.parity(j) {
                even.push(even_pair(&pair_series(hw, [i, j]), 1, 2).map(|c| EvenPairCertificate { i, j, ..c }).map_err(|e| relabel(e, i, j))?);
            } else {
                odd.push(odd_pair(&pair_series(hw, [i, j]), 1, 2).map(|c| OddPairCertificate { b: i, c: j, ..c }).map_err(|e| relabel(e, i, j))?);
            }
        }
    }
    let find = |i: usize, j: usize| even.iter().find(|c| c.i == i && c.j == j).map(|c| &c.p);
    let mut checked = 0;
    for i in 1..=n {
        for j in i + 2..=n {
            if s.parity(i) != s.parity(j) {
                continue;
            }
            for h in i + 1..j {
                if s.parity(h) != s.parity(i) {
                    continue;
                }
                let (pij, pih, phj) = (find(i, j).expect("even"), find(i, h).expect("even"), find(h, j).expect("even"));
                if *pij != pih * phj {
                    return Err(refuse(i, j, format!("P_{i}{j} ≠ P_{i}{h} P_{h}{j}")));
                }
                checked += 1;
            }
        }
    }
    Ok(PolyCertificate::T3 { even, odd, factorizations_checked: checked })
}

fn relabel(e: CertificateError, i: usize, j: usize) -> CertificateError {
    match e {
        CertificateError::Refused { reason, .. } => CertificateError::Refused { i, j, reason },
        other => other,
    }
}

/// The explicit q-string `Π_{r<len} (1 − q_i^{-2r} μ_j^{-2} a u)`.
pub fn q_string(d: i8, mu_j: &QScalar, a: &QScalar, len: usize) -> UPoly {
    let base = a * &mu_j.pow(-2);
    let roots: Vec<QScalar> = (0..len).map(|r| &base * &QScalar::q_pow(-2 * d as i64 * r as i64)).collect();
    UPoly::from_reciprocal_roots(&roots)
}
