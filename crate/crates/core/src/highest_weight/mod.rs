//! Highest weights, the finite-dimensionality classifier, typicality, the
//! dimension formula, explicit irreducible modules and box-strip diagrams.

mod diagram;
mod module;
mod weight;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::parity::{rho_vector, sort_to_standard, ParityError, ParitySeq};
use crate::rtt::RttError;

pub use diagram::{render_diagram, BoxKind, Diagram, DiagramBox};
pub use module::{build_irreducible, build_irreducible_in, BasisVector, BuildOutcome, ModuleRep};
pub use weight::HWeight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HwError {
    #[error("cannot parse weight: {0}")]
    Parse(String),
    #[error("weight has {got} entries, sequence has length {expected}")]
    Length { expected: usize, got: usize },
    #[error("position {0} is not an odd position")]
    NotOddPosition(usize),
    #[error("position {i} out of range for length {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("weight is not finite-dimensional")]
    Infinite,
    #[error("weight is atypical")]
    Atypical,
    #[error("level cap must be at least 1")]
    ZeroCap,
    #[error(transparent)]
    Parity(#[from] ParityError),
    #[error(transparent)]
    Algebra(#[from] RttError),
}

/// Which transition an odd reflection of a weight used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectRule {
    /// `Λ_i + Λ_{i+1} ≠ 0`: swap with shifts.
    Nonzero,
    /// `Λ_i + Λ_{i+1} = 0`: plain swap.
    Zero,
}

/// `reflect_weight` output; `weight.owner` is the reflected sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflected {
    pub weight: HWeight,
    pub rule: ReflectRule,
}

pub fn reflect_weight(w: &HWeight, i: usize) -> Result<Reflected, HwError> {
    let s = &w.owner;
    if i == 0 || i >= s.len() {
        return Err(HwError::IndexOutOfRange { i, n: s.len() });
    }
    if !s.is_odd_position(i) {
        return Err(HwError::NotOddPosition(i));
    }
    let target = s.swapped(i)?;
    let (a, b) = (w.exps[i - 1].clone(), w.exps[i].clone());
    let mut signs = w.signs.clone();
    signs.swap(i - 1, i);
    let mut exps = w.exps.clone();
    let rule = if (&a + &b).is_zero() {
        exps[i - 1] = b;
        exps[i] = a;
        ReflectRule::Zero
    } else {
        exps[i - 1] = b + BigRational::one();
        exps[i] = a - BigRational::one();
        ReflectRule::Nonzero
    };
    Ok(Reflected { weight: HWeight { owner: target, signs, exps }, rule })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub position: usize,
    pub rule: ReflectRule,
    pub sequence: ParitySeq,
    pub weight: String,
}

/// Why a weight is infinite-dimensional: the equal-parity pair `(position,
/// position + 1)` of `sequence` has `Λ_i − Λ_{i+1} = exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub sequence: ParitySeq,
    pub position: usize,
    pub exponent: String,
    /// `"negative-exponent"` or `"standard-even-failure"` (not an integer).
    pub rule: String,
}

fn ser_opt_display<T: std::fmt::Display, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyVerdict {
    pub sequence: ParitySeq,
    pub weight: String,
    pub finite: bool,
    /// `None` for infinite weights.
    pub typical: Option<bool>,
    pub vanishing_odd_roots: Vec<(usize, usize)>,
    pub trace: Vec<TraceStep>,
    pub standard_weight: Option<String>,
    pub failure: Option<FailureWitness>,
    #[serde(serialize_with = "ser_opt_display")]
    pub kac_dimension: Option<BigInt>,
    pub diagram: Option<Diagram>,
}

fn even_pair_failure(w: &HWeight) -> Option<FailureWitness> {
    let s = &w.owner;
    (1..s.len()).filter(|&i| !s.is_odd_position(i)).find_map(|i| {
        let diff = &w.exps[i - 1] - &w.exps[i];
        let rule = if !diff.is_integer() {
            "standard-even-failure"
        } else if diff.is_negative() {
            "negative-exponent"
        } else {
            return None;
        };
        Some(FailureWitness { sequence: s.clone(), position: i, exponent: diff.to_string(), rule: rule.to_string() })
    })
}

/// Reflects along the sorting word until the sequence is standard, stopping at
/// the first equal-parity pair that rules out finite dimension.
fn transport(w: &HWeight) -> (Vec<TraceStep>, Result<HWeight, FailureWitness>) {
    let mut cur = w.clone();
    let mut trace = Vec::new();
    loop {
        if let Some(f) = even_pair_failure(&cur) {
            return (trace, Err(f));
        }
        let Some(&i) = sort_to_standard(&cur.owner).first() else {
            return (trace, Ok(cur));
        };
        let r = reflect_weight(&cur, i).expect("sorting word positions are odd");
        trace.push(TraceStep { position: i, rule: r.rule, sequence: r.weight.owner.clone(), weight: r.weight.to_string() });
        cur = r.weight;
    }
}

/// `2(Λ + ρ_s | ε_i − ε_j)`.
fn pairing2(w: &HWeight, rho2: &[i64], i: usize, j: usize) -> BigRational {
    let s = &w.owner;
    let two = BigRational::from_integer(2.into());
    let at = |k: usize| &two * &w.exps[k - 1] + BigRational::from_integer(rho2[k - 1].into());
    at(i) * BigRational::from_integer(s.d(i).into()) - at(j) * BigRational::from_integer(s.d(j).into())
}

/// Whether no odd positive root is orthogonal to `Λ + ρ_s`; also returns the
/// roots that are.
pub fn typicality(w: &HWeight) -> (bool, Vec<(usize, usize)>) {
    let s = &w.owner;
    let rho2 = rho_vector(s);
    let mut bad = Vec::new();
    for i in 1..=s.len() {
        for j in i + 1..=s.len() {
            if s.pair_parity(i, j) == 1 && pairing2(w, &rho2, i, j).is_zero() {
                bad.push((i, j));
            }
        }
    }
    (bad.is_empty(), bad)
}

fn weyl_dimension(std_w: &HWeight) -> BigInt {
    let s = &std_w.owner;
    let rho2 = rho_vector(s);
    let zero_w = HWeight { owner: s.clone(), signs: std_w.signs.clone(), exps: vec![BigRational::zero(); s.len()] };
    let mut acc = BigRational::from_integer(BigInt::from(2).pow((s.m() * s.n()) as u32));
    for i in 1..=s.len() {
        for j in i + 1..=s.len() {
            if s.pair_parity(i, j) == 0 {
                acc *= pairing2(std_w, &rho2, i, j) / pairing2(&zero_w, &rho2, i, j);
            }
        }
    }
    assert!(acc.is_integer(), "Weyl product {acc} is not an integer");
    acc.to_integer()
}

/// `2^{mn} Π_{even α > 0} (Λ+ρ|α)/(ρ|α)` after transport to the standard sequence.
pub fn kac_dimension(w: &HWeight) -> Result<BigInt, HwError> {
    let (_, end) = transport(w);
    let std_w = end.map_err(|_| HwError::Infinite)?;
    if !typicality(w).0 {
        return Err(HwError::Atypical);
    }
    Ok(weyl_dimension(&std_w))
}

fn classify_finite(w: &HWeight) -> bool {
    transport(w).1.is_ok()
}

pub fn classify(w: &HWeight) -> ClassifyVerdict {
    let (trace, end) = transport(w);
    let mut v = ClassifyVerdict {
        sequence: w.owner.clone(),
        weight: w.to_string(),
        finite: end.is_ok(),
        typical: None,
        vanishing_odd_roots: Vec::new(),
        trace,
        standard_weight: None,
        failure: None,
        kac_dimension: None,
        diagram: None,
    };
    match end {
        Err(f) => v.failure = Some(f),
        Ok(std_w) => {
            let (typical, bad) = typicality(w);
            v.typical = Some(typical);
            v.vanishing_odd_roots = bad;
            if typical {
                v.kac_dimension = Some(weyl_dimension(&std_w));
            }
            v.standard_weight = Some(std_w.to_string());
            v.diagram = render_diagram(w).ok();
        }
    }
    v
}
