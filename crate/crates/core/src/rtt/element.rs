use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gens::{Layout, Slot};
use crate::parity::ParitySeq;
use crate::scalar::QScalar;

/// Exponent vector over the PBW positions of a [`Layout`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of off-diagonal factors.
    pub fn off_degree(&self, layout: &Layout) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|&(p, _)| !layout.is_diag(p))
            .map(|(_, &e)| e as u32)
            .sum()
    }

    /// Weight in the `ε` basis: `t_ij` and `t̄_ij` carry `ε_i − ε_j`.
    pub fn weight(&self, layout: &Layout) -> Vec<i64> {
        let mut w = vec![0i64; layout.n];
        for (p, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (i, j) = layout.indices(p);
            w[i - 1] += e as i64;
            w[j - 1] -= e as i64;
        }
        w
    }

    pub fn parity(&self, s: &ParitySeq, layout: &Layout) -> u8 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &e)| acc ^ ((e.unsigned_abs() as u8 & 1) & layout.parity(s, p)))
    }

    pub fn render(&self, layout: &Layout) -> String {
        let mut parts = Vec::new();
        for (p, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = match layout.slot(p) {
                Slot::Lower(i, j) => format!("t[{i},{j}]"),
                Slot::Diag(i) => format!("tb[{i},{i}]"),
                Slot::Upper(i, j) => format!("tb[{i},{j}]"),
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Finite linear combination of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub owner: ParitySeq,
    pub terms: BTreeMap<Monomial, QScalar>,
}

/// One normal-form term for JSON dumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDump {
    pub exponents: Vec<i32>,
    pub coefficient: QScalar,
}

impl AlgebraElement {
    pub fn zero(owner: &ParitySeq) -> Self {
        AlgebraElement { owner: owner.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(owner: &ParitySeq, c: QScalar) -> Self {
        let mut out = Self::zero(owner);
        out.add_term(Monomial::one(Layout::new(owner.len()).len()), c);
        out
    }

    pub fn one(owner: &ParitySeq) -> Self {
        Self::scalar(owner, QScalar::one())
    }

    pub fn monomial(owner: &ParitySeq, m: Monomial, c: QScalar) -> Self {
        let mut out = Self::zero(owner);
        out.add_term(m, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(&self.owner);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-QScalar::one())
    }

    /// Parity if homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let layout = Layout::new(self.owner.len());
        let mut p = None;
        for m in self.terms.keys() {
            let x = m.parity(&self.owner, &layout);
            match p {
                None => p = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        p
    }

    pub fn dump(&self) -> Vec<TermDump> {
        self.terms.iter().map(|(m, c)| TermDump { exponents: m.0.clone(), coefficient: c.clone() }).collect()
    }

    pub fn from_dump(owner: &ParitySeq, dump: &[TermDump]) -> Self {
        let mut out = Self::zero(owner);
        for t in dump {
            out.add_term(Monomial(t.exponents.clone()), t.coefficient.clone());
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let layout = Layout::new(self.owner.len());
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", m.render(&layout))?;
            } else {
                write!(f, "({c})*{}", m.render(&layout))?;
            }
        }
        Ok(())
    }
}
