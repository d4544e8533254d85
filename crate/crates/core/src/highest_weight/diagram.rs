use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{classify_finite, pairing2, HWeight, HwError};
use crate::parity::{hash_count, rho_vector, ParitySeq};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoxKind {
    /// Equal-parity pair; `label` is `d̄_i` followed by `l_ij`.
    Even { label: String },
    /// Odd pair with `(Λ+ρ|ε_i−ε_j) ≠ 0`.
    Triangle,
    /// Odd pair with `(Λ+ρ|ε_i−ε_j) = 0`.
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramBox {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub kind: BoxKind,
}

/// The box strip: one box per pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub sequence: ParitySeq,
    pub boxes: Vec<DiagramBox>,
}

impl Diagram {
    pub fn at(&self, i: usize, j: usize) -> Option<&BoxKind> {
        self.boxes.iter().find(|b| (b.i, b.j) == (i, j)).map(|b| &b.kind)
    }

    pub fn has_circle(&self) -> bool {
        self.boxes.iter().any(|b| b.kind == BoxKind::Circle)
    }

    /// Staircase layout: row `k` holds the pairs `(i, i + k + 1)`, so the top
    /// row is the simple pairs. Circles print as `O`, triangles as `/`.
    pub fn ascii(&self) -> String {
        let n = self.sequence.len();
        let cell = |b: &BoxKind| match b {
            BoxKind::Even { label } => label.clone(),
            BoxKind::Triangle => "/".to_string(),
            BoxKind::Circle => "O".to_string(),
        };
        let width = self.boxes.iter().map(|b| cell(&b.kind).len()).max().unwrap_or(1).max(3);
        let mut out = String::new();
        for k in 0..n.saturating_sub(1) {
            let row: Vec<String> = (1..n - k)
                .map(|i| format!("[{:^width$}]", cell(self.at(i, i + k + 1).expect("box present"))))
                .collect();
            out.push_str(row.join("").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Box strip of a finite-dimensional weight.
pub fn render_diagram(w: &HWeight) -> Result<Diagram, HwError> {
    if !classify_finite(w) {
        return Err(HwError::Infinite);
    }
    let s = &w.owner;
    let rho2 = rho_vector(s);
    let mut boxes = Vec::new();
    for i in 1..=s.len() {
        for j in i + 1..=s.len() {
            let kind = if s.pair_parity(i, j) == 0 {
                let hash = hash_count(s, i, j)? as i64;
                let l = &w.exps[i - 1] - &w.exps[j - 1] - BigRational::from_integer(hash.into());
                let sign = if s.d(i) == 1 { '+' } else { '-' };
                BoxKind::Even { label: format!("{sign}{l}") }
            } else if pairing2(w, &rho2, i, j).is_zero() {
                BoxKind::Circle
            } else {
                BoxKind::Triangle
            };
            boxes.push(DiagramBox { i, j, kind });
        }
    }
    Ok(Diagram { sequence: s.clone(), boxes })
}
