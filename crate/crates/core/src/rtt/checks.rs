use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::RttAlgebra;
use super::element::{AlgebraElement, Monomial};
use super::gens::GenSymbol;
use super::rules::{all_relation_instances, Quadratic, RelationFamily};
use crate::scalar::QScalar;

/// A relation instance that did not straighten to zero.
#[derive(Debug, Clone, Serialize)]
pub struct RelationFailure {
    pub family: RelationFamily,
    pub indices: (usize, usize, usize, usize),
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub sequence: String,
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RttAlgebra {
    /// Straightens `Σ c · x·y`.
    pub fn eval_quadratic(&self, expr: &Quadratic) -> AlgebraElement {
        let mut acc = self.zero();
        for ((x, y), c) in expr {
            acc = acc.add(&self.mul(&self.gen(*x), &self.gen(*y)).scale(c));
        }
        acc
    }

    /// Straightens every explicit relation instance.
    pub fn check_defining_relations(&self) -> RelationReport {
        let instances = all_relation_instances(self.seq());
        let mut failures = Vec::new();
        for inst in &instances {
            let r = self.eval_quadratic(&inst.expr);
            if !r.is_zero() {
                failures.push(RelationFailure { family: inst.family, indices: inst.indices, residual: r.to_string() });
            }
        }
        RelationReport { sequence: self.seq().to_string(), checked: instances.len(), failures }
    }

    /// All generator symbols including `t̄_ii^{-1}`.
    pub fn symbols(&self) -> Vec<GenSymbol> {
        let n = self.seq().len();
        let mut out = GenSymbol::all(n);
        out.extend((1..=n).map(GenSymbol::tb_inv));
        out
    }

    /// A random linear combination of up to three words of length `1..=max_len`.
    pub fn random_element(&self, rng: &mut impl Rng, max_len: usize) -> AlgebraElement {
        let syms = self.symbols();
        let mut acc = self.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=max_len);
            let word: Vec<GenSymbol> = (0..len).map(|_| syms[rng.gen_range(0..syms.len())]).collect();
            let c = QScalar::from_int(rng.gen_range(-3..=3)) + QScalar::q_pow(rng.gen_range(-2..=2));
            acc = acc.add(&self.word(&word).scale(&c));
        }
        acc
    }

    /// Checks `(xy)z = x(yz)` on `trials` random triples; returns the failing
    /// trial indices.
    pub fn check_associativity(&self, trials: usize, max_len: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        for k in 0..trials {
            let x = self.random_element(&mut rng, max_len);
            let y = self.random_element(&mut rng, max_len);
            let z = self.random_element(&mut rng, max_len);
            if self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z)) {
                bad.push(k);
            }
        }
        bad
    }

    /// Number of PBW monomials of total length at most `max_len`, by ε-weight.
    /// A diagonal exponent `e` contributes `|e|` to the length.
    pub fn pbw_census(&self, max_len: usize) -> BTreeMap<Vec<i64>, usize> {
        let layout = self.layout().clone();
        let s = self.seq().clone();
        let mut out = BTreeMap::new();
        let mut cur = vec![0i32; layout.len()];
        fn rec(
            p: usize,
            left: usize,
            cur: &mut Vec<i32>,
            layout: &super::gens::Layout,
            s: &crate::parity::ParitySeq,
            out: &mut BTreeMap<Vec<i64>, usize>,
        ) {
            if p == layout.len() {
                *out.entry(Monomial(cur.clone()).weight(layout)).or_insert(0) += 1;
                return;
            }
            let range: Vec<i32> = if layout.is_diag(p) {
                (-(left as i32)..=left as i32).collect()
            } else if layout.parity(s, p) == 1 {
                (0..=left.min(1) as i32).collect()
            } else {
                (0..=left as i32).collect()
            };
            for e in range {
                cur[p] = e;
                rec(p + 1, left - e.unsigned_abs() as usize, cur, layout, s, out);
            }
            cur[p] = 0;
        }
        rec(0, max_len, &mut cur, &layout, &s, &mut out);
        out
    }
}
