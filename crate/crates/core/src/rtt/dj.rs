//! Images of the Drinfeld–Jimbo generators and relations inside the RTT algebra.

use serde::Serialize;

use super::algebra::RttAlgebra;
use super::element::AlgebraElement;
use crate::scalar::{qd, qd_diff, QScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DjGenerator {
    XPlus(usize),
    XMinus(usize),
    K(usize),
    KInv(usize),
}

/// Sign of the chosen Chevalley half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Half {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Serialize)]
pub struct DjFailure {
    pub relation: String,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DjReport {
    pub sequence: String,
    pub checked: usize,
    pub failures: Vec<DjFailure>,
}

impl DjReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RttAlgebra {
    pub fn dj_generator(&self, g: DjGenerator) -> AlgebraElement {
        let s = self.seq();
        match g {
            DjGenerator::K(a) => self.tb_diag_pow(a, 1),
            DjGenerator::KInv(a) => self.tb_diag_pow(a, -1),
            DjGenerator::XPlus(i) => {
                let c = qd_diff::<QScalar>(s.d(i)).checked_inv().expect("q_i - q_i^-1 is invertible");
                self.mul(&self.tb(i, i + 1), &self.t(i, i)).scale(&c)
            }
            DjGenerator::XMinus(i) => {
                let c = qd_diff::<QScalar>(s.d(i)).checked_inv().expect("q_i - q_i^-1 is invertible");
                self.mul(&self.tb(i, i), &self.t(i + 1, i)).scale(&-c)
            }
        }
    }

    fn x(&self, half: Half, i: usize) -> AlgebraElement {
        match half {
            Half::Plus => self.dj_generator(DjGenerator::XPlus(i)),
            Half::Minus => self.dj_generator(DjGenerator::XMinus(i)),
        }
    }

    /// All applicable instances of the DJ relations as `(label, LHS − RHS)`.
    pub fn dj_relation_instances(&self) -> Vec<(String, AlgebraElement)> {
        let s = self.seq();
        let n = s.len();
        let one = QScalar::one();
        let q = |i: usize| qd::<QScalar>(s.d(i), 1);
        let mut out = Vec::new();
        for a in 1..=n {
            let k = self.dj_generator(DjGenerator::K(a));
            let ki = self.dj_generator(DjGenerator::KInv(a));
            out.push((format!("k{a} k{a}^-1 = 1"), self.mul(&k, &ki).sub(&self.one())));
            out.push((format!("k{a}^-1 k{a} = 1"), self.mul(&ki, &k).sub(&self.one())));
            for b in 1..=n {
                let kb = self.dj_generator(DjGenerator::K(b));
                out.push((format!("k{a} k{b} = k{b} k{a}"), self.mul(&k, &kb).sub(&self.mul(&kb, &k))));
            }
            for i in 1..n {
                let e = s.form(a, i) - s.form(a, i + 1);
                for (half, sgn, tag) in [(Half::Plus, 1, "+"), (Half::Minus, -1, "-")] {
                    let x = self.x(half, i);
                    let lhs = self.product(&[&k, &x, &ki]);
                    out.push((format!("k{a} x{i}{tag} k{a}^-1"), lhs.sub(&x.scale(&QScalar::q_pow(sgn * e)))));
                }
            }
        }
        for i in 1..n {
            for j in 1..n {
                let mut lhs = self.supercommutator(&self.x(Half::Plus, i), &self.x(Half::Minus, j), &one);
                if i == j {
                    let kk = |a: i32, b: i32| self.mul(&self.tb_diag_pow(i, a), &self.tb_diag_pow(i + 1, b));
                    let c = qd_diff::<QScalar>(s.d(i)).checked_inv().expect("invertible");
                    lhs = lhs.sub(&kk(1, -1).sub(&kk(-1, 1)).scale(&c));
                }
                out.push((format!("[x{i}+, x{j}-]"), lhs));
            }
        }
        for (half, tag) in [(Half::Plus, "+"), (Half::Minus, "-")] {
            for i in 1..n {
                for j in 1..n {
                    if s.simple_form(i, j) == 0 {
                        let r = self.supercommutator(&self.x(half, i), &self.x(half, j), &one);
                        out.push((format!("[x{i}{tag}, x{j}{tag}]"), r));
                    }
                }
                let xi = self.x(half, i);
                if s.simple_form(i, i) != 0 {
                    for l in [i.wrapping_sub(1), i + 1] {
                        if !(1..n).contains(&l) {
                            continue;
                        }
                        let inner = self.supercommutator(&xi, &self.x(half, l), &q(i));
                        let r = self.supercommutator(&xi, &inner, &q(i).checked_inv().expect("unit"));
                        out.push((format!("serre x{i}{tag} x{l}{tag}"), r));
                    }
                } else if i > 1 && i + 1 < n {
                    let a = self.supercommutator(&self.x(half, i - 1), &xi, &q(i));
                    let b = self.supercommutator(&a, &self.x(half, i + 1), &q(i + 1));
                    let r = self.supercommutator(&b, &xi, &one);
                    out.push((format!("quartic x{i}{tag}"), r));
                }
            }
        }
        out
    }

    pub fn check_dj_relations(&self) -> DjReport {
        let inst = self.dj_relation_instances();
        let failures = inst
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(l, r)| DjFailure { relation: l.clone(), residual: r.to_string() })
            .collect();
        DjReport { sequence: self.seq().to_string(), checked: inst.len(), failures }
    }
}
