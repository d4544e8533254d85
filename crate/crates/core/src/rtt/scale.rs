use super::algebra::RttAlgebra;
use super::element::AlgebraElement;
use super::gens::Slot;
use super::RttError;
use crate::scalar::QScalar;

/// Diagonal matrix `diag(𝔡ε_1, …, 𝔡ε_N)` for the scaling automorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScale {
    pub factor: QScalar,
    pub signs: Vec<i8>,
}

impl DiagonalScale {
    pub fn new(factor: QScalar, signs: Vec<i8>) -> Result<Self, RttError> {
        if factor.is_zero() {
            return Err(RttError::ZeroScale);
        }
        if signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(RttError::BadSign);
        }
        Ok(DiagonalScale { factor, signs })
    }

    pub fn identity(n: usize) -> Self {
        DiagonalScale { factor: QScalar::one(), signs: vec![1; n] }
    }

    pub fn inverse(&self) -> Self {
        DiagonalScale { factor: self.factor.checked_inv().expect("nonzero"), signs: self.signs.clone() }
    }

    fn entry(&self, i: usize) -> QScalar {
        &self.factor * QScalar::from_int(self.signs[i - 1] as i64)
    }
}

impl RttAlgebra {
    /// `T ↦ DT`, `T̄ ↦ D^{-1}T̄`, extended multiplicatively.
    pub fn scale_automorphism(&self, d: &DiagonalScale, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(d.signs.len(), self.seq().len(), "scale has wrong size");
        let layout = self.layout();
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let mut f = c.clone();
            for (p, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match layout.slot(p) {
                    Slot::Lower(j, _) => d.entry(j),
                    Slot::Diag(i) | Slot::Upper(i, _) => d.entry(i).checked_inv().expect("nonzero"),
                };
                f *= &base.pow(e as i64);
            }
            out.add_term(m.clone(), f);
        }
        out
    }
}
