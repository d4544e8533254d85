//! Parity sequences and their root data. Indices are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("parity sequence must contain only '0' and '1', got {0:?}")]
    BadCharacter(String),
    #[error("parity sequence needs length at least 2, got {0}")]
    TooShort(usize),
    #[error("indices {i} and {j} have different parities")]
    ParityMismatch { i: usize, j: usize },
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

/// A 01-sequence `s`; `s_i = 0` marks an even basis vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParitySeq {
    bits: Vec<u8>,
}

impl ParitySeq {
    pub fn new(bits: Vec<u8>) -> Result<Self, ParityError> {
        if bits.iter().any(|&b| b > 1) {
            return Err(ParityError::BadCharacter(format!("{bits:?}")));
        }
        if bits.len() < 2 {
            return Err(ParityError::TooShort(bits.len()));
        }
        Ok(ParitySeq { bits })
    }

    pub fn standard(m: usize, n: usize) -> Self {
        let mut bits = vec![0; m];
        bits.resize(m + n, 1);
        ParitySeq::new(bits).expect("m + n >= 2")
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn m(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn n(&self) -> usize {
        self.len() - self.m()
    }

    /// `|i|` as 0 or 1.
    pub fn parity(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// `d_i = (-1)^{|i|}`.
    pub fn d(&self, i: usize) -> i8 {
        if self.bits[i - 1] == 0 {
            1
        } else {
            -1
        }
    }

    /// Parity of the matrix unit `E_ij`.
    pub fn pair_parity(&self, i: usize, j: usize) -> u8 {
        self.bits[i - 1] ^ self.bits[j - 1]
    }

    /// `(-1)^{(|a|+|b|)(|c|+|d|)}`.
    pub fn sign(&self, a: usize, b: usize, c: usize, d: usize) -> i8 {
        if self.pair_parity(a, b) & self.pair_parity(c, d) == 1 {
            -1
        } else {
            1
        }
    }

    pub fn is_standard(&self) -> bool {
        self.bits.windows(2).all(|w| w[0] <= w[1])
    }

    /// The sequence with positions `i` and `i+1` exchanged.
    pub fn swapped(&self, i: usize) -> Result<Self, ParityError> {
        if i == 0 || i >= self.len() {
            return Err(ParityError::OutOfRange(i));
        }
        let mut bits = self.bits.clone();
        bits.swap(i - 1, i);
        Ok(ParitySeq { bits })
    }

    /// Whether `s_i != s_{i+1}`.
    pub fn is_odd_position(&self, i: usize) -> bool {
        self.bits[i - 1] != self.bits[i]
    }

    /// `(ε_i | ε_j) = d_i δ_ij`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.d(i) as i64
        } else {
            0
        }
    }

    /// `(α_i | α_j)` for simple roots.
    pub fn simple_form(&self, i: usize, j: usize) -> i64 {
        self.form(i, j) - self.form(i, j + 1) - self.form(i + 1, j) + self.form(i + 1, j + 1)
    }
}

impl fmt::Display for ParitySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParitySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={self}")
    }
}

impl FromStr for ParitySeq {
    type Err = ParityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(ParityError::BadCharacter(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        ParitySeq::new(bits)
    }
}

impl Serialize for ParitySeq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParitySeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All sequences with `m` zeros and `n` ones in lexicographic order.
pub fn enumerate_sequences(m: usize, n: usize) -> Vec<ParitySeq> {
    assert!(m + n >= 2, "need m + n >= 2");
    let len = m + n;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << len) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let bits = (0..len).map(|k| ((mask >> (len - 1 - k)) & 1) as u8).collect();
        out.push(ParitySeq { bits });
    }
    out
}

/// Root data of a parity sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootData {
    pub owner: ParitySeq,
    pub even: Vec<(usize, usize)>,
    pub odd: Vec<(usize, usize)>,
    /// Coefficients of `2ρ_s` in the basis `ε_i`.
    pub rho2: Vec<i64>,
}

impl RootData {
    pub fn new(s: &ParitySeq) -> Self {
        let n = s.len();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if s.pair_parity(i, j) == 0 {
                    even.push((i, j));
                } else {
                    odd.push((i, j));
                }
            }
        }
        RootData { owner: s.clone(), even, odd, rho2: rho_vector(s) }
    }

    /// `2(λ | ε_i - ε_j)` for `λ` given by coefficients `2λ_k` in the `ε` basis.
    pub fn pairing2(&self, lam2: &[i64], i: usize, j: usize) -> i64 {
        let s = &self.owner;
        s.d(i) as i64 * lam2[i - 1] - s.d(j) as i64 * lam2[j - 1]
    }
}

/// `2ρ_s = Σ_{even α>0} α − Σ_{odd α>0} α` in the `ε` basis.
pub fn rho_vector(s: &ParitySeq) -> Vec<i64> {
    let n = s.len();
    let mut r = vec![0i64; n];
    for i in 1..=n {
        for j in i + 1..=n {
            let sg = if s.pair_parity(i, j) == 0 { 1 } else { -1 };
            r[i - 1] += sg;
            r[j - 1] -= sg;
        }
    }
    r
}

/// The closed formula obtained by permuting the standard `2ρ` along the
/// sorting permutation. It coincides with [`rho_vector`] only on standard
/// sequences.
pub fn rho_vector_permuted_standard(s: &ParitySeq) -> Vec<i64> {
    let (m, n) = (s.m() as i64, s.n() as i64);
    let (mut zeros, mut ones) = (0i64, 0i64);
    s.bits()
        .iter()
        .map(|&b| {
            if b == 0 {
                zeros += 1;
                m - n - 2 * zeros + 1
            } else {
                ones += 1;
                3 * m + n - 2 * (m + ones) + 1
            }
        })
        .collect()
}

/// `#_{(i,j)}`: the number of indices strictly between `i` and `j` of the
/// opposite parity.
pub fn hash_count(s: &ParitySeq, i: usize, j: usize) -> Result<usize, ParityError> {
    if i == 0 || j > s.len() || i >= j {
        return Err(ParityError::OutOfRange(if i == 0 { i } else { j }));
    }
    if s.parity(i) != s.parity(j) {
        return Err(ParityError::ParityMismatch { i, j });
    }
    let p = s.parity(i);
    Ok((i + 1..j).filter(|&k| s.parity(k) != p).count())
}

/// Left-to-right bubble passes moving zeros left; returns the swap positions.
pub fn sort_to_standard(s: &ParitySeq) -> Vec<usize> {
    let mut bits = s.bits().to_vec();
    let mut word = Vec::new();
    loop {
        let mut changed = false;
        for k in 0..bits.len() - 1 {
            if bits[k] == 1 && bits[k + 1] == 0 {
                bits.swap(k, k + 1);
                word.push(k + 1);
                changed = true;
            }
        }
        if !changed {
            return word;
        }
    }
}
