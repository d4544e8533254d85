use std::fmt;

use serde::{Deserialize, Serialize};

use crate::parity::ParitySeq;

/// Which triangular matrix a generator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    /// `t_{row,col}` with `row >= col`.
    T,
    /// `t̄_{row,col}` with `row <= col`.
    TBar,
    /// `t̄_{ii}^{-1}`, which equals `t_{ii}`.
    TBarInvDiag,
}

/// An RTT generator with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub row: usize,
    pub col: usize,
}

impl GenSymbol {
    pub fn t(row: usize, col: usize) -> Self {
        GenSymbol { kind: GenKind::T, row, col }
    }

    pub fn tb(row: usize, col: usize) -> Self {
        GenSymbol { kind: GenKind::TBar, row, col }
    }

    pub fn tb_inv(i: usize) -> Self {
        GenSymbol { kind: GenKind::TBarInvDiag, row: i, col: i }
    }

    /// Whether the symbol names a nonzero generator of an algebra of rank `n`.
    pub fn is_valid(&self, n: usize) -> bool {
        let in_range = (1..=n).contains(&self.row) && (1..=n).contains(&self.col);
        in_range
            && match self.kind {
                GenKind::T => self.row >= self.col,
                GenKind::TBar => self.row <= self.col,
                GenKind::TBarInvDiag => self.row == self.col,
            }
    }

    pub fn parity(&self, s: &ParitySeq) -> u8 {
        s.pair_parity(self.row, self.col)
    }

    /// All nonzero generators of rank `n`, without the diagonal inverse symbols.
    pub fn all(n: usize) -> Vec<GenSymbol> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=i {
                out.push(GenSymbol::t(i, j));
            }
        }
        for i in 1..=n {
            for j in i..=n {
                out.push(GenSymbol::tb(i, j));
            }
        }
        out
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::T => write!(f, "t[{},{}]", self.row, self.col),
            GenKind::TBar => write!(f, "tb[{},{}]", self.row, self.col),
            GenKind::TBarInvDiag => write!(f, "tb[{},{}]^-1", self.row, self.col),
        }
    }
}

/// Positions of the PBW order: the lowering block, the diagonal block, the
/// raising block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    /// `(i, j)` with `i > j`, in PBW order.
    pub lower: Vec<(usize, usize)>,
    /// `(i, j)` with `i < j`, in PBW order.
    pub upper: Vec<(usize, usize)>,
    /// Position of `(i, j)` for every pair, `None` on the diagonal.
    pos: Vec<Vec<Option<usize>>>,
}

/// Role of a PBW position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Lower(usize, usize),
    Diag(usize),
    Upper(usize, usize),
}

impl Layout {
    pub fn new(n: usize) -> Self {
        let mut lower = Vec::new();
        for i in 2..=n {
            for j in (1..i).rev() {
                lower.push((i, j));
            }
        }
        let mut upper = Vec::new();
        for j in 2..=n {
            for i in 1..j {
                upper.push((i, j));
            }
        }
        let mut pos = vec![vec![None; n + 1]; n + 1];
        for (p, &(i, j)) in lower.iter().enumerate() {
            pos[i][j] = Some(p);
        }
        let base = lower.len() + n;
        for (p, &(i, j)) in upper.iter().enumerate() {
            pos[i][j] = Some(base + p);
        }
        Layout { n, lower, upper, pos }
    }

    pub fn len(&self) -> usize {
        self.lower.len() + self.n + self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn diag_start(&self) -> usize {
        self.lower.len()
    }

    pub fn upper_start(&self) -> usize {
        self.lower.len() + self.n
    }

    pub fn diag_pos(&self, i: usize) -> usize {
        self.lower.len() + i - 1
    }

    /// Position of an off-diagonal generator `(i, j)`.
    pub fn off_pos(&self, i: usize, j: usize) -> usize {
        self.pos[i][j].expect("off-diagonal pair")
    }

    pub fn slot(&self, p: usize) -> Slot {
        let nl = self.lower.len();
        if p < nl {
            let (i, j) = self.lower[p];
            Slot::Lower(i, j)
        } else if p < nl + self.n {
            Slot::Diag(p - nl + 1)
        } else {
            let (i, j) = self.upper[p - nl - self.n];
            Slot::Upper(i, j)
        }
    }

    /// Matrix indices of the generator at a position (`(i, i)` on the diagonal).
    pub fn indices(&self, p: usize) -> (usize, usize) {
        match self.slot(p) {
            Slot::Lower(i, j) | Slot::Upper(i, j) => (i, j),
            Slot::Diag(i) => (i, i),
        }
    }

    pub fn is_diag(&self, p: usize) -> bool {
        matches!(self.slot(p), Slot::Diag(_))
    }

    pub fn parity(&self, s: &ParitySeq, p: usize) -> u8 {
        let (i, j) = self.indices(p);
        s.pair_parity(i, j)
    }
}
