//! Z2-graded matrices, Koszul-signed tensor products and the R-matrices.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::parity::ParitySeq;
use crate::scalar::{qd, qd_diff, Field, QField};

/// Parities of a basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedSpace {
    pub parities: Vec<u8>,
}

impl GradedSpace {
    pub fn of(s: &ParitySeq) -> Self {
        GradedSpace { parities: s.bits().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Basis of `self ⊗ other`, index `i * other.dim() + k`.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.parities {
            for &b in &other.parities {
                parities.push(a ^ b);
            }
        }
        GradedSpace { parities }
    }

    pub fn power(&self, k: usize) -> GradedSpace {
        let mut out = GradedSpace { parities: vec![0] };
        for _ in 0..k {
            out = out.tensor(self);
        }
        out
    }
}

/// Sparse matrix over a graded basis. Indices are 0-based here.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMatrix<S> {
    pub rows: GradedSpace,
    pub cols: GradedSpace,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Field> GradedMatrix<S> {
    pub fn zero(rows: GradedSpace, cols: GradedSpace) -> Self {
        GradedMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let mut m = Self::zero(space.clone(), space);
        for i in 0..m.rows.dim() {
            m.entries.insert((i, i), S::one());
        }
        m
    }

    /// `E_ij` (0-based) on `space`.
    pub fn unit(space: &GradedSpace, i: usize, j: usize) -> Self {
        let mut m = Self::zero(space.clone(), space.clone());
        m.set(i, j, S::one());
        m
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&S> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows.dim() && j < self.cols.dim(), "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: S) {
        if v.is_zero() {
            return;
        }
        let cur = self.entries.remove(&(i, j));
        let nv = match cur {
            Some(c) => c + v,
            None => v,
        };
        if !nv.is_zero() {
            self.entries.insert((i, j), nv);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Parity of the matrix if homogeneous (`None` for the zero matrix or mixed).
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for &(i, j) in self.entries.keys() {
            let e = self.rows.parities[i] ^ self.cols.parities[j];
            match p {
                None => p = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        p
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.rows.clone(), self.cols.clone());
        if c.is_zero() {
            return out;
        }
        for (&k, v) in &self.entries {
            let x = v.clone() * c.clone();
            if !x.is_zero() {
                out.entries.insert(k, x);
            }
        }
        out
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> GradedMatrix<T> {
        let mut out = GradedMatrix::zero(self.rows.clone(), self.cols.clone());
        for (&(i, j), v) in &self.entries {
            out.set(i, j, f(v));
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols.dim(), other.rows.dim(), "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &S)>> = vec![Vec::new(); other.rows.dim()];
        for (&(i, j), v) in &other.entries {
            by_row[i].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                let p = a.clone() * b.clone();
                match acc.get_mut(&(i, j)) {
                    Some(x) => *x = x.clone() + p,
                    None => {
                        acc.insert((i, j), p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GradedMatrix { rows: self.rows.clone(), cols: other.cols.clone(), entries: acc }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.rows.dim()];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] = out[i].clone() + a.clone() * v[j].clone();
            }
        }
        out
    }

    /// Graded Kronecker product: `(A⊗B)(v⊗w) = (-1)^{|B||v|} Av ⊗ Bw`, applied
    /// entrywise so non-homogeneous factors are split automatically.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows.tensor(&other.rows);
        let cols = self.cols.tensor(&other.cols);
        let (br, bc) = (other.rows.dim(), other.cols.dim());
        let mut out = Self::zero(rows, cols);
        for (&(i, j), a) in &self.entries {
            let pv = self.cols.parities[j];
            for (&(k, l), b) in &other.entries {
                let pb = other.rows.parities[k] ^ other.cols.parities[l];
                let x = a.clone() * b.clone();
                let x = if pb & pv == 1 { -x } else { x };
                out.entries.insert((i * br + k, j * bc + l), x);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols.clone(), self.rows.clone());
        for (&(i, j), v) in &self.entries {
            out.entries.insert((j, i), v.clone());
        }
        out
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut d = vec![vec![S::zero(); self.cols.dim()]; self.rows.dim()];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let inv = crate::linalg::inverse(&self.to_dense())?;
        let mut out = Self::zero(self.rows.clone(), self.cols.clone());
        for (i, row) in inv.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }
}

impl<S: Field> Add for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn add(self, rhs: &GradedMatrix<S>) -> GradedMatrix<S> {
        assert_eq!(self.rows.dim(), rhs.rows.dim());
        assert_eq!(self.cols.dim(), rhs.cols.dim());
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, v.clone());
        }
        out
    }
}

impl<S: Field> Sub for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn sub(self, rhs: &GradedMatrix<S>) -> GradedMatrix<S> {
        assert_eq!(self.rows.dim(), rhs.rows.dim());
        assert_eq!(self.cols.dim(), rhs.cols.dim());
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, -v.clone());
        }
        out
    }
}

impl<S: Field> Neg for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn neg(self) -> GradedMatrix<S> {
        self.scale(&-S::one())
    }
}

impl<S: Field> Mul for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn mul(self, rhs: &GradedMatrix<S>) -> GradedMatrix<S> {
        self.matmul(rhs)
    }
}

/// `x ↦ q^{sign}` choice: `Q_DIRECT` builds `R_q`, `Q_INVERTED` builds `R_{q^{-1}}`.
pub const Q_DIRECT: i8 = 1;
pub const Q_INVERTED: i8 = -1;

fn tensor_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Graded permutation `P(v⊗w) = (-1)^{|v||w|} w⊗v` on `V_s ⊗ V_s`.
pub fn perm_op<S: QField>(s: &ParitySeq) -> GradedMatrix<S> {
    let v = GradedSpace::of(s);
    let n = v.dim();
    let mut p = GradedMatrix::zero(v.tensor(&v), v.tensor(&v));
    for i in 0..n {
        for j in 0..n {
            let sg = if v.parities[i] & v.parities[j] == 1 { -S::one() } else { S::one() };
            p.set(tensor_index(n, j, i), tensor_index(n, i, j), sg);
        }
    }
    p
}

/// Adds `x · E_ab ⊗ E_cd` (0-based, graded Kronecker signs) to `m`.
fn add_component<S: Field>(m: &mut GradedMatrix<S>, par: &[u8], (a, b, c, d): (usize, usize, usize, usize), x: S) {
    let n = par.len();
    let x = if (par[c] ^ par[d]) & par[b] == 1 { -x } else { x };
    m.add_to(tensor_index(n, a, c), tensor_index(n, b, d), x);
}

/// `R = Σ q_i^{δij} E_ii⊗E_jj + Σ_{i<j} (q_i - q_i^{-1}) E_ji⊗E_ij`, with `q`
/// replaced by `q^{-1}` when `qsign = Q_INVERTED`.
pub fn rmatrix_with<S: QField>(s: &ParitySeq, qsign: i8) -> GradedMatrix<S> {
    let v = GradedSpace::of(s);
    let n = v.dim();
    let mut r = GradedMatrix::zero(v.tensor(&v), v.tensor(&v));
    for i in 0..n {
        let di = s.d(i + 1) * qsign;
        for j in 0..n {
            let x = if i == j { qd::<S>(di, 1) } else { S::one() };
            add_component(&mut r, &v.parities, (i, i, j, j), x);
        }
        for j in i + 1..n {
            add_component(&mut r, &v.parities, (j, i, i, j), qd_diff::<S>(di));
        }
    }
    r
}

pub fn rmatrix<S: QField>(s: &ParitySeq) -> GradedMatrix<S> {
    rmatrix_with(s, Q_DIRECT)
}

/// `R̃ = P R^{-1} P`, computed by matrix inversion.
pub fn rmatrix_tilde<S: QField>(s: &ParitySeq) -> GradedMatrix<S> {
    let p = perm_op::<S>(s);
    let rinv = rmatrix::<S>(s).inverse().expect("R is invertible");
    &(&p * &rinv) * &p
}

/// The displayed explicit form
/// `Σ q_i^{-δij} E_ii⊗E_jj − Σ_{i<j} (q_j − q_j^{-1}) E_ij⊗E_ji`.
pub fn rmatrix_tilde_explicit<S: QField>(s: &ParitySeq, qsign: i8) -> GradedMatrix<S> {
    let v = GradedSpace::of(s);
    let n = v.dim();
    let mut r = GradedMatrix::zero(v.tensor(&v), v.tensor(&v));
    for i in 0..n {
        let di = s.d(i + 1) * qsign;
        for j in 0..n {
            let x = if i == j { qd::<S>(di, -1) } else { S::one() };
            add_component(&mut r, &v.parities, (i, i, j, j), x);
        }
        for j in i + 1..n {
            let dj = s.d(j + 1) * qsign;
            add_component(&mut r, &v.parities, (i, j, j, i), -qd_diff::<S>(dj));
        }
    }
    r
}

/// Places an operator on `V⊗V` into slots `a < b` (0-based) of `V^{⊗k}` with
/// Koszul signs `(−1)^{Σ_{i>j} |A_i||x_j|}`.
pub fn embed_pair<S: Field>(m: &GradedMatrix<S>, v: &GradedSpace, k: usize, a: usize, b: usize) -> GradedMatrix<S> {
    assert!(a < b && b < k);
    let n = v.dim();
    let big = v.power(k);
    let mut out = GradedMatrix::zero(big.clone(), big);
    let digits = |mut idx: usize| {
        let mut d = vec![0usize; k];
        for slot in (0..k).rev() {
            d[slot] = idx % n;
            idx /= n;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0usize, |acc, &x| acc * n + x);
    let total = n.pow(k as u32);
    for (&(r, c), x) in m.entries() {
        let (ra, rb) = (r / n, r % n);
        let (ca, cb) = (c / n, c % n);
        // undo the two-fold kron sign to recover the component coefficient
        let pu = v.parities[ra] ^ v.parities[ca];
        let pv = v.parities[rb] ^ v.parities[cb];
        let base = if pv & v.parities[ca] == 1 { -x.clone() } else { x.clone() };
        for col in 0..total {
            let mut d = digits(col);
            if d[a] != ca || d[b] != cb {
                continue;
            }
            let before_a: u8 = d[..a].iter().fold(0, |p, &i| p ^ v.parities[i]);
            let before_b: u8 = d[..b].iter().fold(0, |p, &i| p ^ v.parities[i]);
            let sign = (pu & before_a) ^ (pv & before_b);
            d[a] = ra;
            d[b] = rb;
            let y = if sign == 1 { -base.clone() } else { base.clone() };
            out.add_to(undigits(&d), col, y);
        }
    }
    out
}

/// Exponent vector of a monomial in the spectral variables.
pub type Exps = Vec<u32>;

/// A polynomial in several commuting variables with graded-matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix<S> {
    pub nvars: usize,
    pub space: GradedSpace,
    pub terms: BTreeMap<Exps, GradedMatrix<S>>,
}

impl<S: Field> SeriesMatrix<S> {
    pub fn zero(nvars: usize, space: GradedSpace) -> Self {
        SeriesMatrix { nvars, space, terms: BTreeMap::new() }
    }

    pub fn identity(nvars: usize, space: GradedSpace) -> Self {
        let mut out = Self::zero(nvars, space.clone());
        out.add_term(vec![0; nvars], GradedMatrix::identity(space));
        out
    }

    pub fn add_term(&mut self, exps: Exps, m: GradedMatrix<S>) {
        assert_eq!(exps.len(), self.nvars);
        let next = match self.terms.remove(&exps) {
            Some(cur) => &cur + &m,
            None => m,
        };
        if !next.is_zero() {
            self.terms.insert(exps, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.space.clone());
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, m) in &other.terms {
            out.add_term(e.clone(), -m);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&GradedMatrix<S>) -> GradedMatrix<S>) -> Self {
        let mut out = Self::zero(self.nvars, self.space.clone());
        for (e, m) in &self.terms {
            out.add_term(e.clone(), f(m));
        }
        out
    }

    /// Substitutes fixed values for all variables.
    pub fn evaluate(&self, vals: &[S]) -> GradedMatrix<S> {
        let mut out = GradedMatrix::zero(self.space.clone(), self.space.clone());
        for (e, m) in &self.terms {
            let mut c = S::one();
            for (x, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    c = c * x.clone();
                }
            }
            out = &out + &m.scale(&c);
        }
        out
    }
}

/// `R(x, y) = R x − R̃ y` on `V⊗V`, as a polynomial in `nvars` variables.
pub fn rmatrix_spectral_in<S: QField>(s: &ParitySeq, qsign: i8, nvars: usize, x: usize, y: usize) -> SeriesMatrix<S> {
    let v = GradedSpace::of(s);
    let mut out = SeriesMatrix::zero(nvars, v.tensor(&v));
    let mut ex = vec![0; nvars];
    ex[x] = 1;
    let mut ey = vec![0; nvars];
    ey[y] = 1;
    out.add_term(ex, rmatrix_with(s, qsign));
    out.add_term(ey, -&rmatrix_tilde_explicit(s, qsign));
    out
}

/// `R_{q,s}(u,v)` in the two variables `(u, v)`.
pub fn rmatrix_spectral<S: QField>(s: &ParitySeq) -> SeriesMatrix<S> {
    rmatrix_spectral_in(s, Q_DIRECT, 2, 0, 1)
}

/// `R_{q,s}(u,v)` built from its displayed entry formula.
pub fn rmatrix_spectral_explicit<S: QField>(s: &ParitySeq) -> SeriesMatrix<S> {
    let v = GradedSpace::of(s);
    let n = v.dim();
    let vv = v.tensor(&v);
    let mut mu = GradedMatrix::zero(vv.clone(), vv.clone());
    let mut mv = GradedMatrix::zero(vv.clone(), vv.clone());
    for i in 0..n {
        let di = s.d(i + 1);
        for j in 0..n {
            let (xu, xv) = if i == j { (qd::<S>(di, 1), -qd::<S>(di, -1)) } else { (S::one(), -S::one()) };
            add_component(&mut mu, &v.parities, (i, i, j, j), xu);
            add_component(&mut mv, &v.parities, (i, i, j, j), xv);
            let dj = s.d(j + 1);
            if i > j {
                add_component(&mut mu, &v.parities, (i, j, j, i), qd_diff::<S>(dj));
            } else if i < j {
                add_component(&mut mv, &v.parities, (i, j, j, i), qd_diff::<S>(dj));
            }
        }
    }
    let mut out = SeriesMatrix::zero(2, vv);
    out.add_term(vec![1, 0], mu);
    out.add_term(vec![0, 1], mv);
    out
}

/// One nonzero residual entry, 1-based basis labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub monomial: Exps,
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YbeReport {
    pub sequence: ParitySeq,
    pub identity: String,
    pub pass: bool,
    pub nonzero_entries: Vec<ResidualEntry>,
}

const MAX_REPORTED: usize = 20;

fn label(idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    let mut x = idx;
    for slot in (0..k).rev() {
        d[slot] = x % n + 1;
        x /= n;
    }
    d
}

fn residual_entries<S: Field>(res: &SeriesMatrix<S>, n: usize, k: usize) -> Vec<ResidualEntry> {
    let mut out = Vec::new();
    for (e, m) in &res.terms {
        for (&(r, c), v) in m.entries() {
            if out.len() >= MAX_REPORTED {
                return out;
            }
            out.push(ResidualEntry { monomial: e.clone(), row: label(r, n, k), col: label(c, n, k), value: v.to_string() });
        }
    }
    out
}

fn constant_series<S: Field>(m: GradedMatrix<S>) -> SeriesMatrix<S> {
    let mut out = SeriesMatrix::zero(0, m.rows.clone());
    out.add_term(Vec::new(), m);
    out
}

fn report<S: Field>(s: &ParitySeq, identity: &str, res: &SeriesMatrix<S>, k: usize) -> YbeReport {
    let nonzero_entries = residual_entries(res, s.len(), k);
    YbeReport { sequence: s.clone(), identity: identity.to_string(), pass: res.is_zero(), nonzero_entries }
}

/// Residual of `R¹²R¹³R²³ − R²³R¹³R¹²` for an arbitrary operator `r` on `V⊗V`.
pub fn ybe_residual<S: Field>(v: &GradedSpace, r: &GradedMatrix<S>) -> GradedMatrix<S> {
    let r12 = embed_pair(r, v, 3, 0, 1);
    let r13 = embed_pair(r, v, 3, 0, 2);
    let r23 = embed_pair(r, v, 3, 1, 2);
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    &lhs - &rhs
}

/// Constant graded Yang–Baxter equation.
pub fn check_ybe<S: QField>(s: &ParitySeq) -> YbeReport {
    let v = GradedSpace::of(s);
    let res = ybe_residual(&v, &rmatrix::<S>(s));
    report(s, "R12 R13 R23 = R23 R13 R12", &constant_series(res), 3)
}

/// Spectral Yang–Baxter equation `R¹²(u,v)R¹³(u,w)R²³(v,w) = R²³(v,w)R¹³(u,w)R¹²(u,v)`.
pub fn check_ybe_spectral<S: QField>(s: &ParitySeq) -> YbeReport {
    let v = GradedSpace::of(s);
    let emb = |x: usize, y: usize, a: usize, b: usize| {
        rmatrix_spectral_in::<S>(s, Q_DIRECT, 3, x, y).map_coeffs(|m| embed_pair(m, &v, 3, a, b))
    };
    let fix_space = |m: SeriesMatrix<S>| SeriesMatrix { space: v.power(3), ..m };
    let r12 = fix_space(emb(0, 1, 0, 1));
    let r13 = fix_space(emb(0, 2, 0, 2));
    let r23 = fix_space(emb(1, 2, 1, 2));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    report(s, "R12(u,v) R13(u,w) R23(v,w) = R23(v,w) R13(u,w) R12(u,v)", &lhs.sub(&rhs), 3)
}

/// `P R^{-1} P = R − (q − q^{-1}) P`.
pub fn check_rtilde<S: QField>(s: &ParitySeq) -> YbeReport {
    let lhs = rmatrix_tilde::<S>(s);
    let p = perm_op::<S>(s);
    let rhs = &rmatrix::<S>(s) - &p.scale(&(S::q_pow(1) - S::q_pow(-1)));
    report(s, "P R^-1 P = R - (q - q^-1) P", &constant_series(&lhs - &rhs), 2)
}

/// `R_q(u,v) R_{q^{-1}}(u,v) = ((u − v)² − (q − q^{-1})² uv) · 1`.
pub fn check_unitarity<S: QField>(s: &ParitySeq) -> YbeReport {
    let v = GradedSpace::of(s);
    let vv = v.tensor(&v);
    let a = rmatrix_spectral_in::<S>(s, Q_DIRECT, 2, 0, 1);
    let b = rmatrix_spectral_in::<S>(s, Q_INVERTED, 2, 0, 1);
    let id = GradedMatrix::<S>::identity(vv.clone());
    let h = S::q_pow(1) - S::q_pow(-1);
    let mut rhs = SeriesMatrix::zero(2, vv);
    rhs.add_term(vec![2, 0], id.clone());
    rhs.add_term(vec![0, 2], id.clone());
    rhs.add_term(vec![1, 1], id.scale(&(-(S::one() + S::one()) - h.clone() * h)));
    report(s, "R_q(u,v) R_q^-1(u,v) = ((u-v)^2 - (q-q^-1)^2 uv) 1", &a.mul(&b).sub(&rhs), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QScalar;

    fn s(x: &str) -> ParitySeq {
        x.parse().unwrap()
    }

    #[test]
    fn perm_signs() {
        let p = perm_op::<QScalar>(&s("01"));
        assert_eq!(p.get(3, 3), -QScalar::one());
        let p0 = perm_op::<QScalar>(&s("00"));
        assert!(p0.entries().all(|(_, v)| v.is_one()));
        let id = GradedMatrix::identity(p.rows.clone());
        assert_eq!(&p * &p, id);
    }

    #[test]
    fn rmatrix_gl11() {
        let r = rmatrix::<QScalar>(&s("01"));
        let q = QScalar::q_pow;
        // basis e1e1, e1e2, e2e1, e2e2
        assert_eq!(r.get(0, 0), q(1));
        assert_eq!(r.get(1, 1), QScalar::one());
        assert_eq!(r.get(2, 2), QScalar::one());
        assert_eq!(r.get(3, 3), q(-1));
        // E21 ⊗ E12 sends e1⊗e2 to ±e2⊗e1; |E12| |e1| = 0 so no sign
        assert_eq!(r.get(2, 1), q(1) - q(-1));
        assert_eq!(r.nnz(), 5);
    }

    #[test]
    fn spectral_specializes() {
        let sq = s("010");
        let r = rmatrix_spectral::<QScalar>(&sq);
        let at = r.evaluate(&[QScalar::one(), QScalar::zero()]);
        assert_eq!(at, rmatrix::<QScalar>(&sq));
        assert_eq!(r, rmatrix_spectral_explicit::<QScalar>(&sq));
    }

    #[test]
    fn corrupted_rmatrix_fails() {
        let sq = s("01");
        let v = GradedSpace::of(&sq);
        let mut r = rmatrix::<QScalar>(&sq);
        r.set(2, 1, QScalar::q_pow(2));
        assert!(!ybe_residual(&v, &r).is_zero());
    }
}
