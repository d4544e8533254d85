//! Representations of the affine algebra by finitely many mode matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::AffineError;
use crate::graded::{GradedMatrix, GradedSpace};
use crate::highest_weight::{build_irreducible, classify, HWeight, ModuleRep};
use crate::linalg::Span;
use crate::parity::ParitySeq;
use crate::rtt::GenSymbol;
use crate::scalar::QScalar;

/// Which generator series a mode belongs to: `t(u) = Σ t^{(r)} u^{-r}` or
/// `t̄(u) = Σ t̄^{(r)} u^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "tb")]
    TBar,
}

impl Series {
    /// Power of `u` carried by mode `r`.
    pub fn power(self, r: usize) -> i64 {
        match self {
            Series::T => -(r as i64),
            Series::TBar => r as i64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Evaluation { a: QScalar, weight: String },
    Tensor { factors: Vec<Provenance> },
    DirectSum { summands: Vec<Provenance> },
    Twisted { base: Box<Provenance>, twist: String },
    Input,
}

/// Mode matrices `t^{(r)}_{ij}`, `t̄^{(r)}_{ij}` for `r` up to a finite bound.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineRep {
    pub seq: ParitySeq,
    pub space: GradedSpace,
    /// `modes[series][r][(i-1)·N + j-1]`.
    modes: BTreeMap<Series, Vec<Vec<GradedMatrix<QScalar>>>>,
    zero: GradedMatrix<QScalar>,
    pub maximal_vector: Option<Vec<QScalar>>,
    pub provenance: Provenance,
}

impl AffineRep {
    /// All modes zero up to `bound`.
    pub fn zero(seq: &ParitySeq, space: GradedSpace, bound: usize, provenance: Provenance) -> Self {
        let n = seq.len();
        let zero = GradedMatrix::zero(space.clone(), space.clone());
        let block = vec![vec![zero.clone(); n * n]; bound + 1];
        let modes = [(Series::T, block.clone()), (Series::TBar, block)].into_iter().collect();
        AffineRep { seq: seq.clone(), space, modes, zero, maximal_vector: None, provenance }
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mode_bound(&self) -> usize {
        self.modes[&Series::T].len() - 1
    }

    pub fn mode(&self, series: Series, r: usize, i: usize, j: usize) -> &GradedMatrix<QScalar> {
        let n = self.n();
        self.modes[&series].get(r).map_or(&self.zero, |m| &m[(i - 1) * n + j - 1])
    }

    pub fn mode_mut(&mut self, series: Series, r: usize, i: usize, j: usize) -> &mut GradedMatrix<QScalar> {
        let n = self.n();
        &mut self.modes.get_mut(&series).expect("both series present")[r][(i - 1) * n + j - 1]
    }

    /// Every nonzero mode matrix with its label.
    pub fn nonzero_modes(&self) -> impl Iterator<Item = ((Series, usize, usize, usize), &GradedMatrix<QScalar>)> {
        let n = self.n();
        self.modes.iter().flat_map(move |(&s, by_r)| {
            by_r.iter().enumerate().flat_map(move |(r, ms)| {
                ms.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(move |(k, m)| ((s, r, k / n + 1, k % n + 1), m))
            })
        })
    }

    /// Violations of the mode-zero conditions: `t^{(0)}` lower triangular,
    /// `t̄^{(0)}` upper triangular, `t^{(0)}_{ii} t̄^{(0)}_{ii} = 1`.
    pub fn mode_zero_failures(&self) -> Vec<(Series, usize, usize)> {
        let n = self.n();
        let mut bad = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i < j && !self.mode(Series::T, 0, i, j).is_zero() {
                    bad.push((Series::T, i, j));
                }
                if i > j && !self.mode(Series::TBar, 0, i, j).is_zero() {
                    bad.push((Series::TBar, i, j));
                }
            }
            let prod = self.mode(Series::T, 0, i, i).matmul(self.mode(Series::TBar, 0, i, i));
            if prod != GradedMatrix::identity(self.space.clone()) {
                bad.push((Series::T, i, i));
            }
        }
        bad
    }

    /// Dimension of the smallest subspace containing `v` and stable under
    /// every mode matrix.
    pub fn cyclic_span(&self, v: &[QScalar]) -> usize {
        let mats: Vec<&GradedMatrix<QScalar>> = self.nonzero_modes().map(|(_, m)| m).collect();
        let mut span = Span::new(self.dim());
        let mut queue = Vec::new();
        if span.insert(v) {
            queue.push(v.to_vec());
        }
        while let Some(w) = queue.pop() {
            for m in &mats {
                let x = m.apply(&w);
                if span.insert(&x) {
                    queue.push(x);
                    if span.rank() == self.dim() {
                        return span.rank();
                    }
                }
            }
        }
        span.rank()
    }

    /// Dimension of the associative algebra generated by the mode matrices;
    /// equal to `dim²` exactly when the representation is absolutely irreducible.
    pub fn generated_algebra_dim(&self) -> usize {
        let d = self.dim();
        let mats: Vec<&GradedMatrix<QScalar>> = self.nonzero_modes().map(|(_, m)| m).collect();
        let flat = |m: &GradedMatrix<QScalar>| m.to_dense().concat();
        let mut span = Span::new(d * d);
        let id = GradedMatrix::identity(self.space.clone());
        span.insert(&flat(&id));
        let mut queue = vec![id];
        while let Some(w) = queue.pop() {
            for m in &mats {
                let x = m.matmul(&w);
                if span.insert(&flat(&x)) {
                    if span.rank() == d * d {
                        return d * d;
                    }
                    queue.push(x);
                }
            }
        }
        span.rank()
    }

    pub fn is_irreducible(&self) -> bool {
        self.generated_algebra_dim() == self.dim() * self.dim()
    }

    pub fn to_json(&self) -> Value {
        let mut modes = serde_json::Map::new();
        for (&s, by_r) in &self.modes {
            let key = if s == Series::T { "t" } else { "tb" };
            let mut per_r = serde_json::Map::new();
            for (r, ms) in by_r.iter().enumerate() {
                let n = self.n();
                let mut per_ij = serde_json::Map::new();
                for (k, m) in ms.iter().enumerate().filter(|(_, m)| !m.is_zero()) {
                    let entries: Vec<Value> = m.entries().map(|(&(a, b), x)| json!([a, b, x.to_string()])).collect();
                    per_ij.insert(format!("({},{})", k / n + 1, k % n + 1), Value::Array(entries));
                }
                per_r.insert(r.to_string(), Value::Object(per_ij));
            }
            modes.insert(key.to_string(), Value::Object(per_r));
        }
        json!({
            "s": self.seq.to_string(),
            "dim": self.dim(),
            "parities": self.space.parities,
            "modes": modes,
            "maximal_vector": self.maximal_vector.as_ref().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            "provenance": self.provenance,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, AffineError> {
        let bad = |what: &str| AffineError::Json(what.to_string());
        let seq: ParitySeq = v["s"].as_str().ok_or_else(|| bad("s"))?.parse().map_err(|_| bad("s"))?;
        let parities: Vec<u8> = serde_json::from_value(v["parities"].clone()).map_err(|_| bad("parities"))?;
        let space = GradedSpace { parities };
        let modes = v["modes"].as_object().ok_or_else(|| bad("modes"))?;
        let mut bound = 0;
        for per_r in modes.values() {
            for r in per_r.as_object().ok_or_else(|| bad("modes"))?.keys() {
                bound = bound.max(r.parse::<usize>().map_err(|_| bad("mode index"))?);
            }
        }
        let provenance = serde_json::from_value(v["provenance"].clone()).unwrap_or(Provenance::Input);
        let mut rep = AffineRep::zero(&seq, space.clone(), bound, provenance);
        for (key, per_r) in modes {
            let series = match key.as_str() {
                "t" => Series::T,
                "tb" => Series::TBar,
                _ => return Err(bad("series name")),
            };
            for (r, per_ij) in per_r.as_object().ok_or_else(|| bad("modes"))? {
                let r: usize = r.parse().map_err(|_| bad("mode index"))?;
                for (ij, entries) in per_ij.as_object().ok_or_else(|| bad("modes"))? {
                    let (i, j) = parse_pair(ij).ok_or_else(|| bad("index pair"))?;
                    if i == 0 || j == 0 || i > seq.len() || j > seq.len() {
                        return Err(bad("index pair"));
                    }
                    let mut m = GradedMatrix::zero(space.clone(), space.clone());
                    for e in entries.as_array().ok_or_else(|| bad("entries"))? {
                        let (a, b, x): (usize, usize, String) = serde_json::from_value(e.clone()).map_err(|_| bad("entry"))?;
                        if a >= space.dim() || b >= space.dim() {
                            return Err(bad("entry"));
                        }
                        m.set(a, b, x.parse().map_err(|_| bad("scalar"))?);
                    }
                    *rep.mode_mut(series, r, i, j) = m;
                }
            }
        }
        if let Some(mv) = v["maximal_vector"].as_array() {
            let vec: Result<Vec<QScalar>, _> = mv.iter().map(|x| x.as_str().unwrap_or("").parse::<QScalar>()).collect();
            rep.maximal_vector = Some(vec.map_err(|_| bad("maximal_vector"))?);
        }
        Ok(rep)
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn unit_vector(dim: usize, k: usize) -> Vec<QScalar> {
    let mut v = vec![QScalar::zero(); dim];
    v[k] = QScalar::one();
    v
}

/// Level cap used when building the finite-dimensional module.
const BUILD_CAP: usize = 64;

/// Pullback of the irreducible module of highest weight `w` along the
/// evaluation homomorphism at `a`.
pub fn evaluation_rep(w: &HWeight, a: &QScalar) -> Result<AffineRep, AffineError> {
    if a.is_zero() {
        return Err(AffineError::ZeroParameter);
    }
    if !classify(w).finite {
        return Err(AffineError::Infinite(w.to_string()));
    }
    let module = build_irreducible(w, BUILD_CAP)?.module().ok_or(AffineError::DidNotStabilize)?;
    evaluation_from_module(&module, a)
}

/// `t(u) ↦ T − T̄ a^{-1} u^{-1}`, `t̄(u) ↦ T̄ − T a u` on an already built module.
pub fn evaluation_from_module(module: &ModuleRep, a: &QScalar) -> Result<AffineRep, AffineError> {
    let a_inv = a.checked_inv().ok_or(AffineError::ZeroParameter)?;
    let s = &module.weight.owner;
    let n = s.len();
    let provenance = Provenance::Evaluation { a: a.clone(), weight: module.weight.to_string() };
    let mut rep = AffineRep::zero(s, module.space(), 1, provenance);
    for i in 1..=n {
        for j in 1..=n {
            let t = module.matrix(GenSymbol::t(i, j));
            let tb = module.matrix(GenSymbol::tb(i, j));
            *rep.mode_mut(Series::T, 1, i, j) = tb.scale(&-a_inv.clone());
            *rep.mode_mut(Series::TBar, 1, i, j) = t.scale(&-a.clone());
            *rep.mode_mut(Series::T, 0, i, j) = t;
            *rep.mode_mut(Series::TBar, 0, i, j) = tb;
        }
    }
    rep.maximal_vector = Some(unit_vector(module.dim(), module.maximal_vector));
    Ok(rep)
}

/// The graded coproduct `t_ij(u) ↦ Σ_k ς_{ik;kj} t_ik(u) ⊗ t_kj(u)` acting on
/// `rep1 ⊗ rep2` through Koszul-signed Kronecker products.
pub fn tensor(rep1: &AffineRep, rep2: &AffineRep) -> Result<AffineRep, AffineError> {
    if rep1.seq != rep2.seq {
        return Err(AffineError::SequenceMismatch(rep1.seq.to_string(), rep2.seq.to_string()));
    }
    let s = &rep1.seq;
    let n = s.len();
    let (b1, b2) = (rep1.mode_bound(), rep2.mode_bound());
    let provenance = Provenance::Tensor { factors: vec![rep1.provenance.clone(), rep2.provenance.clone()] };
    let mut out = AffineRep::zero(s, rep1.space.tensor(&rep2.space), b1 + b2, provenance);
    for series in [Series::T, Series::TBar] {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let sign = QScalar::from_int(s.sign(i, k, k, j) as i64);
                    for r1 in 0..=b1 {
                        let x = rep1.mode(series, r1, i, k);
                        if x.is_zero() {
                            continue;
                        }
                        for r2 in 0..=b2 {
                            let y = rep2.mode(series, r2, k, j);
                            if y.is_zero() {
                                continue;
                            }
                            let term = x.kron(y).scale(&sign);
                            let slot = out.mode_mut(series, r1 + r2, i, j);
                            *slot = &*slot + &term;
                        }
                    }
                }
            }
        }
    }
    if let (Some(v1), Some(v2)) = (&rep1.maximal_vector, &rep2.maximal_vector) {
        out.maximal_vector = Some(kron_vector(v1, v2));
    }
    Ok(out)
}

/// Coordinates of `v ⊗ w` in the product basis.
pub fn kron_vector(v: &[QScalar], w: &[QScalar]) -> Vec<QScalar> {
    v.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect()
}

/// Block-diagonal sum; the maximal vector is left unset.
pub fn direct_sum(rep1: &AffineRep, rep2: &AffineRep) -> Result<AffineRep, AffineError> {
    if rep1.seq != rep2.seq {
        return Err(AffineError::SequenceMismatch(rep1.seq.to_string(), rep2.seq.to_string()));
    }
    let n = rep1.n();
    let d1 = rep1.dim();
    let mut parities = rep1.space.parities.clone();
    parities.extend(&rep2.space.parities);
    let space = GradedSpace { parities };
    let bound = rep1.mode_bound().max(rep2.mode_bound());
    let provenance = Provenance::DirectSum { summands: vec![rep1.provenance.clone(), rep2.provenance.clone()] };
    let mut out = AffineRep::zero(&rep1.seq, space.clone(), bound, provenance);
    for series in [Series::T, Series::TBar] {
        for r in 0..=bound {
            for i in 1..=n {
                for j in 1..=n {
                    let mut m = GradedMatrix::zero(space.clone(), space.clone());
                    for (&(a, b), x) in rep1.mode(series, r, i, j).entries() {
                        m.set(a, b, x.clone());
                    }
                    for (&(a, b), x) in rep2.mode(series, r, i, j).entries() {
                        m.set(d1 + a, d1 + b, x.clone());
                    }
                    *out.mode_mut(series, r, i, j) = m;
                }
            }
        }
    }
    Ok(out)
}

/// `T(u) ↦ f(u) T(u)`, `T̄(u) ↦ g(u) T̄(u)` with `f = Σ f_r u^{-r}` and
/// `g = Σ g_r u^r` given by finitely many coefficients.
pub fn twist_series(rep: &AffineRep, f: &[QScalar], g: &[QScalar]) -> Result<AffineRep, AffineError> {
    let unit = f.first().zip(g.first()).map(|(a, b)| a * b);
    if unit != Some(QScalar::one()) {
        return Err(AffineError::TwistUnit);
    }
    let n = rep.n();
    let bound = rep.mode_bound() + f.len().max(g.len()) - 1;
    let provenance = Provenance::Twisted { base: Box::new(rep.provenance.clone()), twist: "series".into() };
    let mut out = AffineRep::zero(&rep.seq, rep.space.clone(), bound, provenance);
    for (series, coeffs) in [(Series::T, f), (Series::TBar, g)] {
        for i in 1..=n {
            for j in 1..=n {
                for r in 0..=rep.mode_bound() {
                    let m = rep.mode(series, r, i, j);
                    if m.is_zero() {
                        continue;
                    }
                    for (p, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let slot = out.mode_mut(series, r + p, i, j);
                        *slot = &*slot + &m.scale(c);
                    }
                }
            }
        }
    }
    out.maximal_vector = rep.maximal_vector.clone();
    Ok(out)
}

/// `T(u) ↦ T(𝔡u)`, `T̄(u) ↦ T̄(𝔡u)`.
pub fn twist_dilation(rep: &AffineRep, d: &QScalar) -> Result<AffineRep, AffineError> {
    let d_inv = d.checked_inv().ok_or(AffineError::ZeroParameter)?;
    let n = rep.n();
    let provenance = Provenance::Twisted { base: Box::new(rep.provenance.clone()), twist: format!("dilation {d}") };
    let mut out = AffineRep::zero(&rep.seq, rep.space.clone(), rep.mode_bound(), provenance);
    for r in 0..=rep.mode_bound() {
        let ct = d_inv.pow(r as i64);
        let cb = d.pow(r as i64);
        for i in 1..=n {
            for j in 1..=n {
                *out.mode_mut(Series::T, r, i, j) = rep.mode(Series::T, r, i, j).scale(&ct);
                *out.mode_mut(Series::TBar, r, i, j) = rep.mode(Series::TBar, r, i, j).scale(&cb);
            }
        }
    }
    out.maximal_vector = rep.maximal_vector.clone();
    Ok(out)
}
