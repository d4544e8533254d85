use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use super::{HWeight, HwError};
use crate::graded::{GradedMatrix, GradedSpace};
use crate::linalg::rref;
use crate::rtt::{all_relation_instances, AlgebraElement, GenSymbol, Layout, Monomial, RelationFamily, RttAlgebra, Slot};
use crate::scalar::QScalar;

/// A basis vector `L ζ` of the irreducible quotient, `L` a lowering PBW monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    pub monomial: String,
    pub exponents: Vec<i32>,
    /// Weight minus the highest weight, in the `ε` basis.
    pub offset: Vec<i64>,
    pub depth: usize,
    pub parity: u8,
}

/// A finite-dimensional irreducible highest-weight module as matrices.
#[derive(Debug, Clone)]
pub struct ModuleRep {
    pub weight: HWeight,
    pub basis: Vec<BasisVector>,
    pub maximal_vector: usize,
    matrices: BTreeMap<GenSymbol, GradedMatrix<QScalar>>,
}

#[derive(Debug, Clone)]
pub enum BuildOutcome {
    Module(ModuleRep),
    /// Irreducible weight-space dimensions per depth up to the cap.
    DidNotStabilize { level_cap: usize, dims_by_depth: Vec<usize> },
}

impl BuildOutcome {
    pub fn module(self) -> Option<ModuleRep> {
        match self {
            BuildOutcome::Module(m) => Some(m),
            BuildOutcome::DidNotStabilize { .. } => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            BuildOutcome::Module(m) => Some(m.dim()),
            BuildOutcome::DidNotStabilize { .. } => None,
        }
    }
}

/// One weight space of the Verma module with its map onto the quotient.
struct Space {
    offset: Vec<i64>,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Nonzero rows of the reduced ζ-coefficient matrix; row `k` gives the
    /// `k`-th quotient coordinate of a Verma vector.
    reduce: Vec<Vec<QScalar>>,
    pivots: Vec<usize>,
    first: usize,
}

fn depth_of(offset: &[i64]) -> i64 {
    -offset.iter().enumerate().map(|(k, &x)| (k as i64 + 1) * x).sum::<i64>()
}

/// PBW monomials in the positions `block` with total height `h`.
fn monomials_of_height(alg: &RttAlgebra, block: &[usize], h: usize) -> Vec<Monomial> {
    let layout = alg.layout();
    let s = alg.seq();
    let mut out = Vec::new();
    let mut cur = Monomial::one(layout.len());
    fn rec(k: usize, left: usize, block: &[usize], layout: &Layout, s: &crate::ParitySeq, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if k == block.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let p = block[k];
        let (i, j) = layout.indices(p);
        let ht = i.abs_diff(j);
        let max = if layout.parity(s, p) == 1 { 1.min(left / ht) } else { left / ht };
        for e in 0..=max {
            cur.0[p] = e as i32;
            rec(k + 1, left - e * ht, block, layout, s, cur, out);
        }
        cur.0[p] = 0;
    }
    rec(0, h, block, layout, s, &mut cur, &mut out);
    out
}

/// `x ζ` as a combination of lowering monomials.
fn on_vacuum(x: &AlgebraElement, w: &HWeight, layout: &Layout) -> HashMap<Monomial, QScalar> {
    let mut out: HashMap<Monomial, QScalar> = HashMap::new();
    'terms: for (m, c) in &x.terms {
        let mut key = m.clone();
        let mut coef = c.clone();
        for (p, e) in m.0.iter().enumerate() {
            match layout.slot(p) {
                Slot::Upper(..) if *e != 0 => continue 'terms,
                Slot::Diag(i) if *e != 0 => {
                    coef = coef * w.lambda_pow(i, *e);
                    key.0[p] = 0;
                }
                _ => {}
            }
        }
        let entry = out.entry(key).or_insert_with(QScalar::zero);
        *entry += &coef;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn build_irreducible(w: &HWeight, level_cap: usize) -> Result<BuildOutcome, HwError> {
    let alg = RttAlgebra::new(&w.owner)?;
    build_irreducible_in(&alg, w, level_cap)
}

/// As [`build_irreducible`], reusing an algebra (and its product cache).
pub fn build_irreducible_in(alg: &RttAlgebra, w: &HWeight, level_cap: usize) -> Result<BuildOutcome, HwError> {
    if level_cap == 0 {
        return Err(HwError::ZeroCap);
    }
    assert_eq!(alg.seq(), &w.owner, "algebra and weight disagree on the sequence");
    let layout = alg.layout().clone();
    let lower: Vec<usize> = (0..layout.diag_start()).collect();
    let upper: Vec<usize> = (layout.upper_start()..layout.len()).collect();
    let one = Monomial::one(layout.len());

    let mut spaces: Vec<Space> = Vec::new();
    let mut dims = Vec::new();
    let mut zero_run = 0;
    let mut next = 0;
    for h in 0..=level_cap {
        let mut lows: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for m in monomials_of_height(alg, &lower, h) {
            lows.entry(m.weight(&layout)).or_default().push(m);
        }
        let mut ups: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for m in monomials_of_height(alg, &upper, h) {
            ups.entry(m.weight(&layout)).or_default().push(m);
        }
        let mut total = 0;
        for (offset, monos) in lows {
            let mut rows: Vec<Vec<QScalar>> = if h == 0 {
                vec![vec![QScalar::one()]]
            } else {
                let gap: Vec<i64> = offset.iter().map(|x| -x).collect();
                ups.get(&gap)
                    .map(|us| {
                        us.iter()
                            .map(|u| {
                                let ue = AlgebraElement::monomial(&w.owner, u.clone(), QScalar::one());
                                monos
                                    .iter()
                                    .map(|l| {
                                        let le = AlgebraElement::monomial(&w.owner, l.clone(), QScalar::one());
                                        on_vacuum(&alg.mul(&ue, &le), w, &layout).remove(&one).unwrap_or_else(QScalar::zero)
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .unwrap_or_default()
            };
            let pivots = rref(&mut rows);
            if pivots.is_empty() {
                continue;
            }
            rows.truncate(pivots.len());
            total += pivots.len();
            let index = monos.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            spaces.push(Space { offset, monos, index, reduce: rows, first: next, pivots });
            next += spaces.last().expect("pushed").pivots.len();
        }
        dims.push(total);
        zero_run = if total == 0 { zero_run + 1 } else { 0 };
        if zero_run == 2 {
            break;
        }
    }
    if zero_run < 2 {
        return Ok(BuildOutcome::DidNotStabilize { level_cap, dims_by_depth: dims });
    }

    let s = &w.owner;
    let mut basis = Vec::new();
    for sp in &spaces {
        for &c in &sp.pivots {
            let m = &sp.monos[c];
            basis.push(BasisVector {
                monomial: m.render(&layout),
                exponents: m.0[..layout.diag_start()].to_vec(),
                offset: sp.offset.clone(),
                depth: depth_of(&sp.offset) as usize,
                parity: m.parity(s, &layout),
            });
        }
    }
    let space = GradedSpace { parities: basis.iter().map(|b| b.parity).collect() };
    let by_offset: HashMap<&Vec<i64>, &Space> = spaces.iter().map(|sp| (&sp.offset, sp)).collect();
    let mut symbols = GenSymbol::all(s.len());
    symbols.extend((1..=s.len()).map(GenSymbol::tb_inv));
    let mut matrices = BTreeMap::new();
    for g in symbols {
        let ge = alg.gen(g);
        let mut mat = GradedMatrix::zero(space.clone(), space.clone());
        for sp in &spaces {
            for (k, &c) in sp.pivots.iter().enumerate() {
                let le = AlgebraElement::monomial(s, sp.monos[c].clone(), QScalar::one());
                let vac = on_vacuum(&alg.mul(&ge, &le), w, &layout);
                if vac.is_empty() {
                    continue;
                }
                let mut target = sp.offset.clone();
                target[g.row - 1] += 1;
                target[g.col - 1] -= 1;
                // Weight spaces never reached are zero in the quotient.
                let Some(tsp) = by_offset.get(&target) else { continue };
                let mut v = vec![QScalar::zero(); tsp.monos.len()];
                for (m, x) in vac {
                    v[tsp.index[&m]] = x;
                }
                for (r, row) in tsp.reduce.iter().enumerate() {
                    let mut acc = QScalar::zero();
                    for (a, b) in row.iter().zip(&v) {
                        if !a.is_zero() && !b.is_zero() {
                            acc += &(a * b);
                        }
                    }
                    mat.set(tsp.first + r, sp.first + k, acc);
                }
            }
        }
        matrices.insert(g, mat);
    }
    Ok(BuildOutcome::Module(ModuleRep { weight: w.clone(), basis, maximal_vector: 0, matrices }))
}

impl ModuleRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace { parities: self.basis.iter().map(|b| b.parity).collect() }
    }

    /// The action of a generator; `t_ii` acts as `t̄_ii^{-1}`, symbols outside the
    /// triangular range act as zero.
    pub fn matrix(&self, g: GenSymbol) -> GradedMatrix<QScalar> {
        let key = if g.kind == crate::rtt::GenKind::T && g.row == g.col { GenSymbol::tb_inv(g.row) } else { g };
        self.matrices.get(&key).cloned().unwrap_or_else(|| GradedMatrix::zero(self.space(), self.space()))
    }

    /// Relation instances whose matrix image is nonzero.
    pub fn relation_failures(&self) -> Vec<(RelationFamily, (usize, usize, usize, usize))> {
        let mut cache: HashMap<GenSymbol, GradedMatrix<QScalar>> = HashMap::new();
        let mut get = |g: GenSymbol| cache.entry(g).or_insert_with(|| self.matrix(g)).clone();
        let mut bad = Vec::new();
        for inst in all_relation_instances(&self.weight.owner) {
            let mut acc = GradedMatrix::zero(self.space(), self.space());
            for ((a, b), c) in &inst.expr {
                acc = &acc + &get(*a).matmul(&get(*b)).scale(c);
            }
            if !acc.is_zero() {
                bad.push((inst.family, inst.indices));
            }
        }
        bad
    }

    /// Basis indices whose weight is the highest weight.
    pub fn top_weight_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].offset.iter().all(|&x| x == 0)).collect()
    }

    /// Multiplicity of each weight offset.
    pub fn weight_multiplicities(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.offset.clone()).or_insert(0) += 1;
        }
        out
    }

    /// JSON dump: basis and the nonzero entries of every generator matrix.
    pub fn to_json(&self) -> Value {
        let mats: serde_json::Map<String, Value> = self
            .matrices
            .iter()
            .map(|(g, m)| {
                let entries: Vec<Value> = m.entries().map(|(&(r, c), x)| json!([r, c, x.to_string()])).collect();
                (g.to_string(), Value::Array(entries))
            })
            .collect();
        json!({
            "sequence": self.weight.owner.to_string(),
            "weight": self.weight.to_string(),
            "dim": self.dim(),
            "maximal_vector": self.maximal_vector,
            "basis": self.basis,
            "matrices": mats,
        })
    }
}
