//! Odd reflections between RTT algebras of adjacent parity sequences.

use serde::Serialize;
use thiserror::Error;

use crate::parity::{ParityError, ParitySeq};
use crate::rtt::{all_relation_instances, AlgebraElement, GenKind, GenSymbol, RelationFamily, RttAlgebra, RttError, Slot};
use crate::scalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("reflection index {i} out of range for a sequence of length {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error(transparent)]
    Parity(#[from] ParityError),
    #[error(transparent)]
    Algebra(#[from] RttError),
}

/// A factor of an image word.
#[derive(Debug, Clone, Copy)]
enum F {
    T(usize, usize),
    B(usize, usize),
    /// `t̄_ii^e`.
    D(usize, i32),
}

type Image = Vec<(QScalar, Vec<F>)>;

/// The reflection `β_i` from the algebra of `source` to that of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMap {
    pub source: ParitySeq,
    pub target: ParitySeq,
    pub i: usize,
    negated: Option<GenSymbol>,
}

fn int(x: i64) -> QScalar {
    QScalar::from_int(x)
}

fn qp(e: i64) -> QScalar {
    QScalar::q_pow(e)
}

/// Forward images, written over the target sequence `sp` (signs `ς'`, `d'`).
/// Sign `(−1)^{|i−1|+|a|+|i+2|}` on every `t_lk` and `t̄_kl` with `k < i < i + 1 < l`;
/// `a` is whichever of `i`, `i + 1` is the odd-moved index in the sequence `s`.
fn cross(s: &ParitySeq, i: usize, a: usize) -> QScalar {
    let e = s.parity(i - 1) ^ s.parity(a) ^ s.parity(i + 2);
    int(if e == 1 { -1 } else { 1 })
}

fn forward_table(sp: &ParitySeq, i: usize, g: GenSymbol) -> Image {
    let sg = |a, b, c, d| int(sp.sign(a, b, c, d) as i64);
    let d = |a: usize| sp.d(a) as i64;
    let (r, c) = (g.row, g.col);
    let id = |f: F| vec![(QScalar::one(), vec![f])];
    let i1 = i + 1;
    match g.kind {
        GenKind::T => {
            if (r, c) == (i1, i) {
                vec![(int(d(i) * d(i1)) * qp(-d(i)), vec![F::B(i, i1), F::D(i, -2)])]
            } else if r == i && c < i {
                let k = c;
                vec![
                    (sg(i - 1, i, i, i1) * qp(-d(i)), vec![F::T(i1, k)]),
                    (-sg(k, i - 1, i, i1), vec![F::D(i, 1), F::T(i1, i), F::T(i, k)]),
                ]
            } else if r == i1 && c < i {
                vec![(-sg(i - 1, i, i, i1) * int(d(i1)), vec![F::T(i, c)])]
            } else if c == i && r >= i + 2 {
                let l = r;
                vec![
                    (sg(i, i1, i, i + 2) * qp(d(i)), vec![F::T(l, i1)]),
                    (-sg(i, i1, i + 2, l), vec![F::D(i, -1), F::T(l, i), F::B(i, i1)]),
                ]
            } else if c == i1 && r >= i + 2 {
                vec![(-sg(i, i1, i1, i + 2) * int(d(i1)), vec![F::T(r, i)])]
            } else if c < i && r > i1 {
                vec![(cross(sp, i, i), vec![F::T(r, c)])]
            } else {
                id(F::T(r, c))
            }
        }
        GenKind::TBar | GenKind::TBarInvDiag => {
            if (r, c) == (i, i1) {
                vec![(qp(d(i)), vec![F::D(i, 2), F::T(i1, i)])]
            } else if c == i && r < i {
                let k = r;
                vec![
                    (sg(i - 1, i, i, i1) * int(d(i)) * qp(d(i)), vec![F::B(k, i1)]),
                    (-sg(k, i - 1, i, i1) * int(d(i)), vec![F::B(k, i), F::B(i, i1), F::D(i, -1)]),
                ]
            } else if c == i1 && r < i {
                vec![(-sg(i - 1, i, i, i1), vec![F::B(r, i)])]
            } else if r == i && c >= i + 2 {
                let l = c;
                vec![
                    (sg(i, i1, i, i + 2) * int(d(i)) * qp(-d(i)), vec![F::B(i1, l)]),
                    (-sg(i, i1, i + 2, l) * int(d(i)), vec![F::T(i1, i), F::B(i, l), F::D(i, 1)]),
                ]
            } else if r == i1 && c >= i + 2 {
                vec![(-sg(i, i1, i1, i + 2), vec![F::B(i, c)])]
            } else if r < i && c > i1 {
                vec![(cross(sp, i, i), vec![F::B(r, c)])]
            } else {
                id(F::B(r, c))
            }
        }
    }
}

/// Inverse images, written over the source sequence `s` (signs `ς`, `d`).
fn inverse_table(s: &ParitySeq, i: usize, g: GenSymbol) -> Image {
    let sg = |a, b, c, d| int(s.sign(a, b, c, d) as i64);
    let d = |a: usize| s.d(a) as i64;
    let (r, c) = (g.row, g.col);
    let id = |f: F| vec![(QScalar::one(), vec![f])];
    let i1 = i + 1;
    match g.kind {
        GenKind::T => {
            if (r, c) == (i1, i) {
                vec![(qp(-d(i1)), vec![F::D(i1, -2), F::B(i, i1)])]
            } else if r == i && c < i {
                vec![(-sg(i - 1, i1, i, i1) * int(d(i)), vec![F::T(i1, c)])]
            } else if r == i1 && c < i {
                let k = c;
                vec![
                    (sg(i - 1, i1, i, i1) * qp(d(i1)), vec![F::T(i, k)]),
                    (-sg(k, i - 1, i, i1), vec![F::D(i1, -1), F::B(i, i1), F::T(i1, k)]),
                ]
            } else if c == i && r >= i + 2 {
                vec![(-sg(i, i1, i, i + 2) * int(d(i)), vec![F::T(r, i1)])]
            } else if c == i1 && r >= i + 2 {
                let l = r;
                vec![
                    (sg(i, i1, i1, i + 2) * qp(-d(i1)), vec![F::T(l, i)]),
                    (-sg(i, i1, i + 2, l), vec![F::D(i1, 1), F::T(l, i1), F::T(i1, i)]),
                ]
            } else if c < i && r > i1 {
                vec![(cross(s, i, i1), vec![F::T(r, c)])]
            } else {
                id(F::T(r, c))
            }
        }
        GenKind::TBar | GenKind::TBarInvDiag => {
            if (r, c) == (i, i1) {
                vec![(int(d(i) * d(i1)) * qp(d(i1)), vec![F::T(i1, i), F::D(i1, 2)])]
            } else if c == i && r < i {
                vec![(-sg(i - 1, i1, i, i1), vec![F::B(r, i1)])]
            } else if c == i1 && r < i {
                let k = r;
                vec![
                    (sg(i - 1, i1, i, i1) * int(d(i1)) * qp(-d(i1)), vec![F::B(k, i)]),
                    (-sg(k, i - 1, i, i1) * int(d(i1)), vec![F::B(k, i1), F::T(i1, i), F::D(i1, 1)]),
                ]
            } else if r == i && c >= i + 2 {
                vec![(-sg(i, i1, i, i + 2), vec![F::B(i1, c)])]
            } else if r == i1 && c >= i + 2 {
                let l = c;
                vec![
                    (sg(i, i1, i1, i + 2) * int(d(i1)) * qp(d(i1)), vec![F::B(i, l)]),
                    (-sg(i, i1, i + 2, l) * int(d(i1)), vec![F::B(i, i1), F::B(i1, l), F::D(i1, -1)]),
                ]
            } else if r < i && c > i1 {
                vec![(cross(s, i, i1), vec![F::B(r, c)])]
            } else {
                id(F::B(r, c))
            }
        }
    }
}

fn realize(alg: &RttAlgebra, img: &Image) -> AlgebraElement {
    let mut acc = alg.zero();
    for (c, word) in img {
        let factors: Vec<AlgebraElement> = word
            .iter()
            .map(|f| match *f {
                F::T(r, c) => alg.t(r, c),
                F::B(r, c) => alg.tb(r, c),
                F::D(i, e) => alg.tb_diag_pow(i, e),
            })
            .collect();
        let refs: Vec<&AlgebraElement> = factors.iter().collect();
        acc = acc.add(&alg.product(&refs).scale(c));
    }
    acc
}

/// Image of `t̄_ii` under a reflection at `i` with target signs `d`: `(scale, new index)`.
fn diag_image(i: usize, a: usize, d: impl Fn(usize) -> i64) -> (i64, usize) {
    if a == i {
        (d(i), i + 1)
    } else if a == i + 1 {
        (d(i + 1), i)
    } else {
        (1, a)
    }
}

impl ReflectionMap {
    pub fn new(source: &ParitySeq, i: usize) -> Result<Self, BraidError> {
        let n = source.len();
        if i == 0 || i >= n {
            return Err(BraidError::IndexOutOfRange { i, n });
        }
        Ok(ReflectionMap { source: source.clone(), target: source.swapped(i)?, i, negated: None })
    }

    /// Whether `s_i != s_{i+1}`; otherwise the map is the identity.
    pub fn is_odd(&self) -> bool {
        self.source.is_odd_position(self.i)
    }

    /// A copy whose image of `g` is negated, for negative controls.
    pub fn corrupted(&self, g: GenSymbol) -> Self {
        ReflectionMap { negated: Some(g), ..self.clone() }
    }

    /// The map in the opposite direction, from `target` back to `source`.
    pub fn reversed(&self) -> Self {
        ReflectionMap { source: self.target.clone(), target: self.source.clone(), i: self.i, negated: None }
    }

    fn check_owner(&self, alg: &RttAlgebra, expect: &ParitySeq) {
        assert_eq!(alg.seq(), expect, "algebra belongs to the wrong sequence");
    }

    /// Image of a source generator, straightened in the target algebra.
    pub fn image(&self, target: &RttAlgebra, g: GenSymbol) -> AlgebraElement {
        self.check_owner(target, &self.target);
        let out = self.image_raw(target, g, true);
        if self.negated == Some(g) {
            out.neg()
        } else {
            out
        }
    }

    /// Image of a target generator under the inverse map, in the source algebra.
    pub fn inverse_image(&self, source: &RttAlgebra, g: GenSymbol) -> AlgebraElement {
        self.check_owner(source, &self.source);
        self.image_raw(source, g, false)
    }

    fn image_raw(&self, alg: &RttAlgebra, g: GenSymbol, forward: bool) -> AlgebraElement {
        let n = self.source.len();
        if !g.is_valid(n) {
            return alg.zero();
        }
        if !self.is_odd() {
            return alg.gen(g);
        }
        let signs = if forward { &self.target } else { &self.source };
        if g.row == g.col {
            let (c, a) = diag_image(self.i, g.row, |a| signs.d(a) as i64);
            let e = if g.kind == GenKind::TBar { 1 } else { -1 };
            return alg.tb_diag_pow(a, e).scale(&int(c));
        }
        let img = if forward { forward_table(signs, self.i, g) } else { inverse_table(signs, self.i, g) };
        realize(alg, &img)
    }

    fn map_element(&self, alg: &RttAlgebra, x: &AlgebraElement, forward: bool) -> AlgebraElement {
        let layout = alg.layout().clone();
        let mut acc = alg.zero();
        let gen_image = |g: GenSymbol| {
            if forward {
                self.image(alg, g)
            } else {
                self.inverse_image(alg, g)
            }
        };
        for (m, c) in &x.terms {
            let mut cur = alg.scalar(c.clone());
            for (p, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (g, reps) = match layout.slot(p) {
                    Slot::Lower(r, cc) => (GenSymbol::t(r, cc), e),
                    Slot::Upper(r, cc) => (GenSymbol::tb(r, cc), e),
                    Slot::Diag(a) if e > 0 => (GenSymbol::tb(a, a), e),
                    Slot::Diag(a) => (GenSymbol::t(a, a), -e),
                };
                let img = gen_image(g);
                for _ in 0..reps {
                    cur = alg.mul(&cur, &img);
                }
            }
            acc = acc.add(&cur);
        }
        acc
    }

    /// Applies the map to a source element; `target` is the target algebra.
    pub fn apply(&self, target: &RttAlgebra, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(&x.owner, &self.source, "element belongs to the wrong sequence");
        self.map_element(target, x, true)
    }

    /// Applies the inverse map to a target element; `source` is the source algebra.
    pub fn apply_inverse(&self, source: &RttAlgebra, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(&x.owner, &self.target, "element belongs to the wrong sequence");
        self.map_element(source, x, false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReflectionFailure {
    pub family: RelationFamily,
    pub indices: (usize, usize, usize, usize),
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidReport {
    pub source: String,
    pub target: String,
    pub i: usize,
    pub relation_failures: Vec<ReflectionFailure>,
    /// Target relation instances whose inverse images do not vanish.
    pub inverse_relation_failures: Vec<ReflectionFailure>,
    /// Source generators where inverse∘forward differs from the identity.
    pub inverse_forward_failures: Vec<String>,
    /// Target generators where forward∘inverse differs from the identity.
    pub forward_inverse_failures: Vec<String>,
}

impl BraidReport {
    pub fn pass(&self) -> bool {
        self.relation_failures.is_empty()
            && self.inverse_relation_failures.is_empty()
            && self.inverse_forward_failures.is_empty() && self.forward_inverse_failures.is_empty()
    }
}

/// Checks that a reflection maps relations to relations and that the two
/// tables are mutually inverse on generators.
pub fn verify_isomorphism(map: &ReflectionMap) -> Result<BraidReport, BraidError> {
    let src = RttAlgebra::new(&map.source)?;
    let tgt = RttAlgebra::new(&map.target)?;
    let n = map.source.len();
    let mut relation_failures = Vec::new();
    for inst in all_relation_instances(&map.source) {
        let mut acc = tgt.zero();
        for ((a, b), c) in &inst.expr {
            acc = acc.add(&tgt.mul(&map.image(&tgt, *a), &map.image(&tgt, *b)).scale(c));
        }
        if !acc.is_zero() {
            relation_failures.push(ReflectionFailure { family: inst.family, indices: inst.indices, residual: acc.to_string() });
        }
    }
    let mut inverse_relation_failures = Vec::new();
    for inst in all_relation_instances(&map.target) {
        let mut acc = src.zero();
        for ((a, b), c) in &inst.expr {
            acc = acc.add(&src.mul(&map.inverse_image(&src, *a), &map.inverse_image(&src, *b)).scale(c));
        }
        if !acc.is_zero() {
            inverse_relation_failures.push(ReflectionFailure { family: inst.family, indices: inst.indices, residual: acc.to_string() });
        }
    }
    let mut inverse_forward_failures = Vec::new();
    let mut forward_inverse_failures = Vec::new();
    for g in GenSymbol::all(n) {
        if map.apply_inverse(&src, &map.image(&tgt, g)) != src.gen(g) {
            inverse_forward_failures.push(g.to_string());
        }
        if map.apply(&tgt, &map.inverse_image(&src, g)) != tgt.gen(g) {
            forward_inverse_failures.push(g.to_string());
        }
    }
    Ok(BraidReport {
        source: map.source.to_string(),
        target: map.target.to_string(),
        i: map.i,
        relation_failures,
        inverse_relation_failures,
        inverse_forward_failures,
        forward_inverse_failures,
    })
}

/// Applies `β_{w_1}`, then `β_{w_2}`, … to `x`, tracking the sequence.
pub fn apply_braid_word(s: &ParitySeq, word: &[usize], x: &AlgebraElement) -> Result<(ParitySeq, AlgebraElement), BraidError> {
    let mut cur_s = s.clone();
    let mut cur = x.clone();
    for &i in word {
        let map = ReflectionMap::new(&cur_s, i)?;
        let tgt = RttAlgebra::new(&map.target)?;
        cur = map.apply(&tgt, &cur);
        cur_s = map.target;
    }
    Ok((cur_s, cur))
}
