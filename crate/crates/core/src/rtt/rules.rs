//! Instances of the explicit quadratic relations and the rewrite rules solved
//! from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::gens::{GenKind, GenSymbol, Layout};
use crate::linalg;
use crate::parity::ParitySeq;
use crate::scalar::{qd, qd_diff, QScalar};

/// Which family of explicit relations an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationFamily {
    /// Between two `t` generators.
    TT,
    /// Between two `t̄` generators.
    BarBar,
    /// Between a `t` and a `t̄` generator.
    TBar,
}

/// A quadratic expression in generators; diagonal `t_ii` and `t̄_ii` are kept
/// as separate symbols.
pub type Quadratic = BTreeMap<(GenSymbol, GenSymbol), QScalar>;

/// One instance `LHS − RHS` of an explicit relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub indices: (usize, usize, usize, usize),
    pub expr: Quadratic,
}

fn generator(kind: GenKind, i: usize, j: usize, n: usize) -> Option<GenSymbol> {
    let g = GenSymbol { kind, row: i, col: j };
    g.is_valid(n).then_some(g)
}

fn push(expr: &mut Quadratic, a: Option<GenSymbol>, b: Option<GenSymbol>, c: QScalar) {
    if let (Some(a), Some(b)) = (a, b) {
        if c.is_zero() {
            return;
        }
        let e = expr.entry((a, b)).or_insert_with(QScalar::zero);
        *e += &c;
        if e.is_zero() {
            expr.remove(&(a, b));
        }
    }
}

fn delta(b: bool) -> i64 {
    b as i64
}

/// The explicit relation of `family` at `(i, j, k, l)`, as `LHS − RHS`.
pub fn relation_instance(s: &ParitySeq, family: RelationFamily, (i, j, k, l): (usize, usize, usize, usize)) -> Quadratic {
    let n = s.len();
    let (k1, k2) = match family {
        RelationFamily::TT => (GenKind::T, GenKind::T),
        RelationFamily::BarBar => (GenKind::TBar, GenKind::TBar),
        RelationFamily::TBar => (GenKind::T, GenKind::TBar),
    };
    let mut e = Quadratic::new();
    let sg = |a, b, c, d| QScalar::from_int(s.sign(a, b, c, d) as i64);
    push(&mut e, generator(k1, i, j, n), generator(k2, k, l, n), qd(s.d(i), delta(i == k)));
    push(&mut e, generator(k2, k, l, n), generator(k1, i, j, n), -(sg(i, j, k, l) * qd::<QScalar>(s.d(j), delta(j == l))));
    let c = sg(i, k, k, l) * qd_diff::<QScalar>(s.d(k));
    match family {
        RelationFamily::TT | RelationFamily::BarBar => {
            let f = QScalar::from_int(delta(j < l) - delta(k < i));
            push(&mut e, generator(k1, k, j, n), generator(k1, i, l, n), -(&c * &f));
        }
        RelationFamily::TBar => {
            push(&mut e, generator(GenKind::TBar, k, j, n), generator(GenKind::T, i, l, n), -(&c * QScalar::from_int(delta(j < l))));
            push(&mut e, generator(GenKind::T, k, j, n), generator(GenKind::TBar, i, l, n), &c * QScalar::from_int(delta(k < i)));
        }
    }
    e
}

/// All nonzero instances over every index quadruple.
pub fn all_relation_instances(s: &ParitySeq) -> Vec<RelationInstance> {
    let n = s.len();
    let mut out = Vec::new();
    for family in [RelationFamily::TT, RelationFamily::BarBar, RelationFamily::TBar] {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let expr = relation_instance(s, family, (i, j, k, l));
                        if !expr.is_empty() {
                            out.push(RelationInstance { family, indices: (i, j, k, l), expr });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Rank of a generator symbol in the total order used for elimination: the
/// lowering block, then `t̄_11, t_11, t̄_22, t_22, …`, then the raising block.
fn formal_rank(layout: &Layout, g: &GenSymbol) -> usize {
    let nl = layout.lower.len();
    match g.kind {
        GenKind::T if g.row > g.col => layout.off_pos(g.row, g.col),
        GenKind::T | GenKind::TBarInvDiag => nl + 2 * (g.row - 1) + 1,
        GenKind::TBar if g.row == g.col => nl + 2 * (g.row - 1),
        GenKind::TBar => nl + 2 * layout.n + layout.off_pos(g.row, g.col) - layout.upper_start(),
    }
}

/// A letter of the rewriting engine: a PBW position and an exponent.
pub type Letter = (usize, i32);

/// Right-hand side of a rewrite rule: ordered words with coefficients.
pub type RuleRhs = Vec<(QScalar, Vec<Letter>)>;

fn to_letter(layout: &Layout, g: &GenSymbol) -> Letter {
    match g.kind {
        GenKind::T if g.row == g.col => (layout.diag_pos(g.row), -1),
        GenKind::TBarInvDiag => (layout.diag_pos(g.row), -1),
        GenKind::TBar if g.row == g.col => (layout.diag_pos(g.row), 1),
        _ => (layout.off_pos(g.row, g.col), 1),
    }
}

/// Rewrite rules for every out-of-order pair of generator symbols.
#[derive(Debug, Clone)]
pub struct RuleSet {
    /// Formal rules `a·b = Σ c · x·y` on generator symbols.
    pub formal: BTreeMap<(GenSymbol, GenSymbol), Quadratic>,
    /// Engine rules keyed by PBW positions of two off-diagonal generators.
    pub engine: HashMap<(usize, usize), RuleRhs>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no rewrite rule for the out-of-order pair {0} {1}")]
pub struct MissingRule(pub GenSymbol, pub GenSymbol);

/// Solves the relation instances for the out-of-order words.
pub fn derive_rules(s: &ParitySeq) -> Result<RuleSet, MissingRule> {
    let n = s.len();
    let layout = Layout::new(n);
    let gens = GenSymbol::all(n);
    let rank = |g: &GenSymbol| formal_rank(&layout, g);
    let out_of_order = |a: &GenSymbol, b: &GenSymbol| rank(a) > rank(b) || (a == b && a.parity(s) == 1);

    let mut bad: Vec<(GenSymbol, GenSymbol)> = Vec::new();
    for a in &gens {
        for b in &gens {
            if out_of_order(a, b) {
                bad.push((*a, *b));
            }
        }
    }
    bad.sort_by_key(|(a, b)| (rank(a), rank(b)));
    let instances = all_relation_instances(s);
    let mut good: BTreeSet<(usize, usize, GenSymbol, GenSymbol)> = BTreeSet::new();
    for inst in &instances {
        for (a, b) in inst.expr.keys() {
            if !out_of_order(a, b) {
                good.insert((rank(a), rank(b), *a, *b));
            }
        }
    }
    let mut cols: Vec<(GenSymbol, GenSymbol)> = bad.clone();
    cols.extend(good.iter().map(|&(_, _, a, b)| (a, b)));
    let col_of: HashMap<(GenSymbol, GenSymbol), usize> = cols.iter().enumerate().map(|(c, w)| (*w, c)).collect();

    let mut m: Vec<Vec<QScalar>> = instances
        .iter()
        .map(|inst| {
            let mut row = vec![QScalar::zero(); cols.len()];
            for (w, c) in &inst.expr {
                row[col_of[w]] = c.clone();
            }
            row
        })
        .collect();
    let pivots = linalg::rref(&mut m);

    let mut formal = BTreeMap::new();
    let mut engine = HashMap::new();
    for (c, w) in bad.iter().enumerate() {
        let Some(row) = pivots.iter().position(|&p| p == c) else {
            return Err(MissingRule(w.0, w.1));
        };
        let mut rhs = Quadratic::new();
        for (cc, x) in m[row].iter().enumerate() {
            if cc == c || x.is_zero() {
                continue;
            }
            if cc < bad.len() {
                // another out-of-order word survived elimination
                return Err(MissingRule(w.0, w.1));
            }
            rhs.insert(cols[cc], -x);
        }
        let off = |g: &GenSymbol| g.row != g.col;
        if off(&w.0) && off(&w.1) {
            let key = (to_letter(&layout, &w.0).0, to_letter(&layout, &w.1).0);
            let words = rhs
                .iter()
                .map(|((a, b), x)| (x.clone(), vec![to_letter(&layout, a), to_letter(&layout, b)]))
                .collect();
            engine.insert(key, words);
        }
        formal.insert(*w, rhs);
    }
    Ok(RuleSet { formal, engine })
}
