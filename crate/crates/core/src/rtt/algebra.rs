use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::element::{AlgebraElement, Monomial};
use super::gens::{GenKind, GenSymbol, Layout, Slot};
use super::rules::{derive_rules, Letter, RuleSet};
use super::RttError;
use crate::parity::ParitySeq;
use crate::scalar::{qd, QScalar};

type Terms = Rc<Vec<(Monomial, QScalar)>>;

const DEFAULT_BUDGET: usize = 5_000_000;

/// The RTT superalgebra of a parity sequence as a rewriting system onto PBW
/// normal forms.
///
/// Products are computed by inserting letters from the left into an already
/// ordered monomial, so the only out-of-order pair is always the leftmost one.
/// Letter-times-monomial results are cached.
#[derive(Debug)]
pub struct RttAlgebra {
    s: ParitySeq,
    layout: Layout,
    rules: RuleSet,
    memo: RefCell<HashMap<(usize, i32, Monomial), Terms>>,
    steps: Cell<usize>,
    budget: usize,
}

impl RttAlgebra {
    pub fn new(s: &ParitySeq) -> Result<Self, RttError> {
        let rules = derive_rules(s)?;
        Ok(RttAlgebra {
            s: s.clone(),
            layout: Layout::new(s.len()),
            rules,
            memo: RefCell::new(HashMap::new()),
            steps: Cell::new(0),
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn seq(&self) -> &ParitySeq {
        &self.s
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(&self.s)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(&self.s)
    }

    pub fn scalar(&self, c: QScalar) -> AlgebraElement {
        AlgebraElement::scalar(&self.s, c)
    }

    fn letter_monomial(&self, (p, e): Letter) -> Monomial {
        let mut m = Monomial::one(self.layout.len());
        m.0[p] = e;
        m
    }

    /// A generator as an element; symbols outside the triangular range are zero.
    pub fn gen(&self, g: GenSymbol) -> AlgebraElement {
        let n = self.s.len();
        let in_range = (1..=n).contains(&g.row) && (1..=n).contains(&g.col);
        if !in_range || !g.is_valid(n) {
            return self.zero();
        }
        let letter = match g.kind {
            GenKind::T if g.row == g.col => (self.layout.diag_pos(g.row), -1),
            GenKind::TBarInvDiag => (self.layout.diag_pos(g.row), -1),
            GenKind::TBar if g.row == g.col => (self.layout.diag_pos(g.row), 1),
            _ => (self.layout.off_pos(g.row, g.col), 1),
        };
        AlgebraElement::monomial(&self.s, self.letter_monomial(letter), QScalar::one())
    }

    pub fn t(&self, i: usize, j: usize) -> AlgebraElement {
        self.gen(GenSymbol::t(i, j))
    }

    pub fn tb(&self, i: usize, j: usize) -> AlgebraElement {
        self.gen(GenSymbol::tb(i, j))
    }

    /// `t̄_ii^e`.
    pub fn tb_diag_pow(&self, i: usize, e: i32) -> AlgebraElement {
        AlgebraElement::monomial(&self.s, self.letter_monomial((self.layout.diag_pos(i), e)), QScalar::one())
    }

    /// Cartan scalar `c` with `t̄_ii^e · γ = c · γ · t̄_ii^e` for the generator at `p`.
    fn cartan(&self, i: usize, e: i64, p: usize) -> QScalar {
        let (k, l) = self.layout.indices(p);
        let x = (i == k) as i64 - (i == l) as i64;
        qd(self.s.d(i), e * x)
    }

    /// `D · m` for a diagonal exponent vector `D` (indexed by diagonal slot).
    fn diag_left(&self, diag: &[(usize, i32)], m: &Monomial) -> (Monomial, QScalar) {
        let mut c = QScalar::one();
        for p in 0..self.layout.diag_start() {
            let a = m.0[p];
            if a == 0 {
                continue;
            }
            for &(i, e) in diag {
                c *= &self.cartan(i, (e * a) as i64, p);
            }
        }
        let mut out = m.clone();
        for &(i, e) in diag {
            out.0[self.layout.diag_pos(i)] += e;
        }
        (out, c)
    }

    fn tick(&self) -> Result<(), RttError> {
        let k = self.steps.get() + 1;
        self.steps.set(k);
        if k > self.budget {
            return Err(RttError::RewriteBudget(self.budget));
        }
        Ok(())
    }

    fn bump(m: &Monomial, p: usize) -> Monomial {
        let mut out = m.clone();
        out.0[p] += 1;
        out
    }

    /// `letter · m` in normal form.
    fn letter_times(&self, letter: Letter, m: &Monomial) -> Result<Terms, RttError> {
        let key = (letter.0, letter.1, m.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let out = Rc::new(self.letter_times_uncached(letter, m)?);
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn letter_times_uncached(&self, (p, e): Letter, m: &Monomial) -> Result<Vec<(Monomial, QScalar)>, RttError> {
        let layout = &self.layout;
        let nl = layout.diag_start();
        let nu = layout.upper_start();
        let first_in = |lo: usize, hi: usize| (lo..hi).find(|&x| m.0[x] != 0);
        match layout.slot(p) {
            Slot::Diag(i) => {
                let (mm, c) = self.diag_left(&[(i, e)], m);
                Ok(vec![(mm, c)])
            }
            Slot::Lower(..) => match first_in(0, nl) {
                Some(f) if f < p => self.apply_rule(p, f, m),
                Some(f) if f == p && layout.parity(&self.s, p) == 1 => self.apply_rule(p, p, m),
                _ => Ok(vec![(Self::bump(m, p), QScalar::one())]),
            },
            Slot::Upper(..) => {
                if let Some(f) = first_in(0, nl) {
                    return self.apply_rule(p, f, m);
                }
                let diag: Vec<(usize, i32)> =
                    (nl..nu).filter(|&x| m.0[x] != 0).map(|x| (x - nl + 1, m.0[x])).collect();
                if diag.is_empty() {
                    return match first_in(nu, layout.len()) {
                        Some(f) if f < p => self.apply_rule(p, f, m),
                        Some(f) if f == p && layout.parity(&self.s, p) == 1 => self.apply_rule(p, p, m),
                        _ => Ok(vec![(Self::bump(m, p), QScalar::one())]),
                    };
                }
                // γ D = c D γ, then D (γ U)
                let mut c = QScalar::one();
                for &(i, ei) in &diag {
                    c *= &self.cartan(i, -(ei as i64), p);
                }
                let mut upper = m.clone();
                for x in nl..nu {
                    upper.0[x] = 0;
                }
                let inner = self.letter_times((p, e), &upper)?;
                let mut acc: BTreeMap<Monomial, QScalar> = BTreeMap::new();
                for (mm, x) in inner.iter() {
                    let (dm, y) = self.diag_left(&diag, mm);
                    add_into(&mut acc, dm, &c * x * y);
                }
                Ok(acc.into_iter().collect())
            }
        }
    }

    /// `x_p · m` where `m = x_f · rest` and `(p, f)` is out of order.
    fn apply_rule(&self, p: usize, f: usize, m: &Monomial) -> Result<Vec<(Monomial, QScalar)>, RttError> {
        self.tick()?;
        let mut rest = m.clone();
        rest.0[f] -= 1;
        let rhs = self.rules.engine.get(&(p, f)).expect("rule table covers every out-of-order pair");
        let mut acc: BTreeMap<Monomial, QScalar> = BTreeMap::new();
        for (c, word) in rhs {
            let mut cur: Vec<(Monomial, QScalar)> = vec![(rest.clone(), c.clone())];
            for &letter in word.iter().rev() {
                let mut next: BTreeMap<Monomial, QScalar> = BTreeMap::new();
                for (mm, x) in &cur {
                    for (r, y) in self.letter_times(letter, mm)?.iter() {
                        add_into(&mut next, r.clone(), x * y);
                    }
                }
                cur = next.into_iter().collect();
            }
            for (mm, x) in cur {
                add_into(&mut acc, mm, x);
            }
        }
        Ok(acc.into_iter().collect())
    }

    fn letters_of(&self, m: &Monomial) -> Vec<Letter> {
        let mut out = Vec::new();
        for (p, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if self.layout.is_diag(p) {
                out.push((p, e));
            } else {
                out.extend(std::iter::repeat_n((p, 1), e as usize));
            }
        }
        out
    }

    pub fn try_mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, RttError> {
        self.steps.set(0);
        let mut acc: BTreeMap<Monomial, QScalar> = BTreeMap::new();
        for (mx, cx) in &x.terms {
            let mut cur: Vec<(Monomial, QScalar)> = y.terms.iter().map(|(m, c)| (m.clone(), c * cx)).collect();
            for letter in self.letters_of(mx).into_iter().rev() {
                let mut next: BTreeMap<Monomial, QScalar> = BTreeMap::new();
                for (mm, c) in &cur {
                    for (r, z) in self.letter_times(letter, mm)?.iter() {
                        add_into(&mut next, r.clone(), c * z);
                    }
                }
                cur = next.into_iter().collect();
            }
            for (mm, c) in cur {
                add_into(&mut acc, mm, c);
            }
        }
        Ok(AlgebraElement { owner: self.s.clone(), terms: acc })
    }

    /// Product in normal form.
    ///
    /// # Panics
    /// If the rewriting budget is exhausted, which indicates a defect in the
    /// rule table rather than bad input.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.try_mul(x, y).expect("rewriting budget exceeded")
    }

    pub fn product(&self, factors: &[&AlgebraElement]) -> AlgebraElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Normal form of a word of generator symbols.
    pub fn word(&self, gens: &[GenSymbol]) -> AlgebraElement {
        let elems: Vec<AlgebraElement> = gens.iter().map(|g| self.gen(*g)).collect();
        let refs: Vec<&AlgebraElement> = elems.iter().collect();
        self.product(&refs)
    }

    /// `[x, y]_a = xy − (−1)^{|x||y|} a yx` for homogeneous `x`, `y`.
    pub fn supercommutator(&self, x: &AlgebraElement, y: &AlgebraElement, a: &QScalar) -> AlgebraElement {
        let px = x.parity().unwrap_or(0);
        let py = y.parity().unwrap_or(0);
        let sign = if px & py == 1 { -QScalar::one() } else { QScalar::one() };
        self.mul(x, y).sub(&self.mul(y, x).scale(&(sign * a)))
    }

    /// Inverse of `t̄_ii^e`-type monomials only; general inverses are not needed.
    pub fn diag_inverse(&self, x: &AlgebraElement) -> Option<AlgebraElement> {
        if x.terms.len() != 1 {
            return None;
        }
        let (m, c) = x.terms.iter().next()?;
        if (0..self.layout.len()).any(|p| m.0[p] != 0 && !self.layout.is_diag(p)) {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        Some(AlgebraElement::monomial(&self.s, inv, c.checked_inv()?))
    }

    /// Number of cached letter products.
    pub fn cache_size(&self) -> usize {
        self.memo.borrow().len()
    }
}

fn add_into(acc: &mut BTreeMap<Monomial, QScalar>, m: Monomial, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}
