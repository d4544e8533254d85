use rtt_core::rtt::{all_relation_instances, derive_rules, DjGenerator, GenKind, GenSymbol, RttAlgebra};
use rtt_core::{parity::enumerate_sequences, ParitySeq, QScalar};

fn seq(s: &str) -> ParitySeq {
    s.parse().unwrap()
}

fn all_small() -> Vec<ParitySeq> {
    (2..=3usize).flat_map(|len| (0..=len).flat_map(move |m| enumerate_sequences(m, len - m))).collect()
}

#[test]
fn rules_exist_up_to_rank_three() {
    for s in all_small() {
        derive_rules(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn odd_square_vanishes() {
    let a = RttAlgebra::new(&seq("01")).unwrap();
    let x = a.t(2, 1);
    assert!(a.mul(&x, &x).is_zero());
}

#[test]
fn cartan_conjugation_and_inverse() {
    for s in ["00", "01", "10", "11"] {
        let s = seq(s);
        let a = RttAlgebra::new(&s).unwrap();
        let lhs = a.mul(&a.tb(1, 1), &a.t(2, 1));
        let q = QScalar::q_pow(-(s.d(1) as i64));
        let rhs = a.mul(&a.t(2, 1), &a.tb(1, 1)).scale(&q);
        assert_eq!(lhs, rhs);
        for i in 1..=2 {
            assert_eq!(a.mul(&a.t(i, i), &a.tb(i, i)), a.one());
            assert_eq!(a.mul(&a.tb(i, i), &a.t(i, i)), a.one());
        }
    }
}

#[test]
fn relations_straighten_to_zero() {
    for s in all_small() {
        let a = RttAlgebra::new(&s).unwrap();
        for inst in all_relation_instances(&s) {
            let mut acc = a.zero();
            for ((x, y), c) in &inst.expr {
                acc = acc.add(&a.mul(&a.gen(*x), &a.gen(*y)).scale(c));
            }
            assert!(acc.is_zero(), "{s} {:?} {:?}: {acc}", inst.family, inst.indices);
        }
    }
}

#[test]
fn outside_range_is_zero() {
    let a = RttAlgebra::new(&seq("01")).unwrap();
    assert!(a.gen(GenSymbol { kind: GenKind::T, row: 1, col: 2 }).is_zero());
}

#[test]
fn associativity_random_triples() {
    for s in ["01", "10", "001", "010", "111"] {
        let a = RttAlgebra::new(&seq(s)).unwrap();
        let bad = a.check_associativity(60, 3, 7);
        assert!(bad.is_empty(), "{s}: {bad:?}");
    }
}

/// Dimension of the span of words of length ≤ `len` in the free algebra modulo
/// the ideal elements `u·r·v` of length ≤ `len`, split by weight.
fn free_census(s: &ParitySeq, len: usize) -> std::collections::BTreeMap<Vec<i64>, usize> {
    use rtt_core::linalg::Span;
    use std::collections::{BTreeMap, HashMap};
    type Word = Vec<GenSymbol>;
    let n = s.len();
    let letters = GenSymbol::all(n);
    let weight = |w: &Word| {
        let mut v = vec![0i64; n];
        for g in w {
            v[g.row - 1] += 1;
            v[g.col - 1] -= 1;
        }
        v
    };
    let mut words: Vec<Word> = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |g| [w.clone(), vec![*g]].concat())).collect();
        words.extend(layer.iter().cloned());
    }
    let mut rels: Vec<Vec<(Word, QScalar)>> = all_relation_instances(s)
        .into_iter()
        .map(|inst| inst.expr.into_iter().map(|((a, b), c)| (vec![a, b], c)).collect())
        .collect();
    for i in 1..=n {
        for (a, b) in [(GenSymbol::t(i, i), GenSymbol::tb(i, i)), (GenSymbol::tb(i, i), GenSymbol::t(i, i))] {
            rels.push(vec![(vec![a, b], QScalar::one()), (vec![], -QScalar::one())]);
        }
    }
    let mut by_weight: BTreeMap<Vec<i64>, (HashMap<Word, usize>, Vec<Vec<(Word, QScalar)>>)> = BTreeMap::new();
    for w in &words {
        let e = by_weight.entry(weight(w)).or_default();
        let k = e.0.len();
        e.0.insert(w.clone(), k);
    }
    let mut pads: Vec<(Word, Word)> = vec![(vec![], vec![])];
    for g in &letters {
        pads.push((vec![*g], vec![]));
        pads.push((vec![], vec![*g]));
    }
    for r in &rels {
        for (u, v) in &pads {
            let terms: Vec<(Word, QScalar)> =
                r.iter().map(|(w, c)| ([u.clone(), w.clone(), v.clone()].concat(), c.clone())).collect();
            if terms.iter().any(|(w, _)| w.len() > len) {
                continue;
            }
            let wt = weight(&terms.iter().find(|(w, _)| w.len() >= 2).unwrap().0);
            by_weight.get_mut(&wt).unwrap().1.push(terms);
        }
    }
    by_weight
        .into_iter()
        .map(|(wt, (index, rows))| {
            let mut span = Span::new(index.len());
            for row in rows {
                let mut v = vec![QScalar::zero(); index.len()];
                for (w, c) in row {
                    v[index[&w]] += &c;
                }
                span.insert(&v);
            }
            (wt, index.len() - span.rank())
        })
        .filter(|(_, d)| *d > 0)
        .collect()
}

#[test]
fn census_matches_free_reduction() {
    for s in ["01", "00"] {
        let s = seq(s);
        let a = RttAlgebra::new(&s).unwrap();
        assert_eq!(a.pbw_census(3), free_census(&s, 3), "{s}");
    }
}

#[test]
fn dj_relations_hold() {
    for s in all_small() {
        let a = RttAlgebra::new(&s).unwrap();
        let r = a.check_dj_relations();
        for f in &r.failures {
            eprintln!("{s}: {} -> {}", f.relation, f.residual);
        }
        assert!(r.pass(), "{s}");
    }
}

#[test]
fn dj_quartic_relation_at_rank_four() {
    for s in ["0100", "0010", "1011", "0101"] {
        let a = RttAlgebra::new(&seq(s)).unwrap();
        let inst = a.dj_relation_instances();
        assert!(inst.iter().any(|(l, _)| l.starts_with("quartic")), "{s}");
        let r = a.check_dj_relations();
        assert!(r.pass(), "{s}: {:?}", r.failures.first());
    }
}

#[test]
fn serre_with_wrong_power_fails() {
    let a = RttAlgebra::new(&seq("001")).unwrap();
    let x1 = a.dj_generator(DjGenerator::XPlus(1));
    let x2 = a.dj_generator(DjGenerator::XPlus(2));
    let q = QScalar::q_pow(1);
    let inner = a.supercommutator(&x1, &x2, &q);
    assert!(a.supercommutator(&x1, &inner, &q.checked_inv().unwrap()).is_zero());
    assert!(!a.supercommutator(&x1, &inner, &q).is_zero());
}

#[test]
fn parse_roundtrip() {
    let a = RttAlgebra::new(&seq("010")).unwrap();
    let x = a.parse_element("(q - q^-1)*tb[1,2]*t[2,1] + tb[1,1]^-1 - 3*t[3,2]*t[3,2]").unwrap();
    let y = a.parse_element(&x.to_string()).unwrap();
    assert_eq!(x, y);
    assert_eq!(a.parse_element("t[2,2]*tb[2,2]").unwrap(), a.one());
    assert!(a.parse_element("t[1,2]").unwrap().is_zero());
    assert!(a.parse_element("t[4,1]").is_err());
    assert!(a.parse_element("tb[1,2]^-1").is_err());
    assert!(a.parse_element("t[2,1] *").is_err());
}

#[test]
fn scale_automorphism_examples() {
    use rtt_core::rtt::DiagonalScale;
    let s = seq("01");
    let a = RttAlgebra::new(&s).unwrap();
    let x = a.parse_element("t[2,1]*tb[1,2] + (q)*tb[1,1]^2").unwrap();
    assert_eq!(a.scale_automorphism(&DiagonalScale::identity(2), &x), x);
    let d = DiagonalScale::new("2q".parse().unwrap(), vec![1, -1]).unwrap();
    let back = a.scale_automorphism(&d.inverse(), &a.scale_automorphism(&d, &x));
    assert_eq!(back, x);
    let dq: QScalar = "2q".parse().unwrap();
    assert_eq!(a.scale_automorphism(&d, &a.t(2, 1)), a.t(2, 1).scale(&-dq.clone()));
    assert_eq!(a.scale_automorphism(&d, &a.tb(1, 2)), a.tb(1, 2).scale(&dq.checked_inv().unwrap()));
    // relation images
    for inst in all_relation_instances(&s) {
        let mut acc = a.zero();
        for ((g, h), c) in &inst.expr {
            let prod = a.mul(&a.scale_automorphism(&d, &a.gen(*g)), &a.scale_automorphism(&d, &a.gen(*h)));
            acc = acc.add(&prod.scale(c));
        }
        assert!(acc.is_zero());
    }
    assert!(DiagonalScale::new(QScalar::zero(), vec![1, 1]).is_err());
}
