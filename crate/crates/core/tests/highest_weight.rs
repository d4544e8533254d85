use num_rational::BigRational;
use proptest::prelude::*;
use rtt_core::highest_weight::*;
use rtt_core::rtt::{GenSymbol, RttAlgebra};
use rtt_core::{ParitySeq, QScalar};

fn seq(s: &str) -> ParitySeq {
    s.parse().unwrap()
}

fn w(s: &str, e: &[i64]) -> HWeight {
    HWeight::from_ints(&seq(s), e).unwrap()
}

fn build(x: &HWeight) -> Option<ModuleRep> {
    build_irreducible(x, 12).unwrap().module()
}

#[test]
fn parse_and_display() {
    let s = seq("001");
    let x = HWeight::parse(&s, "+q^3, +q^1, -q^0").unwrap();
    assert_eq!(x.exps, vec![BigRational::from_integer(3.into()), BigRational::from_integer(1.into()), BigRational::from_integer(0.into())]);
    assert_eq!(x.signs, vec![1, 1, -1]);
    assert_eq!(HWeight::parse(&s, &x.to_string()).unwrap(), x);
    // q_3 = q^{-1}, so λ_3 = q^2 means Λ_3 = −2.
    let y = HWeight::parse(&s, "q, 1, q^2").unwrap();
    assert_eq!(y.exps[2], BigRational::from_integer((-2).into()));
    assert_eq!(y.lambda(3), QScalar::q_pow(2));
    let h = HWeight::parse(&s, "q^(1/2),q^-1/2,-1").unwrap();
    assert_eq!(h.lambda(2), QScalar::q_pow_rational(&"-1/2".parse().unwrap()));
    assert!(matches!(HWeight::parse(&s, "q,q"), Err(HwError::Length { .. })));
    assert!(matches!(HWeight::parse(&s, "q,x,q"), Err(HwError::Parse(_))));
    assert!(matches!(HWeight::parse(&s, "q,q^a,q"), Err(HwError::Parse(_))));
}

#[test]
fn reflect_examples() {
    let r = reflect_weight(&w("10", &[3, 1]), 1).unwrap();
    assert_eq!(r.rule, ReflectRule::Nonzero);
    assert_eq!(r.weight, w("01", &[2, 2]));
    let r = reflect_weight(&w("10", &[3, -3]), 1).unwrap();
    assert_eq!(r.rule, ReflectRule::Zero);
    assert_eq!(r.weight, w("01", &[-3, 3]));
    let mut signed = w("10", &[3, 1]);
    signed.signs = vec![-1, 1];
    assert_eq!(reflect_weight(&signed, 1).unwrap().weight.signs, vec![1, -1]);
    assert_eq!(reflect_weight(&w("001", &[0, 0, 0]), 1), Err(HwError::NotOddPosition(1)));
    assert!(matches!(reflect_weight(&w("01", &[0, 0]), 2), Err(HwError::IndexOutOfRange { .. })));
}

#[test]
fn classify_examples() {
    let v = classify(&w("01", &[2, 2]));
    assert!(v.finite);
    assert_eq!(v.typical, Some(true));
    assert_eq!(v.kac_dimension, Some(2.into()));
    assert_eq!(build(&w("01", &[2, 2])).unwrap().dim(), 2);

    let v = classify(&w("01", &[1, -1]));
    assert!(v.finite);
    assert_eq!(v.typical, Some(false));
    assert_eq!(v.vanishing_odd_roots, vec![(1, 2)]);
    assert_eq!(build(&w("01", &[1, -1])).unwrap().dim(), 1);

    // λ1/λ2 = q^{-3}
    let v = classify(&w("00", &[0, 3]));
    assert!(!v.finite);
    let f = v.failure.unwrap();
    assert_eq!((f.position, f.rule.as_str(), f.exponent.as_str()), (1, "negative-exponent", "-3"));
    let mut signed = w("00", &[0, 3]);
    signed.signs = vec![1, -1];
    assert!(!classify(&signed).finite);
    assert!(build(&w("00", &[0, 3])).is_none());

    let half = HWeight::parse(&seq("00"), "q^(1/2),1").unwrap();
    assert_eq!(classify(&half).failure.unwrap().rule, "standard-even-failure");
}

#[test]
fn classify_trace_on_non_standard() {
    let v = classify(&w("101", &[1, 0, -2]));
    assert_eq!(v.trace.len(), 1);
    assert_eq!((v.trace[0].position, v.trace[0].rule), (1, ReflectRule::Nonzero));
    assert_eq!(v.standard_weight.as_deref(), Some("+q^1,+q^0,+q^2"));
    assert!(v.finite);
    assert!(!classify(&w("101", &[1, 0, 2])).finite);

    let v = classify(&w("1010", &[0, 0, 0, 0]));
    let steps: Vec<(usize, ReflectRule)> = v.trace.iter().map(|t| (t.position, t.rule)).collect();
    assert_eq!(steps, vec![(1, ReflectRule::Zero), (3, ReflectRule::Zero), (2, ReflectRule::Zero)]);
    assert_eq!(v.trace.last().unwrap().sequence, seq("0011"));
    assert_eq!(v.typical, Some(false));
}

#[test]
fn typicality_examples() {
    // s = 001: Λ1+Λ3+1 and Λ2+Λ3.
    assert_eq!(typicality(&w("001", &[1, 0, -2])), (false, vec![(1, 3)]));
    assert_eq!(typicality(&w("001", &[1, 0, 0])), (false, vec![(2, 3)]));
    assert_eq!(typicality(&w("001", &[1, 0, 1])), (true, vec![]));
    assert_eq!(typicality(&w("01", &[4, -4])).0, false);
    assert_eq!(typicality(&w("01", &[4, -3])).0, true);
}

#[test]
fn kac_dimension_examples() {
    assert_eq!(kac_dimension(&w("01", &[5, 7])).unwrap(), 2.into());
    for p in 1..=3 {
        assert_eq!(kac_dimension(&w("001", &[p, 0, 1])).unwrap(), (4 * (p + 1)).into());
    }
    assert_eq!(kac_dimension(&w("001", &[1, 0, 0])), Err(HwError::Atypical));
    assert_eq!(kac_dimension(&w("001", &[0, 1, 0])), Err(HwError::Infinite));
}

#[test]
fn gl11_module_basis() {
    let m = build(&w("01", &[2, 2])).unwrap();
    let names: Vec<&str> = m.basis.iter().map(|b| b.monomial.as_str()).collect();
    assert_eq!(names, vec!["1", "t[2,1]"]);
    assert_eq!(m.space().parities, vec![0, 1]);
}

fn check_module_contract(m: &ModuleRep) {
    let s = &m.weight.owner;
    let n = s.len();
    assert!(m.relation_failures().is_empty(), "{}: {:?}", m.weight, m.relation_failures());
    assert_eq!(m.top_weight_indices(), vec![m.maximal_vector]);
    let z = m.maximal_vector;
    for i in 1..=n {
        for j in i + 1..=n {
            let x = m.matrix(GenSymbol::tb(i, j));
            assert!((0..m.dim()).all(|r| x.get(r, z).is_zero()));
        }
        let d = m.matrix(GenSymbol::tb(i, i));
        assert_eq!(d.get(z, z), m.weight.lambda(i));
        let prod = d.matmul(&m.matrix(GenSymbol::t(i, i)));
        assert_eq!(prod, rtt_core::graded::GradedMatrix::identity(m.space()));
    }
    // Generators move weights by ε_row − ε_col and have their parity.
    for g in GenSymbol::all(n) {
        let x = m.matrix(g);
        for (&(r, c), _) in x.entries() {
            let mut expect = m.basis[c].offset.clone();
            expect[g.row - 1] += 1;
            expect[g.col - 1] -= 1;
            assert_eq!(m.basis[r].offset, expect, "{g}");
            assert_eq!(m.basis[r].parity ^ m.basis[c].parity, g.parity(s), "{g}");
        }
    }
}

#[test]
fn module_contracts() {
    for x in [w("01", &[2, 2]), w("01", &[1, -1]), w("001", &[2, 0, 1]), w("001", &[1, 0, 0]), w("010", &[1, -1, -1]), w("100", &[0, 0, 0]), w("011", &[1, 0, 0])] {
        check_module_contract(&build(&x).unwrap());
    }
}

#[test]
fn table_first_three_rows_for_001() {
    for p in 1..=3 {
        assert_eq!(build(&w("001", &[p, 0, 1])).unwrap().dim() as i64, 4 * (p + 1));
        assert_eq!(build(&w("001", &[p, 0, 0])).unwrap().dim() as i64, 2 * p + 1);
        assert_eq!(build(&w("001", &[p, 0, -p - 1])).unwrap().dim() as i64, 2 * p + 3);
    }
}

#[test]
fn diagrams() {
    let d = render_diagram(&w("001", &[2, 0, 0])).unwrap();
    assert_eq!(d.at(1, 2), Some(&BoxKind::Even { label: "+2".into() }));
    assert_eq!(d.at(1, 3), Some(&BoxKind::Triangle));
    assert_eq!(d.at(2, 3), Some(&BoxKind::Circle));
    assert_eq!(d.ascii(), "[+2 ][ O ]\n[ / ]\n");
    assert!(!render_diagram(&w("001", &[2, 0, 1])).unwrap().has_circle());
    for s in ["01", "001", "010", "011", "0101"] {
        assert!(render_diagram(&w(s, &vec![0; s.len()])).unwrap().has_circle(), "{s}");
    }
    assert_eq!(render_diagram(&w("00", &[0, 1])), Err(HwError::Infinite));
    // Odd-odd pairs carry the sign of d_i.
    let d = render_diagram(&w("011", &[1, 0, -2])).unwrap();
    assert_eq!(d.at(2, 3), Some(&BoxKind::Even { label: "-2".into() }));
    let json = serde_json::to_value(&d).unwrap();
    assert_eq!(json["boxes"][2]["kind"], "even");
}

#[test]
fn no_two_dimensional_gl21_irreducible() {
    for s in ["001", "010", "100"] {
        let alg = RttAlgebra::new(&seq(s)).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let x = w(s, &[a, b, c]);
                    if classify(&x).finite {
                        // Labels up to 6 on the height-2 even root of 010 need more depth than 12.
                        let d = build_irreducible_in(&alg, &x, 24).unwrap().dim().unwrap();
                        assert_ne!(d, 2, "{s} {x}");
                    }
                }
            }
        }
    }
}

#[test]
fn grid_agreement_gl11_and_gl21() {
    let mut count = 0;
    for s in ["01", "10", "001", "010"] {
        let alg = RttAlgebra::new(&seq(s)).unwrap();
        let n = s.len();
        let grid: Vec<Vec<i64>> = if n == 2 {
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| vec![a, b])).collect()
        } else {
            (-1..=2).flat_map(|a| (-1..=1).flat_map(move |b| (-1..=1).map(move |c| vec![a, b, c]))).collect()
        };
        for e in grid {
            let x = w(s, &e);
            let v = classify(&x);
            let built = build_irreducible_in(&alg, &x, 12).unwrap().dim();
            assert_eq!(v.finite, built.is_some(), "{s} {e:?}");
            if let Some(k) = &v.kac_dimension {
                assert_eq!(k.to_string(), built.unwrap().to_string(), "{s} {e:?}");
            }
            if v.typical == Some(false) {
                assert!(built.unwrap() < 1 << (s.matches('0').count() * s.matches('1').count()) * 20);
            }
            count += 1;
        }
    }
    assert!(count >= 50);
}

#[test]
fn rational_exponents() {
    // Λ = (1/2, 1/2): typical for gl(1|1), and the eigenvalues involve q^{1/2}.
    let x = HWeight::parse(&seq("01"), "q^(1/2),q^(-1/2)").unwrap();
    let m = build(&x).unwrap();
    assert_eq!(m.dim(), 2);
    check_module_contract(&m);
}

fn small_weight(len: usize) -> impl Strategy<Value = (ParitySeq, Vec<i64>, Vec<i8>)> {
    let seqs: Vec<ParitySeq> = (0..=len).flat_map(|m| rtt_core::parity::enumerate_sequences(m, len - m)).collect();
    (prop::sample::select(seqs), prop::collection::vec(-2i64..=2, len), prop::collection::vec(prop::sample::select(vec![1i8, -1]), len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn global_sign_flip_keeps_verdict((s, e, signs) in small_weight(3)) {
        let x = HWeight::new(&s, signs, e.iter().map(|&k| BigRational::from_integer(k.into())).collect()).unwrap();
        let a = classify(&x);
        let b = classify(&x.negated());
        prop_assert_eq!((a.finite, a.typical, a.kac_dimension), (b.finite, b.typical, b.kac_dimension));
    }

    #[test]
    fn reflection_keeps_typicality_and_dimension((s, e, _) in small_weight(3), pos in 1usize..3) {
        prop_assume!(s.is_odd_position(pos));
        let x = HWeight::from_ints(&s, &e).unwrap();
        let r = reflect_weight(&x, pos).unwrap();
        prop_assert_eq!(typicality(&x).0, typicality(&r.weight).0);
        let v = classify(&x);
        prop_assert_eq!(v.finite, classify(&r.weight).finite);
        if v.finite {
            prop_assert_eq!(build(&x).unwrap().dim(), build(&r.weight).unwrap().dim());
        }
    }

    #[test]
    fn signed_weights_give_same_dimension((s, e, signs) in small_weight(2)) {
        let plain = HWeight::from_ints(&s, &e).unwrap();
        let x = HWeight::new(&s, signs, plain.exps.clone()).unwrap();
        let m = build(&x).map(|m| m.dim());
        prop_assert_eq!(m, build(&plain).map(|m| m.dim()));
    }
}
