use rtt_core::affine::*;
use rtt_core::highest_weight::{build_irreducible, classify, HWeight};
use rtt_core::parity::enumerate_sequences;
use rtt_core::rtt::GenSymbol;
use rtt_core::{ParitySeq, QScalar};

fn seq(s: &str) -> ParitySeq {
    s.parse().unwrap()
}

fn weight(s: &str, w: &str) -> HWeight {
    HWeight::parse(&seq(s), w).unwrap()
}

fn qp(e: i64) -> QScalar {
    QScalar::q_pow(e)
}

fn int(c: i64) -> QScalar {
    QScalar::from_int(c)
}

fn ev(s: &str, w: &str, a: QScalar) -> AffineRep {
    evaluation_rep(&weight(s, w), &a).unwrap()
}

fn series_of(rep: &AffineRep) -> HWSeries {
    highest_weight_series(rep).series().expect("maximal vector").clone()
}

fn mus(w: &HWeight) -> Vec<QScalar> {
    (1..=w.len()).map(|i| w.lambda(i)).collect()
}

/// `c·p == r` for some nonzero scalar `c`.
fn proportional(p: &UPoly, r: &UPoly) -> bool {
    if p.degree() != r.degree() || p.is_zero() {
        return false;
    }
    let c = r.leading() * p.leading().checked_inv().unwrap();
    p.scale(&c) == *r
}

fn same_action(x: &AffineRep, y: &AffineRep) -> bool {
    let a: Vec<_> = x.nonzero_modes().collect();
    let b: Vec<_> = y.nonzero_modes().collect();
    a == b
}

#[test]
fn mode_table() {
    let w = weight("001", "+q^2,+q^0,+q^1");
    let a = int(3) * qp(1);
    let module = build_irreducible(&w, 32).unwrap().module().unwrap();
    let rep = evaluation_from_module(&module, &a).unwrap();
    assert_eq!(rep.mode_bound(), 1);
    let a_inv = a.checked_inv().unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            let t = module.matrix(GenSymbol::t(i, j));
            let tb = module.matrix(GenSymbol::tb(i, j));
            assert_eq!(*rep.mode(Series::T, 0, i, j), t);
            assert_eq!(*rep.mode(Series::TBar, 0, i, j), tb);
            assert_eq!(*rep.mode(Series::T, 1, i, j), tb.scale(&-a_inv.clone()));
            assert_eq!(*rep.mode(Series::TBar, 1, i, j), t.scale(&-a.clone()));
            assert!(rep.mode(Series::T, 2, i, j).is_zero());
        }
    }
    assert!(rep.mode_zero_failures().is_empty());
}

#[test]
fn evaluation_reps_satisfy_affine_relations() {
    let a = int(2) * qp(1);
    let mut checked = 0;
    for (m, n) in [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3)] {
        for s in enumerate_sequences(m, n) {
            for raw in [[1i64, 0, 0], [2, 1, 0], [1, 0, -1], [0, 0, 0], [2, 0, 1]] {
                let w = HWeight::from_ints(&s, &raw[..s.len()]).unwrap();
                if !classify(&w).finite {
                    continue;
                }
                let rep = evaluation_rep(&w, &a).unwrap();
                if rep.dim() > 16 {
                    continue;
                }
                let report = verify_affine_relations(&rep);
                assert!(report.pass(), "{s} {w}: {:?}", &report.failures[..report.failures.len().min(4)]);
                checked += 1;
            }
        }
    }
    assert!(checked >= 40, "{checked}");
}

#[test]
fn perturbed_mode_is_located() {
    let mut rep = ev("01", "+q^2,+q^0", int(3));
    let m = rep.mode(Series::T, 1, 1, 2).scale(&int(2));
    assert!(!m.is_zero());
    *rep.mode_mut(Series::T, 1, 1, 2) = m;
    let report = verify_affine_relations(&rep);
    assert!(!report.pass());
    let f = &report.failures[0];
    assert!([f.indices.0, f.indices.1, f.indices.2, f.indices.3].contains(&2));
    assert!(report.failures.iter().any(|f| f.family == AffineFamily::TT));
}

#[test]
fn evaluation_series() {
    for (s, w) in [("01", "+q^2,+q^0"), ("10", "-q^1,+q^3"), ("001", "+q^2,+q^0,+q^1"), ("00", "+q^3,+q^1")] {
        let w = weight(s, w);
        let a = int(-5) * qp(2);
        let rep = evaluation_rep(&w, &a).unwrap();
        let out = highest_weight_series(&rep);
        let SeriesOutcome::Found { series, unique, .. } = out else { panic!("no maximal vector") };
        assert!(unique);
        assert!(series.is_unit());
        assert_eq!(series, HWSeries::evaluation(&w.owner, &mus(&w), &a), "{w}");
    }
}

#[test]
fn dilation_moves_the_evaluation_point() {
    let w = weight("001", "+q^1,+q^0,+q^2");
    let a = int(3);
    let d = int(-2) * qp(1);
    let twisted = twist_dilation(&evaluation_rep(&w, &a).unwrap(), &d).unwrap();
    assert!(same_action(&twisted, &evaluation_rep(&w, &(&a * &d)).unwrap()));
}

#[test]
fn series_twists() {
    let rep = ev("01", "+q^2,+q^0", int(3));
    let same = twist_series(&rep, &[int(1)], &[int(1)]).unwrap();
    assert!(same_action(&same, &rep));
    assert_eq!(twist_series(&rep, &[int(2)], &[int(1)]), Err(AffineError::TwistUnit));

    let f = [int(2), qp(1)];
    let g = [QScalar::from_rational(&num_rational::BigRational::new(1.into(), 2.into())), int(7)];
    let tw = twist_series(&rep, &f, &g).unwrap();
    assert!(verify_affine_relations(&tw).pass());
    let hw = series_of(&rep);
    let hw_tw = series_of(&tw);
    assert_eq!(hw_tw, hw.twisted(&f, &g, None));
    assert_eq!(check_t1(&hw_tw), check_t1(&hw));

    // normalizing λ₂ to 1, truncated at a fixed order
    let order = 6;
    let f = inverse_series(&hw.lambda[1], order).unwrap();
    let g = inverse_series(&hw.lambda_bar[1], order).unwrap();
    let norm = hw.twisted(&f, &g, Some(order));
    assert_eq!(norm.lambda[1], vec![int(1)]);
    assert_eq!(norm.lambda_bar[1], vec![int(1)]);
}

#[test]
fn tensor_series_is_the_product() {
    let r1 = ev("01", "+q^2,+q^0", int(3));
    let r2 = ev("01", "+q^1,-q^(-1)", int(-2) * qp(1));
    let t = tensor(&r1, &r2).unwrap();
    assert!(verify_affine_relations(&t).pass());
    assert_eq!(t.mode_bound(), 2);
    assert_eq!(series_of(&t), series_of(&r1).product(&series_of(&r2)));

    let r3 = ev("010", "+q^1,+q^0,+q^0", int(5));
    let r4 = ev("010", "+q^2,+q^0,+q^1", int(-1));
    let t = tensor(&r3, &r4).unwrap();
    assert!(verify_affine_relations(&t).pass());
    assert_eq!(series_of(&t), series_of(&r3).product(&series_of(&r4)));
    assert!(tensor(&r1, &r3).is_err());
}

#[test]
fn tensor_is_associative() {
    let a = ev("10", "+q^2,+q^0", int(3));
    let b = ev("10", "+q^1,+q^(-1)", int(2));
    let c = ev("10", "+q^0,+q^1", int(-1));
    let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
    let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
    assert!(same_action(&left, &right));
    assert_eq!(left.maximal_vector, right.maximal_vector);
}

#[test]
fn direct_sum_is_flagged_non_unique() {
    let r1 = ev("01", "+q^2,+q^0", int(3));
    let r2 = ev("01", "+q^1,+q^0", int(5));
    let sum = direct_sum(&r1, &r2).unwrap();
    match highest_weight_series(&sum) {
        SeriesOutcome::Found { singular_dim, unique, .. } => {
            assert_eq!(singular_dim, 2);
            assert!(!unique);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn t1_for_tensors_of_typical_factors() {
    let params = [("+q^2,+q^0", 3), ("+q^1,+q^(-1)", -2), ("+q^3,+q^1", 7)];
    for l in 1..=3 {
        let mut rep: Option<AffineRep> = None;
        let mut expected_q = UPoly::one();
        let mut expected_qt = UPoly::one();
        for &(w, a) in &params[..l] {
            let w = weight("01", w);
            let a = int(a);
            let r = evaluation_rep(&w, &a).unwrap();
            expected_q = &expected_q * &UPoly::linear(w.lambda(1), -(w.lambda_pow(1, -1) * &a));
            expected_qt = &expected_qt * &UPoly::linear(w.lambda(2), -(w.lambda_pow(2, -1) * &a));
            rep = Some(match rep {
                None => r,
                Some(acc) => tensor(&acc, &r).unwrap(),
            });
        }
        let rep = rep.unwrap();
        let Ok(PolyCertificate::T1(cert)) = check_t1(&series_of(&rep)) else { panic!("refused at {l}") };
        assert_eq!(cert.k, l);
        assert!(proportional(&cert.q, &expected_q));
        assert!(proportional(&cert.q_tilde, &expected_qt));
        let c0 = cert.q.coeff(0) * cert.q.leading();
        assert_eq!(c0, cert.q_tilde.coeff(0) * cert.q_tilde.leading());
        if cert.normalized {
            assert!(c0.is_one());
        }
    }
}

#[test]
fn t1_trivial_and_refusal() {
    let trivial = ev("01", "+q^0,+q^0", int(1));
    let Ok(PolyCertificate::T1(c)) = check_t1(&series_of(&trivial)) else { panic!() };
    assert_eq!((c.k, c.q.clone(), c.q_tilde.clone()), (0, UPoly::one(), UPoly::one()));

    // λ ratio and λ̄ ratio disagree
    let s = seq("01");
    let bad = HWSeries::new(&s, vec![vec![int(1), int(2)], vec![int(1)]], vec![vec![int(1), int(3)], vec![int(1)]]);
    assert!(matches!(check_t1(&bad), Err(CertificateError::Refused { .. })));
    // products of end coefficients disagree
    let bad = HWSeries::new(&s, vec![vec![int(1), int(-1)], vec![int(1), int(-1)]], vec![vec![int(1), int(4)], vec![int(1), int(2)]]);
    assert!(check_t1(&bad).is_err());
}

#[test]
fn t2_q_strings() {
    let a = int(-1) * qp(2);
    for (s, w, gap) in [("00", "+q^3,+q^0", 3), ("00", "-q^2,+q^1", 1), ("11", "+q^0,+q^3", 3), ("11", "+q^(-1),+q^1", 2)] {
        let w = weight(s, w);
        let rep = evaluation_rep(&w, &a).unwrap();
        let Ok(PolyCertificate::T2(c)) = check_t2(&series_of(&rep)) else { panic!("{w}") };
        assert_eq!(c.p.degree(), Some(gap));
        assert_eq!(c.p, q_string(w.owner.d(1), &w.lambda(2), &a, gap), "{w}");
        assert_eq!(c.eps.0 as i64 * c.eps.1 as i64, w.signs[0] as i64 * w.signs[1] as i64);
    }
    let trivial = ev("00", "+q^0,+q^0", int(4));
    let Ok(PolyCertificate::T2(c)) = check_t2(&series_of(&trivial)) else { panic!() };
    assert_eq!(c.p, UPoly::one());

    // half-integral exponent gap: no q-string exists
    let s = seq("00");
    let mu = [qp(1) * QScalar::q_pow_rational(&num_rational::BigRational::new(1.into(), 2.into())), int(1)];
    let hw = HWSeries::evaluation(&s, &mu, &int(2));
    assert!(matches!(check_t2(&hw), Err(CertificateError::Refused { .. })));
}

#[test]
fn t3_families() {
    let a = int(3) * qp(-1);
    for (s, w) in [("001", "+q^3,+q^0,+q^(-1)"), ("010", "+q^2,+q^0,+q^1"), ("100", "+q^1,+q^2,+q^0"), ("000", "+q^2,+q^1,+q^0")] {
        let w = weight(s, w);
        let rep = evaluation_rep(&w, &a).unwrap();
        let Ok(PolyCertificate::T3 { even, odd, factorizations_checked }) = check_t3(&series_of(&rep)) else { panic!("{w}") };
        assert_eq!(even.len() + odd.len(), 3);
        for c in &even {
            let gap = (w.q_exponent(c.i) - w.q_exponent(c.j)).to_integer() * w.owner.d(c.i) as i64;
            let gap: usize = gap.try_into().unwrap();
            assert_eq!(c.p, q_string(w.owner.d(c.i), &w.lambda(c.j), &a, gap), "{w} ({},{})", c.i, c.j);
        }
        for c in &odd {
            assert_eq!(c.k, 1);
        }
        if s == "000" {
            assert_eq!(factorizations_checked, 1);
        }
    }
}

#[test]
fn t3_on_tensors_multiplies_polynomials() {
    let w1 = weight("001", "+q^1,+q^0,+q^0");
    let w2 = weight("001", "+q^2,+q^1,+q^0");
    let (a1, a2) = (int(2), int(-3));
    let t = tensor(&evaluation_rep(&w1, &a1).unwrap(), &evaluation_rep(&w2, &a2).unwrap()).unwrap();
    let Ok(PolyCertificate::T3 { even, .. }) = check_t3(&series_of(&t)) else { panic!() };
    let p = &q_string(1, &w1.lambda(2), &a1, 1) * &q_string(1, &w2.lambda(2), &a2, 1);
    assert_eq!(even[0].p, p);
}

#[test]
fn adjacent_pairs_do_not_suffice() {
    // odd pairs (1,2), (2,3) pass; the even pair (1,3) has ratio 2 at u = 0
    let s = seq("010");
    let hw = HWSeries::evaluation(&s, &[int(2), int(3), int(1)], &int(5));
    assert!(odd_pair(&hw, 1, 2).is_ok());
    assert!(odd_pair(&hw, 2, 3).is_ok());
    match check_t3(&hw) {
        Err(CertificateError::Refused { i: 1, j: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn gl11_tensor_dichotomy() {
    for s in ["01", "10"] {
        let w1 = weight(s, "+q^2,+q^0");
        let w2 = weight(s, "+q^1,+q^(-1)");
        let sq = |x: QScalar| &x * &x;
        let zeta_side = sq(w1.lambda(2)) * sq(w2.lambda(1)).checked_inv().unwrap();
        let minimal_side = sq(w1.lambda(1)) * sq(w2.lambda(2)).checked_inv().unwrap();
        let mut hit = (0, 0);
        for k1 in 0..8 {
            for k2 in 0..8 {
                let (a1, a2) = (qp(k1), qp(k2));
                let r1 = evaluation_rep(&w1, &a1).unwrap();
                let r2 = evaluation_rep(&w2, &a2).unwrap();
                let t = tensor(&r1, &r2).unwrap();
                let ratio = &a1 * &a2.checked_inv().unwrap();
                let condition = ratio != zeta_side && ratio != minimal_side;
                let zeta = t.maximal_vector.clone().unwrap();
                let low1 = r1.mode(Series::TBar, 1, 2, 1).apply(r1.maximal_vector.as_ref().unwrap());
                let low2 = r2.mode(Series::TBar, 1, 2, 1).apply(r2.maximal_vector.as_ref().unwrap());
                let from_zeta = t.cyclic_span(&zeta);
                let from_minimal = t.cyclic_span(&kron_vector(&low1, &low2));
                assert_eq!(from_zeta == 4, ratio != zeta_side, "{s} {k1} {k2}");
                assert_eq!(from_minimal == 4, ratio != minimal_side, "{s} {k1} {k2}");
                assert_eq!(t.is_irreducible(), condition, "{s} {k1} {k2}");
                hit.0 += (ratio == zeta_side) as usize;
                hit.1 += (ratio == minimal_side) as usize;
            }
        }
        assert!(hit.0 > 0 && hit.1 > 0);
    }
}

#[test]
fn json_roundtrip() {
    let t = tensor(&ev("01", "+q^2,+q^0", int(3)), &ev("01", "+q^1,+q^(-1)", qp(2))).unwrap();
    let back = AffineRep::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    assert!(AffineRep::from_json(&serde_json::json!({"s": "01"})).is_err());
}

#[test]
fn evaluation_errors() {
    let w = weight("00", "+q^0,+q^2");
    assert!(matches!(evaluation_rep(&w, &int(1)), Err(AffineError::Infinite(_))));
    let w = weight("00", "+q^2,+q^0");
    assert_eq!(evaluation_rep(&w, &int(0)), Err(AffineError::ZeroParameter));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn tensors_of_gl11_evaluations(e1 in -2i64..3, e2 in -2i64..3, f1 in -2i64..3, f2 in -2i64..3, k1 in -3i64..4, k2 in -3i64..4, c in 1i64..4) {
            let s = seq("10");
            let w1 = HWeight::from_ints(&s, &[e1, e2]).unwrap();
            let w2 = HWeight::from_ints(&s, &[f1, f2]).unwrap();
            let r1 = evaluation_rep(&w1, &(int(c) * qp(k1))).unwrap();
            let r2 = evaluation_rep(&w2, &qp(k2)).unwrap();
            let t = tensor(&r1, &r2).unwrap();
            prop_assert!(verify_affine_relations(&t).pass());
            prop_assert_eq!(series_of(&t), series_of(&r1).product(&series_of(&r2)));
            let hw = series_of(&t);
            prop_assert!(check_t1(&hw).is_ok());
        }
    }
}
