use cmlab_algebra::{Height, MonomialOrder, Poly, PresentedRing};
use cmlab_core::grade::{Grade, Route};
use cmlab_core::models::{
    bad_colon_chain, proregularity_counterexample, subring_colon_identities, BadRing, SubringModel, TrivialExtension,
    ValuationModel,
};
use cmlab_core::sequences::{
    cohen_macaulay_verdict, is_parameter_sequence, is_regular_sequence, is_strong_parameter_sequence,
    is_weakly_proregular, CmOutcome, RegularOutcome, RingAdapter, Sequence, WprVerdict,
};
use proptest::prelude::*;

fn trivext_xy() -> TrivialExtension {
    let r = PresentedRing::parse("QQ[x,y]").unwrap();
    let m = vec![r.var(0), r.var(1)];
    TrivialExtension::new(r, &m, 1).unwrap()
}

fn el(s: &TrivialExtension, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|x| s.base().element(x).unwrap()).collect()
}

#[test]
fn trivial_extension_full_depth() {
    let s = trivext_xy();
    assert_eq!(s.dimension(), 2);
    let d = s.p_depth().unwrap();
    assert_eq!(d.value, Grade::Finite(2));
    assert_eq!(d.route, Route::Model("trivial-extension-full-depth".into()));
    assert!(TrivialExtension::new(PresentedRing::parse("QQ[x,y]").unwrap(), &el(&s, &["x"]), 1).is_err());
}

#[test]
fn trivial_extension_grades() {
    let s = trivext_xy();
    for (xs, h, g) in [
        (vec!["x"], 1, 0),
        (vec!["x*y"], 1, 0),
        (vec!["x^2", "x*y"], 1, 0),
        (vec!["x", "y"], 2, 2),
        (vec!["x^2", "y^3"], 2, 2),
        (vec!["x + y^2", "y"], 2, 2),
    ] {
        let x = el(&s, &xs);
        assert_eq!(s.height(&x).unwrap(), Height::Finite(h), "{xs:?}");
        assert_eq!(s.p_grade(&x).unwrap().value, Grade::Finite(g), "{xs:?}");
        // Local heights agree with heights in the base for ideals inside m.
        let base = s.base().ideal(x.clone());
        assert_eq!(base.height_by_primes().unwrap(), Height::Finite(h));
    }
    // y - 1 is a unit after localizing.
    let x = el(&s, &["x*(y - 1)"]);
    assert_eq!(s.height(&x).unwrap(), Height::Finite(1));
    assert_eq!(s.p_grade(&el(&s, &["y - 1"])).unwrap().value, Grade::Infinite);
    assert!(s.annihilating_prime(&el(&s, &["x"])).unwrap().is_some());
    assert!(s.annihilating_prime(&el(&s, &["x", "y"])).unwrap().is_none());
}

#[test]
fn trivial_extension_sequences() {
    let s = trivext_xy();
    let x = el(&s, &["x", "y"]);
    let seq = Sequence::new(&s, &x);
    assert!(matches!(
        is_weakly_proregular(&seq, 8).unwrap(),
        WprVerdict::CertifiedByModel { .. }
    ));
    let t = is_strong_parameter_sequence(&seq).unwrap();
    assert!(t.holds);
    assert_eq!(t.prefixes[1].tag, "trivial-extension-parameter-transfer");
    // Strong iff ht(x_1..x_i) = i for each prefix.
    let seq = Sequence::new(&s, &el(&s, &["x*y", "x"]));
    assert!(!is_strong_parameter_sequence(&seq).unwrap().holds);
    // A length-one prefix of p-grade 0 fails regularity.
    let seq = Sequence::new(&s, &el(&s, &["x"]));
    assert!(!is_regular_sequence(&seq).unwrap().is_regular());
}

#[test]
fn trivial_extension_is_not_cohen_macaulay() {
    let s = trivext_xy();
    let pool = vec![el(&s, &["x", "y"]), el(&s, &["x + y"])];
    let v = cohen_macaulay_verdict(&s, &pool).unwrap();
    assert!(v.entries[0].strong_parameter);
    assert_eq!(v.entries[0].p_grade.as_ref().unwrap().value, Grade::Finite(2));
    match &v.outcome {
        CmOutcome::ViolationFound {
            index,
            p_grade,
            witness,
            ..
        } => {
            assert_eq!(*index, 1);
            assert_eq!(p_grade.value, Grade::Finite(0));
            assert!(witness.is_some());
        }
        CmOutcome::NoViolationWithinPool => panic!("expected a violation"),
    }
    assert_eq!(v.tag, "trivial-extension-not-cm");
}

#[test]
fn trivial_extension_higher_level() {
    let r = PresentedRing::parse("QQ[x,y,z]").unwrap();
    let m = vec![r.var(0), r.var(1), r.var(2)];
    let s = TrivialExtension::top_level(r, &m).unwrap();
    assert_eq!(s.level(), 2);
    assert_eq!(s.p_grade(&el(&s, &["x", "y"])).unwrap().value, Grade::Finite(0));
    assert_eq!(s.p_grade(&el(&s, &["x", "y", "z"])).unwrap().value, Grade::Finite(3));
}

#[test]
fn valuation_pair_certificate() {
    let v = ValuationModel::new();
    let c = v.example_pair(3).unwrap();
    assert!(c.weakly_proregular());
    assert!(!c.parameter());
    assert!(c.principal);
    assert_eq!(c.height, Height::Finite(2));
    assert_eq!(c.quotient_value, (1, -1));
    for (i, level) in c.levels.iter().enumerate() {
        let n = i as i64 + 1;
        assert_eq!(level.m, 2 * level.n);
        // a = u^n / w^n has value (n, -n).
        assert_eq!(level.coefficient_value, (n, -n));
        assert!(level.holds());
    }
}

#[test]
fn valuation_sequences() {
    let v = ValuationModel::new();
    let (u, w) = (v.u(), v.w());
    let g = v.ideal_generator(&[u.clone(), w.clone()]).unwrap().unwrap();
    assert!(v.equal(&g, &w) || v.is_unit(&v.quotient(&g, &w).unwrap()));

    let pair = [u.clone(), w.clone()];
    let s = Sequence::new(&v, &pair);
    assert!(matches!(
        is_weakly_proregular(&s, 8).unwrap(),
        WprVerdict::CertifiedByModel { .. }
    ));
    assert_eq!(v.height(&pair).unwrap(), Height::Finite(2));
    let p = is_parameter_sequence(&s).unwrap();
    assert!(!p.holds);
    assert_eq!(p.tag, "valuation-principal-top-cech");
    assert!(is_parameter_sequence(&Sequence::new(&v, std::slice::from_ref(&w))).unwrap().holds);
    assert_eq!(v.height(std::slice::from_ref(&u)).unwrap(), Height::Finite(1));

    // u/w kills (u, w) modulo uV.
    let r = is_regular_sequence(&s).unwrap();
    assert!(matches!(r.outcome, RegularOutcome::FailsAt { step: 2, .. }));

    let three = [u.clone(), w.clone(), v.parse("u + w").unwrap()];
    assert!(is_weakly_proregular(&Sequence::new(&v, &three), 8).is_err());
}

#[test]
fn bad_ring_chains() {
    for n in 2..=4 {
        let c = bad_colon_chain(n).unwrap();
        assert!(c.grows_below_level(), "N = {n}");
        assert!(c.stops_at_level());
        let b = BadRing::new(n).unwrap();
        for link in c.links.iter().filter(|l| l.n < n) {
            assert_eq!(link.witness.as_deref(), Some(format!("y{}", link.n + 1).as_str()));
            // Independent check: x^(n+1) y_(n+1) = 0 while x^n y_(n+1) != 0.
            let y = b.y(link.n + 1);
            assert!(b.ring().is_zero(&b.x().pow(link.n as u32 + 1).mul(&y)));
            assert!(!b.ring().is_zero(&b.x().pow(link.n as u32).mul(&y)));
        }
        // (0 : x^k) is generated by x^max(j - k, 0) y_j.
        for link in &c.links {
            let gens: Vec<Poly> = (1..=n)
                .map(|j| b.x().pow(j.saturating_sub(link.n) as u32).mul(&b.y(j)))
                .collect();
            assert!(link.annihilator.equals(&b.ring().ideal(gens)).unwrap());
        }
    }
    assert!(bad_colon_chain(1).is_err());
}

#[test]
fn bad_ring_counterexample() {
    let c = proregularity_counterexample(5).unwrap();
    assert_eq!(c.checks.len(), 4);
    assert!(matches!(c.verdict, WprVerdict::Counterexample { n: 1, .. }));
}

#[test]
fn subring_identities() {
    for b in [6, 8] {
        let c = subring_colon_identities(b).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.witness, "x*y^2");
    }
    assert!(subring_colon_identities(3).is_err());
}

/// Monomials `(i, j)` with `i + j <= b`.
fn monos(b: u32) -> Vec<(u32, u32)> {
    (0..=b).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect()
}

#[test]
fn subring_colon_by_brute_force() {
    // f in (xyD : x) iff x f is xy times an element of D, tested by dividing.
    let s = SubringModel::new(6).unwrap();
    let r = s.ring();
    let xy = r.parse("x*y").unwrap();
    let x = r.var(0);
    for k in 1..=2u32 {
        let mut expected = Vec::new();
        for e in monos(6) {
            let f = s.monomial(e);
            if !s.in_d(&f) {
                continue;
            }
            let g = f.mul(&x.pow(k));
            let (i, j) = (e.0 + k, e.1);
            if i >= 1 && j >= 1 {
                let q = s.monomial((i - 1, j - 1));
                assert_eq!(q.mul(&xy), g);
                if s.in_d(&q) {
                    expected.push(e);
                }
            }
        }
        let mut got = s.colon_by_x_power(k);
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }
}

fn arb_ratfn() -> impl Strategy<Value = String> {
    let term = (1i64..=9, 0u32..=3, 0u32..=3).prop_map(|(c, a, b)| format!("{c}*u^{a}*w^{b}"));
    let poly = prop::collection::vec(term, 1..4).prop_map(|ts| ts.join(" + "));
    (poly.clone(), poly).prop_map(|(n, d)| format!("({n})/({d})"))
}

/// The lex-smallest exponent pair, with `u` before `w`.
fn lex_value(p: &Poly) -> (i64, i64) {
    let lowest = p.with_order(MonomialOrder::Lex).terms()[0].0;
    (lowest.exp(0) as i64, lowest.exp(1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_axioms(a in arb_ratfn(), b in arb_ratfn()) {
        let v = ValuationModel::new();
        let (f, g) = (v.parse(&a).unwrap(), v.parse(&b).unwrap());
        let (vf, vg) = (v.value(&f).unwrap(), v.value(&g).unwrap());
        let oracle = {
            let (n, d) = (lex_value(&f.num), lex_value(&f.den));
            (n.0 - d.0, n.1 - d.1)
        };
        prop_assert_eq!(vf, oracle);
        let prod = v.value(&v.mul(&f, &g)).unwrap();
        prop_assert_eq!(prod, (vf.0 + vg.0, vf.1 + vg.1));
        let sum = v.add(&f, &g);
        if !sum.is_zero() {
            prop_assert!(v.value(&sum).unwrap() >= vf.min(vg));
        }
        // Two-generated ideals of V are principal.
        if v.member(&f) && v.member(&g) {
            let h = v.ideal_generator(&[f.clone(), g.clone()]).unwrap().unwrap();
            prop_assert!(v.divides(&h, &f).unwrap() && v.divides(&h, &g).unwrap());
        }
    }

    #[test]
    fn subring_is_closed(a in prop::collection::vec((1i64..5, 0u32..4, 0u32..4), 1..4),
                         b in prop::collection::vec((1i64..5, 0u32..4, 0u32..4), 1..4)) {
        let s = SubringModel::new(8).unwrap();
        let r = s.ring();
        let build = |ts: &[(i64, u32, u32)]| {
            let text: Vec<String> = ts.iter().map(|(c, i, j)| {
                let i = if *j > 0 { (*i).max(1) } else { *i };
                format!("{c}*x^{i}*y^{j}")
            }).collect();
            r.parse(&text.join(" + ")).unwrap()
        };
        let (f, g) = (build(&a), build(&b));
        prop_assert!(s.in_d(&f) && s.in_d(&g));
        prop_assert!(s.in_d(&f.mul(&g)));
        prop_assert!(s.in_d(&f.add(&g)));
        // x f lies in xyD exactly when f lies in xyS, for f in D.
        let xf = f.mul(&r.var(0));
        prop_assert_eq!(s.in_xyd(&xf), s.in_xys(&f));
    }
}
