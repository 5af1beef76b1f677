use cmlab_algebra::{Poly, PresentedRing};
use cmlab_core::grade::{
    cech_vanishing_profile, classical_grade, hochster_element, hochster_test, localized_p_depth, p_depth, p_grade,
    CechVerdict, Grade, Route,
};
use cmlab_core::module::Module;
use proptest::prelude::*;

fn ring(text: &str) -> PresentedRing {
    PresentedRing::parse(text).unwrap()
}

fn elems(r: &PresentedRing, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|x| r.element(x).unwrap()).collect()
}

fn pg(r: &PresentedRing, xs: &[&str]) -> Grade {
    p_grade(r, &elems(r, xs), &Module::ring_module(r)).unwrap().value
}

#[test]
fn p_grade_examples() {
    let r = ring("QQ[x,y]");
    assert_eq!(pg(&r, &["x", "y"]), Grade::Finite(2));
    assert_eq!(pg(&r, &["1"]), Grade::Infinite);
    assert_eq!(pg(&r, &["x", "1 + x"]), Grade::Infinite);
    let q = ring("QQ[x,y]/(x*y)");
    assert_eq!(pg(&q, &["x"]), Grade::Finite(0));
    let v = p_grade(&q, &elems(&q, &["x + y"]), &Module::ring_module(&q)).unwrap();
    assert_eq!(v.value, Grade::Finite(1));
    assert_eq!(v.route, Route::Koszul);
}

#[test]
fn vanishing_profiles() {
    let r = ring("QQ[x,y]");
    let m = Module::ring_module(&r);
    let p = cech_vanishing_profile(&r, &elems(&r, &["x", "y"]), &m).unwrap();
    assert_eq!(
        p.entries,
        [CechVerdict::Vanishes, CechVerdict::Vanishes, CechVerdict::NonZero]
    );
    assert_eq!(p.at(3), CechVerdict::Vanishes);

    let p = cech_vanishing_profile(&r, &[], &m).unwrap();
    assert_eq!(p.entries, [CechVerdict::NonZero]);

    // Grade 1 with two elements leaves the top index undetermined.
    let p = cech_vanishing_profile(&r, &elems(&r, &["x", "x*y"]), &m).unwrap();
    assert_eq!(
        p.entries,
        [CechVerdict::Vanishes, CechVerdict::NonZero, CechVerdict::Undetermined]
    );
}

#[test]
fn classical_grade_examples() {
    let r = ring("QQ[x]");
    let m = Module::ring_module(&r);
    assert_eq!(
        classical_grade(&r.parse_ideal("(x)").unwrap(), &m).unwrap().value,
        Grade::Finite(1)
    );
    assert_eq!(classical_grade(&r.unit_ideal(), &m).unwrap().value, Grade::Infinite);
    let q = ring("QQ[x,y]/(x*y)");
    let g = classical_grade(&q.parse_ideal("(x, y)").unwrap(), &Module::ring_module(&q)).unwrap();
    assert_eq!(g.value, Grade::Finite(1));
    assert_eq!(g.route, Route::Ext);
    // x + y is a non-zero-divisor and Q[x,y]/(xy, x+y) has depth 0.
    assert!(q.zero_ideal().colon(&q.element("x + y").unwrap()).unwrap().is_zero());
}

#[test]
fn hochster_examples() {
    let r = ring("QQ[x,y]");
    let (ext, h) = hochster_element(&r, &elems(&r, &["x", "y"])).unwrap();
    assert_eq!(ext.format(&h), "y*t + x");
    let (ext, h) = hochster_element(&r, &elems(&r, &["x"])).unwrap();
    assert_eq!(ext.format(&h), "x");

    let q = ring("QQ[x,y]/(x*y)");
    let t = hochster_test(&q, &elems(&q, &["x", "y"])).unwrap();
    assert!(t.annihilator_is_zero);
    assert!(t.is_nonzerodivisor);

    let q = ring("QQ[x,y]/(x^2, x*y)");
    let t = hochster_test(&q, &elems(&q, &["x", "y"])).unwrap();
    assert!(!t.annihilator_is_zero);
    assert!(!t.is_nonzerodivisor);

    // A ring that already uses t gets a fresh name.
    let r = ring("QQ[t,u]");
    let (ext, _) = hochster_element(&r, &elems(&r, &["t", "u"])).unwrap();
    assert_eq!(ext.names(), ["t", "u", "t1"]);
}

#[test]
fn depth_examples() {
    let r = ring("QQ[x,y]");
    assert_eq!(p_depth(&r, &elems(&r, &["x", "y"])).unwrap().value, Grade::Finite(2));
    let q = ring("QQ[x,y]/(x^2, x*y)");
    assert_eq!(p_depth(&q, &elems(&q, &["x", "y"])).unwrap().value, Grade::Finite(0));
}

#[test]
fn localized_depth_at_embedded_prime() {
    // (x^2, xy) has the embedded prime (x, y) = (I : x).
    let r = ring("QQ[x,y]");
    let i = r.parse_ideal("(x^2, x*y)").unwrap();
    let m = Module::cyclic(&i);
    let p = i.colon(&r.element("x").unwrap()).unwrap();
    assert_eq!(localized_p_depth(&r, &m, &p).unwrap(), Grade::Finite(0));
    // At the minimal prime (x) the localization is a field-like artinian ring.
    let px = r.parse_ideal("(x)").unwrap();
    assert_eq!(localized_p_depth(&r, &m, &px).unwrap(), Grade::Finite(0));
    // Away from the support the module vanishes.
    let away = r.parse_ideal("(x - 1, y)").unwrap();
    assert_eq!(localized_p_depth(&r, &m, &away).unwrap(), Grade::Infinite);
    // The ring itself has depth 2 at the origin, 1 at (x).
    let rm = Module::ring_module(&r);
    assert_eq!(localized_p_depth(&r, &rm, &p).unwrap(), Grade::Finite(2));
    assert_eq!(localized_p_depth(&r, &rm, &px).unwrap(), Grade::Finite(1));
}

#[test]
fn grade_is_stable_under_polynomial_extension() {
    for (text, xs) in [
        ("QQ[x,y]/(x*y)", vec!["x", "y"]),
        ("QQ[x,y]/(x^2, x*y)", vec!["x", "y"]),
        ("QQ[x,y,z]", vec!["x*y", "x*z"]),
    ] {
        let r = ring(text);
        let (ext, _) = cmlab_core::grade::polynomial_extension(&r).unwrap();
        let x = elems(&r, &xs);
        let y: Vec<Poly> = x.iter().map(|p| ext.ambient().import(p)).collect();
        let a = p_grade(&r, &x, &Module::ring_module(&r)).unwrap().value;
        let b = p_grade(&ext, &y, &Module::ring_module(&ext)).unwrap().value;
        assert_eq!(a, b, "{text}");
    }
}

#[test]
fn radical_invariance_on_monomial_pairs() {
    let r = ring("QQ[x,y,z]");
    for (a, b) in [
        (vec!["x*y", "x*z"], vec!["x^2*y", "x*z^2"]),
        (vec!["x", "y"], vec!["x^2", "y^3"]),
        (vec!["x*y*z"], vec!["x^2*y*z^3"]),
        (vec!["x^2", "x*y"], vec!["x"]),
    ] {
        assert_eq!(pg(&r, &a), pg(&r, &b), "{a:?} vs {b:?}");
    }
}

#[test]
fn regular_sequence_additivity() {
    // x is regular in I = (x, y*z, y^2) on Q[x,y,z]; grade drops by one
    // modulo x.
    let r = ring("QQ[x,y,z]");
    let i = elems(&r, &["x", "y*z", "y^2"]);
    let full = p_grade(&r, &i, &Module::ring_module(&r)).unwrap().value;
    let m = Module::ring_module(&r).quotient_by(&elems(&r, &["x"]));
    let rest = p_grade(&r, &i, &m).unwrap().value;
    assert_eq!(full, Grade::Finite(2));
    assert_eq!(rest, Grade::Finite(1));
}

fn arb_ideal() -> impl Strategy<Value = Vec<String>> {
    let term = (1i64..=30000, 0u32..=2, 0u32..=2, 0u32..=1).prop_map(|(c, a, b, d)| format!("{c}*x^{a}*y^{b}*z^{d}"));
    let poly = prop::collection::vec(term, 1..3).prop_map(|ts| ts.join(" + "));
    prop::collection::vec(poly, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn koszul_and_ext_routes_agree(gens in arb_ideal()) {
        let r = ring("GF(32003)[x,y,z]");
        let x: Vec<Poly> = gens.iter().map(|g| r.element(g).unwrap()).collect();
        let m = Module::ring_module(&r);
        let k = p_grade(&r, &x, &m).unwrap().value;
        let e = classical_grade(&r.ideal(x.clone()), &m).unwrap().value;
        prop_assert_eq!(k, e);
        if k != Grade::Infinite {
            prop_assert!(k <= Grade::Finite(x.len()));
        }
    }

    #[test]
    fn p_grade_is_radical_invariant(mons in prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=1), 1..=3)) {
        let r = ring("GF(32003)[x,y,z]");
        let mono = |a: u32, b: u32, c: u32| r.element(&format!("x^{a}*y^{b}*z^{c}")).unwrap();
        let x: Vec<Poly> = mons.iter().map(|&(a, b, c)| mono(a, b, c)).collect();
        // Same ideal, more generators.
        let mut longer = x.clone();
        longer.push(r.mul(&x[0], &x[0]));
        longer.push(r.mul(&x[0], &x[x.len() - 1]));
        // Radical of a monomial ideal: squarefree supports.
        let sqfree: Vec<Poly> = mons.iter().map(|&(a, b, c)| mono(a.min(1), b.min(1), c.min(1))).collect();
        let m = Module::ring_module(&r);
        let a = p_grade(&r, &x, &m).unwrap().value;
        prop_assert_eq!(a, p_grade(&r, &longer, &m).unwrap().value);
        prop_assert_eq!(a, p_grade(&r, &sqfree, &m).unwrap().value);
        let rad = r.ideal(x.clone()).radical().unwrap();
        prop_assert!(rad.equals(&r.ideal(sqfree.clone())).unwrap());
    }
}
