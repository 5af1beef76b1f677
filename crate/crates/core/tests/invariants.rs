use cmlab_algebra::{Field, Monomial, Poly, PolyRing};
use cmlab_core::invariants::{
    invariant_cm_scenario, invariant_presentation, reynolds, Completeness, LinearGroupAction, Matrix, BEYOND_TWO_LENGTH,
};
use proptest::prelude::*;

fn matrix(field: Field, rows: &[&[i64]]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&c| field.from_i64(c)).collect())
        .collect()
}

fn sign_action() -> LinearGroupAction {
    let r = PolyRing::grevlex(Field::Rational, &["x", "y"]).unwrap();
    LinearGroupAction::generated_by(&r, &[matrix(Field::Rational, &[&[-1, 0], &[0, -1]])]).unwrap()
}

fn cubic_action() -> LinearGroupAction {
    let f = Field::Prime(7);
    let r = PolyRing::grevlex(f, &["x", "y"]).unwrap();
    // omega = 2 has order 3 mod 7 and omega^2 = 4.
    LinearGroupAction::generated_by(&r, &[matrix(f, &[&[2, 0], &[0, 4]])]).unwrap()
}

fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u16; n];
    fn go(i: usize, left: u32, e: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left as u16;
            out.push(Monomial::from_exponents(e));
            return;
        }
        for k in 0..=left {
            e[i] = k as u16;
            go(i + 1, left - k, e, out);
        }
    }
    go(0, d, &mut e, &mut out);
    out
}

/// For a diagonal action every monomial is an eigenvector, so the Reynolds
/// image of a monomial is the monomial or zero and the invariants of degree
/// `d` have a monomial basis.
fn diagonal_invariant_count(g: &LinearGroupAction, d: u32) -> usize {
    let ring = g.ring();
    monomials(ring.nvars(), d)
        .into_iter()
        .filter(|&m| !g.reynolds(&ring.monomial(m)).is_zero())
        .count()
}

/// Standard monomials of the presentation in weighted degree `d`.
fn presentation_count(degrees: &[u32], ring: &cmlab_algebra::PresentedRing, d: u32) -> usize {
    let amb = ring.ambient();
    (0..=d)
        .flat_map(|k| monomials(amb.nvars(), k))
        .filter(|m| (0..amb.nvars()).map(|i| m.exp(i) as u32 * degrees[i]).sum::<u32>() == d)
        .filter(|&m| {
            let p = amb.monomial(m);
            ring.reduce(&p) == p
        })
        .count()
}

#[test]
fn sign_action_presentation() {
    let g = sign_action();
    assert_eq!(g.order(), 2);
    let p = invariant_presentation(&g, 2).unwrap();
    let amb = g.ring();
    let gens: Vec<String> = p.generators.iter().map(|f| amb.format(f)).collect();
    assert_eq!(gens, ["x^2", "x*y", "y^2"]);
    assert_eq!(p.degrees, [2, 2, 2]);
    assert_eq!(p.completeness, Completeness::NoetherBound);
    let expected = p.ring.parse_ideal("(A*C - B^2)").unwrap();
    assert!(p.ring.ideal(p.ring.relations().to_vec()).equals(&expected).unwrap());
    for r in p.ring.relations() {
        assert!(p.embed(r).is_zero());
    }
    for d in 1..=8 {
        assert_eq!(
            diagonal_invariant_count(&g, d),
            presentation_count(&p.degrees, &p.ring, d),
            "degree {d}"
        );
    }
}

#[test]
fn cubic_action_presentation() {
    let g = cubic_action();
    assert_eq!(g.order(), 3);
    let p = invariant_presentation(&g, 3).unwrap();
    let amb = g.ring();
    let gens: Vec<String> = p.generators.iter().map(|f| amb.format(f)).collect();
    assert_eq!(gens, ["x^3", "x*y", "y^3"]);
    let expected = p.ring.parse_ideal("(A*C - B^3)").unwrap();
    assert!(p.ring.ideal(p.ring.relations().to_vec()).equals(&expected).unwrap());
    for d in 1..=9 {
        assert_eq!(
            diagonal_invariant_count(&g, d),
            presentation_count(&p.degrees, &p.ring, d),
            "degree {d}"
        );
    }
    // Stopping early: y^3 and x^3 only appear in degree 3.
    let short = invariant_presentation(&g, 2).unwrap();
    assert_eq!(short.completeness, Completeness::BoundTooSmall { degree: 2 });
    assert_eq!(short.generators.len(), 1);
}

#[test]
fn trivial_group() {
    let r = PolyRing::grevlex(Field::Rational, &["x", "y"]).unwrap();
    let g = LinearGroupAction::generated_by(&r, &[]).unwrap();
    assert_eq!(g.order(), 1);
    let p = invariant_presentation(&g, 1).unwrap();
    assert_eq!(p.generators.len(), 2);
    assert!(p.ring.relations().is_empty());
    assert_eq!(p.completeness, Completeness::NoetherBound);
}

#[test]
fn group_validation() {
    let r = PolyRing::grevlex(Field::Rational, &["x", "y"]).unwrap();
    let q = Field::Rational;
    // Not closed: the product of the two reflections is missing.
    let bad = vec![
        matrix(q, &[&[1, 0], &[0, 1]]),
        matrix(q, &[&[-1, 0], &[0, 1]]),
        matrix(q, &[&[1, 0], &[0, -1]]),
    ];
    assert!(LinearGroupAction::new(&r, bad).is_err());
    // Order 52 in GF(53).
    let f = Field::Prime(53);
    let r1 = PolyRing::grevlex(f, &["x"]).unwrap();
    assert!(LinearGroupAction::generated_by(&r1, &[matrix(f, &[&[2]])]).is_err());
    // The characteristic divides the order.
    let f2 = Field::Prime(2);
    let r2 = PolyRing::grevlex(f2, &["x", "y"]).unwrap();
    assert!(LinearGroupAction::generated_by(&r2, &[matrix(f2, &[&[0, 1], &[1, 0]])]).is_err());
    // Singular matrices are rejected.
    assert!(LinearGroupAction::generated_by(&r, &[matrix(q, &[&[0, 0], &[0, 1]])]).is_err());
}

#[test]
fn swap_action_invariants() {
    let r = PolyRing::grevlex(Field::Rational, &["x", "y"]).unwrap();
    let g = LinearGroupAction::generated_by(&r, &[matrix(Field::Rational, &[&[0, 1], &[1, 0]])]).unwrap();
    let p = invariant_presentation(&g, 2).unwrap();
    // Symmetric polynomials: polynomial ring in two generators.
    assert_eq!(p.degrees, [2, 1]);
    assert!(p.ring.relations().is_empty());
    assert!(p.generators.iter().all(|f| g.is_invariant(f)));
}

#[test]
fn sign_action_scenario() {
    let g = sign_action();
    let p = invariant_presentation(&g, 2).unwrap();
    let el = |s: &str| p.ring.element(s).unwrap();
    let pool = vec![
        vec![el("A"), el("C")],
        vec![el("A + C"), el("B")],
        vec![el("A"), el("B")],
        vec![el("A"), el("C"), el("B")],
    ];
    let s = invariant_cm_scenario(&g, &pool, 2, 100, 7).unwrap();
    assert!(!s.verdict.violation_found());
    for e in &s.verdict.entries[..2] {
        assert!(e.strong_parameter);
        assert_eq!(e.regular, Some(true));
    }
    // (A, B) has height 1: C survives on A = B = 0.
    assert!(!s.verdict.entries[2].strong_parameter);
    assert_eq!(s.beyond_two_length, [3]);
    assert_eq!(BEYOND_TWO_LENGTH, "beyond the two-length theorem");
    assert!(s.retraction.holds());
    assert_eq!(s.retraction.samples, 100);

    let r3 = PolyRing::grevlex(Field::Rational, &["x", "y", "z"]).unwrap();
    let g3 = LinearGroupAction::generated_by(
        &r3,
        &[matrix(Field::Rational, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]])],
    )
    .unwrap();
    assert!(invariant_cm_scenario(&g3, &[], 2, 1, 0).is_err());
}

fn arb_poly(ring: PolyRing) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, 0u16..=3, 0u16..=3), 1..5).prop_map(move |ts| {
        let mut p = ring.zero();
        for (c, a, b) in ts {
            let m = Monomial::from_exponents(&[a, b]);
            p = p.add(&Poly::term(ring.field().from_i64(c), m, ring.order()));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reynolds_laws(f in arb_poly(sign_action().ring().clone()), h in arb_poly(sign_action().ring().clone())) {
        let g = sign_action();
        let rf = reynolds(&f, &g);
        prop_assert!(g.is_invariant(&rf));
        prop_assert_eq!(reynolds(&rf, &g), rf.clone());
        prop_assert_eq!(reynolds(&f.add(&h), &g), rf.add(&reynolds(&h, &g)));
        // Only even total degrees survive.
        let even: Poly = f.terms().iter()
            .filter(|(m, _)| m.degree() % 2 == 0)
            .fold(g.ring().zero(), |acc, (m, c)| acc.add(&Poly::term(c.clone(), *m, f.order())));
        prop_assert_eq!(rf, even);
    }
}
