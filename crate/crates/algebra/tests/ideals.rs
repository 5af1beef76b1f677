use cmlab_algebra::factor::div_exact;
use cmlab_algebra::{Field, Height, Ideal, Monomial, MonomialOrder, Poly, PolyRing, PresentedRing};
use proptest::prelude::*;

fn ring(text: &str) -> PresentedRing {
    PresentedRing::parse(text).unwrap()
}

fn gb_strings(i: &Ideal) -> Vec<String> {
    let r = i.ring();
    i.groebner_basis().unwrap().iter().map(|p| r.format(p)).collect()
}

// Plain multivariate division by a list, written against the Poly API only.
fn naive_remainder(f: &Poly, divisors: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut rem = Poly::zero(f.order());
    while let Some((m, c)) = p.leading_term().cloned() {
        let mut divided = false;
        for g in divisors {
            let (gm, gc) = g.leading_term().unwrap();
            if gm.divides(&m) {
                let q = gm.quotient_of(&m).unwrap();
                p = p.sub(&g.mul_term(&c.div(gc).unwrap(), &q));
                divided = true;
                break;
            }
        }
        if !divided {
            let t = Poly::term(c.clone(), m, f.order());
            rem = rem.add(&t);
            p = p.sub(&t);
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    f.mul_term(&gc.clone(), &fm.quotient_of(&l).unwrap())
        .sub(&g.mul_term(&fc.clone(), &gm.quotient_of(&l).unwrap()))
}

#[test]
fn lex_basis_passes_buchberger_criterion() {
    let pr = PolyRing::new(Field::Rational, &["x", "y"], MonomialOrder::Lex).unwrap();
    let r = PresentedRing::polynomial(pr);
    let i = r.parse_ideal("(x*y - 1, y^2 - 1)").unwrap();
    assert_eq!(gb_strings(&i), ["x - y", "y^2 - 1"]);
    let gb = i.groebner_basis().unwrap();
    for a in 0..gb.len() {
        for b in a + 1..gb.len() {
            assert!(naive_remainder(&s_poly(&gb[a], &gb[b]), &gb).is_zero());
        }
    }
    for g in i.generators() {
        assert!(naive_remainder(g, &gb).is_zero());
    }
}

#[test]
fn trivial_bases() {
    let r = ring("QQ[x,y]");
    assert!(r.zero_ideal().groebner_basis().unwrap().is_empty());
    let r = ring("QQ[x]");
    assert_eq!(gb_strings(&r.parse_ideal("(x)").unwrap()), ["x"]);
}

#[test]
fn normal_form_examples() {
    let r = ring("QQ[x,y]");
    let xy = r.parse_ideal("(x*y)").unwrap();
    assert!(xy.normal_form(&r.element("x*y").unwrap()).unwrap().is_zero());
    let f = r.element("x + y").unwrap();
    assert_eq!(r.zero_ideal().normal_form(&f).unwrap(), f);
    let i = r.parse_ideal("(x^2 - y)").unwrap();
    let nf = i.normal_form(&r.element("x^2").unwrap()).unwrap();
    assert_eq!(r.format(&nf), "y");
    // Single division step by hand.
    let by_hand = r.element("x^2").unwrap().sub(&r.element("x^2 - y").unwrap());
    assert_eq!(nf, by_hand);
}

// (I : f) from I ∩ (f) by elimination of t in tI + (1 - t)(f), then
// exact division by f. Polynomial rings only.
fn colon_by_elimination(text_ring: &[&str], ideal: &str, f: &str) -> Ideal {
    let mut names = vec!["t"];
    names.extend_from_slice(text_ring);
    let big = PolyRing::new(Field::Rational, &names, MonomialOrder::Block { split: 1 }).unwrap();
    let small = PolyRing::grevlex(Field::Rational, text_ring).unwrap();
    let r = PresentedRing::polynomial(small.clone());
    let t = big.var(0);
    let fb = big.parse(f).unwrap();
    let mut gens: Vec<Poly> = Vec::new();
    let i = r.parse_ideal(ideal).unwrap();
    for g in i.generators() {
        let lifted = big.parse(&small.format(g)).unwrap();
        gens.push(t.mul(&lifted));
    }
    gens.push(big.one().sub(&t).mul(&fb));
    let elim = PresentedRing::polynomial(big.clone()).ideal(gens);
    let mut quotients = Vec::new();
    for g in elim.groebner_basis().unwrap() {
        if g.degree_in(0) == 0 {
            let q = div_exact(&g, &fb).expect("intersection lies in (f)");
            quotients.push(small.parse(&big.format(&q)).unwrap());
        }
    }
    r.ideal(quotients)
}

#[test]
fn colon_examples() {
    let r = ring("QQ[x,y]");
    let x = r.element("x").unwrap();
    assert_eq!(
        r.parse_ideal("(x*y)").unwrap().colon(&x).unwrap(),
        r.parse_ideal("(y)").unwrap()
    );
    let c = r.parse_ideal("(x^2, x*y)").unwrap().colon(&x).unwrap();
    assert_eq!(c, r.parse_ideal("(x, y)").unwrap());
    assert_eq!(c, colon_by_elimination(&["x", "y"], "(x^2, x*y)", "x"));

    let q = ring("QQ[x,y]/(x*y)");
    let c = q.zero_ideal().colon(&q.element("x").unwrap()).unwrap();
    assert_eq!(c, q.parse_ideal("(y)").unwrap());
    // y really annihilates x in the quotient.
    assert!(q.is_zero(&q.mul(&q.element("y").unwrap(), &q.element("x").unwrap())));

    assert!(r
        .parse_ideal("(x)")
        .unwrap()
        .colon(&r.zero())
        .unwrap()
        .is_unit()
        .unwrap());
}

#[test]
fn colon_matches_elimination_on_fixtures() {
    let r = ring("QQ[x,y,z]");
    for (ideal, f) in [
        ("(x^2*y, y*z^2)", "y"),
        ("(x*y - z^2, x^3)", "x"),
        ("(x^2, y^2, x*y*z)", "x*y"),
        ("(x*z - y^2, y*z)", "z"),
    ] {
        let i = r.parse_ideal(ideal).unwrap();
        let ours = i.colon(&r.element(f).unwrap()).unwrap();
        assert_eq!(ours, colon_by_elimination(&["x", "y", "z"], ideal, f), "{ideal} : {f}");
    }
}

// Dimension from growth of the number of standard monomials of degree ≤ d.
fn dimension_by_counting(i: &Ideal) -> usize {
    let leads: Vec<Monomial> = i
        .preimage_gb()
        .unwrap()
        .leading_terms()
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let n = i.ring().nvars();
    let count = |d: u32| -> u64 {
        let mut total = 0;
        let mut ex = vec![0u16; n];
        loop {
            let m = Monomial::from_exponents(&ex);
            if m.degree() <= d && !leads.iter().any(|l| l.divides(&m)) {
                total += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return total;
                }
                ex[k] += 1;
                if ex[k] as u32 <= d {
                    break;
                }
                ex[k] = 0;
                k += 1;
            }
        }
    };
    // count(d) grows like d^dim; compare d = 12 and d = 24.
    let (a, b) = (count(12) as f64, count(24) as f64);
    (b / a).log2().round() as usize
}

#[test]
fn krull_dimension_examples() {
    assert_eq!(ring("QQ[x,y,z]").krull_dimension(), Some(3));
    assert_eq!(ring("QQ[x]/(x^2)").krull_dimension(), Some(0));
    let q = ring("QQ[x,y]/(x*y)");
    assert_eq!(q.krull_dimension(), Some(1));
    assert_eq!(dimension_by_counting(&q.zero_ideal()), 1);
    assert_eq!(ring("QQ[x]/(1)").krull_dimension(), None);
}

fn prime_strings(r: &PresentedRing, ideal: &str) -> Vec<String> {
    r.parse_ideal(ideal)
        .unwrap()
        .minimal_primes()
        .unwrap()
        .iter()
        .map(Ideal::format)
        .collect()
}

#[test]
fn minimal_prime_examples() {
    let r = ring("QQ[x,y]");
    assert_eq!(prime_strings(&r, "(x*y)"), ["(x)", "(y)"]);
    assert_eq!(prime_strings(&r, "(x)"), ["(x)"]);
    assert_eq!(prime_strings(&r, "(x^2, y)"), ["(x, y)"]);
    assert!(prime_strings(&r, "(1)").is_empty());
}

// The intersection of the computed primes must be the radical: it contains
// the ideal and some power of it lies in the ideal.
fn check_radical(r: &PresentedRing, ideal: &str) {
    let i = r.parse_ideal(ideal).unwrap();
    let primes = i.minimal_primes().unwrap();
    let mut rad = r.unit_ideal();
    for p in &primes {
        assert!(p.contains_ideal(&i).unwrap());
        rad = rad.intersection(p).unwrap();
    }
    let mut power = rad.clone();
    let mut ok = false;
    for _ in 0..8 {
        if i.contains_ideal(&power).unwrap() {
            ok = true;
            break;
        }
        power = power.product(&rad);
    }
    assert!(ok, "{ideal}: intersection of {primes:?} is not nilpotent mod the ideal");
    for (a, p) in primes.iter().enumerate() {
        for (b, q) in primes.iter().enumerate() {
            if a != b {
                assert!(!p.contains_ideal(q).unwrap(), "{p:?} contains {q:?}");
            }
        }
    }
}

#[test]
fn minimal_primes_cover_the_radical() {
    let r = ring("QQ[x,y,z]");
    for ideal in [
        "(x*y, x*z, y*z)",
        "(x^2*y, x*y^2)",
        "(x*y - z^2, x)",
        "(x^3 - y^2, z^2)",
        "(x^2 + y^2 + z^2, x*y*z)",
        "(x*(y - 1), y*(z - 2))",
    ] {
        check_radical(&r, ideal);
    }
    let q = ring("GF(32003)[x,y,z]/(x*y - z^2)");
    check_radical(&q, "(x)");
    check_radical(&q, "(x, y)");
}

#[test]
fn minimal_primes_guard() {
    let r = ring("QQ[a,b,c,d,e,f,g]");
    assert!(r.parse_ideal("(a*b)").unwrap().minimal_primes().is_err());
    let r = ring("QQ[x,y]");
    assert!(r.parse_ideal("(x^7 - y)").unwrap().minimal_primes().is_err());
}

#[test]
fn height_examples() {
    let r = ring("QQ[x,y]");
    assert_eq!(r.parse_ideal("(x, y)").unwrap().height().unwrap(), Height::Finite(2));
    assert_eq!(r.unit_ideal().height().unwrap(), Height::Infinite);
    assert_eq!(ring("QQ[x]/(x^2)").unit_ideal().height().unwrap(), Height::Infinite);
    let q = ring("QQ[x,y]/(x*y)");
    let x = q.parse_ideal("(x)").unwrap();
    assert_eq!(x.height().unwrap(), Height::Finite(0));
    assert_eq!(x.height_by_primes().unwrap(), Height::Finite(0));
}

#[test]
fn height_routes_agree_on_mixed_dimension_ring() {
    // Plane union line: minimal primes (z) and (x, y).
    let q = ring("QQ[x,y,z]/(x*z, y*z)");
    for (ideal, h) in [("(z)", 0), ("(x)", 0), ("(x, y)", 0), ("(x + z)", 1), ("(x, y, z)", 2)] {
        let i = q.parse_ideal(ideal).unwrap();
        assert_eq!(i.height().unwrap(), Height::Finite(h), "{ideal}");
        assert_eq!(i.height_by_primes().unwrap(), Height::Finite(h), "{ideal}");
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let err = PresentedRing::parse("QQ[x,y]/(x*y").unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");
    assert!(PresentedRing::parse("GF(32004)[x]").is_err());
}

const P: &str = "GF(32003)[x,y,z]";

fn arb_poly() -> impl Strategy<Value = String> {
    let term = (-20i64..=20, 0u32..=2, 0u32..=2, 0u32..=2).prop_map(|(c, a, b, d)| format!("{c}*x^{a}*y^{b}*z^{d}"));
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.join(" + "))
}

fn arb_ideal() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(arb_poly(), 1..=3)
}

fn ideal_of(r: &PresentedRing, gens: &[String]) -> Ideal {
    r.ideal(gens.iter().map(|g| r.element(g).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent_and_linear(gens in arb_ideal(), f in arb_poly(), g in arb_poly(), c in 1i64..100) {
        let r = ring(P);
        let i = ideal_of(&r, &gens);
        let f = r.element(&f).unwrap();
        let g = r.element(&g).unwrap();
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        let cs = r.field().from_i64(c);
        let lhs = i.normal_form(&f.scale(&cs).add(&g)).unwrap();
        let rhs = nf.scale(&cs).add(&i.normal_form(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(nf.is_zero(), i.contains(&f).unwrap());
    }

    #[test]
    fn colon_laws(gens in arb_ideal(), extra in arb_poly(), f in arb_poly()) {
        let r = ring(P);
        let i = ideal_of(&r, &gens);
        let f = r.element(&f).unwrap();
        let c = i.colon(&f).unwrap();
        prop_assert!(c.contains_ideal(&i).unwrap());
        for g in c.generators() {
            prop_assert!(i.contains(&r.mul(g, &f)).unwrap());
        }
        let bigger = i.with_generator(&r.element(&extra).unwrap());
        prop_assert!(bigger.colon(&f).unwrap().contains_ideal(&c).unwrap());
    }

    #[test]
    fn equality_is_mutual_containment(a in arb_ideal(), b in arb_ideal()) {
        let r = ring(P);
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        let mutual = i.contains_ideal(&j).unwrap() && j.contains_ideal(&i).unwrap();
        prop_assert_eq!(i.equals(&j).unwrap(), mutual);
        let s = i.sum(&j);
        prop_assert!(s.equals(&j.sum(&i)).unwrap());
    }
}

fn arb_small_ideal() -> impl Strategy<Value = Vec<String>> {
    let term = (1i64..=5, 0u32..=2, 0u32..=2, 0u32..=1).prop_map(|(c, a, b, d)| format!("{c}*x^{a}*y^{b}*z^{d}"));
    let poly = prop::collection::vec(term, 1..3).prop_map(|ts| ts.join(" + "));
    prop::collection::vec(poly, 1..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn height_positive_iff_outside_minimal_primes(gens in arb_small_ideal()) {
        let q = ring("GF(32003)[x,y,z]/(x*y)");
        let i = ideal_of(&q, &gens);
        let h = i.height().unwrap();
        prop_assert_eq!(h, i.height_by_primes().unwrap());
        let primes = q.minimal_primes().unwrap();
        let mut inside = false;
        for p in &primes {
            if p.contains_ideal(&i).unwrap() {
                inside = true;
            }
        }
        prop_assert_eq!(h >= Height::Finite(1), !inside);
    }

    #[test]
    fn dimension_drops_along_prime_chains(gens in arb_small_ideal()) {
        let r = ring("GF(32003)[x,y,z]");
        let i = ideal_of(&r, &gens);
        for p in i.minimal_primes().unwrap() {
            let m = r.variables_ideal().sum(&p);
            if m.is_unit().unwrap() || m.equals(&p).unwrap() {
                continue;
            }
            // p ⊊ p + (x, y, z), which is prime when proper (it is (x,y,z)).
            let dp = p.quotient_dimension().unwrap().unwrap();
            let dm = m.quotient_dimension().unwrap().unwrap();
            prop_assert!(dm < dp);
        }
    }
}
