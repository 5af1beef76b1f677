//! Finite linear group actions on polynomial rings, the Reynolds operator,
//! presentations of invariant rings and the invariant-ring CM scenario.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cmlab_algebra::{AlgebraError, Field, Monomial, MonomialOrder, Poly, PolyRing, PresentedRing, Result, Scalar};

use crate::sequences::{cohen_macaulay_verdict, AffineRing, CmVerdict};

pub const MAX_GROUP_ORDER: usize = 12;
pub const REYNOLDS_RETRACTION: &str = "reynolds-retraction";
pub const TWO_LENGTH_RETRACT: &str = "two-length-regular-retract";
pub const BEYOND_TWO_LENGTH: &str = "beyond the two-length theorem";

pub type Matrix = Vec<Vec<Scalar>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = a[i][0].field().zero();
                    for (k, bk) in b.iter().enumerate() {
                        s = &s + &(&a[i][k] * &bk[j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn identity(field: Field, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

/// A finite group of matrices acting by `x_i -> sum_j g[i][j] x_j`.
#[derive(Clone, Debug)]
pub struct LinearGroupAction {
    ring: PolyRing,
    elements: Vec<Matrix>,
}

impl LinearGroupAction {
    /// Checks that `elements` is a group of order at most 12 whose order
    /// is a unit in the field.
    pub fn new(ring: &PolyRing, elements: Vec<Matrix>) -> Result<Self> {
        let n = ring.nvars();
        let field = ring.field();
        for g in &elements {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(AlgebraError::Invalid(format!("matrices must be {n} x {n}")));
            }
            if g.iter().flatten().any(|c| c.field() != field) {
                return Err(AlgebraError::FieldMismatch("matrix entries".into()));
            }
        }
        if elements.len() > MAX_GROUP_ORDER {
            return Err(AlgebraError::GuardExceeded(format!(
                "group of order {} (at most {MAX_GROUP_ORDER})",
                elements.len()
            )));
        }
        let id = identity(field, n);
        if !elements.contains(&id) {
            return Err(AlgebraError::Invalid("the identity is missing".into()));
        }
        for a in &elements {
            for b in &elements {
                if !elements.contains(&mat_mul(a, b)) {
                    return Err(AlgebraError::Invalid("not closed under multiplication".into()));
                }
            }
            // In a finite closed set, a has an inverse iff some power is 1.
            let mut p = a.clone();
            let mut found = p == id;
            for _ in 0..elements.len() {
                if found {
                    break;
                }
                p = mat_mul(&p, a);
                found = p == id;
            }
            if !found {
                return Err(AlgebraError::Invalid("a matrix is not invertible".into()));
            }
        }
        let p = field.characteristic() as usize;
        if p != 0 && elements.len().is_multiple_of(p) {
            return Err(AlgebraError::Invalid(format!(
                "group order {} is not a unit in characteristic {p}",
                elements.len()
            )));
        }
        Ok(LinearGroupAction {
            ring: ring.clone(),
            elements,
        })
    }

    /// The group generated by `gens`.
    pub fn generated_by(ring: &PolyRing, gens: &[Matrix]) -> Result<Self> {
        let mut elements = vec![identity(ring.field(), ring.nvars())];
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let p = mat_mul(&elements[i], g);
                if !elements.contains(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(AlgebraError::GuardExceeded(format!(
                            "group order above {MAX_GROUP_ORDER}"
                        )));
                    }
                    elements.push(p);
                }
            }
            i += 1;
        }
        Self::new(ring, elements)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn act(&self, g: &Matrix, f: &Poly) -> Poly {
        let n = self.ring.nvars();
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = self.ring.zero();
                for (j, c) in g[i].iter().enumerate() {
                    p = p.add(&self.ring.var(j).scale(c));
                }
                p
            })
            .collect();
        f.substitute(&images, self.ring.order())
    }

    /// `(1/|G|) sum_g g.f`.
    pub fn reynolds(&self, f: &Poly) -> Poly {
        let mut sum = self.ring.zero();
        for g in &self.elements {
            sum = sum.add(&self.act(g, f));
        }
        let inv = self
            .ring
            .field()
            .from_i64(self.order() as i64)
            .inv()
            .expect("group order is a unit");
        sum.scale(&inv)
    }

    pub fn is_invariant(&self, f: &Poly) -> bool {
        self.elements.iter().all(|g| &self.act(g, f) == f)
    }
}

pub fn reynolds(f: &Poly, g: &LinearGroupAction) -> Poly {
    g.reynolds(f)
}

/// Row-reduces `p` against an echelon list with distinct, monic leading
/// monomials.
fn reduce_linear(mut p: Poly, basis: &[Poly]) -> Poly {
    let mut out = Poly::zero(p.order());
    loop {
        let Some((m, c)) = p.leading_term().cloned() else {
            return out;
        };
        match basis.iter().find(|b| b.leading_monomial() == Some(&m)) {
            Some(b) => p = p.sub_mul_term(&c, &Monomial::one(), b),
            None => {
                out = out.add(&Poly::term(c.clone(), m, p.order()));
                p = p.sub(&Poly::term(c, m, p.order()));
            }
        }
    }
}

fn insert_echelon(basis: &mut Vec<Poly>, p: Poly) -> bool {
    let r = reduce_linear(p, basis);
    if r.is_zero() {
        return false;
    }
    basis.push(r.monic());
    true
}

/// Lexicographically largest monomial of `p`.
fn lex_leading(p: &Poly) -> Monomial {
    p.with_order(MonomialOrder::Lex)
        .leading_monomial()
        .copied()
        .unwrap_or_default()
}

/// Monomials of degree exactly `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, i: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(d as u16);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e as u16);
            go(n, d - e, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    go(n, d, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// The bound reaches the group order, which bounds generator degrees.
    NoetherBound,
    /// New generators appeared at the bound, which is below the group
    /// order.
    BoundTooSmall { degree: u32 },
    /// Below the group order with no generator at the bound.
    Unverified,
}

#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    /// `k[A, B, ...] / relations`.
    pub ring: PresentedRing,
    /// Images of the generators in the ambient ring.
    pub generators: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub completeness: Completeness,
}

impl InvariantPresentation {
    /// The ambient image of an element of the invariant ring.
    pub fn embed(&self, r: &Poly) -> Poly {
        let order = self.generators.first().map(Poly::order).unwrap_or_default();
        r.substitute(&self.generators, order)
    }
}

fn generator_names(ambient: &[String], count: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(count);
    let mut i = 0usize;
    while names.len() < count {
        let name = if i < 26 {
            ((b'A' + i as u8) as char).to_string()
        } else {
            format!("T{}", i - 26)
        };
        if !ambient.contains(&name) {
            names.push(name);
        }
        i += 1;
    }
    names
}

/// Fundamental invariants degree by degree from Reynolds images, and their
/// relations by elimination.
pub fn invariant_presentation(g: &LinearGroupAction, degree_bound: u32) -> Result<InvariantPresentation> {
    let ring = g.ring();
    let n = ring.nvars();
    let mut found: Vec<(Poly, u32)> = Vec::new();
    let mut last_new = 0;
    for d in 1..=degree_bound {
        // Span of products of earlier generators in degree d.
        let mut span: Vec<Poly> = Vec::new();
        let mut products: Vec<(Poly, u32, usize)> = vec![(ring.one(), 0, 0)];
        while let Some((p, deg, start)) = products.pop() {
            if deg == d {
                insert_echelon(&mut span, p);
                continue;
            }
            for (k, (h, hd)) in found.iter().enumerate().skip(start) {
                if deg + hd <= d {
                    products.push((p.mul(h), deg + hd, k));
                }
            }
        }
        let mut monos = monomials_of_degree(n, d);
        monos.sort_by(|a, b| MonomialOrder::Lex.cmp(b, a));
        for m in monos {
            let r = g.reynolds(&ring.monomial(m));
            if insert_echelon(&mut span, r.clone()) {
                found.push((r.monic(), d));
                last_new = d;
            }
        }
    }
    found.sort_by(|a, b| MonomialOrder::Lex.cmp(&lex_leading(&b.0), &lex_leading(&a.0)));
    let completeness = if degree_bound as usize >= g.order() {
        Completeness::NoetherBound
    } else if last_new == degree_bound {
        Completeness::BoundTooSmall { degree: degree_bound }
    } else {
        Completeness::Unverified
    };

    let names = generator_names(ring.names(), found.len());
    let elim = ring.extended(&names, MonomialOrder::Block { split: n })?;
    let gens: Vec<Poly> = found
        .iter()
        .enumerate()
        .map(|(k, (f, _))| elim.var(n + k).sub(&elim.import(f)))
        .collect();
    let gb = PresentedRing::polynomial(elim.clone()).ideal(gens).groebner_basis()?;
    let target = PolyRing::grevlex(ring.field(), &names)?;
    let mut images = vec![target.zero(); n];
    images.extend((0..found.len()).map(|k| target.var(k)));
    let relations: Vec<Poly> = gb
        .iter()
        .filter(|p| p.variables().iter().all(|&v| v >= n))
        .map(|p| p.substitute(&images, target.order()))
        .collect();
    Ok(InvariantPresentation {
        ring: PresentedRing::new(target, relations)?,
        generators: found.iter().map(|(f, _)| f.clone()).collect(),
        degrees: found.iter().map(|(_, d)| *d).collect(),
        completeness,
    })
}

/// Checks on sampled elements: `rho(e(r)) = e(r)`, `rho(e(r) f) = e(r)
/// rho(f)`, and nonzero invariants stay nonzero in the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionChecks {
    pub samples: usize,
    pub retraction_law: bool,
    pub linearity: bool,
    pub nonzero_preserved: bool,
}

impl RetractionChecks {
    pub fn holds(&self) -> bool {
        self.retraction_law && self.linearity && self.nonzero_preserved
    }
}

fn random_poly(ring: &PolyRing, rng: &mut ChaCha8Rng, max_degree: u32) -> Poly {
    let mut p = ring.zero();
    for d in 0..=max_degree {
        for m in monomials_of_degree(ring.nvars(), d) {
            if rng.gen_bool(0.5) {
                let c = ring.field().from_i64(rng.gen_range(-5..=5));
                p = p.add(&Poly::term(c, m, ring.order()));
            }
        }
    }
    p
}

pub fn retraction_checks(
    g: &LinearGroupAction,
    pres: &InvariantPresentation,
    samples: usize,
    seed: u64,
) -> RetractionChecks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient = g.ring();
    let inv_ring = pres.ring.ambient();
    let mut checks = RetractionChecks {
        samples,
        retraction_law: true,
        linearity: true,
        nonzero_preserved: true,
    };
    for _ in 0..samples {
        let r = random_poly(inv_ring, &mut rng, 2);
        let er = pres.embed(&r);
        let f = random_poly(ambient, &mut rng, 3);
        checks.retraction_law &= g.reynolds(&er) == er;
        checks.linearity &= g.reynolds(&er.mul(&f)) == er.mul(&g.reynolds(&f));
        if !pres.ring.is_zero(&r) {
            checks.nonzero_preserved &= !er.is_zero();
        }
    }
    checks
}

#[derive(Clone, Debug)]
pub struct InvariantScenario {
    pub presentation: InvariantPresentation,
    pub verdict: CmVerdict,
    /// Pool indices of sequences longer than two.
    pub beyond_two_length: Vec<usize>,
    pub retraction: RetractionChecks,
    pub tags: Vec<String>,
    /// The ambient ring is a finite module over the invariants; this holds
    /// for every linear action of a finite group and is cited, not checked.
    pub finiteness_note: String,
}

/// Builds `R^G`, runs the CM pool check on it and samples the retraction
/// laws. The ambient ring must have at most two variables.
pub fn invariant_cm_scenario(
    g: &LinearGroupAction,
    pool: &[Vec<Poly>],
    degree_bound: u32,
    samples: usize,
    seed: u64,
) -> Result<InvariantScenario> {
    if g.ring().nvars() > 2 {
        return Err(AlgebraError::Invalid(
            "the ambient ring must have dimension at most 2".into(),
        ));
    }
    let presentation = invariant_presentation(g, degree_bound)?;
    let adapter = AffineRing::new(presentation.ring.clone());
    let verdict = cohen_macaulay_verdict(&adapter, pool)?;
    let beyond_two_length = pool
        .iter()
        .enumerate()
        .filter(|(_, s)| s.len() > 2)
        .map(|(i, _)| i)
        .collect();
    let retraction = retraction_checks(g, &presentation, samples, seed);
    Ok(InvariantScenario {
        presentation,
        verdict,
        beyond_two_length,
        retraction,
        tags: vec![REYNOLDS_RETRACTION.into(), TWO_LENGTH_RETRACT.into()],
        finiteness_note: "finite linear group actions make the ambient ring module-finite over the invariants".into(),
    })
}
