//! Finitely presented algebras `k[x]/J` and their ideals.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::dimension;
use crate::error::{AlgebraError, Result};
use crate::groebner::{ModuleGb, SyzygyGb, Vector};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::PolyRing;
use crate::scalar::Field;

/// Height of an ideal: a finite number, or infinity for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(usize),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<usize> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => write!(f, "infinity"),
        }
    }
}

struct RingInner {
    ambient: PolyRing,
    relations: Vec<Poly>,
    gb: ModuleGb,
    relation_gb: Vec<Poly>,
    dimension: OnceLock<Option<usize>>,
    // Stored as generator lists: ideals hold the ring, so caching them here
    // would form a reference cycle.
    minimal_primes: OnceLock<Vec<Vec<Poly>>>,
}

/// `ambient / J`, with a cached reduced Gröbner basis of `J`. Cheap to clone.
#[derive(Clone)]
pub struct PresentedRing(Arc<RingInner>);

impl PresentedRing {
    pub fn new(ambient: PolyRing, relations: Vec<Poly>) -> Result<Self> {
        let relations: Vec<Poly> = relations
            .into_iter()
            .map(|p| ambient.import(&p))
            .filter(|p| !p.is_zero())
            .collect();
        for r in &relations {
            if let Some(f) = r.field() {
                if f != ambient.field() {
                    return Err(AlgebraError::FieldMismatch(format!(
                        "relation over {f} in a ring over {}",
                        ambient.field()
                    )));
                }
            }
        }
        let gb = ModuleGb::ideal(&relations, ambient.order(), &[])?;
        let relation_gb = gb.polys();
        Ok(PresentedRing(Arc::new(RingInner {
            ambient,
            relations,
            gb,
            relation_gb,
            dimension: OnceLock::new(),
            minimal_primes: OnceLock::new(),
        })))
    }

    pub fn polynomial(ambient: PolyRing) -> Self {
        Self::new(ambient, Vec::new()).expect("zero ideal needs no work")
    }

    /// Parses `QQ[x,y]/(x*y)` style text, using graded reverse lex.
    pub fn parse(text: &str) -> Result<Self> {
        let (ring, rels) = crate::parse::parse_ring(text, MonomialOrder::GrevLex)?;
        Self::new(ring, rels)
    }

    pub fn ambient(&self) -> &PolyRing {
        &self.0.ambient
    }

    pub fn field(&self) -> Field {
        self.0.ambient.field()
    }

    pub fn names(&self) -> &[String] {
        self.0.ambient.names()
    }

    pub fn nvars(&self) -> usize {
        self.0.ambient.nvars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.ambient.order()
    }

    /// Relations as given (nonzero ones only).
    pub fn relations(&self) -> &[Poly] {
        &self.0.relations
    }

    /// Reduced Gröbner basis of the relation ideal.
    pub fn relation_gb(&self) -> &[Poly] {
        &self.0.relation_gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.relation_gb.is_empty()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.0.relation_gb.iter().any(Poly::is_constant)
    }

    /// True when all relations are homogeneous (standard grading).
    pub fn is_graded(&self) -> bool {
        self.0.relation_gb.iter().all(Poly::is_homogeneous)
    }

    /// Canonical representative modulo the relations.
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.0.gb.reduce_poly(&self.0.ambient.import(p))
    }

    pub fn reduce_vector(&self, v: &[Poly]) -> Vector {
        v.iter().map(|p| self.reduce(p)).collect()
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn zero(&self) -> Poly {
        self.0.ambient.zero()
    }

    pub fn one(&self) -> Poly {
        self.reduce(&self.0.ambient.one())
    }

    pub fn var(&self, i: usize) -> Poly {
        self.reduce(&self.0.ambient.var(i))
    }

    pub fn from_i64(&self, n: i64) -> Poly {
        self.reduce(&self.0.ambient.from_i64(n))
    }

    /// Parses an element and returns its normal form.
    pub fn element(&self, text: &str) -> Result<Poly> {
        Ok(self.reduce(&self.0.ambient.parse(text)?))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }

    pub fn format(&self, p: &Poly) -> String {
        self.0.ambient.format(p)
    }

    pub fn ideal(&self, gens: Vec<Poly>) -> Ideal {
        Ideal::new(self.clone(), gens)
    }

    /// Parses `(f1, ..., fk)` over this ring.
    pub fn parse_ideal(&self, text: &str) -> Result<Ideal> {
        let gens = crate::parse::parse_ideal(&self.0.ambient, text)?;
        Ok(self.ideal(gens))
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal(Vec::new())
    }

    pub fn unit_ideal(&self) -> Ideal {
        self.ideal(vec![self.0.ambient.one()])
    }

    /// Ideal generated by all variables.
    pub fn variables_ideal(&self) -> Ideal {
        self.ideal((0..self.nvars()).map(|i| self.0.ambient.var(i)).collect())
    }

    /// Same presentation under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let ambient = self.0.ambient.with_order(order)?;
        let rels = self.0.relations.iter().map(|p| p.with_order(order)).collect();
        Self::new(ambient, rels)
    }

    /// Krull dimension; `None` for the zero ring.
    pub fn krull_dimension(&self) -> Option<usize> {
        *self.0.dimension.get_or_init(|| {
            let leads: Vec<_> = self
                .0
                .relation_gb
                .iter()
                .map(|p| *p.leading_monomial().unwrap())
                .collect();
            dimension::dimension(&leads, self.nvars())
        })
    }

    /// Minimal primes of the ring (of the zero ideal), cached.
    pub fn minimal_primes(&self) -> Result<Vec<Ideal>> {
        if self.0.minimal_primes.get().is_none() {
            let primes = crate::primes::minimal_primes(&self.zero_ideal())?;
            let gens = primes.iter().map(|p| p.generators().to_vec()).collect();
            let _ = self.0.minimal_primes.set(gens);
        }
        Ok(self
            .0
            .minimal_primes
            .get()
            .expect("just set")
            .iter()
            .map(|g| self.ideal(g.clone()))
            .collect())
    }

    /// True if both objects present the same ring: same variables, field,
    /// order and relation ideal.
    pub fn same_ring(&self, other: &PresentedRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient == other.0.ambient && self.0.relation_gb == other.0.relation_gb)
    }
}

impl PartialEq for PresentedRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for PresentedRing {}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.ambient)?;
        if !self.0.relations.is_empty() {
            let rels: Vec<String> = self.0.relations.iter().map(|p| self.format(p)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct IdealInner {
    ring: PresentedRing,
    gens: Vec<Poly>,
    gb: OnceLock<ModuleGb>,
}

/// A finitely generated ideal of a [`PresentedRing`]. Equality is equality
/// of ideals. Cheap to clone; the Gröbner basis is computed once on demand.
#[derive(Clone)]
pub struct Ideal(Arc<IdealInner>);

impl Ideal {
    pub fn new(ring: PresentedRing, gens: Vec<Poly>) -> Self {
        let gens = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        Ideal(Arc::new(IdealInner {
            ring,
            gens,
            gb: OnceLock::new(),
        }))
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.0.ring
    }

    /// Generators in normal form; zero generators are dropped.
    pub fn generators(&self) -> &[Poly] {
        &self.0.gens
    }

    /// Gröbner basis of the preimage `I + J` in the ambient ring.
    pub fn preimage_gb(&self) -> Result<&ModuleGb> {
        if let Some(g) = self.0.gb.get() {
            return Ok(g);
        }
        let r = &self.0.ring;
        let g = ModuleGb::ideal(&self.0.gens, r.order(), r.relation_gb())?;
        let _ = self.0.gb.set(g);
        Ok(self.0.gb.get().expect("just set"))
    }

    /// Reduced Gröbner basis of the ideal in the quotient ring: the reduced
    /// basis of `I + J` without the elements lying in `J`.
    pub fn groebner_basis(&self) -> Result<Vec<Poly>> {
        let ring = &self.0.ring;
        Ok(self
            .preimage_gb()?
            .polys()
            .into_iter()
            .filter(|p| !ring.is_zero(p))
            .collect())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.preimage_gb()?.reduce_poly(&self.0.ring.ambient().import(f)))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.preimage_gb()?.polys().iter().any(Poly::is_constant))
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.is_empty()
    }

    /// Ideal equality, decided by comparing reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !self.0.ring.same_ring(&other.0.ring) {
            return Ok(false);
        }
        Ok(self.preimage_gb()?.polys() == other.preimage_gb()?.polys())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.ring.is_graded() && self.0.gens.iter().all(Poly::is_homogeneous)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.0.gens.clone();
        g.extend(other.0.gens.iter().cloned());
        self.0.ring.ideal(g)
    }

    pub fn with_generator(&self, f: &Poly) -> Ideal {
        let mut g = self.0.gens.clone();
        g.push(f.clone());
        self.0.ring.ideal(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.0.gens {
            for b in &other.0.gens {
                g.push(a.mul(b));
            }
        }
        self.0.ring.ideal(g)
    }

    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = self.0.ring.unit_ideal();
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// `(I : f) = { g : g f in I }`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        let ring = &self.0.ring;
        let f = ring.reduce(f);
        if self.contains(&f)? {
            return Ok(ring.unit_ideal());
        }
        let untracked: Vec<Vector> = self.0.gens.iter().map(|g| vec![g.clone()]).collect();
        let syz = SyzygyGb::compute(
            ring.field(),
            &[vec![f]],
            &untracked,
            1,
            ring.order(),
            ring.relation_gb(),
        )?;
        let gens = syz.syzygies().into_iter().map(|mut v| v.remove(0)).collect();
        Ok(ring.ideal(gens))
    }

    /// `(I : K)`, the intersection of `(I : k)` over generators of `K`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc = self.0.ring.unit_ideal();
        for k in other.generators() {
            acc = acc.intersection(&self.colon(k)?)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        let ring = &self.0.ring;
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let order = ring.order();
        let z = Poly::zero(order);
        let mut untracked: Vec<Vector> = Vec::new();
        for g in &self.0.gens {
            untracked.push(vec![g.clone(), z.clone()]);
        }
        for g in &other.0.gens {
            untracked.push(vec![z.clone(), g.clone()]);
        }
        let one = ring.ambient().one();
        let syz = SyzygyGb::compute(
            ring.field(),
            &[vec![one.clone(), one]],
            &untracked,
            2,
            order,
            ring.relation_gb(),
        )?;
        let gens = syz.syzygies().into_iter().map(|mut v| v.remove(0)).collect();
        Ok(ring.ideal(gens))
    }

    /// `(I : f^infinity)` by iterated colons.
    pub fn saturation(&self, f: &Poly) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(f)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Dimension of `R / I`; `None` if `I` is the unit ideal.
    pub fn quotient_dimension(&self) -> Result<Option<usize>> {
        let leads: Vec<_> = self
            .preimage_gb()?
            .leading_terms()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        Ok(dimension::dimension(&leads, self.0.ring.nvars()))
    }

    /// Ring `R / I` as a new presentation.
    pub fn quotient_ring(&self) -> Result<PresentedRing> {
        let ring = &self.0.ring;
        let mut rels = ring.relations().to_vec();
        rels.extend(self.0.gens.iter().cloned());
        PresentedRing::new(ring.ambient().clone(), rels)
    }

    /// Minimal primes over the ideal, each in reduced form.
    pub fn minimal_primes(&self) -> Result<Vec<Ideal>> {
        crate::primes::minimal_primes(self)
    }

    /// Radical, as the intersection of the minimal primes.
    pub fn radical(&self) -> Result<Ideal> {
        let mut acc = self.0.ring.unit_ideal();
        for p in self.minimal_primes()? {
            acc = acc.intersection(&p)?;
        }
        Ok(acc)
    }

    /// Height of the ideal; infinite exactly for the unit ideal.
    ///
    /// Over a polynomial ring, or a quotient whose minimal primes all have
    /// the same dimension, this is `dim R - dim R/I`. Otherwise it falls
    /// back to [`Ideal::height_by_primes`].
    pub fn height(&self) -> Result<Height> {
        let Some(d) = self.quotient_dimension()? else {
            return Ok(Height::Infinite);
        };
        let ring = &self.0.ring;
        let dim = ring.krull_dimension().expect("proper ideal in a nonzero ring");
        if ring.is_polynomial_ring() {
            return Ok(Height::Finite(dim - d));
        }
        let mut equidimensional = true;
        for q in ring.minimal_primes()? {
            if q.quotient_dimension()? != Some(dim) {
                equidimensional = false;
            }
        }
        if equidimensional {
            return Ok(Height::Finite(dim - d));
        }
        self.height_by_primes()
    }

    /// Height from minimal primes: the least, over minimal primes `P` of the
    /// ideal, of the longest drop `dim R/q - dim R/P` over minimal primes
    /// `q` of the ring contained in `P`.
    pub fn height_by_primes(&self) -> Result<Height> {
        if self.is_unit()? {
            return Ok(Height::Infinite);
        }
        let ring = &self.0.ring;
        let ring_primes = ring.minimal_primes()?;
        let mut best: Option<usize> = None;
        for p in self.minimal_primes()? {
            let dp = p.quotient_dimension()?.expect("prime is proper");
            let mut hp = 0;
            for q in &ring_primes {
                if p.contains_ideal(q)? {
                    let dq = q.quotient_dimension()?.expect("prime is proper");
                    hp = hp.max(dq - dp);
                }
            }
            best = Some(best.map_or(hp, |b: usize| b.min(hp)));
        }
        Ok(Height::Finite(best.expect("proper ideal has a minimal prime")))
    }

    pub fn format(&self) -> String {
        let g: Vec<String> = self.0.gens.iter().map(|p| self.0.ring.format(p)).collect();
        format!("({})", g.join(", "))
    }
}

/// # Panics
///
/// Panics if computing either Gröbner basis exceeds the step budget; use
/// [`Ideal::equals`] to handle that case.
impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).expect("ideal comparison within budget")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}
