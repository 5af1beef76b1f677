//! Sparse multivariate polynomials with a fixed monomial order.

use std::cmp::Ordering;
use std::fmt;

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};

/// A polynomial stored as terms sorted ascending under `order`, so the
/// leading term is the last one. Coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    order: MonomialOrder,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(order: MonomialOrder) -> Self {
        Poly {
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Scalar, order: MonomialOrder) -> Self {
        Self::term(c, Monomial::one(), order)
    }

    pub fn term(c: Scalar, m: Monomial, order: MonomialOrder) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { order, terms }
    }

    pub fn var(i: usize, field: Field, order: MonomialOrder) -> Self {
        Self::term(field.one(), Monomial::var(i), order)
    }

    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>, order: MonomialOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { order, terms: out }
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.last()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.0)
    }

    #[inline]
    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.last().map(|t| &t.1)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop()
    }

    /// Field of the coefficients, if the polynomial is nonzero.
    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|(_, c)| c.field())
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|(t, _)| self.order.cmp(t, m))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut mask = [false; crate::monomial::MAX_VARS];
        for (m, _) in &self.terms {
            for v in m.support() {
                mask[v] = true;
            }
        }
        mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.order);
        }
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, mono: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.order);
        }
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, None, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, None, true)
    }

    /// `self - c * mono * other`, the elementary reduction step.
    pub fn sub_mul_term(&self, c: &Scalar, mono: &Monomial, other: &Poly) -> Poly {
        self.combine(other, Some((c, mono)), true)
    }

    fn combine(&self, other: &Poly, factor: Option<(&Scalar, &Monomial)>, negate: bool) -> Poly {
        debug_assert_eq!(self.order, other.order);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, c)| {
            let (m, c) = match factor {
                Some((f, mono)) => (m.mul(mono), c * f),
                None => (*m, c.clone()),
            };
            if negate {
                (m, -&c)
            } else {
                (m, c)
            }
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), &next_b) {
                (None, None) => break,
                (Some(_), None) => {
                    out.push(a.next().unwrap().clone());
                }
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = b.next();
                }
                (Some((ma, ca)), Some((mb, cb))) => match order.cmp(ma, mb) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        out.push(next_b.take().unwrap());
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let s = ca + cb;
                        if !s.is_zero() {
                            out.push((*ma, s));
                        }
                        a.next();
                        next_b = b.next();
                    }
                },
            }
        }
        Poly { order, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.order);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(c, m);
        }
        let mut prods = Vec::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                prods.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(prods, self.order)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let field = self.field().unwrap_or(Field::Rational);
        let mut acc = Poly::constant(field.one(), self.order);
        if self.is_zero() {
            return if e == 0 { acc } else { self.clone() };
        }
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Same polynomial sorted for a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Poly { order, terms }
    }

    /// Applies a monomial relabelling (must be injective on monomials).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect();
        terms.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        Poly {
            order: self.order,
            terms,
        }
    }

    /// Substitutes `images[i]` for variable `i`; variables past the end of
    /// `images` are left alone. The result uses the order of the images.
    pub fn substitute(&self, images: &[Poly], target: MonomialOrder) -> Poly {
        let mut acc = Poly::zero(target);
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), target);
            let mut rest = Monomial::one();
            for v in m.support() {
                let e = m.exp(v) as usize;
                if v < images.len() {
                    let powers = &mut cache[v];
                    if powers.is_empty() {
                        powers.push(Poly::constant(c.field().one(), target));
                    }
                    while powers.len() <= e {
                        let next = powers.last().unwrap().mul(&images[v]);
                        powers.push(next);
                    }
                    t = t.mul(&powers[e]);
                } else {
                    rest = rest.mul(&Monomial::var_pow(v, e as u16));
                }
            }
            if !rest.is_one() {
                t = t.mul_term(&c.field().one(), &rest);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let k = c.field().from_i64(e as i64);
            let coeff = c * &k;
            if coeff.is_zero() {
                continue;
            }
            let mut ex = *m.exponents();
            ex[v] -= 1;
            terms.push((Monomial::from_exponents(&ex), coeff));
        }
        Poly::from_terms(terms, self.order)
    }

    /// Evaluates variable `v` at the scalar `a`.
    pub fn eval_var(&self, v: usize, a: &Scalar) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut ex = *m.exponents();
                let e = ex[v];
                ex[v] = 0;
                (Monomial::from_exponents(&ex), c * &a.pow(e as u64))
            })
            .collect();
        Poly::from_terms(terms, self.order)
    }

    /// Renders using the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..crate::monomial::MAX_VARS).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for v in m.support() {
                let e = m.exp(v);
                if e == 1 {
                    factors.push(self.names[v].clone());
                } else {
                    factors.push(format!("{}^{}", self.names[v], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
