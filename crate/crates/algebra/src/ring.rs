//! Polynomial rings: a coefficient field, named variables and an order.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

#[derive(Debug, PartialEq, Eq, Hash)]
struct PolyRingInner {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

/// `k[x_0, ..., x_{n-1}]` with a fixed monomial order. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyRing(Arc<PolyRingInner>);

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, names: &[S], order: MonomialOrder) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(AlgebraError::GuardExceeded(format!(
                "{} variables (at most {MAX_VARS} supported)",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::Invalid(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::Invalid(format!("duplicate variable {n}")));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > names.len() {
                return Err(AlgebraError::Invalid("block split past last variable".into()));
            }
        }
        Ok(PolyRing(Arc::new(PolyRingInner { field, names, order })))
    }

    /// Graded-reverse-lex ring, the default.
    pub fn grevlex<S: AsRef<str>>(field: Field, names: &[S]) -> Result<Self> {
        Self::new(field, names, MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        PolyRing::new(self.field(), self.names(), order)
    }

    /// Ring with `extra` variables appended after the existing ones.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> Result<PolyRing> {
        let mut names = self.names().to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        PolyRing::new(self.field(), &names, order)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.order())
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.field().one(), self.order())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(c, self.order())
    }

    pub fn from_i64(&self, n: i64) -> Poly {
        self.constant(self.field().from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars(), "variable index out of range");
        Poly::var(i, self.field(), self.order())
    }

    pub fn var_named(&self, name: &str) -> Result<Poly> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| AlgebraError::Invalid(format!("unknown variable {name}")))
    }

    pub fn monomial(&self, m: Monomial) -> Poly {
        Poly::term(self.field().one(), m, self.order())
    }

    /// Moves a polynomial from another ring with the same variable prefix.
    pub fn import(&self, p: &Poly) -> Poly {
        p.with_order(self.order())
    }

    pub fn format(&self, p: &Poly) -> String {
        p.display(self.names()).to_string()
    }

    /// Parses an element in infix syntax.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(self, text)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.names().join(","))
    }
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ({:?})", self.order())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
