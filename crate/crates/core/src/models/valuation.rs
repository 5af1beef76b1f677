//! A rank-2 valuation domain realized inside `QQ(u, w)`.
//!
//! `v(f) = (ord_u f, ord_w r)` where `r` is the coefficient of the lowest
//! power of `u`, compared lexicographically. `V = {f : v(f) >= (0, 0)}` has
//! primes `0 < P < m` with `P = {ord_u >= 1}`; `u` lies in `P` and `w` in
//! `m` outside `P`.

use std::fmt;

use cmlab_algebra::{AlgebraError, Field, Height, Poly, PolyRing, Result};

use crate::grade::{Grade, GradeValue, Route};
use crate::sequences::{Capabilities, Exactness, ParameterVerdict, RingAdapter, StepOutcome, WprVerdict};

pub const PAIR_PROREGULARITY: &str = "valuation-pair-proregularity";
pub const PRINCIPAL_TOP_CECH: &str = "valuation-principal-top-cech";
pub const PRINCIPAL_IDEALS: &str = "valuation-principal-ideals";

/// A value in `Z x Z`, ordered lexicographically.
pub type Value = (i64, i64);

fn value_of_poly(p: &Poly) -> Value {
    let mut best: Option<Value> = None;
    for (m, _) in p.terms() {
        let v = (m.exp(0) as i64, m.exp(1) as i64);
        if best.is_none_or(|b| v < b) {
            best = Some(v);
        }
    }
    best.expect("nonzero polynomial")
}

/// A rational function `num / den` in `u, w`.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ValuationModel {
    ring: PolyRing,
}

impl Default for ValuationModel {
    fn default() -> Self {
        Self::new()
    }
}

impl ValuationModel {
    pub fn new() -> Self {
        let ring = PolyRing::grevlex(Field::Rational, &["u", "w"]).expect("two variables");
        ValuationModel { ring }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn poly(&self, p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: self.ring.one(),
        }
    }

    pub fn u(&self) -> RatFn {
        self.poly(self.ring.var(0))
    }

    pub fn w(&self) -> RatFn {
        self.poly(self.ring.var(1))
    }

    pub fn one(&self) -> RatFn {
        self.poly(self.ring.one())
    }

    /// Parses `p` or `p / q` with `p, q` polynomials in `u, w`; each side
    /// may be parenthesized.
    pub fn parse(&self, text: &str) -> Result<RatFn> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        // Division by a constant stays inside the polynomial grammar.
        if let Some(i) = split {
            let den = self.ring.parse(&text[i + 1..])?;
            if !den.is_constant() {
                let num = self.ring.parse(&text[..i])?;
                return self.quotient(&self.poly(num), &self.poly(den));
            }
        }
        Ok(self.poly(self.ring.parse(text)?))
    }

    pub fn format(&self, f: &RatFn) -> String {
        if f.den.is_one() {
            return self.ring.format(&f.num);
        }
        let wrap = |p: &Poly| {
            let s = self.ring.format(p);
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&f.num), wrap(&f.den))
    }

    pub fn value(&self, f: &RatFn) -> Result<Value> {
        if f.is_zero() {
            return Err(AlgebraError::Invalid("the zero element has no value".into()));
        }
        let (a, b) = (value_of_poly(&f.num), value_of_poly(&f.den));
        Ok((a.0 - b.0, a.1 - b.1))
    }

    /// `f` lies in `V`.
    pub fn member(&self, f: &RatFn) -> bool {
        f.is_zero() || self.value(f).is_ok_and(|v| v >= (0, 0))
    }

    pub fn is_unit(&self, f: &RatFn) -> bool {
        self.value(f).is_ok_and(|v| v == (0, 0))
    }

    pub fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        RatFn {
            num: a.num.mul(&b.num),
            den: a.den.mul(&b.den),
        }
    }

    pub fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.den == b.den {
            return RatFn {
                num: a.num.add(&b.num),
                den: a.den.clone(),
            };
        }
        RatFn {
            num: a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            den: a.den.mul(&b.den),
        }
    }

    pub fn neg(&self, a: &RatFn) -> RatFn {
        RatFn {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    pub fn quotient(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFn {
            num: a.num.mul(&b.den),
            den: a.den.mul(&b.num),
        })
    }

    pub fn pow(&self, a: &RatFn, e: u32) -> RatFn {
        RatFn {
            num: a.num.pow(e),
            den: a.den.pow(e),
        }
    }

    pub fn equal(&self, a: &RatFn, b: &RatFn) -> bool {
        a.num.mul(&b.den) == b.num.mul(&a.den)
    }

    /// `b` divides `a` in `V`.
    pub fn divides(&self, b: &RatFn, a: &RatFn) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        if b.is_zero() {
            return Ok(false);
        }
        Ok(self.value(b)? <= self.value(a)?)
    }

    /// A generator of `(x)V`: an element of least value, or `None` for
    /// the zero ideal.
    pub fn ideal_generator(&self, x: &[RatFn]) -> Result<Option<RatFn>> {
        let mut best: Option<(Value, &RatFn)> = None;
        for f in x.iter().filter(|f| !f.is_zero()) {
            let v = self.value(f)?;
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, f));
            }
        }
        Ok(best.map(|(_, f)| f.clone()))
    }

    fn check_members(&self, x: &[RatFn]) -> Result<()> {
        for f in x {
            if !self.member(f) {
                return Err(AlgebraError::Invalid(format!("{} is not in V", self.format(f))));
            }
        }
        Ok(())
    }

    /// Verifies the proregularity and parameter claims for `(u, w)` at
    /// levels `1..=n_max`.
    pub fn example_pair(&self, n_max: usize) -> Result<PairCertificate> {
        self.pair_certificate(&self.u(), &self.w(), n_max)
    }

    /// Certificates for a pair `f, g` of nonzero nonunits with
    /// `v(f) >= v(g)`.
    pub fn pair_certificate(&self, f: &RatFn, g: &RatFn, n_max: usize) -> Result<PairCertificate> {
        if n_max == 0 {
            return Err(AlgebraError::Invalid("n_max must be at least 1".into()));
        }
        self.check_members(&[f.clone(), g.clone()])?;
        let (vf, vg) = (self.value(f)?, self.value(g)?);
        if vf < vg {
            return Err(AlgebraError::Invalid("expected v(f) >= v(g)".into()));
        }
        // (f, g)V = gV because f / g lies in V.
        let q = self.quotient(f, g)?;
        let q_value = self.value(&q)?;
        let principal = self.member(&q);

        let mut levels = Vec::with_capacity(n_max);
        for n in 1..=n_max as u32 {
            let m = 2 * n;
            let (fm, gm) = (self.pow(f, m), self.pow(g, m));
            // In a domain H_2 vanishes as soon as f^n != 0.
            let h2_vanishes = !self.pow(f, n).is_zero();
            // Cycles of K(f^m, g^m) are V (1, -q^m).
            let z = (self.one(), self.neg(&self.pow(&q, m)));
            let relation = self.add(&self.mul(&z.0, &fm), &self.mul(&z.1, &gm));
            let cycle_checks = relation.is_zero() && self.member(&z.1);
            // Image under the power map, and the boundary a (g^n, -f^n).
            let image = (self.mul(&z.0, &self.pow(f, m - n)), self.mul(&z.1, &self.pow(g, m - n)));
            let a = self.quotient(&self.pow(f, m - n), &self.pow(g, n))?;
            let boundary = (self.mul(&a, &self.pow(g, n)), self.neg(&self.mul(&a, &self.pow(f, n))));
            let identity = self.equal(&image.0, &boundary.0) && self.equal(&image.1, &boundary.1);
            levels.push(PairLevel {
                n: n as usize,
                m: m as usize,
                h2_vanishes,
                cycle_checks,
                coefficient: self.format(&a),
                coefficient_value: self.value(&a)?,
                coefficient_in_v: self.member(&a),
                boundary_identity: identity,
            });
        }
        let height = self.height_of(&[f.clone(), g.clone()])?;
        Ok(PairCertificate {
            f: self.format(f),
            g: self.format(g),
            values: (vf, vg),
            quotient: self.format(&q),
            quotient_value: q_value,
            principal,
            levels,
            height,
        })
    }

    fn height_of(&self, x: &[RatFn]) -> Result<Height> {
        Ok(match self.ideal_generator(x)? {
            None => Height::Finite(0),
            Some(g) => match self.value(&g)? {
                (0, 0) => Height::Infinite,
                (a, _) if a >= 1 => Height::Finite(1),
                _ => Height::Finite(2),
            },
        })
    }
}

/// One level `n` of the pair certificate, with `m = 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairLevel {
    pub n: usize,
    pub m: usize,
    pub h2_vanishes: bool,
    /// `(1, -(f/g)^m)` is a cycle with entries in `V`.
    pub cycle_checks: bool,
    /// `a = f^(m-n) / g^n`.
    pub coefficient: String,
    pub coefficient_value: Value,
    pub coefficient_in_v: bool,
    /// The image of the cycle equals `a (g^n, -f^n)`.
    pub boundary_identity: bool,
}

impl PairLevel {
    pub fn holds(&self) -> bool {
        self.h2_vanishes && self.cycle_checks && self.coefficient_in_v && self.boundary_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub f: String,
    pub g: String,
    pub values: (Value, Value),
    pub quotient: String,
    pub quotient_value: Value,
    /// `(f, g)V = gV`, so the top Čech module vanishes.
    pub principal: bool,
    pub levels: Vec<PairLevel>,
    pub height: Height,
}

impl PairCertificate {
    pub fn weakly_proregular(&self) -> bool {
        self.levels.iter().all(PairLevel::holds)
    }

    pub fn parameter(&self) -> bool {
        !self.principal
    }
}

impl fmt::Display for PairCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): height {}, {} / {} = {} in V: {}",
            self.f, self.g, self.height, self.f, self.g, self.quotient, self.principal
        )
    }
}

impl RingAdapter for ValuationModel {
    type Elem = RatFn;

    fn describe(&self) -> String {
        "valuation(rank=2)".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            membership: Exactness::Exact,
            colon: Exactness::Exact,
            height: Exactness::Exact,
            minimal_primes: Exactness::Exact,
            koszul_vanishing: Exactness::Exact,
            top_cech: Exactness::Exact,
            properness: Exactness::Exact,
            noetherian: false,
        }
    }

    fn format(&self, x: &RatFn) -> String {
        ValuationModel::format(self, x)
    }

    fn is_proper(&self, x: &[RatFn]) -> Result<bool> {
        self.check_members(x)?;
        Ok(!self.ideal_generator(x)?.is_some_and(|g| self.is_unit(&g)))
    }

    fn height(&self, x: &[RatFn]) -> Result<Height> {
        self.check_members(x)?;
        self.height_of(x)
    }

    /// Nonzero proper finitely generated ideals are principal with a
    /// non-zero-divisor generator, so their p-grade is 1.
    fn p_grade(&self, x: &[RatFn]) -> Result<GradeValue> {
        let value = match self.height(x)? {
            Height::Infinite => Grade::Infinite,
            Height::Finite(0) => Grade::Finite(0),
            Height::Finite(_) => Grade::Finite(1),
        };
        Ok(GradeValue {
            value,
            route: Route::Model(PRINCIPAL_IDEALS.into()),
        })
    }

    fn proregularity_rule(&self, x: &[RatFn]) -> Result<Option<WprVerdict>> {
        self.check_members(x)?;
        match x {
            [] | [_] => Ok(Some(WprVerdict::CertifiedByModel {
                tag: PAIR_PROREGULARITY.into(),
                detail: "V is a domain".into(),
            })),
            [f, g] => {
                let nonzero = !f.is_zero() && !g.is_zero();
                if !nonzero {
                    return Ok(Some(WprVerdict::CertifiedByModel {
                        tag: PAIR_PROREGULARITY.into(),
                        detail: "a zero entry reduces to one element of a domain".into(),
                    }));
                }
                let (f, g) = if self.value(f)? >= self.value(g)? {
                    (f, g)
                } else {
                    (g, f)
                };
                let cert = self.pair_certificate(f, g, 2)?;
                if !cert.weakly_proregular() {
                    return Err(AlgebraError::Invalid("pair certificate failed to check".into()));
                }
                Ok(Some(WprVerdict::CertifiedByModel {
                    tag: PAIR_PROREGULARITY.into(),
                    detail: format!(
                        "H_1(x^(2n)) -> H_1(x^n) lands in boundaries a (g^n, -f^n), a = {}",
                        cert.levels[0].coefficient
                    ),
                }))
            }
            _ => Err(AlgebraError::Unsupported(
                "the valuation model certifies sequences of length at most two".into(),
            )),
        }
    }

    fn parameter_rule(&self, x: &[RatFn]) -> Result<Option<ParameterVerdict>> {
        self.check_members(x)?;
        if x.len() < 2 {
            return Ok(None);
        }
        let g = self.ideal_generator(x)?;
        let g = g.map(|g| self.format(&g)).unwrap_or_else(|| "0".into());
        Ok(Some(ParameterVerdict::new(
            false,
            format!("(x)V = ({g})V is principal, so the top Čech module vanishes"),
            PRINCIPAL_TOP_CECH,
        )))
    }

    fn annihilator_stabilizes(&self, _x: &RatFn, _bound: usize) -> Result<Option<Option<usize>>> {
        // A domain: every annihilator is zero.
        Ok(Some(Some(1)))
    }

    fn regular_step(&self, prefix: &[RatFn], next: &RatFn) -> Result<Option<StepOutcome>> {
        self.check_members(prefix)?;
        self.check_members(std::slice::from_ref(next))?;
        let g = self.ideal_generator(prefix)?;
        let outcome = match g {
            None if next.is_zero() => StepOutcome {
                passes: false,
                witness: Some("1".into()),
            },
            None => StepOutcome {
                passes: true,
                witness: None,
            },
            Some(_) if self.is_unit(next) => StepOutcome {
                passes: true,
                witness: None,
            },
            Some(g) => {
                // (gV : f) is gV exactly when f is a unit; otherwise g / f
                // (or 1, when f lies in gV) is in the colon but not in gV.
                let witness = match self.value(next) {
                    Ok(vf) if vf <= self.value(&g)? => self.quotient(&g, next)?,
                    _ => self.one(),
                };
                StepOutcome {
                    passes: false,
                    witness: Some(self.format(&witness)),
                }
            }
        };
        Ok(Some(outcome))
    }
}
