//! Trivial extensions `S = R x M_i` of a Noetherian local ring, where
//! `M_i` is the direct sum of the residue fields `k(p)` over primes of
//! height at most `i`.
//!
//! `M_i` is never built. Elements of `S` are given by their projection
//! `j(x)` to the base, localized at the distinguished maximal ideal; every
//! answer comes from a transfer rule that only looks at `j(x)`.

use cmlab_algebra::{AlgebraError, Height, Ideal, Poly, PresentedRing, Result};

use crate::grade::{localized_p_grade, Grade, GradeValue, Route};
use crate::module::Module;
use crate::sequences::{Capabilities, Exactness, ParameterVerdict, RingAdapter, WprVerdict};

pub const GRADE_TRANSFER: &str = "trivial-extension-grade-transfer";
pub const PROREGULARITY_TRANSFER: &str = "trivial-extension-proregularity-transfer";
pub const PARAMETER_TRANSFER: &str = "trivial-extension-parameter-transfer";
pub const FULL_DEPTH: &str = "trivial-extension-full-depth";
pub const NOT_CM: &str = "trivial-extension-not-cm";

#[derive(Clone, Debug)]
pub struct TrivialExtension {
    base: PresentedRing,
    maximal: Ideal,
    level: usize,
    dimension: usize,
}

impl TrivialExtension {
    /// `maximal` must generate a maximal ideal of `base`.
    pub fn new(base: PresentedRing, maximal: &[Poly], level: usize) -> Result<Self> {
        let maximal = base.ideal(maximal.iter().map(|p| base.reduce(p)).collect());
        if maximal.is_unit()? || maximal.quotient_dimension()? != Some(0) {
            return Err(AlgebraError::Invalid(format!("{maximal} is not a maximal ideal")));
        }
        let primes = maximal.minimal_primes()?;
        if primes.len() != 1 || !primes[0].equals(&maximal)? {
            return Err(AlgebraError::Invalid(format!("{maximal} is not a maximal ideal")));
        }
        let dimension = maximal.height()?.finite().unwrap_or(0);
        Ok(TrivialExtension {
            base,
            maximal,
            level,
            dimension,
        })
    }

    /// `S = R x M_(d-1)` for a local ring of dimension `d >= 1`.
    pub fn top_level(base: PresentedRing, maximal: &[Poly]) -> Result<Self> {
        let s = Self::new(base, maximal, 0)?;
        if s.dimension == 0 {
            return Err(AlgebraError::Invalid("the base must have positive dimension".into()));
        }
        let level = s.dimension - 1;
        Ok(TrivialExtension { level, ..s })
    }

    pub fn base(&self) -> &PresentedRing {
        &self.base
    }

    pub fn maximal(&self) -> &Ideal {
        &self.maximal
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `dim S = dim R_m`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn project(&self, x: &[Poly]) -> Ideal {
        self.base.ideal(x.iter().map(|p| self.base.reduce(p)).collect())
    }

    /// Minimal primes of `j(I)` inside the maximal ideal, with heights.
    fn local_primes(&self, x: &[Poly]) -> Result<Vec<(Ideal, Height)>> {
        let i = self.project(x);
        let mut out = Vec::new();
        for p in i.minimal_primes()? {
            if self.maximal.contains_ideal(&p)? {
                let h = p.height()?;
                out.push((p, h));
            }
        }
        Ok(out)
    }

    /// `ht I = ht j(I)R_m`.
    pub fn height(&self, x: &[Poly]) -> Result<Height> {
        Ok(self
            .local_primes(x)?
            .into_iter()
            .map(|(_, h)| h)
            .min()
            .unwrap_or(Height::Infinite))
    }

    /// `0` if `ht I <= i`, else `p-grade(j(I), R_m)`.
    pub fn p_grade(&self, x: &[Poly]) -> Result<GradeValue> {
        let route = Route::Model(GRADE_TRANSFER.into());
        let value = match self.height(x)? {
            Height::Infinite => Grade::Infinite,
            Height::Finite(h) if h <= self.level => Grade::Finite(0),
            Height::Finite(_) => {
                let x: Vec<Poly> = x.iter().map(|p| self.base.reduce(p)).collect();
                localized_p_grade(&self.base, &x, &Module::ring_module(&self.base), &self.maximal)?
            }
        };
        Ok(GradeValue { value, route })
    }

    /// `p-depth S`, the p-grade of the maximal ideal.
    pub fn p_depth(&self) -> Result<GradeValue> {
        let m = self.maximal.generators().to_vec();
        let mut g = self.p_grade(&m)?;
        g.route = Route::Model(FULL_DEPTH.into());
        Ok(g)
    }

    /// A prime `P` of height at most the level containing `j(I)`: the
    /// element `(0, e_P)` of `S` then kills `I`.
    pub fn annihilating_prime(&self, x: &[Poly]) -> Result<Option<Ideal>> {
        Ok(self
            .local_primes(x)?
            .into_iter()
            .find(|(_, h)| h.finite().is_some_and(|h| h <= self.level))
            .map(|(p, _)| p))
    }
}

impl RingAdapter for TrivialExtension {
    type Elem = Poly;

    fn describe(&self) -> String {
        format!("trivext({} at {}, level={})", self.base, self.maximal, self.level)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            membership: Exactness::Exact,
            colon: Exactness::Unavailable,
            height: Exactness::Exact,
            minimal_primes: Exactness::Exact,
            koszul_vanishing: Exactness::Exact,
            top_cech: Exactness::Exact,
            properness: Exactness::Exact,
            noetherian: false,
        }
    }

    fn format(&self, x: &Poly) -> String {
        self.base.format(x)
    }

    fn normalize(&self, x: &Poly) -> Poly {
        self.base.reduce(x)
    }

    fn is_proper(&self, x: &[Poly]) -> Result<bool> {
        self.maximal.contains_ideal(&self.project(x))
    }

    fn height(&self, x: &[Poly]) -> Result<Height> {
        TrivialExtension::height(self, x)
    }

    fn p_grade(&self, x: &[Poly]) -> Result<GradeValue> {
        TrivialExtension::p_grade(self, x)
    }

    fn violation_tag(&self) -> Option<String> {
        Some(NOT_CM.into())
    }

    fn grade_witness(&self, x: &[Poly]) -> Result<Option<String>> {
        Ok(self.annihilating_prime(x)?.map(|p| {
            format!(
                "(0, e) with e the unit of k(P), P = {p} of height at most {}, kills the ideal",
                self.level
            )
        }))
    }

    fn proregularity_rule(&self, _x: &[Poly]) -> Result<Option<WprVerdict>> {
        Ok(Some(WprVerdict::CertifiedByModel {
            tag: PROREGULARITY_TRANSFER.into(),
            detail: "j(x) lies in a Noetherian ring".into(),
        }))
    }

    fn parameter_rule(&self, x: &[Poly]) -> Result<Option<ParameterVerdict>> {
        let h = self.height(x)?;
        let l = x.len();
        Ok(Some(ParameterVerdict::new(
            h == Height::Finite(l),
            format!("j(x) has local height {h}, length {l}"),
            PARAMETER_TRANSFER,
        )))
    }
}
