//! Verdicts on finite sequences: weak proregularity, parameter and strong
//! parameter sequences, regular sequences, Cohen-Macaulay pool checks, the
//! unmixedness probe and the locality reduction.
//!
//! Rings are reached through [`RingAdapter`], implemented here for
//! presented affine algebras and in `models` for the non-Noetherian
//! examples.

use std::fmt;

use cmlab_algebra::{AlgebraError, Height, Ideal, Poly, PresentedRing, Result};

use crate::complexes::{induced_zero_on_homology, HomologyCertificate, KoszulComplex};
use crate::grade::{koszul_grade, Grade, GradeValue};
use crate::module::Module;

/// Default search bound for the proregularity levels `m, n`.
pub const DEFAULT_WPR_BOUND: usize = 8;

/// Citation tags naming the facts a verdict relies on.
pub mod tags {
    pub const EMPTY_SEQUENCE: &str = "empty-sequence-convention";
    pub const IMPROPER: &str = "parameter-requires-proper-ideal";
    pub const NOETHERIAN_PROREGULAR: &str = "noetherian-proregularity";
    pub const NOETHERIAN_PARAMETER: &str = "noetherian-parameter-height";
    pub const SINGLE_PARAMETER: &str = "single-parameter-colon";
    pub const PROREGULAR_SEARCH: &str = "koszul-power-map-search";
    pub const REGULAR_COLON: &str = "regular-colon-steps";
    pub const GRADE_PREFIX_REGULAR: &str = "grade-prefix-regularity";
    pub const CM_BY_GRADE: &str = "cm-via-p-grade";
    pub const CM_DIMENSION_ZERO: &str = "dimension-zero-cm";
}

/// How far an adapter's answer to a query can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// Decided by a search that may stop at a bound.
    Bounded,
    Unavailable,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::Bounded => "bounded",
            Exactness::Unavailable => "unavailable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub membership: Exactness,
    pub colon: Exactness,
    pub height: Exactness,
    pub minimal_primes: Exactness,
    pub koszul_vanishing: Exactness,
    pub top_cech: Exactness,
    pub properness: Exactness,
    pub noetherian: bool,
}

/// One regularity step `((x_1..x_{i-1}) : x_i) = (x_1..x_{i-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub passes: bool,
    /// An element of the colon outside the prefix ideal, when it fails.
    pub witness: Option<String>,
}

/// A ring that sequence verdicts can be asked about.
///
/// Default methods report the capability as unavailable.
pub trait RingAdapter: Sync {
    type Elem: Clone + Send + Sync;

    fn describe(&self) -> String;
    fn capabilities(&self) -> Capabilities;
    fn format(&self, x: &Self::Elem) -> String;

    /// Normal form of an element.
    fn normalize(&self, x: &Self::Elem) -> Self::Elem {
        x.clone()
    }

    /// `(x)R != R`.
    fn is_proper(&self, x: &[Self::Elem]) -> Result<bool>;

    /// Height of `(x)R`; infinite exactly for the unit ideal.
    fn height(&self, x: &[Self::Elem]) -> Result<Height>;

    fn p_grade(&self, x: &[Self::Elem]) -> Result<GradeValue>;

    /// A description of why the p-grade is not larger, if one exists.
    fn grade_witness(&self, _x: &[Self::Elem]) -> Result<Option<String>> {
        Ok(None)
    }

    /// A model rule for proregularity, when the model has one.
    fn proregularity_rule(&self, _x: &[Self::Elem]) -> Result<Option<WprVerdict>> {
        Ok(None)
    }

    /// A model transfer rule for the parameter property.
    fn parameter_rule(&self, _x: &[Self::Elem]) -> Result<Option<ParameterVerdict>> {
        Ok(None)
    }

    /// Whether `H_i(x^m) -> H_i(x^n)` is zero, if computable.
    fn induced_zero(&self, _x: &[Self::Elem], _m: u32, _n: u32, _i: usize) -> Result<Option<bool>> {
        Ok(None)
    }

    /// Least `n <= bound` with `(0 : x^n) = (0 : x^(n+1))`, if computable.
    /// `Ok(Some(None))` means no such `n` up to the bound.
    fn annihilator_stabilizes(&self, _x: &Self::Elem, _bound: usize) -> Result<Option<Option<usize>>> {
        Ok(None)
    }

    /// The tag a model attaches to a Cohen-Macaulay violation.
    fn violation_tag(&self) -> Option<String> {
        None
    }

    /// One colon step of the regular-sequence test, if computable.
    fn regular_step(&self, _prefix: &[Self::Elem], _next: &Self::Elem) -> Result<Option<StepOutcome>> {
        Ok(None)
    }
}

/// A finite sequence in an adapter's ring, stored in normal form.
pub struct Sequence<'a, A: RingAdapter> {
    adapter: &'a A,
    elems: Vec<A::Elem>,
}

impl<'a, A: RingAdapter> Sequence<'a, A> {
    pub fn new(adapter: &'a A, elems: &[A::Elem]) -> Self {
        let elems = elems.iter().map(|x| adapter.normalize(x)).collect();
        Sequence { adapter, elems }
    }

    pub fn adapter(&self) -> &'a A {
        self.adapter
    }

    pub fn elements(&self) -> &[A::Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `x_1, ..., x_i`.
    pub fn prefix(&self, i: usize) -> Sequence<'a, A> {
        Sequence {
            adapter: self.adapter,
            elems: self.elems[..i].to_vec(),
        }
    }

    /// `x'`: the sequence without its last element.
    pub fn truncated(&self) -> Sequence<'a, A> {
        self.prefix(self.len().saturating_sub(1))
    }

    pub fn formatted(&self) -> Vec<String> {
        self.elems.iter().map(|x| self.adapter.format(x)).collect()
    }
}

/// The search result at one level `n`: the least `m` found, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WprVerdict {
    CertifiedNoetherian,
    /// Search results up to the bound; not a proof either way.
    VerifiedUpToBound {
        bound: usize,
        frontier: Vec<Level>,
    },
    /// The maps into level `n` are nonzero for every `m`.
    Counterexample {
        n: usize,
        tag: String,
        detail: String,
    },
    CertifiedByModel {
        tag: String,
        detail: String,
    },
}

impl WprVerdict {
    /// `Some(true)`/`Some(false)` for certified answers, `None` for a
    /// bounded search.
    pub fn decided(&self) -> Option<bool> {
        match self {
            WprVerdict::CertifiedNoetherian | WprVerdict::CertifiedByModel { .. } => Some(true),
            WprVerdict::Counterexample { .. } => Some(false),
            WprVerdict::VerifiedUpToBound { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            WprVerdict::CertifiedNoetherian => "certified-noetherian",
            WprVerdict::VerifiedUpToBound { .. } => "verified-up-to-bound",
            WprVerdict::Counterexample { .. } => "counterexample",
            WprVerdict::CertifiedByModel { .. } => "certified-by-model",
        }
    }
}

pub fn is_weakly_proregular<A: RingAdapter>(x: &Sequence<A>, bound: usize) -> Result<WprVerdict> {
    let a = x.adapter();
    if a.capabilities().noetherian {
        return Ok(WprVerdict::CertifiedNoetherian);
    }
    if let Some(v) = a.proregularity_rule(x.elements())? {
        return Ok(v);
    }
    proregularity_search(x, bound)
}

/// For each `n <= bound`, the least `n < m <= bound` such that every map
/// `H_i(x^m) -> H_i(x^n)`, `i >= 1`, is zero.
pub fn proregularity_search<A: RingAdapter>(x: &Sequence<A>, bound: usize) -> Result<WprVerdict> {
    let a = x.adapter();
    let mut frontier = Vec::new();
    for n in 1..=bound {
        let mut found = None;
        for m in n + 1..=bound {
            let mut all = true;
            for i in 1..=x.len() {
                match a.induced_zero(x.elements(), m as u32, n as u32, i)? {
                    Some(true) => {}
                    Some(false) => {
                        all = false;
                        break;
                    }
                    None => {
                        return Err(AlgebraError::Unsupported(format!(
                            "{} cannot compute Koszul power maps",
                            a.describe()
                        )))
                    }
                }
            }
            if all {
                found = Some(m);
                break;
            }
        }
        frontier.push(Level { n, m: found });
    }
    Ok(WprVerdict::VerifiedUpToBound { bound, frontier })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterVerdict {
    pub holds: bool,
    pub reason: String,
    pub tag: String,
}

impl ParameterVerdict {
    pub fn new(holds: bool, reason: impl Into<String>, tag: &str) -> Self {
        ParameterVerdict {
            holds,
            reason: reason.into(),
            tag: tag.to_string(),
        }
    }
}

pub fn is_parameter_sequence<A: RingAdapter>(x: &Sequence<A>) -> Result<ParameterVerdict> {
    let a = x.adapter();
    let l = x.len();
    if l == 0 {
        return Ok(ParameterVerdict::new(true, "empty sequence", tags::EMPTY_SEQUENCE));
    }
    if !a.is_proper(x.elements())? {
        return Ok(ParameterVerdict::new(false, "improper", tags::IMPROPER));
    }
    if a.capabilities().noetherian {
        let h = a.height(x.elements())?;
        let holds = h == Height::Finite(l);
        return Ok(ParameterVerdict::new(
            holds,
            format!("height {h}, length {l}"),
            tags::NOETHERIAN_PARAMETER,
        ));
    }
    if let Some(v) = a.parameter_rule(x.elements())? {
        return Ok(v);
    }
    if l == 1 {
        if let Some(v) = parameter_by_colon(x, DEFAULT_WPR_BOUND)? {
            return Ok(v);
        }
    }
    Err(AlgebraError::Unsupported(format!(
        "no parameter rule for sequences of length {l} on {}",
        a.describe()
    )))
}

/// The single-element test: `ht xR >= 1` and `(0 : x^n) = (0 : x^(n+1))`
/// for some `n`. `None` when the adapter lacks colons or the chain does
/// not settle within the bound.
pub fn parameter_by_colon<A: RingAdapter>(x: &Sequence<A>, bound: usize) -> Result<Option<ParameterVerdict>> {
    let a = x.adapter();
    let [e] = x.elements() else {
        return Err(AlgebraError::Invalid("the colon test takes one element".into()));
    };
    if !a.is_proper(x.elements())? {
        return Ok(Some(ParameterVerdict::new(false, "improper", tags::IMPROPER)));
    }
    let h = a.height(x.elements())?;
    if h == Height::Finite(0) {
        return Ok(Some(ParameterVerdict::new(
            false,
            "height 0: the element lies in a minimal prime",
            tags::SINGLE_PARAMETER,
        )));
    }
    match a.annihilator_stabilizes(e, bound)? {
        Some(Some(n)) => Ok(Some(ParameterVerdict::new(
            true,
            format!("height {h}, annihilators stable from n = {n}"),
            tags::SINGLE_PARAMETER,
        ))),
        _ => Ok(None),
    }
}

/// Per-prefix decisions: `holds[i]` is the verdict on `x_1..x_(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongParameterTrace {
    pub holds: bool,
    pub prefixes: Vec<ParameterVerdict>,
}

pub fn is_strong_parameter_sequence<A: RingAdapter>(x: &Sequence<A>) -> Result<StrongParameterTrace> {
    let mut prefixes = Vec::with_capacity(x.len());
    for i in 1..=x.len() {
        prefixes.push(is_parameter_sequence(&x.prefix(i))?);
    }
    Ok(StrongParameterTrace {
        holds: prefixes.iter().all(|v| v.holds),
        prefixes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularOutcome {
    Regular,
    /// Every colon step passes but `(x)M = M`.
    PossiblyImproper,
    /// Step `step` (1-based) fails.
    FailsAt {
        step: usize,
        witness: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularVerdict {
    pub outcome: RegularOutcome,
    pub tag: String,
}

impl RegularVerdict {
    pub fn is_regular(&self) -> bool {
        self.outcome == RegularOutcome::Regular
    }
}

/// Regular-sequence test on the ring itself, by colon steps when the
/// adapter has them and otherwise by `p-grade(x_1..x_i) = i` for all `i`.
pub fn is_regular_sequence<A: RingAdapter>(x: &Sequence<A>) -> Result<RegularVerdict> {
    let a = x.adapter();
    let elems = x.elements();
    let mut by_colon = true;
    for i in 0..elems.len() {
        match a.regular_step(&elems[..i], &elems[i])? {
            Some(s) if s.passes => {}
            Some(s) => {
                return Ok(RegularVerdict {
                    outcome: RegularOutcome::FailsAt {
                        step: i + 1,
                        witness: s.witness,
                    },
                    tag: tags::REGULAR_COLON.into(),
                })
            }
            None => {
                by_colon = false;
                break;
            }
        }
    }
    if by_colon {
        let outcome = if a.is_proper(elems)? {
            RegularOutcome::Regular
        } else {
            RegularOutcome::PossiblyImproper
        };
        return Ok(RegularVerdict {
            outcome,
            tag: tags::REGULAR_COLON.into(),
        });
    }
    // A proper sequence is regular iff every prefix has full p-grade.
    for i in 1..=elems.len() {
        let g = a.p_grade(&elems[..i])?;
        if g.value == Grade::Infinite {
            return Ok(RegularVerdict {
                outcome: RegularOutcome::PossiblyImproper,
                tag: tags::GRADE_PREFIX_REGULAR.into(),
            });
        }
        if g.value != Grade::Finite(i) {
            return Ok(RegularVerdict {
                outcome: RegularOutcome::FailsAt {
                    step: i,
                    witness: a.grade_witness(&elems[..i])?,
                },
                tag: format!("{} ({})", tags::GRADE_PREFIX_REGULAR, g.route),
            });
        }
    }
    Ok(RegularVerdict {
        outcome: RegularOutcome::Regular,
        tag: tags::GRADE_PREFIX_REGULAR.into(),
    })
}

/// Verdicts on one prefix `x_1..x_i`.
#[derive(Clone, Debug)]
pub struct PrefixReport {
    pub length: usize,
    pub weakly_proregular: WprVerdict,
    pub parameter: ParameterVerdict,
    pub height: Height,
    pub p_grade: GradeValue,
}

#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub ring: String,
    pub elements: Vec<String>,
    pub prefixes: Vec<PrefixReport>,
    pub strong_parameter: bool,
    pub regular: RegularVerdict,
}

impl SequenceReport {
    pub fn is_regular_sequence(&self) -> bool {
        self.regular.is_regular()
    }

    /// The verdict on the whole sequence.
    pub fn full(&self) -> Option<&PrefixReport> {
        self.prefixes.last()
    }
}

pub fn sequence_report<A: RingAdapter>(x: &Sequence<A>, bound: usize) -> Result<SequenceReport> {
    let a = x.adapter();
    let mut prefixes = Vec::with_capacity(x.len());
    for i in 1..=x.len() {
        let p = x.prefix(i);
        prefixes.push(PrefixReport {
            length: i,
            weakly_proregular: is_weakly_proregular(&p, bound)?,
            parameter: is_parameter_sequence(&p)?,
            height: a.height(p.elements())?,
            p_grade: a.p_grade(p.elements())?,
        });
    }
    Ok(SequenceReport {
        ring: a.describe(),
        elements: x.formatted(),
        strong_parameter: prefixes.iter().all(|p| p.parameter.holds),
        regular: is_regular_sequence(x)?,
        prefixes,
    })
}

/// One pool entry of a Cohen-Macaulay check.
#[derive(Clone, Debug)]
pub struct CmEntry {
    pub elements: Vec<String>,
    pub strong_parameter: bool,
    /// Why the entry was not examined further.
    pub skipped: Option<String>,
    pub p_grade: Option<GradeValue>,
    pub regular: Option<bool>,
    /// The first prefix whose parameter verdict failed, with its reason.
    pub failed_prefix: Option<(usize, ParameterVerdict)>,
}

#[derive(Clone, Debug)]
pub enum CmOutcome {
    /// A strong parameter sequence with p-grade below its length.
    ViolationFound {
        index: usize,
        elements: Vec<String>,
        p_grade: GradeValue,
        witness: Option<String>,
    },
    /// Only the pool was examined; this is not a proof of the property.
    NoViolationWithinPool,
}

#[derive(Clone, Debug)]
pub struct CmVerdict {
    pub outcome: CmOutcome,
    pub entries: Vec<CmEntry>,
    pub tag: String,
}

impl CmVerdict {
    pub fn violation_found(&self) -> bool {
        matches!(self.outcome, CmOutcome::ViolationFound { .. })
    }
}

/// Looks for a strong parameter sequence in `pool` whose p-grade is below
/// its length. Every entry is examined; the first violation is reported.
pub fn cohen_macaulay_verdict<A: RingAdapter>(adapter: &A, pool: &[Vec<A::Elem>]) -> Result<CmVerdict> {
    let mut entries = Vec::with_capacity(pool.len());
    let mut violation = None;
    for (index, elems) in pool.iter().enumerate() {
        let x = Sequence::new(adapter, elems);
        let trace = is_strong_parameter_sequence(&x)?;
        let failed_prefix = trace
            .prefixes
            .iter()
            .position(|v| !v.holds)
            .map(|i| (i + 1, trace.prefixes[i].clone()));
        if !trace.holds {
            entries.push(CmEntry {
                elements: x.formatted(),
                strong_parameter: false,
                skipped: failed_prefix.as_ref().map(|(i, v)| format!("prefix {i}: {}", v.reason)),
                p_grade: None,
                regular: None,
                failed_prefix,
            });
            continue;
        }
        let g = adapter.p_grade(x.elements())?;
        let regular = is_regular_sequence(&x)?.is_regular();
        if g.value != Grade::Finite(x.len()) && violation.is_none() {
            violation = Some(CmOutcome::ViolationFound {
                index,
                elements: x.formatted(),
                p_grade: g.clone(),
                witness: adapter.grade_witness(x.elements())?,
            });
        }
        entries.push(CmEntry {
            elements: x.formatted(),
            strong_parameter: true,
            skipped: None,
            p_grade: Some(g),
            regular: Some(regular),
            failed_prefix: None,
        });
    }
    let all_vacuous = entries.iter().all(|e| !e.strong_parameter || e.elements.is_empty());
    let tag = match adapter.violation_tag() {
        Some(t) if violation.is_some() => t,
        _ if violation.is_none() && all_vacuous && adapter.capabilities().noetherian => tags::CM_DIMENSION_ZERO.into(),
        _ => tags::CM_BY_GRADE.into(),
    };
    Ok(CmVerdict {
        outcome: violation.unwrap_or(CmOutcome::NoViolationWithinPool),
        entries,
        tag,
    })
}

/// A presented affine algebra as a Noetherian adapter.
#[derive(Clone, Debug)]
pub struct AffineRing {
    ring: PresentedRing,
}

impl AffineRing {
    pub fn new(ring: PresentedRing) -> Self {
        AffineRing { ring }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    fn ideal(&self, x: &[Poly]) -> Ideal {
        self.ring.ideal(x.to_vec())
    }
}

impl RingAdapter for AffineRing {
    type Elem = Poly;

    fn describe(&self) -> String {
        self.ring.to_string()
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
            noetherian: true,
        }
    }

    fn format(&self, x: &Poly) -> String {
        self.ring.format(x)
    }

    fn normalize(&self, x: &Poly) -> Poly {
        self.ring.reduce(x)
    }

    fn is_proper(&self, x: &[Poly]) -> Result<bool> {
        Ok(!self.ideal(x).is_unit()?)
    }

    fn height(&self, x: &[Poly]) -> Result<Height> {
        self.ideal(x).height()
    }

    fn p_grade(&self, x: &[Poly]) -> Result<GradeValue> {
        crate::grade::p_grade(&self.ring, x, &Module::ring_module(&self.ring))
    }

    fn grade_witness(&self, x: &[Poly]) -> Result<Option<String>> {
        let k = koszul_grade(&self.ring, x, &Module::ring_module(&self.ring))?;
        let Some(v) = k.verdicts.iter().find(|v| !v.is_zero) else {
            return Ok(None);
        };
        let HomologyCertificate::NonZero { cycle, .. } = &v.certificate else {
            return Ok(None);
        };
        let entries: Vec<String> = cycle.iter().map(|p| self.ring.format(p)).collect();
        Ok(Some(format!("H_{} cycle ({})", v.degree, entries.join(", "))))
    }

    fn induced_zero(&self, x: &[Poly], m: u32, n: u32, i: usize) -> Result<Option<bool>> {
        Ok(Some(induced_zero_on_homology(&self.ring, x, m, n, i)?.is_zero))
    }

    fn annihilator_stabilizes(&self, x: &Poly, bound: usize) -> Result<Option<Option<usize>>> {
        let zero = self.ring.zero_ideal();
        let mut prev = zero.colon(x)?;
        let mut power = x.clone();
        for n in 1..=bound {
            power = self.ring.mul(&power, x);
            let next = zero.colon(&power)?;
            if next.equals(&prev)? {
                return Ok(Some(Some(n)));
            }
            prev = next;
        }
        Ok(Some(None))
    }

    fn regular_step(&self, prefix: &[Poly], next: &Poly) -> Result<Option<StepOutcome>> {
        let i = self.ideal(prefix);
        let colon = i.colon(next)?;
        for g in colon.generators() {
            if !i.contains(g)? {
                return Ok(Some(StepOutcome {
                    passes: false,
                    witness: Some(self.ring.format(g)),
                }));
            }
        }
        Ok(Some(StepOutcome {
            passes: true,
            witness: None,
        }))
    }
}

/// Regular-sequence test on a module `M`: step `i` passes iff `x_i` is a
/// non-zero-divisor on `M / (x_1..x_{i-1})M`.
pub fn is_regular_on_module(ring: &PresentedRing, x: &[Poly], m: &Module) -> Result<RegularVerdict> {
    for i in 0..x.len() {
        let quotient = m.quotient_by(&x[..i]);
        let k = KoszulComplex::new(ring, &x[i..=i]);
        let h = k.homology_is_zero(1, &quotient)?;
        if !h.is_zero {
            let witness = match &h.certificate {
                HomologyCertificate::NonZero { cycle, .. } => {
                    let entries: Vec<String> = cycle.iter().map(|p| ring.format(p)).collect();
                    Some(format!("({})", entries.join(", ")))
                }
                HomologyCertificate::Vanishes { .. } => None,
            };
            return Ok(RegularVerdict {
                outcome: RegularOutcome::FailsAt { step: i + 1, witness },
                tag: tags::REGULAR_COLON.into(),
            });
        }
    }
    let outcome = if m.quotient_by(x).is_zero()? {
        RegularOutcome::PossiblyImproper
    } else {
        RegularOutcome::Regular
    };
    Ok(RegularVerdict {
        outcome,
        tag: tags::REGULAR_COLON.into(),
    })
}

#[derive(Clone, Debug)]
pub enum Unmixedness {
    /// No candidate up to the degree bound exposes an embedded prime.
    NoWitness { candidates: usize },
    /// `f` is outside `I` and `(I : f)` has a minimal prime that is not
    /// minimal over `I`.
    EmbeddedWitness {
        f: Poly,
        colon: Ideal,
        prime: Ideal,
        colon_height: Height,
        height: Height,
    },
}

/// Monomials of total degree at most `bound`, by degree and then by the
/// term order, ascending.
pub fn monomials_up_to(ring: &PresentedRing, bound: u32) -> Vec<Poly> {
    let n = ring.nvars();
    let mut out: Vec<Poly> = Vec::new();
    let mut layer = vec![ring.one()];
    for _ in 0..=bound {
        let mut sorted = layer.clone();
        sorted.sort_by(|a, b| {
            let (ma, mb) = (a.leading_monomial(), b.leading_monomial());
            ring.order().cmp(ma.unwrap(), mb.unwrap())
        });
        out.extend(sorted);
        let mut next: Vec<Poly> = Vec::new();
        for p in &layer {
            for v in 0..n {
                let q = p.mul(&ring.ambient().var(v));
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    out
}

/// Searches monomials `f` up to `degree_bound` for an embedded prime of
/// `I`. A missing witness is evidence, not proof.
pub fn unmixedness_probe(ideal: &Ideal, degree_bound: u32) -> Result<Unmixedness> {
    if ideal.is_unit()? {
        return Err(AlgebraError::Invalid("improper input: the unit ideal".into()));
    }
    let ring = ideal.ring();
    let mins = ideal.minimal_primes()?;
    let height = ideal.height()?;
    let candidates = monomials_up_to(ring, degree_bound);
    let count = candidates.len();
    for f in candidates {
        let f = ring.reduce(&f);
        if ideal.contains(&f)? {
            continue;
        }
        let colon = ideal.colon(&f)?;
        for p in colon.minimal_primes()? {
            let mut minimal = false;
            for q in &mins {
                if q.equals(&p)? {
                    minimal = true;
                    break;
                }
            }
            if !minimal {
                let colon_height = colon.height()?;
                return Ok(Unmixedness::EmbeddedWitness {
                    f,
                    colon,
                    prime: p,
                    colon_height,
                    height,
                });
            }
        }
    }
    Ok(Unmixedness::NoWitness { candidates: count })
}

/// One local regularity check at a prime `P`: `x_i` is regular on
/// `(R/(x_1..x_{i-1}))_P` iff `((x') : ((x') : x_i))` is not inside `P`.
#[derive(Clone, Debug)]
pub struct LocalStep {
    pub index: usize,
    pub colon: Ideal,
    pub annihilator: Ideal,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct LocalCheck {
    pub prime: Ideal,
    pub steps: Vec<LocalStep>,
}

impl LocalCheck {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// The minimal primes over `(x)` with the saturated-colon checks that
/// decide regularity of `x` after localizing at each.
pub fn locality_reduction(ring: &PresentedRing, x: &[Poly]) -> Result<Vec<LocalCheck>> {
    let ideal = ring.ideal(x.to_vec());
    if ideal.is_unit()? {
        return Ok(Vec::new());
    }
    let primes = ideal.minimal_primes()?;
    let mut plans = Vec::with_capacity(primes.len());
    for prime in primes {
        let mut steps = Vec::with_capacity(x.len());
        for i in 0..x.len() {
            let prefix = ring.ideal(x[..i].to_vec());
            let colon = prefix.colon(&x[i])?;
            let annihilator = prefix.colon_ideal(&colon)?;
            let holds = !prime.contains_ideal(&annihilator)?;
            steps.push(LocalStep {
                index: i + 1,
                colon,
                annihilator,
                holds,
            });
        }
        plans.push(LocalCheck { prime, steps });
    }
    Ok(plans)
}
