//! Scenario execution. Checks run in order against the most recent ring or
//! model; each check rebuilds its context so step counts do not depend on
//! which checks ran before it or on which thread.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use cmlab_algebra::budget::{steps_used, with_step_limit, with_total_budget, DEFAULT_STEP_LIMIT};
use cmlab_algebra::{AlgebraError, Field, Height, Poly, PolyRing, PresentedRing, Result};
use cmlab_core::complexes::{projective_dimension_graded, ProjectiveDimension};
use cmlab_core::grade::{cech_vanishing_profile, classical_grade, p_depth, p_grade, Grade, GradeValue, Route};
use cmlab_core::invariants::{
    invariant_cm_scenario, invariant_presentation, retraction_checks, Completeness, LinearGroupAction,
    REYNOLDS_RETRACTION, TWO_LENGTH_RETRACT,
};
use cmlab_core::models::badring::UNBOUNDED_ANNIHILATORS;
use cmlab_core::models::subring::COLON_IDENTITIES;
use cmlab_core::models::trivext::FULL_DEPTH;
use cmlab_core::models::valuation::PAIR_PROREGULARITY;
use cmlab_core::models::{
    bad_colon_chain, proregularity_counterexample, subring_colon_identities, RatFn, TrivialExtension, ValuationModel,
};
use cmlab_core::module::Module;
use cmlab_core::sequences::{
    cohen_macaulay_verdict, is_parameter_sequence, is_regular_sequence, is_strong_parameter_sequence,
    is_weakly_proregular, locality_reduction, sequence_report, tags, unmixedness_probe, AffineRing, CmOutcome,
    CmVerdict, RegularOutcome, RingAdapter, Sequence, Unmixedness, WprVerdict, DEFAULT_WPR_BOUND,
};
use serde_json::{json, Value};

use crate::ast::{
    Check, CheckKind, Context, Expect, Expr, FieldExpr, ModelExpr, Operands, Pool, RingExpr, Scenario, Statement,
};
use crate::report::{CheckReport, Report, Status};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the scenario's own budget.
    pub budget: Option<u64>,
    pub jobs: usize,
    /// Adds wall-clock times to the report, which makes it
    /// nondeterministic.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: None,
            jobs: 1,
            timings: false,
        }
    }
}

/// The step budget: the option, then the scenario, then `CMLAB_BUDGET`.
pub fn effective_budget(scenario: &Scenario, opts: &RunOptions) -> u64 {
    opts.budget
        .or(scenario.budget)
        .or_else(|| std::env::var("CMLAB_BUDGET").ok().and_then(|s| s.trim().parse().ok()))
        .unwrap_or(DEFAULT_STEP_LIMIT)
}

struct Job<'a> {
    context: Option<&'a Context>,
    check: &'a Check,
}

pub fn run(scenario: &Scenario, name: &str, opts: &RunOptions) -> Report {
    let budget = effective_budget(scenario, opts);
    let mut jobs = Vec::new();
    let mut context = None;
    for s in &scenario.statements {
        match s {
            Statement::Context(c) => context = Some(c),
            Statement::Check(c) => jobs.push(Job { context, check: c }),
        }
    }
    let results: Mutex<Vec<Option<CheckReport>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= jobs.len() {
            break;
        }
        let r = run_job(i, &jobs[i], budget, opts.timings);
        results.lock().expect("no poisoned workers")[i] = Some(r);
    };
    let threads = opts.jobs.clamp(1, jobs.len().max(1));
    if threads == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }
    let checks = results
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect();
    Report::new(name, budget, checks)
}

/// The result of one check before its status is decided.
struct Outcome {
    value: Value,
    detail: Value,
    citation: Option<String>,
    /// A failed certificate or a found violation.
    violation: bool,
}

impl Outcome {
    fn new(value: Value, detail: Value, citation: Option<&str>) -> Self {
        Outcome {
            value,
            detail,
            citation: citation.map(str::to_string),
            violation: false,
        }
    }

    fn violating(mut self, v: bool) -> Self {
        self.violation = v;
        self
    }
}

fn run_job(index: usize, job: &Job, budget: u64, timings: bool) -> CheckReport {
    let check = job.check;
    let context_text = match (&check.ring, job.context) {
        (Some(r), _) => r.to_string(),
        (None, Some(c)) => c.to_string(),
        (None, None) => String::new(),
    };
    let start = Instant::now();
    let (result, steps) = with_step_limit(budget, || {
        with_total_budget(budget, || {
            let r = execute(job);
            (r, steps_used())
        })
    });
    let elapsed_ms = timings.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let expect = check.expect.as_ref();
    let (status, value, detail, citation, error) = match result {
        Ok(o) => {
            let status = match expect {
                Some(e) if expect_value(e) == o.value => Status::Pass,
                Some(_) => Status::Violation,
                None if o.violation => Status::Violation,
                None => Status::Pass,
            };
            (status, o.value, o.detail, o.citation, None)
        }
        Err(AlgebraError::BudgetExceeded { .. }) => (
            Status::BudgetExceeded,
            Value::Null,
            Value::Null,
            None,
            Some(format!("step budget of {budget} exhausted after {steps} steps")),
        ),
        Err(e) => (Status::Error, Value::Null, Value::Null, None, Some(e.to_string())),
    };
    CheckReport {
        index,
        statement: check.to_string(),
        context: context_text,
        status,
        value,
        expect: expect.map(|e| e.to_string()),
        citation,
        steps,
        elapsed_ms,
        detail,
        error,
    }
}

pub fn expect_value(e: &Expect) -> Value {
    match e {
        Expect::Bool(b) => json!(b),
        Expect::Int(n) => json!(n),
        Expect::Infinity => json!("infinity"),
        Expect::Violation => json!("violation"),
        Expect::NoViolation => json!("no_violation"),
        Expect::Undecided => json!("undecided"),
    }
}

fn grade_json(g: Grade) -> Value {
    match g {
        Grade::Finite(n) => json!(n),
        Grade::Infinite => json!("infinity"),
    }
}

fn height_json(h: Height) -> Value {
    grade_json(h.into())
}

fn route_citation(g: &GradeValue) -> Option<&str> {
    match &g.route {
        Route::Model(tag) => Some(tag),
        _ => None,
    }
}

// Building rings and evaluating expressions.

fn field_of(f: FieldExpr) -> Result<Field> {
    match f {
        FieldExpr::Rational => Ok(Field::Rational),
        FieldExpr::Prime(p) => Field::prime(p),
    }
}

fn unknown(name: &str, pos: crate::ast::Pos) -> AlgebraError {
    AlgebraError::Syntax {
        line: pos.line,
        column: pos.column,
        message: format!("unknown variable '{name}'"),
    }
}

pub fn eval_poly(ring: &PolyRing, e: &Expr) -> Result<Poly> {
    Ok(match e {
        Expr::Int(n) => ring.parse(n)?,
        Expr::Var(v, pos) => ring.var_named(v).map_err(|_| unknown(v, *pos))?,
        Expr::Neg(a) => eval_poly(ring, a)?.neg(),
        Expr::Add(a, b) => eval_poly(ring, a)?.add(&eval_poly(ring, b)?),
        Expr::Sub(a, b) => eval_poly(ring, a)?.sub(&eval_poly(ring, b)?),
        Expr::Mul(a, b) => eval_poly(ring, a)?.mul(&eval_poly(ring, b)?),
        Expr::Div(a, b) => {
            let d = eval_poly(ring, b)?;
            if !d.is_constant() || d.is_zero() {
                return Err(AlgebraError::Invalid(format!(
                    "division by '{b}' is not by a nonzero constant"
                )));
            }
            let inv = d.leading_coefficient().expect("nonzero").inv()?;
            eval_poly(ring, a)?.scale(&inv)
        }
        Expr::Pow(a, k) => eval_poly(ring, a)?.pow(*k),
    })
}

fn eval_ratfn(v: &ValuationModel, e: &Expr) -> Result<RatFn> {
    Ok(match e {
        Expr::Int(n) => v.poly(v.ring().parse(n)?),
        Expr::Var(name, pos) => match name.as_str() {
            "u" => v.u(),
            "w" => v.w(),
            _ => return Err(unknown(name, *pos)),
        },
        Expr::Neg(a) => v.neg(&eval_ratfn(v, a)?),
        Expr::Add(a, b) => v.add(&eval_ratfn(v, a)?, &eval_ratfn(v, b)?),
        Expr::Sub(a, b) => v.sub(&eval_ratfn(v, a)?, &eval_ratfn(v, b)?),
        Expr::Mul(a, b) => v.mul(&eval_ratfn(v, a)?, &eval_ratfn(v, b)?),
        Expr::Div(a, b) => v.quotient(&eval_ratfn(v, a)?, &eval_ratfn(v, b)?)?,
        Expr::Pow(a, k) => v.pow(&eval_ratfn(v, a)?, *k),
    })
}

pub fn build_ring(r: &RingExpr) -> Result<PresentedRing> {
    let names: Vec<&str> = r.names.iter().map(String::as_str).collect();
    let ambient = PolyRing::grevlex(field_of(r.field)?, &names)?;
    let rels = r
        .relations
        .iter()
        .map(|e| eval_poly(&ambient, e))
        .collect::<Result<Vec<_>>>()?;
    PresentedRing::new(ambient, rels)
}

fn eval_in(ring: &PresentedRing, xs: &[Expr]) -> Result<Vec<Poly>> {
    xs.iter()
        .map(|e| Ok(ring.reduce(&eval_poly(ring.ambient(), e)?)))
        .collect()
}

enum Env {
    Affine(AffineRing),
    Trivext(TrivialExtension),
    Valuation(ValuationModel),
    BadRing(usize),
    Subring(u32),
    Action(LinearGroupAction),
}

impl Env {
    fn name(&self) -> &'static str {
        match self {
            Env::Affine(_) => "an affine ring",
            Env::Trivext(_) => "trivext",
            Env::Valuation(_) => "valuation",
            Env::BadRing(_) => "badring",
            Env::Subring(_) => "subring",
            Env::Action(_) => "action",
        }
    }
}

fn build_env(c: &Context) -> Result<Env> {
    Ok(match c {
        Context::Ring(r) => Env::Affine(AffineRing::new(build_ring(r)?)),
        Context::Model(m) => match m {
            ModelExpr::TrivialExtension { base, maximal, level } => {
                let ring = build_ring(base)?;
                let m = eval_in(&ring, maximal)?;
                Env::Trivext(TrivialExtension::new(ring, &m, *level)?)
            }
            ModelExpr::Valuation { .. } => Env::Valuation(ValuationModel::new()),
            ModelExpr::BadRing { level } => Env::BadRing(*level),
            ModelExpr::Subring { bound } => Env::Subring(*bound),
            ModelExpr::Action { ring, matrices } => {
                let r = build_ring(ring)?;
                if !r.relations().is_empty() {
                    return Err(AlgebraError::Invalid("actions need a polynomial ring".into()));
                }
                let field = r.field();
                let gens = matrices
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|row| row.iter().map(|&c| field.from_i64(c)).collect())
                            .collect()
                    })
                    .collect::<Vec<_>>();
                Env::Action(LinearGroupAction::generated_by(r.ambient(), &gens)?)
            }
        },
    })
}

fn unavailable(kind: CheckKind, env: &Env) -> AlgebraError {
    AlgebraError::Unsupported(format!("'{}' is not available for {}", kind.name(), env.name()))
}

fn execute(job: &Job) -> Result<Outcome> {
    let check = job.check;
    let env = match (&check.ring, job.context) {
        (Some(r), _) => Env::Affine(AffineRing::new(build_ring(r)?)),
        (None, Some(c)) => build_env(c)?,
        (None, None) => return Err(AlgebraError::Invalid("no ring or model has been given".into())),
    };
    match &env {
        Env::Affine(a) => {
            let ring = a.ring().clone();
            match check.kind {
                CheckKind::GradeRoutes
                | CheckKind::Locality
                | CheckKind::Unmixed
                | CheckKind::PdDepth
                | CheckKind::Depth
                | CheckKind::Dimension => affine_check(&ring, check),
                _ => adapter_check(a, check, |xs| eval_in(&ring, xs)),
            }
        }
        Env::Trivext(t) => match check.kind {
            CheckKind::Depth => {
                let d = t.p_depth()?;
                Ok(Outcome::new(
                    grade_json(d.value),
                    json!({ "dimension": t.dimension() }),
                    Some(FULL_DEPTH),
                ))
            }
            CheckKind::Dimension => Ok(Outcome::new(json!(t.dimension()), Value::Null, None)),
            _ => adapter_check(t, check, |xs| eval_in(t.base(), xs)),
        },
        Env::Valuation(v) => match check.kind {
            CheckKind::PairCertificate => pair_certificate(v, check),
            CheckKind::Dimension => Ok(Outcome::new(json!(2), Value::Null, None)),
            _ => adapter_check(v, check, |xs| xs.iter().map(|e| eval_ratfn(v, e)).collect()),
        },
        Env::BadRing(level) => match check.kind {
            CheckKind::Chain => colon_chain(*level),
            CheckKind::Counterexample => {
                let bound = check.option("bound").unwrap_or(*level as u64 + 2) as usize;
                let c = proregularity_counterexample(bound)?;
                let checks: Vec<Value> = c
                    .checks
                    .iter()
                    .map(|l| json!({ "m": l.m, "x^m*y_m_is_zero": l.killed, "x^(m-1)*y_m_is_nonzero": l.survives }))
                    .collect();
                let found = matches!(c.verdict, WprVerdict::Counterexample { .. });
                let detail = json!({ "verdict": wpr_json(&c.verdict), "levels": checks });
                Ok(Outcome::new(json!(found), detail, Some(UNBOUNDED_ANNIHILATORS)).violating(!found))
            }
            _ => Err(unavailable(check.kind, &env)),
        },
        Env::Subring(bound) => match check.kind {
            CheckKind::ColonIdentities => {
                let c = subring_colon_identities(*bound)?;
                let detail = json!({
                    "bound": c.bound,
                    "colon_x_equals_xyS": c.colon_x_equals_xys,
                    "colon_x2_equals_xyS": c.colon_x2_equals_xys,
                    "monomials_checked": c.monomials_checked,
                    "witness": c.witness,
                    "witness_in_xyS": c.witness_in_xys,
                    "witness_outside_xyD": c.witness_outside_xyd,
                    "witness_times_x_in_xyD": c.witness_times_x_in_xyd,
                    "xS_inside_D": c.x_s_inside_d,
                    "x_xyS_inside_xyD": c.x_xys_inside_xyd,
                });
                Ok(Outcome::new(json!(c.holds()), detail, Some(COLON_IDENTITIES)).violating(!c.holds()))
            }
            _ => Err(unavailable(check.kind, &env)),
        },
        Env::Action(g) => action_check(g, check),
    }
}

fn wpr_json(v: &WprVerdict) -> Value {
    match v {
        WprVerdict::CertifiedNoetherian => json!({ "kind": "certified-noetherian" }),
        WprVerdict::VerifiedUpToBound { bound, frontier } => {
            let f: Vec<Value> = frontier.iter().map(|l| json!({ "n": l.n, "m": l.m })).collect();
            json!({ "kind": "verified-up-to-bound", "bound": bound, "frontier": f })
        }
        WprVerdict::Counterexample { n, tag, detail } => {
            json!({ "kind": "counterexample", "n": n, "tag": tag, "detail": detail })
        }
        WprVerdict::CertifiedByModel { tag, detail } => {
            json!({ "kind": "certified-by-model", "tag": tag, "detail": detail })
        }
    }
}

fn wpr_citation(v: &WprVerdict) -> &str {
    match v {
        WprVerdict::CertifiedNoetherian => tags::NOETHERIAN_PROREGULAR,
        WprVerdict::VerifiedUpToBound { .. } => tags::PROREGULAR_SEARCH,
        WprVerdict::Counterexample { tag, .. } | WprVerdict::CertifiedByModel { tag, .. } => tag,
    }
}

fn wpr_value(v: &WprVerdict) -> Value {
    match v.decided() {
        Some(b) => json!(b),
        None => json!("undecided"),
    }
}

fn regular_json(o: &RegularOutcome) -> Value {
    match o {
        RegularOutcome::Regular => json!({ "outcome": "regular" }),
        RegularOutcome::PossiblyImproper => json!({ "outcome": "possibly-improper" }),
        RegularOutcome::FailsAt { step, witness } => {
            json!({ "outcome": "fails", "step": step, "witness": witness })
        }
    }
}

fn grade_value_json(g: &GradeValue) -> Value {
    json!({ "value": grade_json(g.value), "route": g.route.to_string() })
}

fn sequence_operand(check: &Check) -> &[Expr] {
    match &check.operands {
        Operands::Sequence(xs) | Operands::Ideal(xs) => xs,
        _ => &[],
    }
}

/// Ordered selections of distinct indices, shortest first.
fn selections(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len.min(n) {
        let mut next = Vec::new();
        for s in &frontier {
            for i in 0..n {
                if !s.contains(&i) {
                    let mut t = s.clone();
                    t.push(i);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn pool_exprs(pool: &Pool) -> Vec<Vec<Expr>> {
    match pool {
        Pool::Listed(seqs) => seqs.clone(),
        Pool::Sequences { elements, max_length } => selections(elements.len(), *max_length)
            .into_iter()
            .map(|s| s.into_iter().map(|i| elements[i].clone()).collect())
            .collect(),
    }
}

fn cm_outcome(v: &CmVerdict, extra: Value) -> Outcome {
    let entries: Vec<Value> = v
        .entries
        .iter()
        .map(|e| {
            json!({
                "elements": e.elements,
                "strong_parameter": e.strong_parameter,
                "skipped": e.skipped,
                "p_grade": e.p_grade.as_ref().map(|g| grade_json(g.value)),
                "regular": e.regular,
            })
        })
        .collect();
    let strong = v.entries.iter().filter(|e| e.strong_parameter).count();
    let regular = v.entries.iter().filter(|e| e.regular == Some(true)).count();
    let (value, outcome) = match &v.outcome {
        CmOutcome::ViolationFound {
            index,
            elements,
            p_grade,
            witness,
        } => (
            json!("violation"),
            json!({
                "kind": "violation-found",
                "index": index,
                "elements": elements,
                "p_grade": grade_json(p_grade.value),
                "length": elements.len(),
                "witness": witness,
            }),
        ),
        CmOutcome::NoViolationWithinPool => (json!("no_violation"), json!({ "kind": "no-violation-within-pool" })),
    };
    let detail = json!({
        "outcome": outcome,
        "pool_size": v.entries.len(),
        "strong_parameter": strong,
        "regular": regular,
        "extra": extra,
        "entries": entries,
    });
    Outcome::new(value, detail, Some(&v.tag)).violating(v.violation_found())
}

fn adapter_check<A: RingAdapter>(
    a: &A,
    check: &Check,
    eval: impl Fn(&[Expr]) -> Result<Vec<A::Elem>>,
) -> Result<Outcome> {
    if let Operands::Pool(pool) = &check.operands {
        if check.kind != CheckKind::CohenMacaulay {
            return Err(AlgebraError::Invalid("a pool is only accepted by 'cm'".into()));
        }
        let seqs = pool_exprs(pool).iter().map(|s| eval(s)).collect::<Result<Vec<_>>>()?;
        let v = cohen_macaulay_verdict(a, &seqs)?;
        return Ok(cm_outcome(&v, Value::Null));
    }
    let elems = eval(sequence_operand(check))?;
    let x = Sequence::new(a, &elems);
    let bound = check.option("bound").map(|b| b as usize).unwrap_or(DEFAULT_WPR_BOUND);
    Ok(match check.kind {
        CheckKind::WeaklyProregular => {
            let v = is_weakly_proregular(&x, bound)?;
            Outcome::new(wpr_value(&v), wpr_json(&v), Some(wpr_citation(&v)))
        }
        CheckKind::Parameter => {
            let v = is_parameter_sequence(&x)?;
            Outcome::new(json!(v.holds), json!({ "reason": v.reason }), Some(&v.tag))
        }
        CheckKind::StrongParameter => {
            let t = is_strong_parameter_sequence(&x)?;
            let prefixes: Vec<Value> = t
                .prefixes
                .iter()
                .enumerate()
                .map(|(i, p)| json!({ "length": i + 1, "parameter": p.holds, "reason": p.reason, "tag": p.tag }))
                .collect();
            let decisive = t.prefixes.iter().find(|p| !p.holds).or(t.prefixes.last());
            let tag = decisive
                .map(|p| p.tag.clone())
                .unwrap_or_else(|| tags::EMPTY_SEQUENCE.into());
            Outcome::new(json!(t.holds), json!({ "prefixes": prefixes }), Some(&tag))
        }
        CheckKind::Regular => {
            let v = is_regular_sequence(&x)?;
            Outcome::new(json!(v.is_regular()), regular_json(&v.outcome), Some(&v.tag))
        }
        CheckKind::Grade => {
            let g = a.p_grade(x.elements())?;
            Outcome::new(
                grade_json(g.value),
                json!({ "route": g.route.to_string() }),
                route_citation(&g),
            )
        }
        CheckKind::Height => Outcome::new(height_json(a.height(x.elements())?), Value::Null, None),
        CheckKind::Report => {
            let r = sequence_report(&x, bound)?;
            let prefixes: Vec<Value> = r
                .prefixes
                .iter()
                .map(|p| {
                    json!({
                        "length": p.length,
                        "weakly_proregular": wpr_json(&p.weakly_proregular),
                        "parameter": p.parameter.holds,
                        "parameter_tag": p.parameter.tag,
                        "height": height_json(p.height),
                        "p_grade": grade_value_json(&p.p_grade),
                    })
                })
                .collect();
            let detail = json!({
                "ring": r.ring,
                "elements": r.elements,
                "prefixes": prefixes,
                "strong_parameter": r.strong_parameter,
                "regular": regular_json(&r.regular.outcome),
            });
            Outcome::new(json!(r.is_regular_sequence()), detail, Some(&r.regular.tag))
        }
        k => {
            return Err(AlgebraError::Unsupported(format!(
                "'{}' needs an affine ring",
                k.name()
            )))
        }
    })
}

fn affine_check(ring: &PresentedRing, check: &Check) -> Result<Outcome> {
    let xs = eval_in(ring, sequence_operand(check))?;
    let r_mod = Module::ring_module(ring);
    Ok(match check.kind {
        CheckKind::GradeRoutes => {
            let k = p_grade(ring, &xs, &r_mod)?;
            let e = classical_grade(&ring.ideal(xs.clone()), &r_mod)?;
            let c = cech_vanishing_profile(ring, &xs, &r_mod)?;
            let agree = k.value == e.value && c.grade == k.value;
            let profile: Vec<String> = c.entries.iter().map(|v| v.to_string()).collect();
            let detail = json!({
                "koszul": grade_json(k.value),
                "ext": grade_json(e.value),
                "cech": grade_json(c.grade),
                "cech_profile": profile,
            });
            Outcome::new(json!(agree), detail, None).violating(!agree)
        }
        CheckKind::Locality => {
            let plan = locality_reduction(ring, &xs)?;
            let primes: Vec<Value> = plan
                .iter()
                .map(|p| {
                    let steps: Vec<Value> = p
                        .steps
                        .iter()
                        .map(|s| json!({ "index": s.index, "annihilator": s.annihilator.format(), "holds": s.holds }))
                        .collect();
                    json!({ "prime": p.prime.format(), "holds": p.holds(), "steps": steps })
                })
                .collect();
            let all = plan.iter().all(|p| p.holds());
            Outcome::new(json!(all), json!({ "primes": primes }), Some(tags::REGULAR_COLON))
        }
        CheckKind::Unmixed => {
            let degree = check.option("degree").unwrap_or(3) as u32;
            match unmixedness_probe(&ring.ideal(xs), degree)? {
                Unmixedness::NoWitness { candidates } => Outcome::new(
                    json!(true),
                    json!({ "kind": "no-witness", "candidates": candidates, "degree": degree }),
                    None,
                ),
                Unmixedness::EmbeddedWitness {
                    f,
                    colon,
                    prime,
                    colon_height,
                    height,
                } => Outcome::new(
                    json!(false),
                    json!({
                        "kind": "embedded-witness",
                        "f": ring.format(&f),
                        "colon": colon.format(),
                        "prime": prime.format(),
                        "colon_height": height_json(colon_height),
                        "height": height_json(height),
                    }),
                    None,
                ),
            }
        }
        CheckKind::PdDepth => {
            let ideal = ring.ideal(xs);
            let m = Module::cyclic(&ideal);
            let pd = match projective_dimension_graded(&m)? {
                ProjectiveDimension::Known(n) => n,
                ProjectiveDimension::Unknown(why) => return Err(AlgebraError::Unsupported(why)),
            };
            let vars: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
            let depth_m = p_grade(ring, &vars, &m)?.value;
            let depth_r = p_grade(ring, &vars, &r_mod)?.value;
            let holds = depth_m.finite().zip(depth_r.finite()).is_some_and(|(a, b)| pd + a == b);
            let detail = json!({
                "projective_dimension": pd,
                "module_depth": grade_json(depth_m),
                "ring_depth": grade_json(depth_r),
            });
            Outcome::new(json!(holds), detail, None).violating(!holds)
        }
        CheckKind::Depth => {
            let vars: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
            let d = p_depth(ring, &vars)?;
            Outcome::new(
                grade_json(d.value),
                json!({ "maximal": ring.variables_ideal().format() }),
                None,
            )
        }
        CheckKind::Dimension => {
            let d = ring
                .krull_dimension()
                .ok_or_else(|| AlgebraError::Unsupported("dimension of the zero ring".into()))?;
            Outcome::new(json!(d), Value::Null, None)
        }
        _ => unreachable!("routed by execute"),
    })
}

fn pair_certificate(v: &ValuationModel, check: &Check) -> Result<Outcome> {
    let n = check.option("n").unwrap_or(3) as usize;
    let c = v.example_pair(n)?;
    let levels: Vec<Value> = c
        .levels
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "m": l.m,
                "h2_vanishes": l.h2_vanishes,
                "cycle_checks": l.cycle_checks,
                "coefficient": l.coefficient,
                "coefficient_value": [l.coefficient_value.0, l.coefficient_value.1],
                "coefficient_in_V": l.coefficient_in_v,
                "boundary_identity": l.boundary_identity,
            })
        })
        .collect();
    let holds = c.weakly_proregular();
    let detail = json!({
        "pair": [c.f, c.g],
        "values": [[c.values.0 .0, c.values.0 .1], [c.values.1 .0, c.values.1 .1]],
        "quotient": c.quotient,
        "quotient_value": [c.quotient_value.0, c.quotient_value.1],
        "weakly_proregular": holds,
        "height": height_json(c.height),
        "parameter": c.parameter(),
        "levels": levels,
    });
    Ok(Outcome::new(json!(holds), detail, Some(PAIR_PROREGULARITY)).violating(!holds))
}

fn colon_chain(level: usize) -> Result<Outcome> {
    let c = bad_colon_chain(level)?;
    let links: Vec<Value> = c
        .links
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "annihilator": l.annihilator.format(),
                "strictly_smaller_than_next": l.strict,
                "witness": l.witness,
            })
        })
        .collect();
    let holds = c.grows_below_level() && c.stops_at_level();
    let detail = json!({ "level": level, "links": links });
    Ok(Outcome::new(json!(holds), detail, Some(UNBOUNDED_ANNIHILATORS)).violating(!holds))
}

fn action_check(g: &LinearGroupAction, check: &Check) -> Result<Outcome> {
    let bound = check.option("bound").unwrap_or(g.order() as u64) as u32;
    let ring = g.ring();
    match check.kind {
        CheckKind::Presentation => {
            let p = invariant_presentation(g, bound)?;
            let complete = p.completeness == Completeness::NoetherBound;
            let gens: Vec<Value> = p
                .generators
                .iter()
                .zip(p.ring.names())
                .zip(&p.degrees)
                .map(|((f, n), d)| json!({ "name": n, "image": ring.format(f), "degree": d }))
                .collect();
            let rels: Vec<String> = p.ring.relations().iter().map(|r| p.ring.format(r)).collect();
            let completeness = match p.completeness {
                Completeness::NoetherBound => json!({ "kind": "noether-bound" }),
                Completeness::BoundTooSmall { degree } => json!({ "kind": "bound-too-small", "degree": degree }),
                Completeness::Unverified => json!({ "kind": "unverified" }),
            };
            let detail = json!({
                "group_order": g.order(),
                "ring": p.ring.to_string(),
                "generators": gens,
                "relations": rels,
                "completeness": completeness,
            });
            Ok(Outcome::new(json!(complete), detail, None))
        }
        CheckKind::Retraction => {
            let p = invariant_presentation(g, bound)?;
            let samples = check.option("samples").unwrap_or(100) as usize;
            let seed = check.option("seed").unwrap_or(0);
            let r = retraction_checks(g, &p, samples, seed);
            let detail = json!({
                "samples": r.samples,
                "seed": seed,
                "retraction_law": r.retraction_law,
                "linearity": r.linearity,
                "nonzero_preserved": r.nonzero_preserved,
            });
            Ok(Outcome::new(json!(r.holds()), detail, Some(REYNOLDS_RETRACTION)).violating(!r.holds()))
        }
        CheckKind::CohenMacaulay => {
            let Operands::Pool(pool) = &check.operands else {
                unreachable!("cm always has a pool")
            };
            let p = invariant_presentation(g, bound)?;
            let seqs = pool_exprs(pool)
                .iter()
                .map(|s| eval_in(&p.ring, s))
                .collect::<Result<Vec<_>>>()?;
            let s = invariant_cm_scenario(g, &seqs, bound, 0, 0)?;
            let extra = json!({
                "invariant_ring": s.presentation.ring.to_string(),
                "beyond_two_length": s.beyond_two_length,
                "note": s.finiteness_note,
            });
            let mut o = cm_outcome(&s.verdict, extra);
            if !s.verdict.violation_found() {
                o.citation = Some(TWO_LENGTH_RETRACT.into());
            }
            Ok(o)
        }
        CheckKind::Dimension => Ok(Outcome::new(json!(ring.nvars()), Value::Null, None)),
        k => Err(AlgebraError::Unsupported(format!(
            "'{}' is not available for action",
            k.name()
        ))),
    }
}
