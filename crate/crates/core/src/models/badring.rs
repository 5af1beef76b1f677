//! Truncations `S_N = QQ[x, y_1..y_N] / (x y_1, x^2 y_2, ..., x^N y_N)`
//! of a ring with infinitely many relations, in which the annihilators of
//! the powers of `x` never stabilize.

use cmlab_algebra::{AlgebraError, Ideal, Poly, PresentedRing, Result};

use crate::sequences::WprVerdict;

pub const UNBOUNDED_ANNIHILATORS: &str = "unbounded-annihilator-chain";

#[derive(Clone, Debug)]
pub struct BadRing {
    level: usize,
    ring: PresentedRing,
}

impl BadRing {
    pub fn new(level: usize) -> Result<Self> {
        if level == 0 {
            return Err(AlgebraError::Invalid("the truncation level must be at least 1".into()));
        }
        let names: Vec<String> = (1..=level).map(|i| format!("y{i}")).collect();
        let rels: Vec<String> = (1..=level).map(|i| format!("x^{i}*y{i}")).collect();
        let text = format!("QQ[x,{}]/({})", names.join(","), rels.join(", "));
        Ok(BadRing {
            level,
            ring: PresentedRing::parse(&text)?,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn x(&self) -> Poly {
        self.ring.var(0)
    }

    /// `y_i`, `1 <= i <= N`.
    pub fn y(&self, i: usize) -> Poly {
        self.ring.var(i)
    }

    /// `(0 : x^n)`.
    pub fn annihilator(&self, n: u32) -> Result<Ideal> {
        self.ring.zero_ideal().colon(&self.x().pow(n))
    }
}

/// One link `(0 : x^n) <= (0 : x^(n+1))` of the chain.
#[derive(Clone, Debug)]
pub struct ChainLink {
    pub n: usize,
    pub annihilator: Ideal,
    /// `(0 : x^n)` is strictly smaller than `(0 : x^(n+1))`.
    pub strict: bool,
    /// `y_(n+1)` checked to lie in `(0 : x^(n+1))` but not `(0 : x^n)`.
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ColonChain {
    pub level: usize,
    pub links: Vec<ChainLink>,
}

impl ColonChain {
    /// Strict growth for every `n < N`.
    pub fn grows_below_level(&self) -> bool {
        self.links.iter().filter(|l| l.n < self.level).all(|l| l.strict)
    }

    /// `(0 : x^N) = (0 : x^(N+1))` in the truncation.
    pub fn stops_at_level(&self) -> bool {
        self.links.iter().find(|l| l.n == self.level).is_some_and(|l| !l.strict)
    }
}

/// `(0 : x^n)` in `S_N` for `n = 1..=N`, each compared with the next.
pub fn bad_colon_chain(level: usize) -> Result<ColonChain> {
    if level < 2 {
        return Err(AlgebraError::Invalid("the chain needs N >= 2".into()));
    }
    let s = BadRing::new(level)?;
    let ring = s.ring();
    let mut links = Vec::with_capacity(level);
    let mut current = s.annihilator(1)?;
    for n in 1..=level {
        let next = s.annihilator(n as u32 + 1)?;
        let strict = !current.contains_ideal(&next)?;
        let mut witness = None;
        if n < level {
            let y = s.y(n + 1);
            if next.contains(&y)? && !current.contains(&y)? {
                witness = Some(ring.format(&y));
            }
        }
        links.push(ChainLink {
            n,
            annihilator: current,
            strict,
            witness,
        });
        current = next;
    }
    Ok(ColonChain { level, links })
}

/// The check at one `m`: in `S_m`, `x^m y_m = 0` but `x^(m-1) y_m != 0`,
/// so `H_1(x^m) -> H_1(x)`, multiplication by `x^(m-1)` on `(0 : x^m)`, is
/// nonzero. `S_m` is a retract of the full ring, so the same holds there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOneCheck {
    pub m: usize,
    pub killed: bool,
    pub survives: bool,
}

#[derive(Clone, Debug)]
pub struct ProregularityCounterexample {
    pub checks: Vec<LevelOneCheck>,
    pub verdict: WprVerdict,
}

/// `x` is not weakly proregular on the full ring: the maps into level
/// `n = 1` are nonzero for every `m`, checked here for `2 <= m <= bound`.
pub fn proregularity_counterexample(bound: usize) -> Result<ProregularityCounterexample> {
    let mut checks = Vec::new();
    for m in 2..=bound.max(2) {
        let s = BadRing::new(m)?;
        let y = s.y(m);
        let killed = s.ring().is_zero(&s.x().pow(m as u32).mul(&y));
        let survives = !s.ring().is_zero(&s.x().pow(m as u32 - 1).mul(&y));
        checks.push(LevelOneCheck { m, killed, survives });
    }
    if !checks.iter().all(|c| c.killed && c.survives) {
        return Err(AlgebraError::Invalid("level-one check failed".into()));
    }
    let verdict = WprVerdict::Counterexample {
        n: 1,
        tag: UNBOUNDED_ANNIHILATORS.into(),
        detail: "x^(m-1) y_m is a nonzero image of y_m in H_1(x) for every m".into(),
    };
    Ok(ProregularityCounterexample { checks, verdict })
}
