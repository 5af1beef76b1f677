//! Syntax tree for scenario files. `Display` prints the normalized text
//! that the parser reads back to the same tree.

use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// An element expression. Variables are resolved against a ring or model
/// when the scenario runs.
#[derive(Clone, Debug)]
pub enum Expr {
    /// Decimal digits.
    Int(String),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Variables in order of appearance.
    pub fn variables(&self) -> Vec<(&str, Pos)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v, p) => out.push((v, *p)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    fn fmt_expr(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Add(a, b) => {
                a.fmt_expr(f)?;
                f.write_str(" + ")?;
                b.fmt_term(f)
            }
            Expr::Sub(a, b) => {
                a.fmt_expr(f)?;
                f.write_str(" - ")?;
                b.fmt_term(f)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_term(f)
            }
            _ => self.fmt_term(f),
        }
    }

    fn fmt_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Mul(a, b) => {
                a.fmt_term(f)?;
                f.write_str("*")?;
                b.fmt_power(f)
            }
            Expr::Div(a, b) => {
                a.fmt_term(f)?;
                f.write_str("/")?;
                b.fmt_power(f)
            }
            _ => self.fmt_power(f),
        }
    }

    fn fmt_power(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Pow(a, e) => {
                a.fmt_atom(f)?;
                write!(f, "^{e}")
            }
            _ => self.fmt_atom(f),
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => f.write_str(n),
            Expr::Var(v, _) => f.write_str(v),
            _ => {
                f.write_str("(")?;
                self.fmt_expr(f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_expr(f)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Expr]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldExpr {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldExpr::Rational => f.write_str("QQ"),
            FieldExpr::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingExpr {
    pub field: FieldExpr,
    pub names: Vec<String>,
    pub relations: Vec<Expr>,
    pub pos: Pos,
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(","))?;
        if !self.relations.is_empty() {
            f.write_str("/")?;
            write_list(f, &self.relations)?;
        }
        Ok(())
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub enum ModelExpr {
    /// `R x M` with `M` the sum of `R/P` over primes of height `level`
    /// inside the maximal ideal.
    TrivialExtension {
        base: RingExpr,
        maximal: Vec<Expr>,
        level: usize,
    },
    Valuation {
        rank: usize,
    },
    BadRing {
        level: usize,
    },
    Subring {
        bound: u32,
    },
    Action {
        ring: RingExpr,
        matrices: Vec<IntMatrix>,
    },
}

impl fmt::Display for ModelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelExpr::TrivialExtension { base, maximal, level } => {
                write!(f, "trivext({base} at ")?;
                write_list(f, maximal)?;
                write!(f, ", level={level})")
            }
            ModelExpr::Valuation { rank } => write!(f, "valuation(rank={rank})"),
            ModelExpr::BadRing { level } => write!(f, "badring(N={level})"),
            ModelExpr::Subring { bound } => write!(f, "subring(B={bound})"),
            ModelExpr::Action { ring, matrices } => {
                write!(f, "action({ring}; ")?;
                for (k, m) in matrices.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    let rows: Vec<String> = m
                        .iter()
                        .map(|r| {
                            let r: Vec<String> = r.iter().map(i64::to_string).collect();
                            format!("[{}]", r.join(","))
                        })
                        .collect();
                    write!(f, "[{}]", rows.join(","))?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    WeaklyProregular,
    Parameter,
    StrongParameter,
    Regular,
    Grade,
    Height,
    Report,
    GradeRoutes,
    Locality,
    CohenMacaulay,
    Unmixed,
    PdDepth,
    Depth,
    Dimension,
    PairCertificate,
    Chain,
    Counterexample,
    ColonIdentities,
    Presentation,
    Retraction,
}

/// What a check takes after its name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    Sequence,
    Ideal,
    Pool,
    Nothing,
}

impl CheckKind {
    pub const ALL: [CheckKind; 20] = [
        CheckKind::WeaklyProregular,
        CheckKind::Parameter,
        CheckKind::StrongParameter,
        CheckKind::Regular,
        CheckKind::Grade,
        CheckKind::Height,
        CheckKind::Report,
        CheckKind::GradeRoutes,
        CheckKind::Locality,
        CheckKind::CohenMacaulay,
        CheckKind::Unmixed,
        CheckKind::PdDepth,
        CheckKind::Depth,
        CheckKind::Dimension,
        CheckKind::PairCertificate,
        CheckKind::Chain,
        CheckKind::Counterexample,
        CheckKind::ColonIdentities,
        CheckKind::Presentation,
        CheckKind::Retraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::WeaklyProregular => "wpr",
            CheckKind::Parameter => "parameter",
            CheckKind::StrongParameter => "sps",
            CheckKind::Regular => "regular",
            CheckKind::Grade => "grade",
            CheckKind::Height => "height",
            CheckKind::Report => "report",
            CheckKind::GradeRoutes => "grade_routes",
            CheckKind::Locality => "locality",
            CheckKind::CohenMacaulay => "cm",
            CheckKind::Unmixed => "unmixed",
            CheckKind::PdDepth => "pd_depth",
            CheckKind::Depth => "depth",
            CheckKind::Dimension => "dimension",
            CheckKind::PairCertificate => "pair_certificate",
            CheckKind::Chain => "chain",
            CheckKind::Counterexample => "counterexample",
            CheckKind::ColonIdentities => "colon_identities",
            CheckKind::Presentation => "presentation",
            CheckKind::Retraction => "retraction",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn operand(self) -> Operand {
        match self {
            CheckKind::WeaklyProregular
            | CheckKind::Parameter
            | CheckKind::StrongParameter
            | CheckKind::Regular
            | CheckKind::Grade
            | CheckKind::Height
            | CheckKind::Report
            | CheckKind::GradeRoutes
            | CheckKind::Locality => Operand::Sequence,
            CheckKind::Unmixed | CheckKind::PdDepth => Operand::Ideal,
            CheckKind::CohenMacaulay => Operand::Pool,
            _ => Operand::Nothing,
        }
    }

    /// Option names the check accepts.
    pub fn options(self) -> &'static [&'static str] {
        match self {
            CheckKind::WeaklyProregular | CheckKind::Report => &["bound"],
            CheckKind::Unmixed => &["degree"],
            CheckKind::PairCertificate => &["n"],
            CheckKind::Counterexample => &["bound"],
            CheckKind::Presentation => &["bound"],
            CheckKind::Retraction => &["samples", "seed"],
            _ => &[],
        }
    }
}

#[derive(Clone, Debug)]
pub enum Pool {
    Listed(Vec<Vec<Expr>>),
    /// Every ordered selection of distinct elements, of length
    /// `1..=max_length`.
    Sequences {
        elements: Vec<Expr>,
        max_length: usize,
    },
}

#[derive(Clone, Debug)]
pub enum Operands {
    Sequence(Vec<Expr>),
    Ideal(Vec<Expr>),
    Pool(Pool),
    Nothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Bool(bool),
    Int(usize),
    Infinity,
    Violation,
    NoViolation,
    Undecided,
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Bool(b) => write!(f, "{b}"),
            Expect::Int(n) => write!(f, "{n}"),
            Expect::Infinity => f.write_str("infinity"),
            Expect::Violation => f.write_str("violation"),
            Expect::NoViolation => f.write_str("no_violation"),
            Expect::Undecided => f.write_str("undecided"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub kind: CheckKind,
    pub operands: Operands,
    /// A ring for this check only.
    pub ring: Option<RingExpr>,
    pub options: Vec<(String, u64)>,
    pub expect: Option<Expect>,
    pub pos: Pos,
}

impl Check {
    pub fn option(&self, name: &str) -> Option<u64> {
        self.options.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opts: Vec<String> = self.options.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if matches!(self.operands, Operands::Nothing) && self.ring.is_none() {
            f.write_str(self.kind.name())?;
            if !opts.is_empty() {
                write!(f, "({})", opts.join(", "))?;
            }
        } else {
            write!(f, "check {}", self.kind.name())?;
            match &self.operands {
                Operands::Sequence(xs) | Operands::Ideal(xs) => {
                    f.write_str(" ")?;
                    write_list(f, xs)?;
                }
                Operands::Pool(Pool::Listed(seqs)) => {
                    f.write_str(" [")?;
                    for (i, s) in seqs.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write_list(f, s)?;
                    }
                    f.write_str("]")?;
                }
                Operands::Pool(Pool::Sequences { elements, max_length }) => {
                    f.write_str(" sequences ")?;
                    write_list(f, elements)?;
                    write!(f, " up to {max_length}")?;
                }
                Operands::Nothing => {}
            }
            if let Some(r) = &self.ring {
                write!(f, " in {r}")?;
            }
            for o in &opts {
                write!(f, " {o}")?;
            }
        }
        if let Some(e) = &self.expect {
            write!(f, " expect {e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Context {
    Ring(RingExpr),
    Model(ModelExpr),
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Ring(r) => write!(f, "{r}"),
            Context::Model(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Statement {
    Context(Context),
    Check(Check),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Context(c) => write!(f, "{c}"),
            Statement::Check(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub name: Option<String>,
    pub budget: Option<u64>,
    pub statements: Vec<Statement>,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "scenario \"{n}\"")?;
        }
        if let Some(b) = self.budget {
            writeln!(f, "budget {b}")?;
        }
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
