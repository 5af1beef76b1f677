//! Recursive-descent parser for scenario text.
//!
//! ```text
//! scenario  := stmt ((';' | newline) stmt)*
//! stmt      := 'scenario' STRING | 'budget' INT | ring | model
//!            | 'check' KIND operands ['in' ring] option* ['expect' value]
//!            | KIND ['(' option (',' option)* ')'] ['expect' value]
//! ring      := ('QQ' | 'GF' '(' INT ')') '[' names ']' ['/' '(' exprs ')']
//! model     := 'trivext' '(' ring 'at' '(' exprs ')' ',' 'level' '=' INT ')'
//!            | 'valuation' '(' 'rank' '=' INT ')' | 'badring' '(' 'N' '=' INT ')'
//!            | 'subring' '(' 'B' '=' INT ')' | 'action' '(' ring ';' matrices ')'
//! operands  := '(' exprs ')' | '[' '(' exprs ')' (',' '(' exprs ')')* ']'
//!            | 'sequences' '(' exprs ')' 'up' 'to' INT
//! ```

use std::fmt;

use cmlab_algebra::parse::{TokenKind, TokenStream};
use cmlab_algebra::{AlgebraError, Field};

use crate::ast::{
    Check, CheckKind, Context, Expect, Expr, FieldExpr, IntMatrix, ModelExpr, Operand, Operands, Pool, Pos, RingExpr,
    Scenario, Statement,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<AlgebraError> for ParseError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Syntax { line, column, message } => ParseError { line, column, message },
            other => ParseError {
                line: 0,
                column: 0,
                message: other.to_string(),
            },
        }
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

fn error_at(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> PResult<Scenario> {
    Parser::new(text)?.scenario()
}

struct Parser {
    ts: TokenStream,
    /// Variable names visible to checks, when known before running.
    scope: Option<Vec<String>>,
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            ts: TokenStream::new(text)?,
            scope: None,
        })
    }

    fn pos(&self) -> Pos {
        let t = self.ts.peek();
        Pos {
            line: t.line,
            column: t.column,
        }
    }

    fn at_newline(&self) -> bool {
        self.ts.peek().kind == TokenKind::Newline
    }

    fn skip_separators(&mut self) {
        while self.at_newline() || self.ts.is_punct(';') {
            self.ts.next_token();
        }
    }

    fn scenario(&mut self) -> PResult<Scenario> {
        let mut sc = Scenario::default();
        loop {
            self.skip_separators();
            if self.ts.at_eof() {
                return Ok(sc);
            }
            self.statement(&mut sc)?;
            if !(self.ts.at_eof() || self.at_newline() || self.ts.is_punct(';')) {
                return Err(self.ts.error("expected ';' or a new line").into());
            }
        }
    }

    fn statement(&mut self, sc: &mut Scenario) -> PResult<()> {
        let pos = self.pos();
        let word = match &self.ts.peek().kind {
            TokenKind::Ident(w) => w.clone(),
            _ => return Err(self.ts.error("expected a statement").into()),
        };
        match word.as_str() {
            "scenario" => {
                self.ts.next_token();
                if sc.name.is_some() {
                    return Err(error_at(pos, "the scenario is already named"));
                }
                sc.name = Some(match self.ts.next_token().kind {
                    TokenKind::Str(s) => s,
                    TokenKind::Ident(s) => s,
                    _ => return Err(error_at(pos, "expected a scenario name")),
                });
            }
            "budget" => {
                self.ts.next_token();
                sc.budget = Some(self.ts.expect_usize()? as u64);
            }
            "QQ" | "GF" => {
                let r = self.ring()?;
                self.scope = Some(r.names.clone());
                sc.statements.push(Statement::Context(Context::Ring(r)));
            }
            "trivext" | "valuation" | "badring" | "subring" | "action" => {
                let m = self.model()?;
                sc.statements.push(Statement::Context(Context::Model(m)));
            }
            "check" => {
                self.ts.next_token();
                let c = self.check(true)?;
                sc.statements.push(Statement::Check(c));
            }
            w => match CheckKind::from_name(w) {
                Some(k) if k.operand() == Operand::Nothing => {
                    let c = self.check(false)?;
                    sc.statements.push(Statement::Check(c));
                }
                _ => return Err(error_at(pos, format!("unknown statement '{w}'"))),
            },
        }
        Ok(())
    }

    fn ring(&mut self) -> PResult<RingExpr> {
        let pos = self.pos();
        let field = if self.ts.is_ident("QQ") {
            self.ts.next_token();
            FieldExpr::Rational
        } else if self.ts.is_ident("GF") {
            self.ts.next_token();
            self.ts.expect_punct('(')?;
            let ppos = self.pos();
            let p = self.ts.expect_usize()?;
            self.ts.expect_punct(')')?;
            let p = u32::try_from(p).map_err(|_| error_at(ppos, "modulus too large"))?;
            Field::prime(p).map_err(|e| error_at(ppos, e.to_string()))?;
            FieldExpr::Prime(p)
        } else {
            return Err(self.ts.error("expected a field (QQ or GF(p))").into());
        };
        self.ts.expect_punct('[')?;
        let names = self.ts.bracketed(|ts| {
            let mut names: Vec<String> = Vec::new();
            if !ts.is_punct(']') {
                loop {
                    let t = ts.peek().clone();
                    let n = ts.expect_ident()?;
                    if names.contains(&n) {
                        return Err(AlgebraError::Syntax {
                            line: t.line,
                            column: t.column,
                            message: format!("variable '{n}' repeated"),
                        });
                    }
                    names.push(n);
                    if !ts.eat_punct(',') {
                        break;
                    }
                }
            }
            ts.expect_punct(']')?;
            Ok(names)
        })?;
        let relations = if self.ts.eat_punct('/') {
            let rels = self.expr_list()?;
            check_scope(&rels, &names)?;
            rels
        } else {
            Vec::new()
        };
        Ok(RingExpr {
            field,
            names,
            relations,
            pos,
        })
    }

    fn keyword_int(&mut self, key: &str) -> PResult<usize> {
        self.ts.expect_keyword(key)?;
        self.ts.expect_punct('=')?;
        Ok(self.ts.expect_usize()?)
    }

    fn model(&mut self) -> PResult<ModelExpr> {
        let pos = self.pos();
        let word = self.ts.expect_ident()?;
        self.ts.expect_punct('(')?;
        self.ts.enter_brackets();
        let m = match word.as_str() {
            "trivext" => {
                let base = self.ring()?;
                self.ts.expect_keyword("at")?;
                let maximal = self.expr_list()?;
                check_scope(&maximal, &base.names)?;
                self.ts.expect_punct(',')?;
                let level = self.keyword_int("level")?;
                self.scope = Some(base.names.clone());
                ModelExpr::TrivialExtension { base, maximal, level }
            }
            "valuation" => {
                let rpos = self.pos();
                let rank = self.keyword_int("rank")?;
                if rank != 2 {
                    return Err(error_at(rpos, "only rank 2 is available"));
                }
                self.scope = Some(vec!["u".into(), "w".into()]);
                ModelExpr::Valuation { rank }
            }
            "badring" => {
                let level = self.keyword_int("N")?;
                let mut names = vec!["x".to_string()];
                names.extend((1..=level).map(|i| format!("y{i}")));
                self.scope = Some(names);
                ModelExpr::BadRing { level }
            }
            "subring" => {
                let bpos = self.pos();
                let bound = self.keyword_int("B")?;
                let bound = u32::try_from(bound).map_err(|_| error_at(bpos, "bound too large"))?;
                self.scope = Some(vec!["x".into(), "y".into()]);
                ModelExpr::Subring { bound }
            }
            "action" => {
                let ring = self.ring()?;
                self.ts.expect_punct(';')?;
                let mut matrices = Vec::new();
                loop {
                    matrices.push(self.matrix()?);
                    if !self.ts.eat_punct(',') {
                        break;
                    }
                }
                // Invariant generator names are only known after running.
                self.scope = None;
                ModelExpr::Action { ring, matrices }
            }
            _ => return Err(error_at(pos, format!("unknown model '{word}'"))),
        };
        self.ts.expect_punct(')')?;
        self.ts.leave_brackets();
        Ok(m)
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let pos = self.pos();
        let neg = self.ts.eat_punct('-');
        let n = self.ts.expect_int()?;
        let v: i64 = n
            .to_string()
            .parse()
            .map_err(|_| error_at(pos, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn matrix(&mut self) -> PResult<IntMatrix> {
        self.ts.expect_punct('[')?;
        let mut rows = Vec::new();
        loop {
            self.ts.expect_punct('[')?;
            let mut row = Vec::new();
            loop {
                row.push(self.signed_int()?);
                if !self.ts.eat_punct(',') {
                    break;
                }
            }
            self.ts.expect_punct(']')?;
            rows.push(row);
            if !self.ts.eat_punct(',') {
                break;
            }
        }
        self.ts.expect_punct(']')?;
        Ok(rows)
    }

    fn check(&mut self, explicit: bool) -> PResult<Check> {
        let pos = self.pos();
        let name = self.ts.expect_ident()?;
        let kind = CheckKind::from_name(&name).ok_or_else(|| error_at(pos, format!("unknown check '{name}'")))?;
        let mut options = Vec::new();
        let operands = match kind.operand() {
            Operand::Sequence => Operands::Sequence(self.expr_list()?),
            Operand::Ideal => Operands::Ideal(self.expr_list()?),
            Operand::Pool => Operands::Pool(self.pool()?),
            Operand::Nothing => {
                if self.ts.is_punct('(') {
                    self.ts.next_token();
                    if !self.ts.is_punct(')') {
                        loop {
                            options.push(self.option(kind)?);
                            if !self.ts.eat_punct(',') {
                                break;
                            }
                        }
                    }
                    self.ts.expect_punct(')')?;
                }
                Operands::Nothing
            }
        };
        let mut ring = None;
        if explicit && self.ts.is_ident("in") {
            self.ts.next_token();
            ring = Some(self.ring()?);
        }
        while let TokenKind::Ident(w) = &self.ts.peek().kind {
            if !kind.options().contains(&w.as_str()) {
                break;
            }
            options.push(self.option(kind)?);
        }
        let expect = if self.ts.is_ident("expect") {
            self.ts.next_token();
            Some(self.expect_value()?)
        } else {
            None
        };
        let names = ring
            .as_ref()
            .map(|r: &RingExpr| r.names.clone())
            .or_else(|| self.scope.clone());
        if let Some(names) = names {
            let exprs: Vec<&Expr> = match &operands {
                Operands::Sequence(xs) | Operands::Ideal(xs) => xs.iter().collect(),
                Operands::Pool(Pool::Listed(seqs)) => seqs.iter().flatten().collect(),
                Operands::Pool(Pool::Sequences { elements, .. }) => elements.iter().collect(),
                Operands::Nothing => Vec::new(),
            };
            for e in exprs {
                check_scope(std::slice::from_ref(e), &names)?;
            }
        }
        Ok(Check {
            kind,
            operands,
            ring,
            options,
            expect,
            pos,
        })
    }

    fn option(&mut self, kind: CheckKind) -> PResult<(String, u64)> {
        let pos = self.pos();
        let key = self.ts.expect_ident()?;
        if !kind.options().contains(&key.as_str()) {
            return Err(error_at(pos, format!("'{}' takes no option '{key}'", kind.name())));
        }
        self.ts.expect_punct('=')?;
        Ok((key, self.ts.expect_usize()? as u64))
    }

    fn expect_value(&mut self) -> PResult<Expect> {
        let pos = self.pos();
        match self.ts.next_token().kind {
            TokenKind::Int(n) => n
                .to_string()
                .parse()
                .map(Expect::Int)
                .map_err(|_| error_at(pos, "integer out of range")),
            TokenKind::Ident(w) => match w.as_str() {
                "true" => Ok(Expect::Bool(true)),
                "false" => Ok(Expect::Bool(false)),
                "infinity" => Ok(Expect::Infinity),
                "violation" => Ok(Expect::Violation),
                "no_violation" => Ok(Expect::NoViolation),
                "undecided" => Ok(Expect::Undecided),
                _ => Err(error_at(pos, format!("unknown expected value '{w}'"))),
            },
            _ => Err(error_at(pos, "expected a value after 'expect'")),
        }
    }

    fn pool(&mut self) -> PResult<Pool> {
        if self.ts.is_ident("sequences") {
            self.ts.next_token();
            let elements = self.expr_list()?;
            self.ts.expect_keyword("up")?;
            self.ts.expect_keyword("to")?;
            let max_length = self.ts.expect_usize()?;
            return Ok(Pool::Sequences { elements, max_length });
        }
        self.ts.expect_punct('[')?;
        let mut seqs = Vec::new();
        let mut inner = |p: &mut Self| -> PResult<()> {
            if !p.ts.is_punct(']') {
                loop {
                    seqs.push(p.expr_list()?);
                    if !p.ts.eat_punct(',') {
                        break;
                    }
                }
            }
            p.ts.expect_punct(']')?;
            Ok(())
        };
        self.with_brackets(&mut inner)?;
        Ok(Pool::Listed(seqs))
    }

    fn with_brackets<T>(&mut self, f: &mut dyn FnMut(&mut Self) -> PResult<T>) -> PResult<T> {
        self.ts.enter_brackets();
        let r = f(self);
        self.ts.leave_brackets();
        r
    }

    /// `( e1, ..., ek )`, possibly empty.
    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.ts.expect_punct('(')?;
        self.with_brackets(&mut |p: &mut Self| {
            let mut xs = Vec::new();
            if !p.ts.is_punct(')') {
                loop {
                    xs.push(p.expr()?);
                    if !p.ts.eat_punct(',') {
                        break;
                    }
                }
            }
            p.ts.expect_punct(')')?;
            Ok(xs)
        })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = if self.ts.eat_punct('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.ts.eat_punct('+');
            self.term()?
        };
        loop {
            if self.ts.eat_punct('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.ts.eat_punct('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.power()?;
        loop {
            if self.ts.eat_punct('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else if self.ts.eat_punct('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.ts.eat_punct('^') {
            let pos = self.pos();
            let e = self.ts.expect_usize()?;
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e <= u16::MAX as u32)
                .ok_or_else(|| error_at(pos, "exponent too large"))?;
            Ok(Expr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.ts.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.ts.next_token();
                Ok(Expr::Int(n.to_string()))
            }
            TokenKind::Ident(name) => {
                self.ts.next_token();
                Ok(Expr::Var(name, pos))
            }
            TokenKind::Punct('(') => {
                self.ts.next_token();
                self.with_brackets(&mut |p: &mut Self| {
                    let e = p.expr()?;
                    p.ts.expect_punct(')')?;
                    Ok(e)
                })
            }
            TokenKind::Punct('-') => {
                self.ts.next_token();
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            _ => Err(self.ts.error("expected an expression").into()),
        }
    }
}

fn check_scope(exprs: &[Expr], names: &[String]) -> PResult<()> {
    for e in exprs {
        for (v, pos) in e.variables() {
            if !names.iter().any(|n| n == v) {
                return Err(error_at(pos, format!("unknown variable '{v}'")));
            }
        }
    }
    Ok(())
}
