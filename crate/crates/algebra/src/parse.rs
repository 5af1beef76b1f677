//! Text grammar for rings, ideals and elements.
//!
//! ```text
//! ring    := field '[' names ']' ( '/' ideal )?
//! field   := 'QQ' | 'GF' '(' prime ')'
//! ideal   := '(' ( expr ( ',' expr )* )? ')'
//! expr    := ( '+' | '-' )? term ( ( '+' | '-' ) term )*
//! term    := power ( ( '*' | '/' ) power )*
//! power   := atom ( '^' integer )?
//! atom    := integer | name | '(' expr ')' | '-' atom
//! ```
//!
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::PolyRing;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Str(String),
    Punct(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
    /// Byte offset of the token start.
    pub offset: usize,
}

const PUNCT: &str = "()[]{},;=+-*/^.:<>";

/// Splits text into tokens. `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.char_indices().peekable();
    while let Some(&(off, c)) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            out.push(Token {
                kind: TokenKind::Newline,
                line: tl,
                column: tc,
                offset: off,
            });
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let kind = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            TokenKind::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            TokenKind::Ident(s)
        } else if c == '"' {
            chars.next();
            col += 1;
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some((_, '"')) => {
                        col += 1;
                        break;
                    }
                    Some((_, '\n')) | None => {
                        return Err(syntax(tl, tc, "unterminated string"));
                    }
                    Some((_, d)) => {
                        s.push(d);
                        col += 1;
                    }
                }
            }
            TokenKind::Str(s)
        } else if PUNCT.contains(c) {
            chars.next();
            col += 1;
            TokenKind::Punct(c)
        } else {
            return Err(syntax(tl, tc, &format!("unexpected character {c:?}")));
        };
        out.push(Token {
            kind,
            line: tl,
            column: tc,
            offset: off,
        });
    }
    out.push(Token {
        kind: TokenKind::Eof,
        line,
        column: col,
        offset: text.len(),
    });
    Ok(out)
}

fn syntax(line: usize, column: usize, message: &str) -> AlgebraError {
    AlgebraError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

/// Cursor over a token list.
#[derive(Clone, Debug)]
pub struct TokenStream {
    tokens: Vec<Token>,
    pos: usize,
    /// Newlines are skipped while this is positive.
    skip_newlines: usize,
}

impl TokenStream {
    pub fn new(text: &str) -> Result<Self> {
        Ok(TokenStream {
            tokens: tokenize(text)?,
            pos: 0,
            skip_newlines: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        let mut i = self.pos;
        if self.skip_newlines > 0 {
            while self.tokens[i].kind == TokenKind::Newline {
                i += 1;
            }
        }
        &self.tokens[i]
    }

    pub fn next_token(&mut self) -> Token {
        if self.skip_newlines > 0 {
            while self.tokens[self.pos].kind == TokenKind::Newline {
                self.pos += 1;
            }
        }
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn is_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    pub fn is_ident(&self, name: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == name)
    }

    pub fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.is_punct(c) {
            self.next_token();
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek().kind.clone() {
            TokenKind::Ident(s) => {
                self.next_token();
                Ok(s)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    pub fn expect_keyword(&mut self, word: &str) -> Result<()> {
        if self.is_ident(word) {
            self.next_token();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{word}'")))
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.next_token();
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn expect_usize(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let n = self.expect_int()?;
        n.to_usize()
            .ok_or_else(|| syntax(t.line, t.column, "integer out of range"))
    }

    /// Syntax error located at the next token.
    pub fn error(&self, message: &str) -> AlgebraError {
        let t = self.peek();
        let found = match &t.kind {
            TokenKind::Ident(s) => format!("'{s}'"),
            TokenKind::Int(n) => format!("'{n}'"),
            TokenKind::Str(s) => format!("\"{s}\""),
            TokenKind::Punct(c) => format!("'{c}'"),
            TokenKind::Newline => "end of line".into(),
            TokenKind::Eof => "end of input".into(),
        };
        syntax(t.line, t.column, &format!("{message}, found {found}"))
    }

    /// Runs `f` with newlines treated as whitespace (inside brackets).
    pub fn bracketed<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.skip_newlines += 1;
        let r = f(self);
        self.skip_newlines -= 1;
        r
    }

    /// Starts treating newlines as whitespace, as [`Self::bracketed`] does,
    /// for callers that cannot pass a closure.
    pub fn enter_brackets(&mut self) {
        self.skip_newlines += 1;
    }

    pub fn leave_brackets(&mut self) {
        self.skip_newlines = self.skip_newlines.saturating_sub(1);
    }

    /// Offset of the next token.
    pub fn offset(&self) -> usize {
        self.peek().offset
    }
}

pub fn parse_field(ts: &mut TokenStream) -> Result<Field> {
    let t = ts.peek().clone();
    match &t.kind {
        TokenKind::Ident(s) if s == "QQ" => {
            ts.next_token();
            Ok(Field::Rational)
        }
        TokenKind::Ident(s) if s == "GF" => {
            ts.next_token();
            ts.expect_punct('(')?;
            let pt = ts.peek().clone();
            let p = ts.expect_int()?;
            ts.expect_punct(')')?;
            let p = p
                .to_u32()
                .ok_or_else(|| syntax(pt.line, pt.column, "modulus too large"))?;
            Field::prime(p).map_err(|e| syntax(pt.line, pt.column, &e.to_string()))
        }
        _ => Err(ts.error("expected a field (QQ or GF(p))")),
    }
}

/// Parses `field[names]` and returns the polynomial ring in `order`.
pub fn parse_poly_ring(ts: &mut TokenStream, order: MonomialOrder) -> Result<PolyRing> {
    let field = parse_field(ts)?;
    let t = ts.peek().clone();
    ts.expect_punct('[')?;
    let names = ts.bracketed(|ts| {
        let mut names = Vec::new();
        if !ts.is_punct(']') {
            loop {
                names.push(ts.expect_ident()?);
                if !ts.eat_punct(',') {
                    break;
                }
            }
        }
        ts.expect_punct(']')?;
        Ok(names)
    })?;
    PolyRing::new(field, &names, order).map_err(|e| syntax(t.line, t.column, &e.to_string()))
}

/// Parses `field[names]` optionally followed by `/ (relations)`.
pub fn parse_ring_with_relations(ts: &mut TokenStream, order: MonomialOrder) -> Result<(PolyRing, Vec<Poly>)> {
    let ring = parse_poly_ring(ts, order)?;
    let rels = if ts.eat_punct('/') {
        parse_ideal_gens(ts, &ring)?
    } else {
        Vec::new()
    };
    Ok((ring, rels))
}

/// Parses `( f1, f2, ... )`.
pub fn parse_ideal_gens(ts: &mut TokenStream, ring: &PolyRing) -> Result<Vec<Poly>> {
    ts.expect_punct('(')?;
    ts.bracketed(|ts| {
        let mut gens = Vec::new();
        if !ts.is_punct(')') {
            loop {
                gens.push(parse_expr(ts, ring)?);
                if !ts.eat_punct(',') {
                    break;
                }
            }
        }
        ts.expect_punct(')')?;
        Ok(gens)
    })
}

pub fn parse_expr(ts: &mut TokenStream, ring: &PolyRing) -> Result<Poly> {
    let mut acc = if ts.eat_punct('-') {
        parse_term(ts, ring)?.neg()
    } else {
        ts.eat_punct('+');
        parse_term(ts, ring)?
    };
    loop {
        if ts.eat_punct('+') {
            acc = acc.add(&parse_term(ts, ring)?);
        } else if ts.eat_punct('-') {
            acc = acc.sub(&parse_term(ts, ring)?);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(ts: &mut TokenStream, ring: &PolyRing) -> Result<Poly> {
    let mut acc = parse_power(ts, ring)?;
    loop {
        if ts.eat_punct('*') {
            acc = acc.mul(&parse_power(ts, ring)?);
        } else if ts.is_punct('/') {
            let t = ts.next_token();
            let d = parse_power(ts, ring)?;
            if !d.is_constant() || d.is_zero() {
                return Err(syntax(t.line, t.column, "division only by nonzero constants"));
            }
            let inv = d.leading_coefficient().unwrap().inv()?;
            acc = acc.scale(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_power(ts: &mut TokenStream, ring: &PolyRing) -> Result<Poly> {
    let base = parse_atom(ts, ring)?;
    if ts.eat_punct('^') {
        let t = ts.peek().clone();
        let e = ts.expect_int()?;
        let e = e
            .to_u32()
            .filter(|&e| e <= u16::MAX as u32)
            .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn parse_atom(ts: &mut TokenStream, ring: &PolyRing) -> Result<Poly> {
    let t = ts.peek().clone();
    match &t.kind {
        TokenKind::Int(n) => {
            ts.next_token();
            Ok(ring.constant(ring.field().from_bigint(n)))
        }
        TokenKind::Ident(name) => {
            ts.next_token();
            ring.var_named(name)
                .map_err(|_| syntax(t.line, t.column, &format!("unknown variable '{name}'")))
        }
        TokenKind::Punct('(') => {
            ts.next_token();
            let e = ts.bracketed(|ts| {
                let e = parse_expr(ts, ring)?;
                ts.expect_punct(')')?;
                Ok(e)
            })?;
            Ok(e)
        }
        TokenKind::Punct('-') => {
            ts.next_token();
            Ok(parse_atom(ts, ring)?.neg())
        }
        _ => Err(ts.error("expected an expression")),
    }
}

fn finish(ts: &mut TokenStream) -> Result<()> {
    while ts.peek().kind == TokenKind::Newline {
        ts.next_token();
    }
    if ts.at_eof() {
        Ok(())
    } else {
        Err(ts.error("unexpected trailing input"))
    }
}

/// Parses a complete element of `ring`.
pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly> {
    let mut ts = TokenStream::new(text)?;
    ts.bracketed(|ts| {
        let p = parse_expr(ts, ring)?;
        finish(ts)?;
        Ok(p)
    })
}

/// Parses a complete `( f1, ..., fk )` list over `ring`.
pub fn parse_ideal(ring: &PolyRing, text: &str) -> Result<Vec<Poly>> {
    let mut ts = TokenStream::new(text)?;
    ts.bracketed(|ts| {
        let g = parse_ideal_gens(ts, ring)?;
        finish(ts)?;
        Ok(g)
    })
}

/// Parses a complete ring description such as `QQ[x,y]/(x*y)`.
pub fn parse_ring(text: &str, order: MonomialOrder) -> Result<(PolyRing, Vec<Poly>)> {
    let mut ts = TokenStream::new(text)?;
    ts.bracketed(|ts| {
        let r = parse_ring_with_relations(ts, order)?;
        finish(ts)?;
        Ok(r)
    })
}
