//! Lexer and recursive-descent parser for terms, types, kinds and
//! environment files.
//!
//! Type variable names are resolved through a [`Scope`], so several inputs
//! (an environment file, a type, a set of equations) can share variables.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::pretty::Namer;
use crate::subst::Substitution;
use crate::syntax::{
    BaseType, Fields, Ident, Kind, KindAssignment, Label, Literal, MonoType, PolyType, Sign, Term,
    TyVar, TypeAssignment,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start.line, self.start.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    TyVar(String),
    Int(i64),
    Str(String),
    Backslash,
    Dot,
    Eq,
    Comma,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    ColonColon,
    ColonEq,
    Arrow,
    Plus,
    Minus,
    LKind,
    Bars,
    RKind,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::TyVar(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(_) => "a string".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Backslash => "\\",
            Tok::Dot => ".",
            Tok::Eq => "=",
            Tok::Comma => ",",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Colon => ":",
            Tok::ColonColon => "::",
            Tok::ColonEq => ":=",
            Tok::Arrow => "->",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::LKind => "<<",
            Tok::Bars => "||",
            Tok::RKind => ">>",
            _ => "?",
        }
    }
}

const KEYWORDS: &[&str] = &[
    "let", "in", "true", "false", "modify", "extend", "remove", "forall", "Int", "Bool", "String",
    "U",
];

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

struct Lexer<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    column: usize,
    newlines: bool,
}

impl<'a> Lexer<'a> {
    fn pos(&self) -> Pos {
        Pos { offset: self.offset, line: self.line, column: self.column }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.offset..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, start: Pos, message: String) -> ParseError {
        ParseError { span: Span { start, end: self.pos() }, message, expected: Vec::new() }
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_blank();
            let start = self.pos();
            let Some(c) = self.peek() else {
                out.push(Token { tok: Tok::Eof, span: Span { start, end: start } });
                return Ok(out);
            };
            let tok = match c {
                '\n' => {
                    self.bump();
                    Tok::Newline
                }
                '\\' => self.single(Tok::Backslash),
                '.' => self.single(Tok::Dot),
                '=' => self.single(Tok::Eq),
                ',' => self.single(Tok::Comma),
                '{' => self.single(Tok::LBrace),
                '}' => self.single(Tok::RBrace),
                '(' => self.single(Tok::LParen),
                ')' => self.single(Tok::RParen),
                '+' => self.single(Tok::Plus),
                ':' => match self.peek2() {
                    Some(':') => self.double(Tok::ColonColon),
                    Some('=') => self.double(Tok::ColonEq),
                    _ => self.single(Tok::Colon),
                },
                '-' if self.peek2() == Some('>') => self.double(Tok::Arrow),
                '-' => self.single(Tok::Minus),
                '<' if self.peek2() == Some('<') => self.double(Tok::LKind),
                '>' if self.peek2() == Some('>') => self.double(Tok::RKind),
                '|' if self.peek2() == Some('|') => self.double(Tok::Bars),
                '\'' => {
                    self.bump();
                    let name = self.word();
                    if name.is_empty() {
                        return Err(self.error(start, "expected a type variable name after `'`".into()));
                    }
                    Tok::TyVar(format!("'{name}"))
                }
                '"' => self.string(start)?,
                c if c.is_ascii_digit() => {
                    let digits = self.word();
                    if !digits.chars().all(|d| d.is_ascii_digit()) {
                        return Err(self.error(start, format!("malformed number `{digits}`")));
                    }
                    let n = digits
                        .parse::<i64>()
                        .map_err(|_| self.error(start, format!("integer `{digits}` out of range")))?;
                    Tok::Int(n)
                }
                c if c.is_alphabetic() || c == '_' => Tok::Ident(self.word()),
                other => {
                    self.bump();
                    return Err(self.error(start, format!("unexpected character `{other}`")));
                }
            };
            if tok == Tok::Newline && !self.newlines {
                continue;
            }
            out.push(Token { tok, span: Span { start, end: self.pos() } });
        }
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() && c != '\n' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn single(&mut self, t: Tok) -> Tok {
        self.bump();
        t
    }

    fn double(&mut self, t: Tok) -> Tok {
        self.bump();
        self.bump();
        t
    }

    fn word(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn string(&mut self, start: Pos) -> Result<Tok, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(start, "unterminated string".into())),
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some('"') => s.push('"'),
                    Some('\\') => s.push('\\'),
                    _ => return Err(self.error(start, "invalid escape in string".into())),
                },
                Some(c) => s.push(c),
            }
        }
    }
}

fn lex(src: &str, newlines: bool) -> Result<Vec<Token>, ParseError> {
    Lexer { src, offset: 0, line: 1, column: 1, newlines }.tokens()
}

/// Maps type-variable names to variables. Unknown names get fresh ids.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    names: BTreeMap<String, TyVar>,
    next: u32,
}

impl Scope {
    pub fn new() -> Scope {
        Scope { names: BTreeMap::new(), next: 1 }
    }

    pub fn lookup_or_insert(&mut self, name: &str) -> TyVar {
        if let Some(v) = self.names.get(name) {
            return *v;
        }
        let v = self.fresh();
        self.names.insert(name.to_string(), v);
        v
    }

    pub fn get(&self, name: &str) -> Option<TyVar> {
        self.names.get(name).copied()
    }

    pub fn fresh(&mut self) -> TyVar {
        let v = TyVar(self.next);
        self.next += 1;
        v
    }

    /// The next id this scope would hand out.
    pub fn next_id(&self) -> u32 {
        self.next
    }

    /// A namer that prints every named variable under its source name.
    pub fn namer(&self) -> Namer {
        Namer::with_names(self.names.iter().map(|(n, v)| (*v, n.clone())))
    }
}

struct Parser<'s> {
    toks: Vec<Token>,
    i: usize,
    scope: &'s mut Scope,
    /// Binders currently in scope for `forall`, innermost last.
    bound: Vec<(String, TyVar)>,
}

type PResult<T> = Result<T, ParseError>;

impl<'s> Parser<'s> {
    fn new(toks: Vec<Token>, scope: &'s mut Scope) -> Self {
        Parser { toks, i: 0, scope, bound: Vec::new() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let last = self.toks.len() - 1;
        &self.toks[(self.i + ahead).min(last)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.i].span
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let found = self.peek().describe();
        let list = expected.join(", ");
        Err(ParseError {
            span: self.span(),
            message: format!("expected {list}, found {found}"),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, t: Tok) -> PResult<Token> {
        if *self.peek() == t {
            Ok(self.advance())
        } else {
            let want = format!("`{}`", t.symbol());
            self.fail(&[want.as_str()])
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            let want = format!("`{kw}`");
            self.fail(&[want.as_str()])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.advance();
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    fn label(&mut self) -> PResult<Label> {
        self.ident("a label").map(|s| Label::new(&s))
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    // ---- terms ----

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Backslash => {
                self.advance();
                let x = self.ident("a variable")?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Term::Abs(Ident::from(x.as_str()), Box::new(body)))
            }
            Tok::Ident(s) if s == "let" => {
                self.advance();
                let x = self.ident("a variable")?;
                self.expect(Tok::Eq)?;
                let m = self.term()?;
                self.expect_keyword("in")?;
                let n = self.term()?;
                Ok(Term::Let(Ident::from(x.as_str()), Box::new(m), Box::new(n)))
            }
            _ => self.app_term(),
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => {
                !matches!(s.as_str(), "let" | "in" | "forall" | "Int" | "Bool" | "String" | "U")
            }
            Tok::Int(_) | Tok::Str(_) | Tok::LBrace | Tok::LParen => true,
            Tok::Minus => matches!(self.peek_at(1), Tok::Int(_)),
            _ => false,
        }
    }

    fn app_term(&mut self) -> PResult<Term> {
        let mut f = self.postfix()?;
        while self.starts_atom() {
            let a = self.postfix()?;
            f = Term::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn postfix(&mut self) -> PResult<Term> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Dot {
            self.advance();
            let l = self.label()?;
            t = Term::Select(Box::new(t), l);
        }
        Ok(t)
    }

    fn atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Term::Const(Literal::Int(n)))
            }
            Tok::Minus if matches!(self.peek_at(1), Tok::Int(_)) => {
                self.advance();
                let Tok::Int(n) = self.peek().clone() else { unreachable!() };
                self.advance();
                Ok(Term::Const(Literal::Int(-n)))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Term::Const(Literal::Str(s)))
            }
            Tok::LParen => {
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBrace => {
                self.advance();
                let mut fields = BTreeMap::new();
                if *self.peek() != Tok::RBrace {
                    loop {
                        let span = self.span();
                        let l = self.label()?;
                        self.expect(Tok::Eq)?;
                        let m = self.term()?;
                        if fields.insert(l.clone(), m).is_some() {
                            return Err(duplicate(span, &l));
                        }
                        if *self.peek() == Tok::Comma {
                            self.advance();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                Ok(Term::Record(fields))
            }
            Tok::Ident(s) => match s.as_str() {
                "true" | "false" => {
                    self.advance();
                    Ok(Term::Const(Literal::Bool(s == "true")))
                }
                "modify" | "extend" => {
                    self.advance();
                    self.expect(Tok::LParen)?;
                    let m = self.term()?;
                    self.expect(Tok::Comma)?;
                    let l = self.label()?;
                    self.expect(Tok::Comma)?;
                    let n = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(if s == "modify" {
                        Term::Modify(Box::new(m), l, Box::new(n))
                    } else {
                        Term::Extend(Box::new(m), l, Box::new(n))
                    })
                }
                "remove" => {
                    self.advance();
                    self.expect(Tok::LParen)?;
                    let m = self.term()?;
                    self.expect(Tok::Comma)?;
                    let l = self.label()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::Remove(Box::new(m), l))
                }
                _ => {
                    let x = self.ident("a term")?;
                    Ok(Term::Var(Ident::from(x.as_str())))
                }
            },
            _ => self.fail(&["a term"]),
        }
    }

    // ---- types ----

    fn poly(&mut self) -> PResult<PolyType> {
        let mut quantifiers = Vec::new();
        let depth = self.bound.len();
        while self.is_keyword("forall") {
            self.advance();
            let name = match self.peek().clone() {
                Tok::TyVar(n) => {
                    self.advance();
                    n
                }
                _ => return self.fail(&["a type variable"]),
            };
            self.expect(Tok::ColonColon)?;
            // the binder is not in scope in its own kind
            let kind = self.kind()?;
            self.expect(Tok::Dot)?;
            let v = self.scope.fresh();
            self.bound.push((name, v));
            quantifiers.push((v, kind));
        }
        let body = self.mono();
        self.bound.truncate(depth);
        Ok(PolyType::new(quantifiers, body?))
    }

    fn mono(&mut self) -> PResult<MonoType> {
        let dom = self.ext_type()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let cod = self.mono()?;
            return Ok(MonoType::arrow(dom, cod));
        }
        Ok(dom)
    }

    fn ext_type(&mut self) -> PResult<MonoType> {
        let head_span = self.span();
        let mut t = self.atom_type()?;
        loop {
            let sign = match self.peek() {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => return Ok(t),
            };
            if !t.is_extensible() {
                return Err(ParseError {
                    span: Span { start: head_span.start, end: self.span().end },
                    message: format!(
                        "field operation `{}` applied to a non-extensible type",
                        sign.symbol()
                    ),
                    expected: vec!["a type variable or record type".into()],
                });
            }
            self.advance();
            self.expect(Tok::LBrace)?;
            let l = self.label()?;
            self.expect(Tok::Colon)?;
            let ft = self.mono()?;
            self.expect(Tok::RBrace)?;
            t = t.op_unchecked(sign, l, ft);
        }
    }

    fn atom_type(&mut self) -> PResult<MonoType> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "Int" || s == "Bool" || s == "String" => {
                self.advance();
                Ok(MonoType::Base(match s.as_str() {
                    "Int" => BaseType::Int,
                    "Bool" => BaseType::Bool,
                    _ => BaseType::String,
                }))
            }
            Tok::TyVar(name) => {
                self.advance();
                Ok(MonoType::Var(self.resolve(&name)))
            }
            Tok::LBrace => {
                self.advance();
                let fields = self.field_list(Tok::RBrace)?;
                self.expect(Tok::RBrace)?;
                Ok(MonoType::Record(fields))
            }
            Tok::LParen => {
                self.advance();
                let t = self.mono()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["a type"]),
        }
    }

    fn resolve(&mut self, name: &str) -> TyVar {
        if let Some((_, v)) = self.bound.iter().rev().find(|(n, _)| n == name) {
            return *v;
        }
        self.scope.lookup_or_insert(name)
    }

    fn field_list(&mut self, close: Tok) -> PResult<Fields> {
        let mut fields = Fields::new();
        if *self.peek() == close {
            return Ok(fields);
        }
        loop {
            let span = self.span();
            let l = self.label()?;
            self.expect(Tok::Colon)?;
            let t = self.mono()?;
            if fields.insert(l.clone(), t).is_some() {
                return Err(duplicate(span, &l));
            }
            if *self.peek() == Tok::Comma {
                self.advance();
            } else {
                return Ok(fields);
            }
        }
    }

    fn kind(&mut self) -> PResult<Kind> {
        if self.is_keyword("U") {
            self.advance();
            return Ok(Kind::Universal);
        }
        let start = self.span();
        self.expect(Tok::LKind)?;
        let left = self.field_list(Tok::Bars)?;
        self.expect(Tok::Bars)?;
        let right = self.field_list(Tok::RKind)?;
        self.expect(Tok::RKind)?;
        Kind::record(left, right).map_err(|e| ParseError {
            span: Span { start: start.start, end: self.toks[self.i.saturating_sub(1)].span.end },
            message: e.to_string(),
            expected: Vec::new(),
        })
    }

    // ---- line-oriented inputs ----

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.advance();
        }
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.advance();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.fail(&["end of line"]),
        }
    }
}

fn duplicate(span: Span, l: &Label) -> ParseError {
    ParseError {
        span,
        message: format!("duplicate label `{l}`"),
        expected: Vec::new(),
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut scope = Scope::new();
    let mut p = Parser::new(lex(src, false)?, &mut scope);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<PolyType, ParseError> {
    parse_type_in(src, &mut Scope::new())
}

pub fn parse_type_in(src: &str, scope: &mut Scope) -> Result<PolyType, ParseError> {
    let mut p = Parser::new(lex(src, false)?, scope);
    let t = p.poly()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_mono(src: &str) -> Result<MonoType, ParseError> {
    parse_mono_in(src, &mut Scope::new())
}

pub fn parse_mono_in(src: &str, scope: &mut Scope) -> Result<MonoType, ParseError> {
    let mut p = Parser::new(lex(src, false)?, scope);
    let t = p.mono()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_kind(src: &str) -> Result<Kind, ParseError> {
    parse_kind_in(src, &mut Scope::new())
}

pub fn parse_kind_in(src: &str, scope: &mut Scope) -> Result<Kind, ParseError> {
    let mut p = Parser::new(lex(src, false)?, scope);
    let k = p.kind()?;
    p.finish()?;
    Ok(k)
}

/// Declarations read from an environment file.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub kinds: KindAssignment,
    pub types: TypeAssignment,
    pub subst: Substitution,
}

/// Parses lines of the form `'a :: KIND`, `x : TYPE` and `'a := TYPE`.
pub fn parse_env(src: &str) -> Result<Env, ParseError> {
    parse_env_in(src, &mut Scope::new())
}

pub fn parse_env_in(src: &str, scope: &mut Scope) -> Result<Env, ParseError> {
    let mut p = Parser::new(lex(src, true)?, scope);
    let mut env = Env::default();
    loop {
        p.skip_newlines();
        match p.peek().clone() {
            Tok::Eof => return Ok(env),
            Tok::TyVar(name) => {
                let span = p.span();
                p.advance();
                let v = p.resolve(&name);
                match p.peek() {
                    Tok::ColonColon => {
                        p.advance();
                        let k = p.kind()?;
                        if env.kinds.insert(v, k).is_some() {
                            return Err(redeclared(span, &name));
                        }
                    }
                    Tok::ColonEq => {
                        p.advance();
                        let t = p.mono()?;
                        if env.subst.get(v).is_some() {
                            return Err(redeclared(span, &name));
                        }
                        env.subst.insert(v, t);
                    }
                    _ => return p.fail(&["`::`", "`:=`"]),
                }
            }
            Tok::Ident(_) => {
                let span = p.span();
                let x = p.ident("a variable")?;
                p.expect(Tok::Colon)?;
                let t = p.poly()?;
                if env.types.insert(Ident::from(x.as_str()), t).is_some() {
                    return Err(redeclared(span, &x));
                }
            }
            _ => return p.fail(&["a type variable", "a variable"]),
        }
        p.end_of_line()?;
    }
}

fn redeclared(span: Span, name: &str) -> ParseError {
    ParseError { span, message: format!("`{name}` declared twice"), expected: Vec::new() }
}

/// Parses one `TYPE = TYPE` equation per line.
pub fn parse_equations_in(
    src: &str,
    scope: &mut Scope,
) -> Result<Vec<(MonoType, MonoType)>, ParseError> {
    let mut p = Parser::new(lex(src, true)?, scope);
    let mut out = Vec::new();
    loop {
        p.skip_newlines();
        if *p.peek() == Tok::Eof {
            return Ok(out);
        }
        let a = p.mono()?;
        p.expect(Tok::Eq)?;
        let b = p.mono()?;
        out.push((a, b));
        p.end_of_line()?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pretty;

    #[test]
    fn negative_literals() {
        let t = parse_term("f -3").unwrap();
        assert_eq!(t, Term::App(Box::new(Term::var("f")), Box::new(Term::Const(Literal::Int(-3)))));
        assert_eq!(pretty::term(&t), "f -3");
        assert!(parse_term("f - x").is_err());
    }

    #[test]
    fn term_examples() {
        assert_eq!(
            parse_term("\\x. x.name").unwrap(),
            Term::abs("x", Term::select(Term::var("x"), "name"))
        );
        assert_eq!(
            parse_term("extend({}, l, true)").unwrap(),
            Term::extend(Term::record([]), "l", Term::Const(Literal::Bool(true)))
        );
        assert_eq!(
            parse_term("let f = \\x. modify(x, age, 0) in f").unwrap(),
            Term::let_in(
                "f",
                Term::abs("x", Term::modify(Term::var("x"), "age", Term::int(0))),
                Term::var("f")
            )
        );
    }

    #[test]
    fn application_is_left_associative_and_selection_binds_tighter() {
        assert_eq!(
            parse_term("f x.l y").unwrap(),
            Term::app(
                Term::app(Term::var("f"), Term::select(Term::var("x"), "l")),
                Term::var("y")
            )
        );
    }

    #[test]
    fn type_examples() {
        let t = parse_type("'a + {l: Int} - {m: Bool}").unwrap();
        assert!(t.is_mono());
        let MonoType::Contr(inner, m, mt) = &t.body else { panic!("expected contraction") };
        assert_eq!(m.as_str(), "m");
        assert_eq!(**mt, MonoType::bool());
        assert!(matches!(**inner, MonoType::Ext(..)));

        let t = parse_type("forall 'a :: <<l: Int || >>. 'a -> Int").unwrap();
        assert_eq!(t.quantifiers.len(), 1);
        assert_eq!(t.quantifiers[0].1, Kind::rec([("l", MonoType::int())], []));

        let e = parse_type("Int + {l: Int}").unwrap_err();
        assert!(e.message.contains("non-extensible"), "{e}");
        assert_eq!(e.span.start.column, 1);
    }

    #[test]
    fn canonical_spacing() {
        let t = parse_type("{l:Int , m:Bool}").unwrap();
        assert_eq!(pretty::poly(&t), "{l: Int, m: Bool}");
        assert_eq!(pretty::term(&parse_term("((f) (x))").unwrap()), "f x");
    }

    #[test]
    fn kinds_parse_with_empty_sides() {
        assert_eq!(parse_kind("<< || l: Int>>").unwrap(), Kind::rec([], [("l", MonoType::int())]));
        assert_eq!(parse_kind("<<||>>").unwrap(), Kind::empty_record());
        assert_eq!(parse_kind("U").unwrap(), Kind::Universal);
        assert!(parse_kind("<<l: Int || l: Int>>").is_err());
    }

    #[test]
    fn errors_carry_positions_and_expectations() {
        let e = parse_term("\\x x").unwrap_err();
        assert_eq!(e.span.start.column, 4);
        assert_eq!(e.expected, vec!["`.`".to_string()]);
        assert!(parse_term("{l = 1, l = 2}").is_err());
        assert!(parse_term("let in = 1 in 2").is_err());
        assert!(parse_term("f )").is_err());
        assert!(parse_term("- x").is_err());
    }

    #[test]
    fn env_files_share_variables() {
        let src = "# example\n'a :: << || l: 'b>>\n'b :: U\nx : 'a\ny : 'b\n";
        let mut scope = Scope::new();
        let env = parse_env_in(src, &mut scope).unwrap();
        let a = scope.get("'a").unwrap();
        let b = scope.get("'b").unwrap();
        assert_eq!(env.kinds.get(a), Some(&Kind::rec([], [("l", MonoType::Var(b))])));
        assert_eq!(env.types.get("y"), Some(&PolyType::mono(MonoType::Var(b))));
        let t = parse_mono_in("'a -> 'b", &mut scope).unwrap();
        assert_eq!(t, MonoType::arrow(MonoType::Var(a), MonoType::Var(b)));
    }

    #[test]
    fn forall_binders_shadow() {
        let mut scope = Scope::new();
        let free = parse_mono_in("'a", &mut scope).unwrap();
        let s = parse_type_in("forall 'a :: U. 'a -> 'b", &mut scope).unwrap();
        let MonoType::Arrow(dom, _) = &s.body else { panic!() };
        assert_ne!(**dom, free);
        assert_eq!(**dom, MonoType::Var(s.quantifiers[0].0));
    }

    #[test]
    fn equations() {
        let mut scope = Scope::new();
        let eqs = parse_equations_in("'a = Int\n\n'b -> 'a = 'c\n", &mut scope).unwrap();
        assert_eq!(eqs.len(), 2);
    }
}
