//! Printing in the concrete syntax accepted by the parser.
//!
//! Type variables are printed as `'a`, `'b`, ... in order of first
//! occurrence. A [`Printer`] keeps that naming stable across several values,
//! so that a type, its kind assignment and a substitution agree on names.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use crate::subst::Substitution;
use crate::syntax::{
    Fields, Kind, KindAssignment, Literal, MonoType, PolyType, Term, TyVar, TypeAssignment,
};

/// Assigns printable names to type variables.
#[derive(Clone, Debug, Default)]
pub struct Namer {
    names: BTreeMap<TyVar, String>,
    used: BTreeSet<String>,
    counter: usize,
}

impl Namer {
    pub fn new() -> Namer {
        Namer::default()
    }

    /// Starts from user-chosen names, which are kept verbatim.
    pub fn with_names(names: impl IntoIterator<Item = (TyVar, String)>) -> Namer {
        let mut n = Namer::new();
        for (v, name) in names {
            n.used.insert(name.clone());
            n.names.insert(v, name);
        }
        n
    }

    pub fn name(&mut self, v: TyVar) -> String {
        if let Some(n) = self.names.get(&v) {
            return n.clone();
        }
        let name = loop {
            let i = self.counter;
            self.counter += 1;
            let letter = (b'a' + (i % 26) as u8) as char;
            let cand = match i / 26 {
                0 => format!("'{letter}"),
                k => format!("'{letter}{k}"),
            };
            if !self.used.contains(&cand) {
                break cand;
            }
        };
        self.used.insert(name.clone());
        self.names.insert(v, name.clone());
        name
    }

    pub fn is_named(&self, v: TyVar) -> bool {
        self.names.contains_key(&v)
    }
}

/// Renders values with a shared variable naming.
#[derive(Clone, Debug, Default)]
pub struct Printer {
    pub namer: Namer,
}

impl Printer {
    pub fn new() -> Printer {
        Printer::default()
    }

    pub fn with_namer(namer: Namer) -> Printer {
        Printer { namer }
    }

    pub fn var(&mut self, v: TyVar) -> String {
        self.namer.name(v)
    }

    pub fn mono(&mut self, t: &MonoType) -> String {
        let mut out = String::new();
        self.write_mono(&mut out, t);
        out
    }

    pub fn poly(&mut self, s: &PolyType) -> String {
        let mut out = String::new();
        for (v, k) in &s.quantifiers {
            let kind = self.kind(k);
            let name = self.namer.name(*v);
            write!(out, "forall {name} :: {kind}. ").unwrap();
        }
        self.write_mono(&mut out, &s.body);
        out
    }

    pub fn kind(&mut self, k: &Kind) -> String {
        match k {
            Kind::Universal => "U".to_string(),
            Kind::Record { left, right } => {
                let l = self.field_list(left, ": ");
                let r = self.field_list(right, ": ");
                format!("<<{l} || {r}>>")
            }
        }
    }

    /// One `'a :: KIND` line per variable, in dependency order.
    pub fn kind_assignment(&mut self, k: &KindAssignment) -> String {
        let mut out = String::new();
        for v in k.dependency_order(&k.domain()) {
            let kind = self.kind(k.get(v).expect("variable from domain"));
            let name = self.namer.name(v);
            writeln!(out, "{name} :: {kind}").unwrap();
        }
        out
    }

    /// One `x : TYPE` line per binding.
    pub fn type_assignment(&mut self, g: &TypeAssignment) -> String {
        let mut out = String::new();
        for (x, t) in g.iter() {
            let ty = self.poly(t);
            writeln!(out, "{x} : {ty}").unwrap();
        }
        out
    }

    /// One `'a := TYPE` line per binding.
    pub fn substitution(&mut self, s: &Substitution) -> String {
        let mut out = String::new();
        for (v, t) in s.iter() {
            let name = self.namer.name(v);
            let ty = self.mono(t);
            writeln!(out, "{name} := {ty}").unwrap();
        }
        out
    }

    fn field_list(&mut self, fs: &Fields, sep: &str) -> String {
        let mut out = String::new();
        for (i, (l, t)) in fs.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(l.as_str());
            out.push_str(sep);
            self.write_mono(&mut out, t);
        }
        out
    }

    fn write_mono(&mut self, out: &mut String, t: &MonoType) {
        match t {
            MonoType::Arrow(a, b) => {
                if matches!(**a, MonoType::Arrow(..)) {
                    out.push('(');
                    self.write_mono(out, a);
                    out.push(')');
                } else {
                    self.write_mono(out, a);
                }
                out.push_str(" -> ");
                self.write_mono(out, b);
            }
            MonoType::Ext(..) | MonoType::Contr(..) => {
                let (base, ops) = t.chain();
                self.write_atom(out, base);
                for op in ops {
                    write!(out, " {} {{{}: ", op.sign.symbol(), op.label).unwrap();
                    self.write_mono(out, &op.ty);
                    out.push('}');
                }
            }
            _ => self.write_atom(out, t),
        }
    }

    fn write_atom(&mut self, out: &mut String, t: &MonoType) {
        match t {
            MonoType::Base(b) => out.push_str(b.name()),
            MonoType::Var(v) => out.push_str(&self.namer.name(*v)),
            MonoType::Record(fs) => {
                out.push('{');
                let inner = self.field_list(fs, ": ");
                out.push_str(&inner);
                out.push('}');
            }
            _ => {
                out.push('(');
                self.write_mono(out, t);
                out.push(')');
            }
        }
    }
}

pub fn mono(t: &MonoType) -> String {
    Printer::new().mono(t)
}

pub fn poly(s: &PolyType) -> String {
    Printer::new().poly(s)
}

pub fn kind(k: &Kind) -> String {
    Printer::new().kind(k)
}

pub fn term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, Prec::Term);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Term,
    App,
    Postfix,
}

fn write_term(out: &mut String, t: &Term, ctx: Prec) {
    let own = match t {
        Term::Abs(..) | Term::Let(..) => Prec::Term,
        Term::App(..) => Prec::App,
        _ => Prec::Postfix,
    };
    if own < ctx {
        out.push('(');
        write_term(out, t, Prec::Term);
        out.push(')');
        return;
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Const(c) => write_literal(out, c),
        Term::Abs(x, body) => {
            write!(out, "\\{x}. ").unwrap();
            write_term(out, body, Prec::Term);
        }
        Term::Let(x, m, n) => {
            write!(out, "let {x} = ").unwrap();
            write_term(out, m, Prec::Term);
            out.push_str(" in ");
            write_term(out, n, Prec::Term);
        }
        Term::App(f, a) => {
            write_term(out, f, Prec::App);
            out.push(' ');
            write_term(out, a, Prec::Postfix);
        }
        Term::Record(fs) => {
            out.push('{');
            for (i, (l, m)) in fs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write!(out, "{l} = ").unwrap();
                write_term(out, m, Prec::Term);
            }
            out.push('}');
        }
        Term::Select(m, l) => {
            write_term(out, m, Prec::Postfix);
            write!(out, ".{l}").unwrap();
        }
        Term::Modify(m, l, n) => ternary(out, "modify", m, l.as_str(), n),
        Term::Extend(m, l, n) => ternary(out, "extend", m, l.as_str(), n),
        Term::Remove(m, l) => {
            out.push_str("remove(");
            write_term(out, m, Prec::Term);
            write!(out, ", {l})").unwrap();
        }
    }
}

fn ternary(out: &mut String, kw: &str, m: &Term, l: &str, n: &Term) {
    write!(out, "{kw}(").unwrap();
    write_term(out, m, Prec::Term);
    write!(out, ", {l}, ").unwrap();
    write_term(out, n, Prec::Term);
    out.push(')');
}

fn write_literal(out: &mut String, c: &Literal) {
    match c {
        Literal::Int(n) => write!(out, "{n}").unwrap(),
        Literal::Bool(b) => write!(out, "{b}").unwrap(),
        Literal::Str(s) => {
            out.push('"');
            for ch in s.chars() {
                match ch {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    _ => out.push(ch),
                }
            }
            out.push('"');
        }
    }
}

impl fmt::Display for MonoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&mono(self))
    }
}

impl fmt::Display for PolyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly(self))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&kind(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(n: u32) -> MonoType {
        MonoType::Var(TyVar(n))
    }

    #[test]
    fn names_follow_first_occurrence() {
        let t = MonoType::arrow(tv(7), MonoType::arrow(tv(3), tv(7)));
        assert_eq!(mono(&t), "'a -> 'b -> 'a");
    }

    #[test]
    fn arrows_associate_right() {
        let t = MonoType::arrow(MonoType::arrow(MonoType::int(), MonoType::int()), MonoType::int());
        assert_eq!(mono(&t), "(Int -> Int) -> Int");
    }

    #[test]
    fn chains_print_flat() {
        let t = tv(1).ext("l", MonoType::int()).contr("m", MonoType::bool());
        assert_eq!(mono(&t), "'a + {l: Int} - {m: Bool}");
    }

    #[test]
    fn kinds() {
        assert_eq!(kind(&Kind::rec([], [("l", MonoType::int())])), "<< || l: Int>>");
        assert_eq!(kind(&Kind::rec([("l", tv(1))], [])), "<<l: 'a || >>");
        assert_eq!(kind(&Kind::empty_record()), "<< || >>");
        assert_eq!(kind(&Kind::Universal), "U");
    }

    #[test]
    fn polytypes_name_quantifiers_in_order() {
        let s = PolyType::new(
            vec![(TyVar(5), Kind::Universal), (TyVar(2), Kind::rec([("l", tv(5))], []))],
            MonoType::arrow(tv(2), tv(5)),
        );
        assert_eq!(poly(&s), "forall 'a :: U. forall 'b :: <<l: 'a || >>. 'b -> 'a");
    }

    #[test]
    fn user_names_are_kept_and_avoided() {
        let mut p = Printer::with_namer(Namer::with_names([(TyVar(1), "'a".to_string())]));
        assert_eq!(p.mono(&MonoType::arrow(tv(2), tv(1))), "'b -> 'a");
    }

    #[test]
    fn terms_use_minimal_parentheses() {
        let t = Term::app(Term::var("f"), Term::var("x"));
        assert_eq!(term(&t), "f x");
        let t = Term::app(Term::var("f"), Term::app(Term::var("g"), Term::var("x")));
        assert_eq!(term(&t), "f (g x)");
        let t = Term::select(Term::app(Term::var("f"), Term::var("x")), "l");
        assert_eq!(term(&t), "(f x).l");
        let t = Term::app(Term::abs("x", Term::var("x")), Term::int(1));
        assert_eq!(term(&t), "(\\x. x) 1");
        let t = Term::abs("x", Term::select(Term::var("x"), "name"));
        assert_eq!(term(&t), "\\x. x.name");
    }

    #[test]
    fn string_escapes() {
        let t = Term::Const(Literal::Str("a\"b\\c".into()));
        assert_eq!(term(&t), "\"a\\\"b\\\\c\"");
    }
}
