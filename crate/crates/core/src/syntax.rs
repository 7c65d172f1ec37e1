//! Abstract syntax of terms, types, kinds and assignments.
//!
//! Label maps are kept sorted by label so that structural equality on
//! records and kinds does not depend on the order fields were written in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

/// A record label. Labels are totally ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Rc<str>);

impl Label {
    pub fn new(name: &str) -> Label {
        assert!(!name.is_empty(), "labels must be non-empty");
        Label(Rc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label::new(s)
    }
}

/// A type variable. Identity is the integer id; printable names are assigned
/// when pretty printing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TyVar(pub u32);

impl fmt::Debug for TyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// Hands out type variables never seen before in the current run.
#[derive(Clone, Debug)]
pub struct FreshSupply {
    next: u32,
}

impl FreshSupply {
    pub fn starting_at(next: u32) -> FreshSupply {
        FreshSupply { next: next.max(1) }
    }

    /// A supply whose ids are all above those in `vars`.
    pub fn above(vars: impl IntoIterator<Item = TyVar>) -> FreshSupply {
        let max = vars.into_iter().map(|v| v.0).max().unwrap_or(0);
        FreshSupply::starting_at(max + 1)
    }

    pub fn fresh(&mut self) -> TyVar {
        let v = TyVar(self.next);
        self.next += 1;
        v
    }

    /// Makes sure later ids are above `v`.
    pub fn avoid(&mut self, v: TyVar) {
        self.next = self.next.max(v.0 + 1);
    }

    pub fn peek(&self) -> u32 {
        self.next
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BaseType {
    Int,
    Bool,
    String,
}

impl BaseType {
    pub fn name(self) -> &'static str {
        match self {
            BaseType::Int => "Int",
            BaseType::Bool => "Bool",
            BaseType::String => "String",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    Str(String),
}

impl Literal {
    pub fn base_type(&self) -> BaseType {
        match self {
            Literal::Int(_) => BaseType::Int,
            Literal::Bool(_) => BaseType::Bool,
            Literal::Str(_) => BaseType::String,
        }
    }
}

pub type Ident = Rc<str>;

/// Terms of the calculus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Ident),
    Const(Literal),
    Abs(Ident, Box<Term>),
    App(Box<Term>, Box<Term>),
    Let(Ident, Box<Term>, Box<Term>),
    Record(BTreeMap<Label, Term>),
    Select(Box<Term>, Label),
    Modify(Box<Term>, Label, Box<Term>),
    Remove(Box<Term>, Label),
    Extend(Box<Term>, Label, Box<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Ident::from(x))
    }

    pub fn int(n: i64) -> Term {
        Term::Const(Literal::Int(n))
    }

    pub fn abs(x: &str, body: Term) -> Term {
        Term::Abs(Ident::from(x), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn let_in(x: &str, bound: Term, body: Term) -> Term {
        Term::Let(Ident::from(x), Box::new(bound), Box::new(body))
    }

    pub fn select(t: Term, l: &str) -> Term {
        Term::Select(Box::new(t), Label::new(l))
    }

    pub fn modify(t: Term, l: &str, v: Term) -> Term {
        Term::Modify(Box::new(t), Label::new(l), Box::new(v))
    }

    pub fn remove(t: Term, l: &str) -> Term {
        Term::Remove(Box::new(t), Label::new(l))
    }

    pub fn extend(t: Term, l: &str, v: Term) -> Term {
        Term::Extend(Box::new(t), Label::new(l), Box::new(v))
    }

    pub fn record<'a>(fields: impl IntoIterator<Item = (&'a str, Term)>) -> Term {
        Term::Record(fields.into_iter().map(|(l, t)| (Label::new(l), t)).collect())
    }

    /// Free term variables.
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        fn go(t: &Term, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Term::Const(_) => {}
                Term::Abs(x, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                Term::App(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Term::Let(x, m, n) => {
                    go(m, bound, out);
                    bound.push(x.clone());
                    go(n, bound, out);
                    bound.pop();
                }
                Term::Record(fs) => fs.values().for_each(|m| go(m, bound, out)),
                Term::Select(m, _) | Term::Remove(m, _) => go(m, bound, out),
                Term::Modify(a, _, b) | Term::Extend(a, _, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Abs(_, b) | Term::Select(b, _) | Term::Remove(b, _) => 1 + b.size(),
            Term::App(a, b) | Term::Let(_, a, b) | Term::Modify(a, _, b) | Term::Extend(a, _, b) => {
                1 + a.size() + b.size()
            }
            Term::Record(fs) => 1 + fs.values().map(Term::size).sum::<usize>(),
        }
    }
}

pub type Fields = BTreeMap<Label, MonoType>;

/// Monotypes. `Ext` and `Contr` are the field extension `χ + {l: τ}` and
/// field contraction `χ - {l: τ}` of an extensible type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MonoType {
    Base(BaseType),
    Var(TyVar),
    Record(Fields),
    Arrow(Box<MonoType>, Box<MonoType>),
    Ext(Box<MonoType>, Label, Box<MonoType>),
    Contr(Box<MonoType>, Label, Box<MonoType>),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One `± {l: τ}` step of an extensible type.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldOp {
    pub sign: Sign,
    pub label: Label,
    pub ty: MonoType,
}

impl FieldOp {
    pub fn new(sign: Sign, label: Label, ty: MonoType) -> FieldOp {
        FieldOp { sign, label, ty }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("field operation applied to non-extensible type {0:?}")]
    NotExtensible(MonoType),
    #[error("label `{0}` is both required and forbidden in a kind")]
    KindOverlap(Label),
    #[error("type is not well formed: free variable {0:?} has no kind")]
    Unkinded(TyVar),
}

impl MonoType {
    pub fn var(v: TyVar) -> MonoType {
        MonoType::Var(v)
    }

    pub fn int() -> MonoType {
        MonoType::Base(BaseType::Int)
    }

    pub fn bool() -> MonoType {
        MonoType::Base(BaseType::Bool)
    }

    pub fn string() -> MonoType {
        MonoType::Base(BaseType::String)
    }

    pub fn arrow(a: MonoType, b: MonoType) -> MonoType {
        MonoType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn record<'a>(fields: impl IntoIterator<Item = (&'a str, MonoType)>) -> MonoType {
        MonoType::Record(fields.into_iter().map(|(l, t)| (Label::new(l), t)).collect())
    }

    pub fn empty_record() -> MonoType {
        MonoType::Record(Fields::new())
    }

    /// `self + {l: ty}`. Fails unless `self` is extensible.
    pub fn try_ext(self, l: Label, ty: MonoType) -> Result<MonoType, SyntaxError> {
        self.try_op(Sign::Plus, l, ty)
    }

    /// `self - {l: ty}`. Fails unless `self` is extensible.
    pub fn try_contr(self, l: Label, ty: MonoType) -> Result<MonoType, SyntaxError> {
        self.try_op(Sign::Minus, l, ty)
    }

    pub fn try_op(self, sign: Sign, l: Label, ty: MonoType) -> Result<MonoType, SyntaxError> {
        if !self.is_extensible() {
            return Err(SyntaxError::NotExtensible(self));
        }
        Ok(self.op_unchecked(sign, l, ty))
    }

    /// Panicking variants for building types in code and tests.
    pub fn ext(self, l: &str, ty: MonoType) -> MonoType {
        self.try_ext(Label::new(l), ty).expect("extension of a non-extensible type")
    }

    pub fn contr(self, l: &str, ty: MonoType) -> MonoType {
        self.try_contr(Label::new(l), ty).expect("contraction of a non-extensible type")
    }

    pub(crate) fn op_unchecked(self, sign: Sign, l: Label, ty: MonoType) -> MonoType {
        match sign {
            Sign::Plus => MonoType::Ext(Box::new(self), l, Box::new(ty)),
            Sign::Minus => MonoType::Contr(Box::new(self), l, Box::new(ty)),
        }
    }

    /// Type variables, record types, extensions and contractions.
    pub fn is_extensible(&self) -> bool {
        matches!(
            self,
            MonoType::Var(_) | MonoType::Record(_) | MonoType::Ext(..) | MonoType::Contr(..)
        )
    }

    pub fn is_chain(&self) -> bool {
        matches!(self, MonoType::Ext(..) | MonoType::Contr(..))
    }

    /// Splits an extensible type into its base and its field operations,
    /// innermost first. Non-chains are returned with no operations.
    pub fn chain(&self) -> (&MonoType, Vec<FieldOp>) {
        let mut ops = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                MonoType::Ext(b, l, t) => {
                    ops.push(FieldOp::new(Sign::Plus, l.clone(), (**t).clone()));
                    cur = b;
                }
                MonoType::Contr(b, l, t) => {
                    ops.push(FieldOp::new(Sign::Minus, l.clone(), (**t).clone()));
                    cur = b;
                }
                _ => break,
            }
        }
        ops.reverse();
        (cur, ops)
    }

    /// Rebuilds a chain. The base must be extensible when `ops` is non-empty.
    pub fn from_chain(base: MonoType, ops: impl IntoIterator<Item = FieldOp>) -> MonoType {
        ops.into_iter()
            .fold(base, |acc, op| acc.op_unchecked(op.sign, op.label, op.ty))
    }

    pub fn ftv(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        self.collect_ftv(&mut out);
        out
    }

    pub fn collect_ftv(&self, out: &mut BTreeSet<TyVar>) {
        match self {
            MonoType::Base(_) => {}
            MonoType::Var(v) => {
                out.insert(*v);
            }
            MonoType::Record(fs) => fs.values().for_each(|t| t.collect_ftv(out)),
            MonoType::Arrow(a, b) | MonoType::Ext(a, _, b) | MonoType::Contr(a, _, b) => {
                a.collect_ftv(out);
                b.collect_ftv(out);
            }
        }
    }

    pub fn mentions(&self, v: TyVar) -> bool {
        match self {
            MonoType::Base(_) => false,
            MonoType::Var(w) => *w == v,
            MonoType::Record(fs) => fs.values().any(|t| t.mentions(v)),
            MonoType::Arrow(a, b) | MonoType::Ext(a, _, b) | MonoType::Contr(a, _, b) => {
                a.mentions(v) || b.mentions(v)
            }
        }
    }

    /// Number of constructors, used for size bounds in generators and tests.
    pub fn size(&self) -> usize {
        match self {
            MonoType::Base(_) | MonoType::Var(_) => 1,
            MonoType::Record(fs) => 1 + fs.values().map(MonoType::size).sum::<usize>(),
            MonoType::Arrow(a, b) | MonoType::Ext(a, _, b) | MonoType::Contr(a, _, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Total number of `Ext`/`Contr` nodes anywhere in the type.
    pub fn op_count(&self) -> usize {
        match self {
            MonoType::Base(_) | MonoType::Var(_) => 0,
            MonoType::Record(fs) => fs.values().map(MonoType::op_count).sum(),
            MonoType::Arrow(a, b) => a.op_count() + b.op_count(),
            MonoType::Ext(a, _, b) | MonoType::Contr(a, _, b) => 1 + a.op_count() + b.op_count(),
        }
    }
}

/// The base of an extensible type: the variable or record at the bottom of
/// its chain of field operations.
pub fn base_of(t: &MonoType) -> Result<&MonoType, SyntaxError> {
    if !t.is_extensible() {
        return Err(SyntaxError::NotExtensible(t.clone()));
    }
    Ok(t.chain().0)
}

/// Kinds: the universal kind, or a record kind `<<F_l || F_r>>` listing
/// fields a record must have (left) and must lack (right).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Universal,
    Record { left: Fields, right: Fields },
}

impl Kind {
    pub fn record(left: Fields, right: Fields) -> Result<Kind, SyntaxError> {
        if let Some(l) = left.keys().find(|l| right.contains_key(*l)) {
            return Err(SyntaxError::KindOverlap(l.clone()));
        }
        Ok(Kind::Record { left, right })
    }

    /// `<<l1: t1, ... || >>` etc. Panics on overlapping sides.
    pub fn rec<'a>(
        left: impl IntoIterator<Item = (&'a str, MonoType)>,
        right: impl IntoIterator<Item = (&'a str, MonoType)>,
    ) -> Kind {
        let left = left.into_iter().map(|(l, t)| (Label::new(l), t)).collect();
        let right = right.into_iter().map(|(l, t)| (Label::new(l), t)).collect();
        Kind::record(left, right).expect("overlapping record kind")
    }

    pub fn empty_record() -> Kind {
        Kind::Record { left: Fields::new(), right: Fields::new() }
    }

    pub fn is_record(&self) -> bool {
        matches!(self, Kind::Record { .. })
    }

    pub fn ftv(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        self.collect_ftv(&mut out);
        out
    }

    pub fn collect_ftv(&self, out: &mut BTreeSet<TyVar>) {
        if let Kind::Record { left, right } = self {
            left.values().chain(right.values()).for_each(|t| t.collect_ftv(out));
        }
    }
}

/// Kinded-quantified polytype `∀α1::κ1 ... ∀αn::κn. τ`.
///
/// Equality is α-equivalence: bound variables are compared through the
/// bijection induced by quantifier position.
#[derive(Clone, Debug)]
pub struct PolyType {
    pub quantifiers: Vec<(TyVar, Kind)>,
    pub body: MonoType,
}

impl From<MonoType> for PolyType {
    fn from(body: MonoType) -> PolyType {
        PolyType::mono(body)
    }
}

impl PolyType {
    pub fn mono(body: MonoType) -> PolyType {
        PolyType { quantifiers: Vec::new(), body }
    }

    pub fn new(quantifiers: Vec<(TyVar, Kind)>, body: MonoType) -> PolyType {
        PolyType { quantifiers, body }
    }

    pub fn is_mono(&self) -> bool {
        self.quantifiers.is_empty()
    }

    pub fn bound_vars(&self) -> Vec<TyVar> {
        self.quantifiers.iter().map(|(v, _)| *v).collect()
    }

    /// `FTV(∀α::κ.σ) = FTV(κ) ∪ (FTV(σ) \ {α})`, applied right to left.
    pub fn ftv(&self) -> BTreeSet<TyVar> {
        let mut out = self.body.ftv();
        for (v, k) in self.quantifiers.iter().rev() {
            out.remove(v);
            k.collect_ftv(&mut out);
        }
        out
    }

    /// Every type variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<TyVar> {
        let mut out = self.body.ftv();
        for (v, k) in &self.quantifiers {
            out.insert(*v);
            k.collect_ftv(&mut out);
        }
        out
    }

    fn alpha_eq_with(&self, other: &PolyType, map: &mut BTreeMap<TyVar, TyVar>) -> bool {
        if self.quantifiers.len() != other.quantifiers.len() {
            return false;
        }
        let mut inverse: BTreeMap<TyVar, TyVar> = map.iter().map(|(a, b)| (*b, *a)).collect();
        for ((a, ka), (b, kb)) in self.quantifiers.iter().zip(&other.quantifiers) {
            // α is not bound in its own kind.
            if !kind_eq_under(ka, kb, map, &inverse) {
                return false;
            }
            map.insert(*a, *b);
            inverse.insert(*b, *a);
        }
        mono_eq_under(&self.body, &other.body, map, &inverse)
    }
}

fn var_eq_under(
    a: TyVar,
    b: TyVar,
    map: &BTreeMap<TyVar, TyVar>,
    inverse: &BTreeMap<TyVar, TyVar>,
) -> bool {
    match (map.get(&a), inverse.get(&b)) {
        (Some(x), Some(y)) => *x == b && *y == a,
        (None, None) => a == b,
        _ => false,
    }
}

fn mono_eq_under(
    a: &MonoType,
    b: &MonoType,
    map: &BTreeMap<TyVar, TyVar>,
    inverse: &BTreeMap<TyVar, TyVar>,
) -> bool {
    use MonoType::*;
    match (a, b) {
        (Base(x), Base(y)) => x == y,
        (Var(x), Var(y)) => var_eq_under(*x, *y, map, inverse),
        (Record(f), Record(g)) => fields_eq_under(f, g, map, inverse),
        (Arrow(a1, b1), Arrow(a2, b2)) => {
            mono_eq_under(a1, a2, map, inverse) && mono_eq_under(b1, b2, map, inverse)
        }
        (Ext(a1, l1, b1), Ext(a2, l2, b2)) | (Contr(a1, l1, b1), Contr(a2, l2, b2)) => {
            l1 == l2 && mono_eq_under(a1, a2, map, inverse) && mono_eq_under(b1, b2, map, inverse)
        }
        _ => false,
    }
}

fn fields_eq_under(
    f: &Fields,
    g: &Fields,
    map: &BTreeMap<TyVar, TyVar>,
    inverse: &BTreeMap<TyVar, TyVar>,
) -> bool {
    f.len() == g.len()
        && f.iter()
            .zip(g)
            .all(|((l1, t1), (l2, t2))| l1 == l2 && mono_eq_under(t1, t2, map, inverse))
}

fn kind_eq_under(
    a: &Kind,
    b: &Kind,
    map: &BTreeMap<TyVar, TyVar>,
    inverse: &BTreeMap<TyVar, TyVar>,
) -> bool {
    match (a, b) {
        (Kind::Universal, Kind::Universal) => true,
        (Kind::Record { left: l1, right: r1 }, Kind::Record { left: l2, right: r2 }) => {
            fields_eq_under(l1, l2, map, inverse) && fields_eq_under(r1, r2, map, inverse)
        }
        _ => false,
    }
}

impl PartialEq for PolyType {
    fn eq(&self, other: &PolyType) -> bool {
        self.alpha_eq_with(other, &mut BTreeMap::new())
    }
}

impl Eq for PolyType {}

/// Kind assignment `K`: a finite map from type variables to kinds.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KindAssignment(BTreeMap<TyVar, Kind>);

impl KindAssignment {
    pub fn new() -> KindAssignment {
        KindAssignment(BTreeMap::new())
    }

    pub fn get(&self, v: TyVar) -> Option<&Kind> {
        self.0.get(&v)
    }

    pub fn contains(&self, v: TyVar) -> bool {
        self.0.contains_key(&v)
    }

    pub fn insert(&mut self, v: TyVar, k: Kind) -> Option<Kind> {
        self.0.insert(v, k)
    }

    pub fn remove(&mut self, v: TyVar) -> Option<Kind> {
        self.0.remove(&v)
    }

    pub fn with(mut self, v: TyVar, k: Kind) -> KindAssignment {
        self.0.insert(v, k);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (TyVar, &Kind)> + '_ {
        self.0.iter().map(|(v, k)| (*v, k))
    }

    pub fn vars(&self) -> impl Iterator<Item = TyVar> + '_ {
        self.0.keys().copied()
    }

    pub fn domain(&self) -> BTreeSet<TyVar> {
        self.0.keys().copied().collect()
    }

    /// All free variables of the assigned kinds.
    pub fn range_ftv(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        for k in self.0.values() {
            k.collect_ftv(&mut out);
        }
        out
    }

    /// Orders the domain so that every variable comes after the variables
    /// its kind mentions; ties broken by id. Variables caught in a cycle are
    /// appended last in id order.
    pub fn dependency_order(&self, vars: &BTreeSet<TyVar>) -> Vec<TyVar> {
        let mut placed: BTreeSet<TyVar> = BTreeSet::new();
        let mut out = Vec::with_capacity(vars.len());
        loop {
            let next = vars.iter().copied().find(|v| {
                !placed.contains(v)
                    && self.get(*v).map_or(true, |k| {
                        k.ftv().iter().all(|d| placed.contains(d) || !vars.contains(d))
                    })
            });
            match next {
                Some(v) => {
                    placed.insert(v);
                    out.push(v);
                }
                None => break,
            }
        }
        out.extend(vars.iter().filter(|v| !placed.contains(v)));
        out
    }
}

impl FromIterator<(TyVar, Kind)> for KindAssignment {
    fn from_iter<I: IntoIterator<Item = (TyVar, Kind)>>(iter: I) -> Self {
        KindAssignment(iter.into_iter().collect())
    }
}

/// Type assignment `Γ`: term variables to polytypes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TypeAssignment(BTreeMap<Ident, PolyType>);

impl TypeAssignment {
    pub fn new() -> TypeAssignment {
        TypeAssignment(BTreeMap::new())
    }

    pub fn get(&self, x: &str) -> Option<&PolyType> {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: Ident, t: PolyType) -> Option<PolyType> {
        self.0.insert(x, t)
    }

    /// `Γ{x : σ}`, replacing any earlier binding of `x`.
    pub fn extended(&self, x: Ident, t: PolyType) -> TypeAssignment {
        let mut g = self.clone();
        g.0.insert(x, t);
        g
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &PolyType)> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ftv(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        for t in self.0.values() {
            out.extend(t.ftv());
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(&PolyType) -> PolyType) -> TypeAssignment {
        TypeAssignment(self.0.iter().map(|(x, t)| (x.clone(), f(t))).collect())
    }
}

impl FromIterator<(Ident, PolyType)> for TypeAssignment {
    fn from_iter<I: IntoIterator<Item = (Ident, PolyType)>>(iter: I) -> Self {
        TypeAssignment(iter.into_iter().collect())
    }
}

/// Essentially-free type variables: the free variables of `vars` closed
/// under "free in the kind of".
pub fn eftv_closure(k: &KindAssignment, vars: BTreeSet<TyVar>) -> BTreeSet<TyVar> {
    let mut out = vars;
    let mut work: Vec<TyVar> = out.iter().copied().collect();
    while let Some(v) = work.pop() {
        if let Some(kind) = k.get(v) {
            for w in kind.ftv() {
                if out.insert(w) {
                    work.push(w);
                }
            }
        }
    }
    out
}

/// `EFTV(K, σ)`. Fails if `σ` is not well formed under `K`.
pub fn eftv(k: &KindAssignment, t: &PolyType) -> Result<BTreeSet<TyVar>, SyntaxError> {
    let free = t.ftv();
    if let Some(v) = free.iter().find(|v| !k.contains(**v)) {
        return Err(SyntaxError::Unkinded(*v));
    }
    Ok(eftv_closure(k, free))
}

pub fn eftv_env(k: &KindAssignment, g: &TypeAssignment) -> BTreeSet<TyVar> {
    eftv_closure(k, g.ftv())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: u32) -> TyVar {
        TyVar(n)
    }

    fn tv(n: u32) -> MonoType {
        MonoType::Var(TyVar(n))
    }

    #[test]
    fn ftv_examples() {
        assert!(MonoType::int().ftv().is_empty());
        let s = PolyType::new(vec![(v(1), Kind::Universal)], MonoType::arrow(tv(1), tv(2)));
        assert_eq!(s.ftv(), BTreeSet::from([v(2)]));
        let k = Kind::rec([("l", tv(1))], [("m", tv(2))]);
        assert_eq!(k.ftv(), BTreeSet::from([v(1), v(2)]));
    }

    #[test]
    fn quantifier_does_not_bind_in_its_own_kind() {
        let s = PolyType::new(vec![(v(1), Kind::rec([("l", tv(1))], []))], tv(1));
        assert_eq!(s.ftv(), BTreeSet::from([v(1)]));
    }

    #[test]
    fn eftv_examples() {
        let k: KindAssignment = [(v(1), Kind::rec([("l", tv(2))], [])), (v(2), Kind::Universal)]
            .into_iter()
            .collect();
        assert_eq!(eftv(&k, &tv(1).into()).unwrap(), BTreeSet::from([v(1), v(2)]));

        let k: KindAssignment = [(v(1), Kind::Universal)].into_iter().collect();
        assert_eq!(eftv(&k, &tv(1).into()).unwrap(), BTreeSet::from([v(1)]));

        let k: KindAssignment = [
            (v(1), Kind::rec([], [("l", tv(2))])),
            (v(2), Kind::rec([("m", tv(3))], [])),
            (v(3), Kind::Universal),
        ]
        .into_iter()
        .collect();
        assert_eq!(eftv(&k, &tv(1).into()).unwrap(), BTreeSet::from([v(1), v(2), v(3)]));

        assert!(eftv(&KindAssignment::new(), &tv(1).into()).is_err());
    }

    #[test]
    fn base_of_examples() {
        let t = tv(1).ext("l1", MonoType::int()).contr("l2", MonoType::bool());
        assert_eq!(base_of(&t).unwrap(), &tv(1));
        let r = MonoType::record([("l", MonoType::int())]);
        assert_eq!(base_of(&r).unwrap(), &r);
        assert!(base_of(&MonoType::arrow(MonoType::int(), MonoType::int())).is_err());
    }

    #[test]
    fn field_ops_reject_non_extensible_heads() {
        assert!(MonoType::int().try_ext(Label::new("l"), MonoType::int()).is_err());
        let arrow = MonoType::arrow(MonoType::int(), MonoType::int());
        assert!(arrow.try_contr(Label::new("l"), MonoType::int()).is_err());
    }

    #[test]
    fn record_label_order_is_insignificant() {
        let a = MonoType::record([("b", MonoType::int()), ("a", MonoType::bool())]);
        let b = MonoType::record([("a", MonoType::bool()), ("b", MonoType::int())]);
        assert_eq!(a, b);
    }

    #[test]
    fn alpha_equivalent_polytypes_are_equal() {
        let a = PolyType::new(
            vec![(v(1), Kind::Universal), (v(2), Kind::rec([("l", tv(1))], []))],
            MonoType::arrow(tv(2), tv(1)),
        );
        let b = PolyType::new(
            vec![(v(7), Kind::Universal), (v(9), Kind::rec([("l", tv(7))], []))],
            MonoType::arrow(tv(9), tv(7)),
        );
        assert_eq!(a, b);
        assert_eq!(a.ftv(), b.ftv());
        let c = PolyType::new(
            vec![(v(7), Kind::Universal), (v(9), Kind::rec([("l", tv(7))], []))],
            MonoType::arrow(tv(7), tv(9)),
        );
        assert_ne!(a, c);
        // free variables must coincide exactly
        let d = PolyType::new(vec![(v(1), Kind::Universal)], MonoType::arrow(tv(1), tv(3)));
        let e = PolyType::new(vec![(v(1), Kind::Universal)], MonoType::arrow(tv(1), tv(4)));
        assert_ne!(d, e);
    }

    #[test]
    fn kind_sides_must_be_disjoint() {
        let f: Fields = [(Label::new("l"), MonoType::int())].into_iter().collect();
        assert!(Kind::record(f.clone(), f).is_err());
    }

    #[test]
    fn dependency_order_puts_dependencies_first() {
        let k: KindAssignment = [
            (v(1), Kind::rec([("l", tv(3))], [])),
            (v(2), Kind::Universal),
            (v(3), Kind::rec([("m", tv(2))], [])),
        ]
        .into_iter()
        .collect();
        assert_eq!(k.dependency_order(&k.domain()), vec![v(2), v(3), v(1)]);
    }
}
