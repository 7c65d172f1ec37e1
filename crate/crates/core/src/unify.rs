//! Kinded unification by transformation.
//!
//! The state is a queue of equations, the kind assignment still to be
//! satisfied, the solved substitution and the kinds of solved variables.
//! Equations are taken first-in first-out. Each one is discharged by the
//! first rule that applies:
//!
//! | rule | shape |
//! |------|-------|
//! | i    | the two sides are equivalent |
//! | viii | two extensible types share an operation with the same sign and label |
//! | v    | two records with the same labels |
//! | vi   | two arrows |
//! | ii   | a variable of kind `U` |
//! | iii  | two variables of record kind |
//! | iv   | a variable of record kind and a record |
//! | vii  | a variable of record kind and an extensible type over a variable |
//! | ix   | two extensible types over distinct variables with no shared labels |
//! | x    | an extensible type over a record is collapsed into a record |
//! | xi   | an extensible type over a variable and a record |
//!
//! Sides are normalized before dispatch (except for the first attempt at
//! rule viii, which looks at the sides as written), and variables are bound
//! to normalized types.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::kinding::check_kind_assignment;
use crate::normalize::{equiv, normalize};
use crate::pretty::Printer;
use crate::subst::Substitution;
use crate::syntax::{
    FieldOp, Fields, FreshSupply, Kind, KindAssignment, Label, MonoType, Sign, TyVar,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnifyError {
    UnboundVariable(TyVar),
    IllFormedKinds(TyVar, TyVar),
    Occurs(TyVar, MonoType),
    ConstructorClash(MonoType, MonoType),
    RecordShape(MonoType, MonoType),
    ChainMismatch(MonoType, MonoType),
    MissingField(Label),
    ForbiddenField(Label),
    FieldClash(Label),
    NotARecord(MonoType),
}

impl UnifyError {
    /// Renders the error, naming type variables through `p` so that every
    /// type in the message shares one naming.
    pub fn describe(&self, p: &mut Printer) -> String {
        use UnifyError::*;
        match self {
            UnboundVariable(v) => format!("type variable {} has no kind", p.var(*v)),
            IllFormedKinds(v, w) => format!("the kind of {} mentions {}, which has no kind", p.var(*v), p.var(*w)),
            Occurs(v, t) => format!("occurs check: {} occurs in {}", p.var(*v), p.mono(t)),
            ConstructorClash(a, b) => format!("cannot unify {} with {}", p.mono(a), p.mono(b)),
            RecordShape(a, b) => format!("records {} and {} have different fields", p.mono(a), p.mono(b)),
            ChainMismatch(a, b) => format!(
                "extensible types {} and {} over the same base have different fields",
                p.mono(a),
                p.mono(b)
            ),
            MissingField(l) => format!("field `{l}` is required but would be missing"),
            ForbiddenField(l) => format!("field `{l}` is required absent but would be present"),
            FieldClash(l) => format!("field `{l}` is required both present and absent"),
            NotARecord(t) => format!("{} is not a record type but must have a record kind", p.mono(t)),
        }
    }
}

impl fmt::Display for UnifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&mut Printer::new()))
    }
}

/// A transformation rule of the unification algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Reflexive,
    Universal,
    VarVar,
    VarRecord,
    Records,
    Arrows,
    VarChain,
    MatchingOp,
    ChainChain,
    RecordBase,
    ChainRecord,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Reflexive => "i",
            Rule::Universal => "ii",
            Rule::VarVar => "iii",
            Rule::VarRecord => "iv",
            Rule::Records => "v",
            Rule::Arrows => "vi",
            Rule::VarChain => "vii",
            Rule::MatchingOp => "viii",
            Rule::ChainChain => "ix",
            Rule::RecordBase => "x",
            Rule::ChainRecord => "xi",
        }
    }
}

/// One transformation, with the variables it solved.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub rule: Rule,
    pub bindings: Vec<(TyVar, MonoType)>,
}

/// A most general unifier together with how it was found.
#[derive(Debug, Clone)]
pub struct Unifier {
    pub kinds: KindAssignment,
    pub subst: Substitution,
    /// Kinds the solved variables had when they were eliminated.
    pub solved: BTreeMap<TyVar, Kind>,
    pub trace: Vec<Step>,
}

/// Unifies `eqs` under `k`, drawing fresh variables above everything in the
/// input.
pub fn unify(k: &KindAssignment, eqs: &[(MonoType, MonoType)]) -> Result<Unifier, UnifyError> {
    let mut fresh = FreshSupply::starting_at(1);
    unify_with(k, eqs, &mut fresh)
}

pub fn unify_with(
    k: &KindAssignment,
    eqs: &[(MonoType, MonoType)],
    fresh: &mut FreshSupply,
) -> Result<Unifier, UnifyError> {
    check_kind_assignment(k).map_err(|(v, w)| UnifyError::IllFormedKinds(v, w))?;
    for v in k.domain().into_iter().chain(k.range_ftv()) {
        fresh.avoid(v);
    }
    for (a, b) in eqs {
        for v in a.ftv().into_iter().chain(b.ftv()) {
            if !k.contains(v) {
                return Err(UnifyError::UnboundVariable(v));
            }
        }
    }
    let mut st = State {
        eqs: eqs.iter().cloned().collect(),
        kinds: k.clone(),
        subst: Substitution::identity(),
        solved: BTreeMap::new(),
        trace: Vec::new(),
        fresh,
    };
    while let Some((a, b)) = st.eqs.pop_front() {
        st.step(a, b)?;
    }
    Ok(Unifier {
        kinds: st.kinds,
        subst: st.subst.normalized(),
        solved: st.solved,
        trace: st.trace,
    })
}

/// `S(τ1) ≐ S(τ2)` for every equation.
pub fn satisfies(s: &Substitution, eqs: &[(MonoType, MonoType)]) -> bool {
    eqs.iter().all(|(a, b)| equiv(&s.apply(a), &s.apply(b)))
}

struct State<'f> {
    eqs: VecDeque<(MonoType, MonoType)>,
    kinds: KindAssignment,
    subst: Substitution,
    solved: BTreeMap<TyVar, Kind>,
    trace: Vec<Step>,
    fresh: &'f mut FreshSupply,
}

/// Field facts accumulated for one variable.
#[derive(Default)]
struct Need {
    present: Fields,
    absent: Fields,
    eqs: Vec<(MonoType, MonoType)>,
}

impl Need {
    fn from_kind(left: Fields, right: Fields) -> Need {
        Need { present: left, absent: right, eqs: Vec::new() }
    }

    fn require_present(&mut self, l: &Label, t: &MonoType) -> Result<(), UnifyError> {
        if self.absent.contains_key(l) {
            return Err(UnifyError::FieldClash(l.clone()));
        }
        match self.present.get(l) {
            Some(old) if old != t => self.eqs.push((old.clone(), t.clone())),
            Some(_) => {}
            None => {
                self.present.insert(l.clone(), t.clone());
            }
        }
        Ok(())
    }

    fn require_absent(&mut self, l: &Label, t: &MonoType) -> Result<(), UnifyError> {
        if self.present.contains_key(l) {
            return Err(UnifyError::FieldClash(l.clone()));
        }
        match self.absent.get(l) {
            Some(old) if old != t => self.eqs.push((old.clone(), t.clone())),
            Some(_) => {}
            None => {
                self.absent.insert(l.clone(), t.clone());
            }
        }
        Ok(())
    }

    /// Facts needed of `γ` so that `γ ⊕ ops` is well kinded and has the
    /// fields `left` and lacks the fields `right`.
    fn through(&mut self, left: &Fields, right: &Fields, ops: &[FieldOp]) -> Result<(), UnifyError> {
        for op in ops {
            match op.sign {
                Sign::Plus => self.require_absent(&op.label, &op.ty)?,
                Sign::Minus => self.require_present(&op.label, &op.ty)?,
            }
        }
        for (l, t) in left {
            match last_op(ops, l) {
                Some(op) if op.sign == Sign::Plus => self.eqs.push((t.clone(), op.ty.clone())),
                Some(_) => return Err(UnifyError::MissingField(l.clone())),
                None => self.require_present(l, t)?,
            }
        }
        for (l, t) in right {
            match last_op(ops, l) {
                Some(op) if op.sign == Sign::Minus => self.eqs.push((t.clone(), op.ty.clone())),
                Some(_) => return Err(UnifyError::ForbiddenField(l.clone())),
                None => self.require_absent(l, t)?,
            }
        }
        Ok(())
    }

    fn kind(&self) -> Kind {
        Kind::Record { left: self.present.clone(), right: self.absent.clone() }
    }
}

fn last_op<'a>(ops: &'a [FieldOp], l: &Label) -> Option<&'a FieldOp> {
    ops.iter().rev().find(|op| op.label == *l)
}

/// Positions of a same-sign, same-label pair, each the last operation on its
/// label in its chain.
fn matching_op(ops1: &[FieldOp], ops2: &[FieldOp]) -> Option<(usize, usize)> {
    for (i, op1) in ops1.iter().enumerate() {
        if ops1[i + 1..].iter().any(|o| o.label == op1.label) {
            continue;
        }
        if let Some(j) = ops2.iter().rposition(|o| o.label == op1.label) {
            if ops2[j].sign == op1.sign {
                return Some((i, j));
            }
        }
    }
    None
}

fn without(base: &MonoType, ops: &[FieldOp], skip: usize) -> MonoType {
    let kept = ops
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, op)| op.clone());
    MonoType::from_chain(base.clone(), kept)
}

impl State<'_> {
    fn record(&mut self, rule: Rule, bindings: Vec<(TyVar, MonoType)>) {
        self.trace.push(Step { rule, bindings });
    }

    fn push(&mut self, eqs: impl IntoIterator<Item = (MonoType, MonoType)>) {
        self.eqs.extend(eqs);
    }

    fn kind_of(&self, v: TyVar) -> Result<Kind, UnifyError> {
        self.kinds.get(v).cloned().ok_or(UnifyError::UnboundVariable(v))
    }

    /// The record kind of a chain base. A base of kind `U` is tightened to
    /// the empty record kind, which any kindable instance satisfies.
    fn base_kind(&mut self, v: TyVar) -> Result<(Fields, Fields), UnifyError> {
        match self.kind_of(v)? {
            Kind::Record { left, right } => Ok((left, right)),
            Kind::Universal => {
                self.kinds.insert(v, Kind::empty_record());
                Ok((Fields::new(), Fields::new()))
            }
        }
    }

    /// Solves `v := t` throughout the state.
    fn bind(&mut self, v: TyVar, t: MonoType) -> Result<(), UnifyError> {
        if t.mentions(v) {
            return Err(UnifyError::Occurs(v, t));
        }
        let s = Substitution::singleton(v, t);
        for (a, b) in self.eqs.iter_mut() {
            *a = s.apply(a);
            *b = s.apply(b);
        }
        let old = self.kinds.remove(v).unwrap_or(Kind::Universal);
        self.kinds = s.apply_kinds(&self.kinds);
        self.subst = s.compose(&self.subst);
        for k in self.solved.values_mut() {
            *k = s.apply_kind(k);
        }
        self.solved.insert(v, old);
        Ok(())
    }

    fn step(&mut self, a: MonoType, b: MonoType) -> Result<(), UnifyError> {
        if equiv(&a, &b) {
            self.record(Rule::Reflexive, Vec::new());
            return Ok(());
        }
        if a.is_chain() && b.is_chain() && self.try_matching_op(&a, &b) {
            return Ok(());
        }
        let na = normalize(&a);
        let nb = normalize(&b);
        for (x, y) in [(&na, &nb), (&nb, &na)] {
            if x.is_chain() && matches!(x.chain().0, MonoType::Record(_)) {
                return self.record_base(x, y);
            }
        }
        match (&na, &nb) {
            (MonoType::Record(f1), MonoType::Record(f2)) => {
                if !f1.keys().eq(f2.keys()) {
                    return Err(UnifyError::RecordShape(na.clone(), nb.clone()));
                }
                let eqs: Vec<_> = f1.values().cloned().zip(f2.values().cloned()).collect();
                self.push(eqs);
                self.record(Rule::Records, Vec::new());
                Ok(())
            }
            (MonoType::Arrow(d1, c1), MonoType::Arrow(d2, c2)) => {
                self.push([((**d1).clone(), (**d2).clone()), ((**c1).clone(), (**c2).clone())]);
                self.record(Rule::Arrows, Vec::new());
                Ok(())
            }
            (MonoType::Var(x), MonoType::Var(y)) => self.var_var(*x, *y),
            (MonoType::Var(x), t) | (t, MonoType::Var(x)) => self.var_type(*x, t.clone()),
            _ if na.is_chain() && nb.is_chain() => self.chain_chain(&na, &nb),
            (c, MonoType::Record(fs)) | (MonoType::Record(fs), c) if c.is_chain() => {
                self.chain_record(c, fs)
            }
            _ => Err(UnifyError::ConstructorClash(na.clone(), nb.clone())),
        }
    }

    /// Rule viii on the sides as written.
    fn try_matching_op(&mut self, a: &MonoType, b: &MonoType) -> bool {
        let (base1, ops1) = a.chain();
        let (base2, ops2) = b.chain();
        let Some((i, j)) = matching_op(&ops1, &ops2) else {
            return false;
        };
        let rest1 = without(base1, &ops1, i);
        let rest2 = without(base2, &ops2, j);
        self.push([(rest1, rest2), (ops1[i].ty.clone(), ops2[j].ty.clone())]);
        self.record(Rule::MatchingOp, Vec::new());
        true
    }

    fn var_var(&mut self, x: TyVar, y: TyVar) -> Result<(), UnifyError> {
        let kx = self.kind_of(x)?;
        let ky = self.kind_of(y)?;
        // eliminate the younger variable when there is a choice
        let (old, young) = if x < y { (x, y) } else { (y, x) };
        match (&kx, &ky) {
            (Kind::Universal, Kind::Universal) => self.solve(Rule::Universal, young, MonoType::Var(old)),
            (Kind::Universal, _) => self.solve(Rule::Universal, x, MonoType::Var(y)),
            (_, Kind::Universal) => self.solve(Rule::Universal, y, MonoType::Var(x)),
            (Kind::Record { left: l1, right: r1 }, Kind::Record { left: l2, right: r2 }) => {
                if let Some(l) = l1.keys().find(|l| r2.contains_key(*l)) {
                    return Err(UnifyError::FieldClash(l.clone()));
                }
                if let Some(l) = r1.keys().find(|l| l2.contains_key(*l)) {
                    return Err(UnifyError::FieldClash(l.clone()));
                }
                let mut need = Need::from_kind(l1.clone(), r1.clone());
                for (l, t) in l2 {
                    need.require_present(l, t)?;
                }
                for (l, t) in r2 {
                    need.require_absent(l, t)?;
                }
                self.kinds.insert(old, need.kind());
                self.push(need.eqs);
                self.solve(Rule::VarVar, young, MonoType::Var(old))
            }
        }
    }

    fn solve(&mut self, rule: Rule, v: TyVar, t: MonoType) -> Result<(), UnifyError> {
        self.bind(v, t.clone())?;
        self.record(rule, vec![(v, t)]);
        Ok(())
    }

    fn var_type(&mut self, x: TyVar, t: MonoType) -> Result<(), UnifyError> {
        let (left, right) = match self.kind_of(x)? {
            Kind::Universal => return self.solve(Rule::Universal, x, t),
            Kind::Record { left, right } => (left, right),
        };
        match &t {
            MonoType::Record(fs) => {
                if let Some(l) = left.keys().find(|l| !fs.contains_key(*l)) {
                    return Err(UnifyError::MissingField(l.clone()));
                }
                if let Some(l) = right.keys().find(|l| fs.contains_key(*l)) {
                    return Err(UnifyError::ForbiddenField(l.clone()));
                }
                if t.mentions(x) {
                    return Err(UnifyError::Occurs(x, t));
                }
                let eqs: Vec<_> = left.iter().map(|(l, ty)| (ty.clone(), fs[l].clone())).collect();
                self.push(eqs);
                self.solve(Rule::VarRecord, x, t)
            }
            _ if t.is_chain() => {
                if t.mentions(x) {
                    return Err(UnifyError::Occurs(x, t));
                }
                let (base, ops) = t.chain();
                let MonoType::Var(b) = base else {
                    unreachable!("record bases are collapsed before dispatch")
                };
                let b = *b;
                let (bl, br) = self.base_kind(b)?;
                let mut need = Need::from_kind(bl, br);
                need.through(&left, &right, &ops)?;
                self.kinds.insert(b, need.kind());
                self.push(need.eqs);
                self.solve(Rule::VarChain, x, t)
            }
            _ => Err(UnifyError::NotARecord(t)),
        }
    }

    fn chain_chain(&mut self, a: &MonoType, b: &MonoType) -> Result<(), UnifyError> {
        if self.try_matching_op(a, b) {
            return Ok(());
        }
        let (base1, ops1) = a.chain();
        let (base2, ops2) = b.chain();
        let labels2: BTreeSet<&Label> = ops2.iter().map(|o| &o.label).collect();
        if let Some(op) = ops1.iter().find(|o| labels2.contains(&o.label)) {
            return Err(UnifyError::FieldClash(op.label.clone()));
        }
        let (MonoType::Var(b1), MonoType::Var(b2)) = (base1, base2) else {
            unreachable!("record bases are collapsed before dispatch")
        };
        let (b1, b2) = (*b1, *b2);
        if b1 == b2 {
            return Err(UnifyError::ChainMismatch(a.clone(), b.clone()));
        }
        let (l1, r1) = self.base_kind(b1)?;
        let (l2, r2) = self.base_kind(b2)?;
        let g = self.fresh.fresh();
        let mut need = Need::default();
        need.through(&l1, &r1, &ops2)?;
        need.through(&l2, &r2, &ops1)?;
        self.kinds.insert(g, need.kind());
        self.push(need.eqs);
        let t1 = MonoType::from_chain(MonoType::Var(g), ops2.clone());
        self.bind(b1, t1.clone())?;
        let t2 = self.subst.apply(&MonoType::from_chain(MonoType::Var(g), ops1.clone()));
        let t2 = normalize(&t2);
        self.bind(b2, t2.clone())?;
        self.record(Rule::ChainChain, vec![(b1, t1), (b2, t2)]);
        Ok(())
    }

    /// Rule x: an extensible type over a record against anything.
    fn record_base(&mut self, chain: &MonoType, other: &MonoType) -> Result<(), UnifyError> {
        let (base, ops) = chain.chain();
        let MonoType::Record(fs) = base else { unreachable!() };
        let mut fs = fs.clone();
        let mut eqs = Vec::new();
        for op in ops {
            match op.sign {
                Sign::Minus => match fs.remove(&op.label) {
                    Some(t) => eqs.push((t, op.ty)),
                    None => return Err(UnifyError::MissingField(op.label)),
                },
                Sign::Plus => {
                    if fs.contains_key(&op.label) {
                        return Err(UnifyError::ForbiddenField(op.label));
                    }
                    fs.insert(op.label, op.ty);
                }
            }
        }
        self.push([(MonoType::Record(fs), other.clone())]);
        self.push(eqs);
        self.record(Rule::RecordBase, Vec::new());
        Ok(())
    }

    /// Rule xi: `β ⊕ ops = {F}` becomes `β = {F'}` with the operations undone.
    fn chain_record(&mut self, chain: &MonoType, fs: &Fields) -> Result<(), UnifyError> {
        let (base, ops) = chain.chain();
        let mut fs = fs.clone();
        let mut eqs = Vec::new();
        for op in ops.into_iter().rev() {
            match op.sign {
                Sign::Plus => match fs.remove(&op.label) {
                    Some(t) => eqs.push((t, op.ty)),
                    None => return Err(UnifyError::MissingField(op.label)),
                },
                Sign::Minus => {
                    if fs.contains_key(&op.label) {
                        return Err(UnifyError::ForbiddenField(op.label));
                    }
                    fs.insert(op.label, op.ty);
                }
            }
        }
        self.push([(base.clone(), MonoType::Record(fs))]);
        self.push(eqs);
        self.record(Rule::ChainRecord, Vec::new());
        Ok(())
    }
}
