//! Typing derivations for the declarative rules, an independent validator
//! for them, and a decision procedure for claimed typings.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::infer::{infer, InferError};
use crate::kinding::{has_kind, wf_env, wf_kind_assignment};
use crate::normalize::{equiv, normalize};
use crate::subst::{closure, generic_instance, Substitution};
use crate::syntax::{
    base_of, eftv_env, Fields, Ident, Kind, KindAssignment, MonoType, PolyType, Term, TyVar,
    TypeAssignment,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleName {
    Var,
    Const,
    Abs,
    App,
    Let,
    Rec,
    Sel,
    Modif,
    Gen,
    Contr,
    Ext,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `K, Γ ⊢ M : σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Judgment {
    pub kinds: KindAssignment,
    pub env: TypeAssignment,
    pub term: Term,
    pub ty: PolyType,
}

/// A premise that is not itself a typing judgment.
#[derive(Debug, Clone, PartialEq)]
pub enum Side {
    /// `Γ` is well formed under `K`.
    WellFormedEnv,
    /// `K ⊩ σ ≥ τ`.
    Instance(PolyType, MonoType),
    /// `K ⊩ τ :: κ`.
    HasKind(MonoType, Kind),
    /// `Base(τ1) ∉ FTV(τ2)`.
    BaseNotFree(MonoType, MonoType),
    /// The conclusion is the closure of the premise.
    Closure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub rule: RuleName,
    pub judgment: Judgment,
    pub premises: Vec<Derivation>,
    pub side: Vec<Side>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// The node reached by following premise indices from the root.
    pub fn at(&self, path: &[usize]) -> Option<&Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get(i))
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get_mut(i))
    }

    /// Paths to every node, in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (i, p) in self.premises.iter().enumerate() {
            for mut sub in p.paths() {
                sub.insert(0, i);
                out.push(sub);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid ({rule}) node at {path:?}: {reason}")]
pub struct ValidationError {
    pub path: Vec<usize>,
    pub rule: RuleName,
    pub reason: String,
}

/// Checks every node of `d` against its rule, recomputing side conditions.
/// Premises are checked before their conclusion, so the reported node is the
/// deepest one at fault.
pub fn validate(d: &Derivation) -> Result<(), ValidationError> {
    let mut path = Vec::new();
    validate_at(d, &mut path)
}

fn validate_at(d: &Derivation, path: &mut Vec<usize>) -> Result<(), ValidationError> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        validate_at(p, path)?;
        path.pop();
    }
    check_node(d).map_err(|reason| ValidationError { path: path.clone(), rule: d.rule, reason })
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mono_of(s: &PolyType, what: &str) -> Result<MonoType, String> {
    ensure(s.is_mono(), || format!("{what} must be a monotype, found {s}"))?;
    Ok(s.body.clone())
}

fn check_node(d: &Derivation) -> Check {
    let j = &d.judgment;
    ensure(wf_kind_assignment(&j.kinds), || "kind assignment is not well formed".into())?;
    let arity = match d.rule {
        RuleName::Var | RuleName::Const => 0,
        RuleName::Abs | RuleName::Sel | RuleName::Contr | RuleName::Gen => 1,
        RuleName::App | RuleName::Let | RuleName::Modif | RuleName::Ext => 2,
        RuleName::Rec => match &j.term {
            Term::Record(fs) => fs.len(),
            _ => return Err("term is not a record".into()),
        },
    };
    ensure(d.premises.len() == arity, || {
        format!("expected {arity} typing premises, found {}", d.premises.len())
    })?;
    if d.rule != RuleName::Gen {
        for p in &d.premises {
            ensure(kinds_equiv(&p.judgment.kinds, &j.kinds), || {
                "premise uses a different kind assignment".into()
            })?;
        }
    }
    match d.rule {
        RuleName::Var => check_var(d),
        RuleName::Const => check_const(d),
        RuleName::Abs => check_abs(d),
        RuleName::App => check_app(d),
        RuleName::Let => check_let(d),
        RuleName::Rec => check_rec(d),
        RuleName::Sel => check_sel(d),
        RuleName::Modif => check_modif(d),
        RuleName::Contr => check_contr(d),
        RuleName::Ext => check_ext(d),
        RuleName::Gen => check_gen(d),
    }
}

fn same_env(p: &Derivation, env: &TypeAssignment) -> Check {
    ensure(envs_equiv(&p.judgment.env, env), || "premise uses a different type assignment".into())
}

fn same_term(p: &Derivation, t: &Term) -> Check {
    ensure(p.judgment.term == *t, || format!("premise types `{}`, expected `{t}`", p.judgment.term))
}

fn premise_mono(p: &Derivation) -> Result<MonoType, String> {
    mono_of(&p.judgment.ty, "premise type")
}

fn expect_equiv(found: &MonoType, expected: &MonoType, what: &str) -> Check {
    ensure(equiv(found, expected), || format!("{what} is {found}, expected {expected}"))
}

fn check_var(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Var(x) = &j.term else { return Err("term is not a variable".into()) };
    let ty = mono_of(&j.ty, "conclusion")?;
    let [Side::WellFormedEnv, Side::Instance(s, t)] = d.side.as_slice() else {
        return Err("expected side conditions: well-formed environment, instance".into());
    };
    ensure(wf_env(&j.kinds, &j.env), || "type assignment is not well formed".into())?;
    let bound = j.env.get(x).ok_or_else(|| format!("`{x}` is not in the type assignment"))?;
    ensure(polys_equiv(bound, s), || format!("instance is taken of {s}, but `{x}` has type {bound}"))?;
    expect_equiv(t, &ty, "instance")?;
    ensure(generic_instance(&j.kinds, s, &PolyType::mono(t.clone())), || {
        format!("{t} is not a generic instance of {s}")
    })
}

fn check_const(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Const(c) = &j.term else { return Err("term is not a constant".into()) };
    ensure(matches!(d.side.as_slice(), [Side::WellFormedEnv]), || {
        "expected side condition: well-formed environment".into()
    })?;
    ensure(wf_env(&j.kinds, &j.env), || "type assignment is not well formed".into())?;
    expect_equiv(&mono_of(&j.ty, "conclusion")?, &MonoType::Base(c.base_type()), "conclusion")
}

fn no_side(d: &Derivation) -> Check {
    ensure(d.side.is_empty(), || "unexpected side conditions".into())
}

fn check_abs(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Abs(x, body) = &j.term else { return Err("term is not an abstraction".into()) };
    no_side(d)?;
    let MonoType::Arrow(dom, cod) = normalize(&mono_of(&j.ty, "conclusion")?) else {
        return Err(format!("conclusion {} is not a function type", j.ty));
    };
    let p = &d.premises[0];
    same_term(p, body)?;
    same_env(p, &j.env.extended(x.clone(), PolyType::mono(*dom)))?;
    expect_equiv(&premise_mono(p)?, &cod, "body type")
}

fn check_app(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::App(f, a) = &j.term else { return Err("term is not an application".into()) };
    no_side(d)?;
    let (pf, pa) = (&d.premises[0], &d.premises[1]);
    same_term(pf, f)?;
    same_term(pa, a)?;
    same_env(pf, &j.env)?;
    same_env(pa, &j.env)?;
    let want = MonoType::arrow(premise_mono(pa)?, mono_of(&j.ty, "conclusion")?);
    expect_equiv(&premise_mono(pf)?, &want, "function type")
}

fn check_let(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Let(x, m, n) = &j.term else { return Err("term is not a let".into()) };
    no_side(d)?;
    let (pm, pn) = (&d.premises[0], &d.premises[1]);
    same_term(pm, m)?;
    same_term(pn, n)?;
    same_env(pm, &j.env)?;
    same_env(pn, &j.env.extended(x.clone(), pm.judgment.ty.clone()))?;
    expect_equiv(&premise_mono(pn)?, &mono_of(&j.ty, "conclusion")?, "body type")
}

fn check_rec(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Record(fs) = &j.term else { return Err("term is not a record".into()) };
    no_side(d)?;
    let mut tys = Fields::new();
    for ((l, m), p) in fs.iter().zip(&d.premises) {
        same_term(p, m)?;
        same_env(p, &j.env)?;
        tys.insert(l.clone(), premise_mono(p)?);
    }
    expect_equiv(&mono_of(&j.ty, "conclusion")?, &MonoType::Record(tys), "conclusion")
}

/// The single `K ⊩ τ1 :: κ` side condition, checked to hold and to have the
/// expected shape.
fn kinding_side<'a>(d: &'a Derivation, present: bool) -> Result<(&'a MonoType, &'a MonoType), String> {
    let Some(Side::HasKind(t1, kind)) = d.side.first() else {
        return Err("missing kinding side condition".into());
    };
    let Kind::Record { left, right } = kind else {
        return Err(format!("side condition kind {kind} is not a record kind"));
    };
    let (one, other) = if present { (left, right) } else { (right, left) };
    let label = match &d.judgment.term {
        Term::Select(_, l) | Term::Modify(_, l, _) | Term::Remove(_, l) | Term::Extend(_, l, _) => l,
        _ => return Err("term has no field label".into()),
    };
    let (Some((l, t2)), true) = (one.iter().next(), one.len() == 1 && other.is_empty()) else {
        return Err(format!("side condition kind {kind} does not mention exactly `{label}`"));
    };
    ensure(l == label, || format!("side condition is about `{l}`, not `{label}`"))?;
    ensure(has_kind(&d.judgment.kinds, t1, kind), || format!("{t1} does not have kind {kind}"))?;
    Ok((t1, t2))
}

fn check_sel(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Select(m, _) = &j.term else { return Err("term is not a selection".into()) };
    ensure(d.side.len() == 1, || "expected one side condition".into())?;
    let (t1, t2) = kinding_side(d, true)?;
    let p = &d.premises[0];
    same_term(p, m)?;
    same_env(p, &j.env)?;
    expect_equiv(&premise_mono(p)?, t1, "record type")?;
    expect_equiv(&mono_of(&j.ty, "conclusion")?, t2, "conclusion")
}

fn check_modif(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Modify(m, _, n) = &j.term else { return Err("term is not a modification".into()) };
    ensure(d.side.len() == 1, || "expected one side condition".into())?;
    let (t1, t2) = kinding_side(d, true)?;
    let (pm, pn) = (&d.premises[0], &d.premises[1]);
    same_term(pm, m)?;
    same_term(pn, n)?;
    same_env(pm, &j.env)?;
    same_env(pn, &j.env)?;
    expect_equiv(&premise_mono(pm)?, t1, "record type")?;
    expect_equiv(&premise_mono(pn)?, t2, "field type")?;
    expect_equiv(&mono_of(&j.ty, "conclusion")?, t1, "conclusion")
}

fn check_contr(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Remove(m, l) = &j.term else { return Err("term is not a removal".into()) };
    ensure(d.side.len() == 1, || "expected one side condition".into())?;
    let (t1, t2) = kinding_side(d, true)?;
    let p = &d.premises[0];
    same_term(p, m)?;
    same_env(p, &j.env)?;
    expect_equiv(&premise_mono(p)?, t1, "record type")?;
    let want = t1.clone().try_contr(l.clone(), t2.clone()).map_err(|e| e.to_string())?;
    expect_equiv(&mono_of(&j.ty, "conclusion")?, &want, "conclusion")
}

fn check_ext(d: &Derivation) -> Check {
    let j = &d.judgment;
    let Term::Extend(m, l, n) = &j.term else { return Err("term is not an extension".into()) };
    ensure(d.side.len() == 2, || "expected two side conditions".into())?;
    let (t1, t2) = kinding_side(d, false)?;
    let Side::BaseNotFree(b1, b2) = &d.side[1] else {
        return Err("missing base side condition".into());
    };
    expect_equiv(b1, t1, "base condition type")?;
    expect_equiv(b2, t2, "base condition field type")?;
    if let Ok(MonoType::Var(v)) = base_of(b1) {
        ensure(!b2.mentions(*v), || format!("base {v:?} of {b1} is free in {b2}"))?;
    }
    let (pm, pn) = (&d.premises[0], &d.premises[1]);
    same_term(pm, m)?;
    same_term(pn, n)?;
    same_env(pm, &j.env)?;
    same_env(pn, &j.env)?;
    expect_equiv(&premise_mono(pm)?, t1, "record type")?;
    expect_equiv(&premise_mono(pn)?, t2, "field type")?;
    let want = t1.clone().try_ext(l.clone(), t2.clone()).map_err(|e| e.to_string())?;
    expect_equiv(&mono_of(&j.ty, "conclusion")?, &want, "conclusion")
}

fn check_gen(d: &Derivation) -> Check {
    let j = &d.judgment;
    ensure(matches!(d.side.as_slice(), [Side::Closure]), || "expected closure side condition".into())?;
    let p = &d.premises[0];
    same_term(p, &j.term)?;
    same_env(p, &j.env)?;
    let t = premise_mono(p)?;
    let (k, s) = closure(&p.judgment.kinds, &j.env, &t);
    ensure(kinds_equiv(&k, &j.kinds), || "conclusion kind assignment is not the closure's".into())?;
    ensure(same_quantification(&s, &j.ty), || format!("closure is {s}, conclusion is {}", j.ty))
}

/// Same quantified variables with equivalent kinds and bodies, in any order
/// that keeps each kind's dependencies bound first.
fn same_quantification(expected: &PolyType, found: &PolyType) -> bool {
    if expected.quantifiers.len() != found.quantifiers.len() || !equiv(&expected.body, &found.body) {
        return false;
    }
    let bound: BTreeSet<TyVar> = found.bound_vars().into_iter().collect();
    let mut seen = BTreeSet::new();
    for (v, kind) in &found.quantifiers {
        let Some((_, k0)) = expected.quantifiers.iter().find(|(w, _)| w == v) else {
            return false;
        };
        if !kind_equiv(k0, kind) || kind.ftv().iter().any(|w| bound.contains(w) && !seen.contains(w)) {
            return false;
        }
        seen.insert(*v);
    }
    true
}

pub fn kind_equiv(a: &Kind, b: &Kind) -> bool {
    match (a, b) {
        (Kind::Universal, Kind::Universal) => true,
        (Kind::Record { left: l1, right: r1 }, Kind::Record { left: l2, right: r2 }) => {
            fields_equiv(l1, l2) && fields_equiv(r1, r2)
        }
        _ => false,
    }
}

fn fields_equiv(a: &Fields, b: &Fields) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|((l1, t1), (l2, t2))| l1 == l2 && equiv(t1, t2))
}

pub fn kinds_equiv(a: &KindAssignment, b: &KindAssignment) -> bool {
    a.len() == b.len()
        && a.iter().zip(b.iter()).all(|((v1, k1), (v2, k2))| v1 == v2 && kind_equiv(k1, k2))
}

/// α-equivalence modulo `≐` on bodies and kinds.
pub fn polys_equiv(a: &PolyType, b: &PolyType) -> bool {
    if a.quantifiers.len() != b.quantifiers.len() {
        return false;
    }
    let mut next = 1 + crate::subst::max_id(a.all_vars().into_iter().chain(b.all_vars()));
    let mut ra = Substitution::identity();
    let mut rb = Substitution::identity();
    for ((va, ka), (vb, kb)) in a.quantifiers.iter().zip(&b.quantifiers) {
        if !kind_equiv(&ra.apply_kind(ka), &rb.apply_kind(kb)) {
            return false;
        }
        let fresh = MonoType::Var(TyVar(next));
        next += 1;
        ra.insert(*va, fresh.clone());
        rb.insert(*vb, fresh);
    }
    equiv(&ra.apply(&a.body), &rb.apply(&b.body))
}

pub fn envs_equiv(a: &TypeAssignment, b: &TypeAssignment) -> bool {
    a.len() == b.len()
        && a.iter().zip(b.iter()).all(|((x1, s1), (x2, s2))| x1 == x2 && polys_equiv(s1, s2))
}

/// Applies a kinded substitution `(k, s)` to every judgment of `d`.
///
/// Quantified variables introduced by (Gen) nodes are kept apart from `s`,
/// and their kinds are added back for the premise.
pub fn substitute(d: &Derivation, k: &KindAssignment, s: &Substitution) -> Derivation {
    let j = &d.judgment;
    let ty = s.apply_poly(&j.ty);
    let premises = if d.rule == RuleName::Gen {
        let mut inner = s.clone();
        let mut inner_k = k.clone();
        for ((old, _), (new, kind)) in j.ty.quantifiers.iter().zip(&ty.quantifiers) {
            inner.remove(*old);
            if old != new {
                inner.insert(*old, MonoType::Var(*new));
            }
            inner_k.insert(*new, kind.clone());
        }
        d.premises.iter().map(|p| substitute(p, &inner_k, &inner)).collect()
    } else {
        d.premises.iter().map(|p| substitute(p, k, s)).collect()
    };
    let side = d
        .side
        .iter()
        .map(|c| match c {
            Side::WellFormedEnv => Side::WellFormedEnv,
            Side::Closure => Side::Closure,
            Side::Instance(p, t) => Side::Instance(s.apply_poly(p), s.apply(t)),
            Side::HasKind(t, kind) => Side::HasKind(s.apply(t), s.apply_kind(kind)),
            Side::BaseNotFree(a, b) => Side::BaseNotFree(s.apply(a), s.apply(b)),
        })
        .collect();
    Derivation {
        rule: d.rule,
        judgment: Judgment {
            kinds: k.clone(),
            env: s.apply_env(&j.env),
            term: j.term.clone(),
            ty,
        },
        premises,
        side,
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("inference failed: {0}")]
    InferenceFailed(InferError),
    #[error("{claim} is not an instance of the principal type {principal}")]
    NotAnInstance { claim: String, principal: String },
}

/// Decides `K, Γ ⊢ M : σ` by comparing `σ` with the principal typing.
///
/// The variables essentially free in `Γ` are threaded through a tuple type,
/// so the inferred substitution must leave them alone for the claim to hold.
pub fn check(k: &KindAssignment, g: &TypeAssignment, m: &Term, s: &PolyType) -> Result<(), CheckError> {
    let r = infer(k, g, m).map_err(CheckError::InferenceFailed)?;
    let fixed: Vec<TyVar> = eftv_env(k, g).into_iter().collect();
    let tuple = |body: MonoType, image: &dyn Fn(TyVar) -> MonoType| {
        fixed.iter().rev().fold(body, |acc, v| MonoType::arrow(image(*v), acc))
    };
    let inferred = tuple(r.ty.clone(), &|v| normalize(&r.subst.lookup(v)));
    let (_, principal) = closure(&r.kinds, &TypeAssignment::new(), &inferred);
    let claim = PolyType::new(s.quantifiers.clone(), tuple(s.body.clone(), &|v| MonoType::Var(v)));
    if generic_instance(k, &principal, &claim) {
        Ok(())
    } else {
        let (_, p) = closure(&r.kinds, &r.subst.apply_env(g), &r.ty);
        Err(CheckError::NotAnInstance { claim: s.to_string(), principal: p.to_string() })
    }
}

/// The judgment a derivation concludes, with `x : σ` added to its
/// environment; convenience for building trees by hand.
pub fn judgment(k: &KindAssignment, g: &TypeAssignment, m: Term, ty: impl Into<PolyType>) -> Judgment {
    Judgment { kinds: k.clone(), env: g.clone(), term: m, ty: ty.into() }
}

/// Extends an environment; convenience for building trees by hand.
pub fn bind(g: &TypeAssignment, x: &str, s: PolyType) -> TypeAssignment {
    g.extended(Ident::from(x), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_env_in, parse_term, parse_type, parse_type_in, Scope};
    use crate::syntax::Literal;

    fn leaf(rule: RuleName, j: Judgment, side: Vec<Side>) -> Derivation {
        Derivation { rule, judgment: j, premises: Vec::new(), side }
    }

    /// The hand-built derivation for `extend(x, l, y).l`.
    pub(crate) fn extension_derivation() -> Derivation {
        let mut scope = Scope::new();
        let env = parse_env_in("'a1 :: << || l: 'a2>>\n'a2 :: U\nx : 'a1\ny : 'a2", &mut scope).unwrap();
        let a1 = MonoType::Var(scope.get("'a1").unwrap());
        let a2 = MonoType::Var(scope.get("'a2").unwrap());
        let (k, g) = (env.kinds, env.types);
        let var = |x: &str, t: &MonoType| {
            leaf(
                RuleName::Var,
                judgment(&k, &g, Term::var(x), t.clone()),
                vec![Side::WellFormedEnv, Side::Instance(PolyType::mono(t.clone()), t.clone())],
            )
        };
        let ext_ty = a1.clone().ext("l", a2.clone());
        let ext = Derivation {
            rule: RuleName::Ext,
            judgment: judgment(&k, &g, Term::extend(Term::var("x"), "l", Term::var("y")), ext_ty.clone()),
            premises: vec![var("x", &a1), var("y", &a2)],
            side: vec![
                Side::HasKind(a1.clone(), Kind::rec([], [("l", a2.clone())])),
                Side::BaseNotFree(a1.clone(), a2.clone()),
            ],
        };
        Derivation {
            rule: RuleName::Sel,
            judgment: judgment(&k, &g, parse_term("extend(x, l, y).l").unwrap(), a2.clone()),
            premises: vec![ext],
            side: vec![Side::HasKind(ext_ty, Kind::rec([("l", a2)], []))],
        }
    }

    #[test]
    fn extension_derivation_is_valid() {
        validate(&extension_derivation()).unwrap();
    }

    #[test]
    fn retyped_extension_is_rejected() {
        let mut d = extension_derivation();
        let ext = d.at_mut(&[0]).unwrap();
        let MonoType::Ext(base, l, t) = ext.judgment.ty.body.clone() else { panic!() };
        ext.judgment.ty = PolyType::mono(MonoType::Contr(base, l, t));
        let err = validate(&d).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(err.rule, RuleName::Ext);
    }

    #[test]
    fn constant() {
        let k = KindAssignment::new();
        let g = TypeAssignment::new();
        let d = leaf(
            RuleName::Const,
            judgment(&k, &g, Term::Const(Literal::Int(1)), MonoType::int()),
            vec![Side::WellFormedEnv],
        );
        validate(&d).unwrap();
        let mut bad = d.clone();
        bad.judgment.ty = MonoType::bool().into();
        assert!(validate(&bad).is_err());
    }

    #[test]
    fn substituting_a_valid_derivation() {
        let d = extension_derivation();
        let k = &d.judgment.kinds;
        let a1 = *k.domain().iter().next().unwrap();
        let a2 = TyVar(a1.0 + 1);
        // α1 := β + {m: Int}, with β :: << || l: α2, m: Int>>
        let b = TyVar(10);
        let k2 = KindAssignment::new()
            .with(a2, Kind::Universal)
            .with(b, Kind::rec([], [("l", MonoType::Var(a2)), ("m", MonoType::int())]));
        let s = Substitution::singleton(a1, MonoType::Var(b).ext("m", MonoType::int()));
        assert!(crate::subst::respects(&k2, &s, k).is_ok());
        validate(&substitute(&d, &k2, &s)).unwrap();
    }

    #[test]
    fn checking_claims() {
        let (k, g) = (KindAssignment::new(), TypeAssignment::new());
        let sel = parse_term("\\x. x.l").unwrap();
        check(&k, &g, &sel, &parse_type("forall 'b :: <<l: Int || >>. 'b -> Int").unwrap()).unwrap();
        let id = parse_term("\\x. x").unwrap();
        assert!(matches!(
            check(&k, &g, &id, &parse_type("Int -> Bool").unwrap()),
            Err(CheckError::NotAnInstance { .. })
        ));
        let rm = parse_term("remove({l = 1, m = 2}, l)").unwrap();
        check(&k, &g, &rm, &parse_type("{l: Int, m: Int} - {l: Int}").unwrap()).unwrap();
        assert!(matches!(
            check(&k, &g, &parse_term("x").unwrap(), &parse_type("Int").unwrap()),
            Err(CheckError::InferenceFailed(_))
        ));
    }

    #[test]
    fn checking_respects_the_environment() {
        let mut scope = Scope::new();
        let env = parse_env_in("'a :: U\nx : 'a", &mut scope).unwrap();
        let x = parse_term("x").unwrap();
        check(&env.kinds, &env.types, &x, &parse_type_in("'a", &mut scope).unwrap()).unwrap();
        // x's type is fixed by the environment, it cannot be specialised
        assert!(check(&env.kinds, &env.types, &x, &parse_type("Int").unwrap()).is_err());
    }
}
