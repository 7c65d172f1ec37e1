//! Principal kinded type inference with derivation trees.

use std::fmt;

use thiserror::Error;

use crate::checker::{Derivation, Judgment, RuleName, Side};
use crate::checker;
use crate::kinding::{wf_env, wf_kind_assignment};
use crate::normalize::normalize;
use crate::pretty::Printer;
use crate::subst::{closure, Substitution};
use crate::syntax::{
    base_of, FreshSupply, Ident, Kind, KindAssignment, Label, MonoType, PolyType, Term, TyVar,
    TypeAssignment,
};
use crate::unify::{unify_with, UnifyError};

/// `(K', S, τ)` together with a derivation of `K', S(Γ) ⊢ M : τ`.
#[derive(Debug, Clone)]
pub struct InferResult {
    pub kinds: KindAssignment,
    pub subst: Substitution,
    pub ty: MonoType,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FailureReason {
    Unbound(Ident),
    Unify(#[from] UnifyError),
    BaseOccurs { base: TyVar, field: MonoType },
    RecursiveKind(TyVar),
    IllFormedInput(String),
}

impl FailureReason {
    pub fn describe(&self, p: &mut Printer) -> String {
        match self {
            FailureReason::Unbound(x) => format!("unbound variable `{x}`"),
            FailureReason::Unify(e) => e.describe(p),
            FailureReason::BaseOccurs { base, field } => format!(
                "base {} of the extended record occurs in the new field's type {}",
                p.var(*base),
                p.mono(field)
            ),
            FailureReason::RecursiveKind(v) => {
                format!("the kind of {} mentions itself, so it cannot be generalized", p.var(*v))
            }
            FailureReason::IllFormedInput(msg) => format!("ill-formed input: {msg}"),
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&mut Printer::new()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub struct InferError {
    /// The inference case that failed, named after the matching typing rule.
    pub rule: RuleName,
    pub term: Term,
    pub reason: FailureReason,
}

impl InferError {
    pub fn describe(&self, p: &mut Printer) -> String {
        format!("{} in ({}) at `{}`", self.reason.describe(p), self.rule, self.term)
    }
}

impl fmt::Display for InferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&mut Printer::new()))
    }
}

/// Infers with fresh variables drawn above everything in the input.
pub fn infer(k: &KindAssignment, g: &TypeAssignment, m: &Term) -> Result<InferResult, InferError> {
    infer_with(k, g, m, &mut FreshSupply::starting_at(1))
}

pub fn infer_with(
    k: &KindAssignment,
    g: &TypeAssignment,
    m: &Term,
    fresh: &mut FreshSupply,
) -> Result<InferResult, InferError> {
    let fail = |reason: String| InferError {
        rule: rule_of(m),
        term: m.clone(),
        reason: FailureReason::IllFormedInput(reason),
    };
    if !wf_kind_assignment(k) {
        return Err(fail("kind assignment is not well formed".into()));
    }
    if !wf_env(k, g) {
        return Err(fail("type assignment is not well formed under the kind assignment".into()));
    }
    for v in k.domain().into_iter().chain(k.range_ftv()) {
        fresh.avoid(v);
    }
    for (_, s) in g.iter() {
        s.all_vars().into_iter().for_each(|v| fresh.avoid(v));
    }
    let r = Infer { fresh }.go(k, g, m)?;
    Ok(InferResult { subst: r.subst.normalized(), ..r })
}

/// `Cls(K', S(Γ), τ)` of a successful inference.
pub fn principal(k: &KindAssignment, g: &TypeAssignment, m: &Term) -> Result<(KindAssignment, PolyType), InferError> {
    let r = infer(k, g, m)?;
    generalize(m, &r.kinds, &r.subst.apply_env(g), &r.ty)
}

/// The closure, provided its quantifiers can be ordered so that no kind
/// mentions its own or a later binder.
pub fn generalize(
    m: &Term,
    k: &KindAssignment,
    g: &TypeAssignment,
    t: &MonoType,
) -> Result<(KindAssignment, PolyType), InferError> {
    let (k1, sigma) = closure(k, g, t);
    for (i, (_, kind)) in sigma.quantifiers.iter().enumerate() {
        let ftv = kind.ftv();
        if let Some((v, _)) = sigma.quantifiers[i..].iter().find(|(v, _)| ftv.contains(v)) {
            return Err(InferError { rule: RuleName::Let, term: m.clone(), reason: FailureReason::RecursiveKind(*v) });
        }
    }
    Ok((k1, sigma))
}

/// Replaces the quantified variables of `s` by fresh ones and adds their
/// (renamed) kinds to `k`.
pub fn instantiate(k: &KindAssignment, s: &PolyType, fresh: &mut FreshSupply) -> (KindAssignment, MonoType) {
    s.all_vars().into_iter().for_each(|v| fresh.avoid(v));
    let mut ren = Substitution::identity();
    let mut k2 = k.clone();
    for (v, kind) in &s.quantifiers {
        let b = fresh.fresh();
        k2.insert(b, ren.apply_kind(kind));
        ren.insert(*v, MonoType::Var(b));
    }
    (k2, normalize(&ren.apply(&s.body)))
}

fn rule_of(m: &Term) -> RuleName {
    match m {
        Term::Var(_) => RuleName::Var,
        Term::Const(_) => RuleName::Const,
        Term::Abs(..) => RuleName::Abs,
        Term::App(..) => RuleName::App,
        Term::Let(..) => RuleName::Let,
        Term::Record(_) => RuleName::Rec,
        Term::Select(..) => RuleName::Sel,
        Term::Modify(..) => RuleName::Modif,
        Term::Remove(..) => RuleName::Contr,
        Term::Extend(..) => RuleName::Ext,
    }
}

struct Infer<'f> {
    fresh: &'f mut FreshSupply,
}

impl Infer<'_> {
    fn var(&mut self) -> TyVar {
        self.fresh.fresh()
    }

    fn unify(
        &mut self,
        m: &Term,
        k: KindAssignment,
        eqs: &[(MonoType, MonoType)],
    ) -> Result<(KindAssignment, Substitution), InferError> {
        let u = unify_with(&k, eqs, self.fresh).map_err(|e| InferError {
            rule: rule_of(m),
            term: m.clone(),
            reason: FailureReason::Unify(e),
        })?;
        Ok((u.kinds, u.subst))
    }

    fn go(&mut self, k: &KindAssignment, g: &TypeAssignment, m: &Term) -> Result<InferResult, InferError> {
        let node = |kinds: &KindAssignment, env: TypeAssignment, ty: &MonoType, rule, premises, side| Derivation {
            rule,
            judgment: Judgment { kinds: kinds.clone(), env, term: m.clone(), ty: PolyType::mono(ty.clone()) },
            premises,
            side,
        };
        match m {
            Term::Var(x) => {
                let Some(s) = g.get(x) else {
                    return Err(InferError {
                        rule: RuleName::Var,
                        term: m.clone(),
                        reason: FailureReason::Unbound(x.clone()),
                    });
                };
                let (k1, ty) = instantiate(k, s, self.fresh);
                let side = vec![Side::WellFormedEnv, Side::Instance(s.clone(), ty.clone())];
                let d = node(&k1, g.clone(), &ty, RuleName::Var, vec![], side);
                Ok(InferResult { kinds: k1, subst: Substitution::identity(), ty, derivation: d })
            }
            Term::Const(c) => {
                let ty = MonoType::Base(c.base_type());
                let d = node(k, g.clone(), &ty, RuleName::Const, vec![], vec![Side::WellFormedEnv]);
                Ok(InferResult { kinds: k.clone(), subst: Substitution::identity(), ty, derivation: d })
            }
            Term::Abs(x, body) => {
                let a = self.var();
                let k0 = k.clone().with(a, Kind::Universal);
                let r = self.go(&k0, &g.extended(x.clone(), MonoType::Var(a).into()), body)?;
                let ty = MonoType::arrow(normalize(&r.subst.lookup(a)), r.ty);
                let d = node(&r.kinds, r.subst.apply_env(g), &ty, RuleName::Abs, vec![r.derivation], vec![]);
                Ok(InferResult { kinds: r.kinds, subst: r.subst, ty, derivation: d })
            }
            Term::App(f, arg) => {
                let r1 = self.go(k, g, f)?;
                let r2 = self.go(&r1.kinds, &r1.subst.apply_env(g), arg)?;
                let a = self.var();
                let eq = (r2.subst.apply(&r1.ty), MonoType::arrow(r2.ty.clone(), MonoType::Var(a)));
                let (k3, s3) = self.unify(m, r2.kinds.clone().with(a, Kind::Universal), &[eq])?;
                let ty = normalize(&s3.lookup(a));
                let s32 = s3.compose(&r2.subst);
                let premises = vec![
                    checker::substitute(&r1.derivation, &k3, &s32),
                    checker::substitute(&r2.derivation, &k3, &s3),
                ];
                let subst = s32.compose(&r1.subst);
                let d = node(&k3, subst.apply_env(g), &ty, RuleName::App, premises, vec![]);
                Ok(InferResult { kinds: k3, subst, ty, derivation: d })
            }
            Term::Let(x, bound, body) => {
                let r1 = self.go(k, g, bound)?;
                let g1 = r1.subst.apply_env(g);
                let (k1, sigma) = generalize(m, &r1.kinds, &g1, &r1.ty)?;
                let gen = Derivation {
                    rule: RuleName::Gen,
                    judgment: Judgment { kinds: k1.clone(), env: g1.clone(), term: (**bound).clone(), ty: sigma.clone() },
                    premises: vec![r1.derivation],
                    side: vec![Side::Closure],
                };
                let r2 = self.go(&k1, &g1.extended(x.clone(), sigma), body)?;
                let subst = r2.subst.compose(&r1.subst);
                let premises = vec![checker::substitute(&gen, &r2.kinds, &r2.subst), r2.derivation];
                let d = node(&r2.kinds, subst.apply_env(g), &r2.ty, RuleName::Let, premises, vec![]);
                Ok(InferResult { kinds: r2.kinds, subst, ty: r2.ty, derivation: d })
            }
            Term::Record(fields) => {
                let mut kinds = k.clone();
                let mut subst = Substitution::identity();
                let mut done: Vec<(Label, MonoType, Derivation, Substitution)> = Vec::new();
                for (l, fm) in fields {
                    let r = self.go(&kinds, &subst.apply_env(g), fm)?;
                    for (_, ty, _, later) in done.iter_mut() {
                        *ty = r.subst.apply(ty);
                        *later = r.subst.compose(later);
                    }
                    subst = r.subst.compose(&subst);
                    kinds = r.kinds;
                    done.push((l.clone(), r.ty, r.derivation, Substitution::identity()));
                }
                let mut tys = crate::syntax::Fields::new();
                let mut premises = Vec::with_capacity(done.len());
                for (l, ty, d, later) in done {
                    tys.insert(l, normalize(&ty));
                    premises.push(checker::substitute(&d, &kinds, &later));
                }
                let ty = MonoType::Record(tys);
                let d = node(&kinds, subst.apply_env(g), &ty, RuleName::Rec, premises, vec![]);
                Ok(InferResult { kinds, subst, ty, derivation: d })
            }
            Term::Select(r, l) | Term::Remove(r, l) => {
                let r1 = self.go(k, g, r)?;
                let (a1, a2) = (self.var(), self.var());
                let k0 = r1
                    .kinds
                    .clone()
                    .with(a1, Kind::Universal)
                    .with(a2, Kind::rec([(l.as_str(), MonoType::Var(a1))], []));
                let (k2, s2) = self.unify(m, k0, &[(MonoType::Var(a2), r1.ty.clone())])?;
                let field = normalize(&s2.lookup(a1));
                let (rule, ty) = match m {
                    Term::Select(..) => (RuleName::Sel, field.clone()),
                    _ => (RuleName::Contr, normalize(&s2.lookup(a2).contr(l.as_str(), field.clone()))),
                };
                let t1 = normalize(&s2.apply(&r1.ty));
                let side = vec![Side::HasKind(t1, Kind::rec([(l.as_str(), field)], []))];
                let subst = s2.compose(&r1.subst);
                let premises = vec![checker::substitute(&r1.derivation, &k2, &s2)];
                let d = node(&k2, subst.apply_env(g), &ty, rule, premises, side);
                Ok(InferResult { kinds: k2, subst, ty, derivation: d })
            }
            Term::Modify(r, l, v) | Term::Extend(r, l, v) => {
                let extend = matches!(m, Term::Extend(..));
                let r1 = self.go(k, g, r)?;
                let r2 = self.go(&r1.kinds, &r1.subst.apply_env(g), v)?;
                let t1 = normalize(&r2.subst.apply(&r1.ty));
                if extend {
                    if let Ok(MonoType::Var(b)) = base_of(&t1) {
                        if r2.ty.mentions(*b) {
                            return Err(InferError {
                                rule: RuleName::Ext,
                                term: m.clone(),
                                reason: FailureReason::BaseOccurs { base: *b, field: r2.ty.clone() },
                            });
                        }
                    }
                }
                let (a1, a2) = (self.var(), self.var());
                let field = (l.as_str(), MonoType::Var(a1));
                let kind = if extend { Kind::rec([], [field]) } else { Kind::rec([field], []) };
                let k0 = r2.kinds.clone().with(a1, Kind::Universal).with(a2, kind);
                let eqs = [(MonoType::Var(a1), r2.ty.clone()), (MonoType::Var(a2), t1.clone())];
                let (k3, s3) = self.unify(m, k0, &eqs)?;
                let field = normalize(&s3.lookup(a1));
                let rec = normalize(&s3.apply(&t1));
                let (rule, ty, side) = if extend {
                    let ty = normalize(&s3.lookup(a2).ext(l.as_str(), field.clone()));
                    let side = vec![
                        Side::HasKind(rec.clone(), Kind::rec([], [(l.as_str(), field.clone())])),
                        Side::BaseNotFree(rec, field),
                    ];
                    (RuleName::Ext, ty, side)
                } else {
                    let ty = normalize(&s3.lookup(a2));
                    (RuleName::Modif, ty, vec![Side::HasKind(rec, Kind::rec([(l.as_str(), field)], []))])
                };
                let s32 = s3.compose(&r2.subst);
                let premises = vec![
                    checker::substitute(&r1.derivation, &k3, &s32),
                    checker::substitute(&r2.derivation, &k3, &s3),
                ];
                let subst = s32.compose(&r1.subst);
                let d = node(&k3, subst.apply_env(g), &ty, rule, premises, side);
                Ok(InferResult { kinds: k3, subst, ty, derivation: d })
            }
        }
    }
}
