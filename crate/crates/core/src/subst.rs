//! Substitutions, kinded substitutions, closure and generic instances.
//!
//! Application never normalizes; callers normalize where they need to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::kinding::{field_info, kind_check, KindError};
use crate::normalize::{equiv, normalize};
use crate::syntax::{
    eftv_closure, eftv_env, FieldOp, Fields, Kind, KindAssignment, MonoType, PolyType, Sign,
    TyVar, TypeAssignment,
};

/// A finite map from type variables to monotypes, identity elsewhere.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Substitution(BTreeMap<TyVar, MonoType>);

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution(BTreeMap::new())
    }

    pub fn singleton(v: TyVar, t: MonoType) -> Substitution {
        Substitution(BTreeMap::from([(v, t)]))
    }

    pub fn from_map(m: BTreeMap<TyVar, MonoType>) -> Substitution {
        Substitution(m)
    }

    pub fn as_map(&self) -> &BTreeMap<TyVar, MonoType> {
        &self.0
    }

    pub fn into_map(self) -> BTreeMap<TyVar, MonoType> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(v, t)| *t == MonoType::Var(*v))
    }

    pub fn get(&self, v: TyVar) -> Option<&MonoType> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: TyVar, t: MonoType) {
        self.0.insert(v, t);
    }

    pub fn remove(&mut self, v: TyVar) -> Option<MonoType> {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TyVar, &MonoType)> + '_ {
        self.0.iter().map(|(v, t)| (*v, t))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<TyVar> {
        self.0.keys().copied().collect()
    }

    pub fn range_ftv(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        for t in self.0.values() {
            t.collect_ftv(&mut out);
        }
        out
    }

    /// `S(α)`, which is `α` outside the domain.
    pub fn lookup(&self, v: TyVar) -> MonoType {
        self.0.get(&v).cloned().unwrap_or(MonoType::Var(v))
    }

    pub fn apply(&self, t: &MonoType) -> MonoType {
        if self.0.is_empty() {
            return t.clone();
        }
        match t {
            MonoType::Base(_) => t.clone(),
            MonoType::Var(v) => self.lookup(*v),
            MonoType::Record(fs) => MonoType::Record(self.apply_fields(fs)),
            MonoType::Arrow(a, b) => MonoType::arrow(self.apply(a), self.apply(b)),
            MonoType::Ext(b, l, ft) => self.apply(b).op_unchecked(Sign::Plus, l.clone(), self.apply(ft)),
            MonoType::Contr(b, l, ft) => {
                self.apply(b).op_unchecked(Sign::Minus, l.clone(), self.apply(ft))
            }
        }
    }

    pub fn apply_fields(&self, fs: &Fields) -> Fields {
        fs.iter().map(|(l, t)| (l.clone(), self.apply(t))).collect()
    }

    pub fn apply_kind(&self, k: &Kind) -> Kind {
        match k {
            Kind::Universal => Kind::Universal,
            Kind::Record { left, right } => Kind::Record {
                left: self.apply_fields(left),
                right: self.apply_fields(right),
            },
        }
    }

    /// Applies under binders, renaming bound variables that would capture or
    /// be captured.
    pub fn apply_poly(&self, s: &PolyType) -> PolyType {
        if s.quantifiers.is_empty() {
            return PolyType::mono(self.apply(&s.body));
        }
        let bound: BTreeSet<TyVar> = s.bound_vars().into_iter().collect();
        let mut inner = Substitution(
            self.0
                .iter()
                .filter(|(v, _)| !bound.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        );
        let mut danger = inner.domain();
        for v in s.ftv() {
            inner.lookup(v).collect_ftv(&mut danger);
        }
        let mut next = 1 + max_id(
            s.all_vars()
                .into_iter()
                .chain(danger.iter().copied())
                .chain(inner.range_ftv()),
        );
        let mut quantifiers = Vec::with_capacity(s.quantifiers.len());
        for (v, k) in &s.quantifiers {
            // the kind is outside the scope of its own binder
            let k2 = inner.apply_kind(k);
            let v2 = if danger.contains(v) {
                let fresh = TyVar(next);
                next += 1;
                inner.insert(*v, MonoType::Var(fresh));
                fresh
            } else {
                inner.remove(*v);
                *v
            };
            quantifiers.push((v2, k2));
        }
        PolyType::new(quantifiers, inner.apply(&s.body))
    }

    pub fn apply_env(&self, g: &TypeAssignment) -> TypeAssignment {
        g.map(|t| self.apply_poly(t))
    }

    /// Applies to every kind in the range of `K`, keeping its domain.
    pub fn apply_kinds(&self, k: &KindAssignment) -> KindAssignment {
        k.iter().map(|(v, kind)| (v, self.apply_kind(kind))).collect()
    }

    /// `self ∘ s1`: first `s1`, then `self`.
    pub fn compose(&self, s1: &Substitution) -> Substitution {
        let mut out: BTreeMap<TyVar, MonoType> =
            s1.0.iter().map(|(v, t)| (*v, self.apply(t))).collect();
        for (v, t) in &self.0 {
            out.entry(*v).or_insert_with(|| t.clone());
        }
        out.retain(|v, t| *t != MonoType::Var(*v));
        Substitution(out)
    }

    pub fn restrict(&self, vars: &BTreeSet<TyVar>) -> Substitution {
        Substitution(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        )
    }

    /// Normalizes every type in the range.
    pub fn normalized(&self) -> Substitution {
        Substitution(self.0.iter().map(|(v, t)| (*v, normalize(t))).collect())
    }

    /// Pointwise equivalence over the union of domains.
    pub fn equal(&self, other: &Substitution) -> bool {
        crate::normalize::subst_equal(&self.0, &other.0)
    }
}

impl FromIterator<(TyVar, MonoType)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (TyVar, MonoType)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

pub fn max_id(vars: impl IntoIterator<Item = TyVar>) -> u32 {
    vars.into_iter().map(|v| v.0).max().unwrap_or(0)
}

pub fn compose(s2: &Substitution, s1: &Substitution) -> Substitution {
    s2.compose(s1)
}

/// A substitution paired with the kind assignment its range lives under.
#[derive(Clone, Debug, PartialEq)]
pub struct KindedSubstitution {
    pub kinds: KindAssignment,
    pub subst: Substitution,
}

impl KindedSubstitution {
    pub fn new(kinds: KindAssignment, subst: Substitution) -> Self {
        KindedSubstitution { kinds, subst }
    }

    /// Every `S(α)` is well formed under the kind assignment.
    pub fn is_well_formed(&self) -> bool {
        self.subst
            .iter()
            .all(|(_, t)| t.ftv().iter().all(|v| self.kinds.contains(*v)))
    }

    pub fn respects(&self, k2: &KindAssignment) -> bool {
        respects(&self.kinds, &self.subst, k2).is_ok()
    }
}

/// `(K1, S)` respects `K2`: for each `α ∈ dom(K2)`, `K1 ⊩ S(α) :: S(K2(α))`.
/// Reports the first offending variable.
pub fn respects(
    k1: &KindAssignment,
    s: &Substitution,
    k2: &KindAssignment,
) -> Result<(), (TyVar, KindError)> {
    for (v, kind) in k2.iter() {
        kind_check(k1, &s.lookup(v), &s.apply_kind(kind)).map_err(|e| (v, e))?;
    }
    Ok(())
}

/// `Cls(K, Γ, τ)`: generalizes the variables essentially free in `τ` but not
/// in `Γ`, together with any remaining variables whose kinds mention them.
pub fn closure(k: &KindAssignment, g: &TypeAssignment, t: &MonoType) -> (KindAssignment, PolyType) {
    let env_vars = eftv_env(k, g);
    let mut gen: BTreeSet<TyVar> = eftv_closure(k, t.ftv())
        .into_iter()
        .filter(|v| !env_vars.contains(v))
        .collect();
    // keep the residual assignment well formed
    loop {
        let dangling: Vec<TyVar> = k
            .iter()
            .filter(|(v, kind)| !gen.contains(v) && kind.ftv().iter().any(|w| gen.contains(w)))
            .map(|(v, _)| v)
            .collect();
        if dangling.is_empty() {
            break;
        }
        gen.extend(dangling);
    }
    let order = k.dependency_order(&gen);
    let mut rest = k.clone();
    let quantifiers = order
        .into_iter()
        .map(|v| (v, rest.remove(v).unwrap_or(Kind::Universal)))
        .collect();
    (rest, PolyType::new(quantifiers, t.clone()))
}

/// Renames the quantified variables of `s` to fresh ids starting at `next`.
pub fn rename_bound(s: &PolyType, next: &mut u32) -> PolyType {
    let mut ren = Substitution::identity();
    let mut quantifiers = Vec::with_capacity(s.quantifiers.len());
    for (v, k) in &s.quantifiers {
        let k2 = ren.apply_kind(k);
        let fresh = TyVar(*next);
        *next += 1;
        ren.insert(*v, MonoType::Var(fresh));
        quantifiers.push((fresh, k2));
    }
    PolyType::new(quantifiers, ren.apply(&s.body))
}

/// `K ⊩ σ1 ≥ σ2`, returning the witness substitution when one is found.
pub fn generic_instance_witness(
    k: &KindAssignment,
    s1: &PolyType,
    s2: &PolyType,
) -> Option<Substitution> {
    let mut next = 1 + max_id(
        k.vars()
            .chain(k.range_ftv())
            .chain(s1.all_vars())
            .chain(s2.all_vars()),
    );
    let s1 = rename_bound(s1, &mut next);
    let s2 = rename_bound(s2, &mut next);
    let mut k1 = k.clone();
    for (v, kind) in &s1.quantifiers {
        k1.insert(*v, kind.clone());
    }
    let mut k2 = k.clone();
    for (v, kind) in &s2.quantifiers {
        k2.insert(*v, kind.clone());
    }
    let flex: BTreeSet<TyVar> = s1.bound_vars().into_iter().collect();
    let mut m = Matcher { flex: &flex, k1: &k1, k2: &k2, subst: Substitution::identity() };
    let s = m.solve(&normalize(&s1.body), &normalize(&s2.body))?;
    let flex_kinds: KindAssignment =
        s1.quantifiers.iter().map(|(v, kind)| (*v, kind.clone())).collect();
    let ok = equiv(&s.apply(&s1.body), &s2.body) && respects(&k2, &s, &flex_kinds).is_ok();
    ok.then_some(s)
}

pub fn generic_instance(k: &KindAssignment, s1: &PolyType, s2: &PolyType) -> bool {
    generic_instance_witness(k, s1, s2).is_some()
}

/// One-sided matching of a pattern over flexible variables against a type
/// over rigid ones, modulo canonical forms.
struct Matcher<'a> {
    flex: &'a BTreeSet<TyVar>,
    k1: &'a KindAssignment,
    k2: &'a KindAssignment,
    subst: Substitution,
}

enum Goal {
    Eq(MonoType, MonoType),
    Kind(TyVar),
}

impl Matcher<'_> {
    fn unresolved(&self, p: &MonoType) -> bool {
        p.ftv().iter().any(|v| self.flex.contains(v) && self.subst.get(*v).is_none())
    }

    fn solve(&mut self, pattern: &MonoType, target: &MonoType) -> Option<Substitution> {
        let mut goals = vec![Goal::Eq(pattern.clone(), target.clone())];
        loop {
            let mut progress = false;
            let mut postponed = Vec::new();
            while let Some(goal) = goals.pop() {
                match self.step(goal, &mut goals)? {
                    Some(g) => postponed.push(g),
                    None => progress = true,
                }
            }
            goals = postponed;
            if goals.is_empty() && self.flex.iter().all(|v| self.subst.get(*v).is_some()) {
                return Some(self.subst.clone());
            }
            if !progress && !self.bind_default() {
                return None;
            }
        }
    }

    /// Gives an otherwise unconstrained variable the simplest value its kind
    /// allows.
    fn bind_default(&mut self) -> bool {
        let pending: BTreeSet<TyVar> =
            self.flex.iter().copied().filter(|v| self.subst.get(*v).is_none()).collect();
        let order = self.k1.dependency_order(&pending);
        let Some(&v) = order.first() else { return false };
        let value = match self.k1.get(v) {
            Some(Kind::Record { left, .. }) => {
                MonoType::Record(left.iter().map(|(l, t)| (l.clone(), self.resolve(t))).collect())
            }
            _ => MonoType::int(),
        };
        self.subst.insert(v, normalize(&value));
        true
    }

    /// Applies the bindings found so far, defaulting anything still unbound
    /// to `Int`.
    fn resolve(&self, t: &MonoType) -> MonoType {
        let mut s = self.subst.clone();
        for v in t.ftv() {
            if self.flex.contains(&v) && s.get(v).is_none() {
                s.insert(v, MonoType::int());
            }
        }
        s.apply(t)
    }

    fn bind(&mut self, v: TyVar, t: MonoType, goals: &mut Vec<Goal>) {
        self.subst.insert(v, t);
        goals.push(Goal::Kind(v));
    }

    /// Returns `Ok(Some(goal))` to postpone, `None` on failure.
    fn step(&mut self, goal: Goal, goals: &mut Vec<Goal>) -> Option<Option<Goal>> {
        match goal {
            Goal::Kind(v) => {
                let value = self.subst.lookup(v);
                if let Some(Kind::Record { left, right }) = self.k1.get(v) {
                    let info = field_info(self.k2, &value).ok()?;
                    for (l, pt) in left {
                        let tt = info.present.get(l)?;
                        goals.push(Goal::Eq(pt.clone(), tt.clone()));
                    }
                    for (l, pt) in right {
                        if let Some(tt) = info.absent.get(l) {
                            goals.push(Goal::Eq(pt.clone(), tt.clone()));
                        }
                    }
                }
                Some(None)
            }
            Goal::Eq(p, t) => {
                if !self.unresolved(&p) {
                    return equiv(&self.subst.apply(&p), &t).then_some(None);
                }
                self.match_eq(p, t, goals)
            }
        }
    }

    fn match_eq(&mut self, p: MonoType, t: MonoType, goals: &mut Vec<Goal>) -> Option<Option<Goal>> {
        let p = normalize(&self.subst.apply(&p));
        let t = normalize(&t);
        match (&p, &t) {
            (MonoType::Var(v), _) if self.flex.contains(v) => {
                self.bind(*v, t, goals);
                Some(None)
            }
            (MonoType::Arrow(a1, b1), MonoType::Arrow(a2, b2)) => {
                goals.push(Goal::Eq((**a1).clone(), (**a2).clone()));
                goals.push(Goal::Eq((**b1).clone(), (**b2).clone()));
                Some(None)
            }
            (MonoType::Record(f1), MonoType::Record(f2)) => {
                if f1.len() != f2.len() || f1.keys().ne(f2.keys()) {
                    return None;
                }
                for (l, pt) in f1 {
                    goals.push(Goal::Eq(pt.clone(), f2[l].clone()));
                }
                Some(None)
            }
            (MonoType::Ext(..) | MonoType::Contr(..), _) => self.match_chain(p, t, goals),
            _ => None,
        }
    }

    fn match_chain(&mut self, p: MonoType, t: MonoType, goals: &mut Vec<Goal>) -> Option<Option<Goal>> {
        let (pbase, pops) = p.chain();
        match pbase {
            MonoType::Var(b) if self.flex.contains(b) => {
                // b must be t with the pattern's operations undone
                let info = field_info(self.k2, &t).ok()?;
                let mut ready = true;
                for op in &pops {
                    match op.sign {
                        Sign::Plus => {
                            let tt = info.present.get(&op.label)?;
                            if self.unresolved(&op.ty) {
                                goals.push(Goal::Eq(op.ty.clone(), tt.clone()));
                                ready = false;
                            }
                        }
                        Sign::Minus => {
                            if info.present.contains_key(&op.label) {
                                return None;
                            }
                            if self.unresolved(&op.ty) {
                                if let Some(tt) = info.absent.get(&op.label) {
                                    goals.push(Goal::Eq(op.ty.clone(), tt.clone()));
                                }
                                ready = false;
                            }
                        }
                    }
                }
                if !ready {
                    return Some(Some(Goal::Eq(p.clone(), t)));
                }
                let undo = pops.iter().rev().map(|op| {
                    FieldOp::new(op.sign.flip(), op.label.clone(), self.subst.apply(&op.ty))
                });
                let value = normalize(&MonoType::from_chain(t.clone(), undo));
                self.bind(*b, value, goals);
                Some(None)
            }
            _ => {
                // rigid base: align operations label by label
                let (tbase, tops) = t.chain();
                if !t.is_chain() || pbase != tbase || pops.len() != tops.len() {
                    return Some(Some(Goal::Eq(p.clone(), t.clone()))).filter(|_| {
                        // a pattern with unresolved field types may still
                        // cancel down once they are known
                        pops.iter().any(|op| self.unresolved(&op.ty))
                            && self.could_cancel(&pops)
                    });
                }
                for (po, to) in pops.iter().zip(&tops) {
                    if po.label != to.label || po.sign != to.sign {
                        return None;
                    }
                    goals.push(Goal::Eq(po.ty.clone(), to.ty.clone()));
                }
                Some(None)
            }
        }
    }

    fn could_cancel(&self, ops: &[FieldOp]) -> bool {
        ops.iter().enumerate().any(|(i, a)| {
            ops[i + 1..].iter().any(|b| b.label == a.label && b.sign != a.sign)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(n: u32) -> MonoType {
        MonoType::Var(TyVar(n))
    }

    fn int() -> MonoType {
        MonoType::int()
    }

    fn boolean() -> MonoType {
        MonoType::bool()
    }

    fn v(n: u32) -> TyVar {
        TyVar(n)
    }

    #[test]
    fn apply_examples() {
        let s = Substitution::singleton(v(1), int());
        assert_eq!(s.apply(&MonoType::arrow(tv(1), tv(1))), MonoType::arrow(int(), int()));

        let r = MonoType::record([("l", int())]);
        let s = Substitution::singleton(v(1), r.clone());
        let applied = s.apply(&tv(1).contr("l", int()));
        assert_eq!(applied, r.contr("l", int()));
        assert_eq!(normalize(&applied), MonoType::empty_record());

        let s = Substitution::singleton(v(1), tv(2));
        let p = PolyType::new(vec![(v(3), Kind::rec([("l", tv(1))], []))], tv(3));
        let want = PolyType::new(vec![(v(3), Kind::rec([("l", tv(2))], []))], tv(3));
        assert_eq!(s.apply_poly(&p), want);
    }

    #[test]
    fn apply_poly_avoids_capture() {
        // [β/α](∀β::U. α → β) must rename the bound β
        let s = Substitution::singleton(v(1), tv(2));
        let p = PolyType::new(vec![(v(2), Kind::Universal)], MonoType::arrow(tv(1), tv(2)));
        let out = s.apply_poly(&p);
        let (b, _) = out.quantifiers[0].clone();
        assert_ne!(b, v(2));
        assert_eq!(out.body, MonoType::arrow(tv(2), MonoType::Var(b)));
    }

    #[test]
    fn compose_examples() {
        let s = Substitution::singleton(v(1), int());
        assert_eq!(Substitution::identity().compose(&s), s);
        let c = Substitution::singleton(v(2), int()).compose(&Substitution::singleton(v(1), tv(2)));
        assert_eq!(c.apply(&tv(1)), int());
        assert_eq!(c.apply(&tv(2)), int());
    }

    #[test]
    fn respects_examples() {
        let kind = KindAssignment::new().with(v(1), Kind::rec([("l", int())], []));
        let s = Substitution::singleton(v(1), MonoType::record([("l", int())]));
        assert!(respects(&KindAssignment::new(), &s, &kind).is_ok());
        let s = Substitution::singleton(v(1), MonoType::empty_record());
        assert!(respects(&KindAssignment::new(), &s, &kind).is_err());
        let k1 = KindAssignment::new().with(v(2), Kind::rec([], [("l", int())]));
        let s = Substitution::singleton(v(1), tv(2).ext("l", int()));
        assert!(respects(&k1, &s, &kind).is_ok());
    }

    #[test]
    fn closure_examples() {
        let k = KindAssignment::new()
            .with(v(1), Kind::Universal)
            .with(v(2), Kind::rec([("l", tv(1))], []));
        let (rest, s) = closure(&k, &TypeAssignment::new(), &MonoType::arrow(tv(2), tv(1)));
        assert!(rest.is_empty());
        assert_eq!(
            s,
            PolyType::new(
                vec![(v(1), Kind::Universal), (v(2), Kind::rec([("l", tv(1))], []))],
                MonoType::arrow(tv(2), tv(1))
            )
        );

        let k = KindAssignment::new().with(v(1), Kind::Universal);
        let g: TypeAssignment = [("x".into(), PolyType::mono(tv(1)))].into_iter().collect();
        let (rest, s) = closure(&k, &g, &MonoType::arrow(tv(1), int()));
        assert_eq!(rest, k);
        assert!(s.is_mono());

        let (rest, s) = closure(&KindAssignment::new(), &TypeAssignment::new(), &int());
        assert!(rest.is_empty());
        assert_eq!(s, PolyType::mono(int()));
    }

    #[test]
    fn generic_instance_examples() {
        let e = KindAssignment::new();
        let id = PolyType::new(vec![(v(1), Kind::Universal)], MonoType::arrow(tv(1), tv(1)));
        assert!(generic_instance(&e, &id, &MonoType::arrow(int(), int()).into()));
        assert!(!generic_instance(&e, &id, &MonoType::arrow(int(), boolean()).into()));

        let sel = PolyType::new(
            vec![(v(1), Kind::rec([("l", int())], []))],
            MonoType::arrow(tv(1), int()),
        );
        let lm = MonoType::record([("l", int()), ("m", boolean())]);
        assert!(generic_instance(&e, &sel, &MonoType::arrow(lm, int()).into()));
        let m = MonoType::record([("m", boolean())]);
        assert!(!generic_instance(&e, &sel, &MonoType::arrow(m, int()).into()));
    }

    #[test]
    fn generic_instance_through_kind_dependencies() {
        // ∀a::U. ∀b::<<l: a || >>. b -> a  ≥  {l: Bool} -> Bool
        let e = KindAssignment::new();
        let sel = PolyType::new(
            vec![(v(1), Kind::Universal), (v(2), Kind::rec([("l", tv(1))], []))],
            MonoType::arrow(tv(2), tv(1)),
        );
        let inst = MonoType::arrow(MonoType::record([("l", boolean())]), boolean());
        assert!(generic_instance(&e, &sel, &inst.into()));
        let only_arg = PolyType::new(
            vec![(v(1), Kind::Universal), (v(2), Kind::rec([("l", tv(1))], []))],
            tv(2),
        );
        assert!(generic_instance(&e, &only_arg, &MonoType::record([("l", boolean())]).into()));
    }

    #[test]
    fn generic_instance_with_chain_pattern() {
        // ∀a::<< || l: Int>>. a -> a + {l: Int}  ≥  {m: Bool} -> {l: Int, m: Bool}
        let e = KindAssignment::new();
        let s = PolyType::new(
            vec![(v(1), Kind::rec([], [("l", int())]))],
            MonoType::arrow(tv(1), tv(1).ext("l", int())),
        );
        let target = MonoType::arrow(
            MonoType::record([("m", boolean())]),
            MonoType::record([("l", int()), ("m", boolean())]),
        );
        assert!(generic_instance(&e, &s, &target.into()));
        // extension instantiated at a rigid kinded variable
        let k = KindAssignment::new().with(v(9), Kind::rec([], [("l", int())]));
        let target = MonoType::arrow(tv(9), tv(9).ext("l", int()));
        assert!(generic_instance(&k, &s, &target.into()));
    }

    #[test]
    fn generic_instance_between_polytypes() {
        let e = KindAssignment::new();
        let s1 = PolyType::new(
            vec![(v(1), Kind::Universal), (v(2), Kind::rec([("l", tv(1))], []))],
            MonoType::arrow(tv(2), tv(1)),
        );
        let s2 = PolyType::new(
            vec![(v(5), Kind::rec([("l", int()), ("m", boolean())], []))],
            MonoType::arrow(tv(5), int()),
        );
        assert!(generic_instance(&e, &s1, &s2));
        assert!(!generic_instance(&e, &s2, &s1));
        assert!(generic_instance(&e, &s1, &s1));
    }

    #[test]
    fn substitution_equality_ignores_redexes() {
        let a = Substitution::singleton(v(1), tv(2).ext("l", int()).contr("l", int()));
        let b = Substitution::singleton(v(1), tv(2));
        assert!(a.equal(&b));
    }
}
