//! Seeded random generators for terms, types and kinded equation sets.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::subst::{respects, Substitution};
use crate::unify::satisfies;
use crate::syntax::{
    BaseType, Fields, Ident, Kind, KindAssignment, Label, Literal, MonoType, PolyType, Sign, Term,
    TyVar,
};

/// Size and vocabulary limits shared by the generators.
#[derive(Debug, Clone)]
pub struct Config {
    pub depth: u32,
    pub labels: Vec<Label>,
    pub max_chain: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { depth: 6, labels: ["l", "m", "n"].map(Label::new).to_vec(), max_chain: 8 }
    }
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    pub cfg: Config,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen::with_config(seed, Config::default())
    }

    pub fn with_config(seed: u64, cfg: Config) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), cfg }
    }

    fn label(&mut self) -> Label {
        self.cfg.labels.choose(&mut self.rng).expect("no labels").clone()
    }

    fn labels(&mut self, max: usize) -> Vec<Label> {
        let n = self.rng.gen_range(0..=max.min(self.cfg.labels.len()));
        let mut ls = self.cfg.labels.clone();
        ls.shuffle(&mut self.rng);
        ls.truncate(n);
        ls
    }

    fn literal(&mut self) -> Literal {
        match self.rng.gen_range(0..3) {
            0 => Literal::Int(self.rng.gen_range(-9..100)),
            1 => Literal::Bool(self.rng.gen()),
            _ => Literal::Str(["", "a", "xy", "q r"].choose(&mut self.rng).unwrap().to_string()),
        }
    }

    /// A random term over the given free variables. Not necessarily typable.
    pub fn term(&mut self, scope: &[Ident]) -> Term {
        let mut scope = scope.to_vec();
        let depth = self.cfg.depth;
        self.term_at(depth, &mut scope)
    }

    fn term_at(&mut self, depth: u32, scope: &mut Vec<Ident>) -> Term {
        if depth <= 1 || self.rng.gen_bool(0.15) {
            return self.leaf(scope);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..20) {
            0..=2 => {
                let x = self.binder(scope);
                scope.push(x.clone());
                let body = self.term_at(d, scope);
                scope.pop();
                Term::Abs(x, Box::new(body))
            }
            3..=5 => Term::App(Box::new(self.term_at(d, scope)), Box::new(self.term_at(d, scope))),
            6..=7 => {
                let x = self.binder(scope);
                let bound = self.term_at(d, scope);
                scope.push(x.clone());
                let body = self.term_at(d, scope);
                scope.pop();
                Term::Let(x, Box::new(bound), Box::new(body))
            }
            8..=10 => {
                let ls = self.labels(3);
                Term::Record(ls.into_iter().map(|l| (l, self.term_at(d, scope))).collect())
            }
            11..=12 => Term::Select(Box::new(self.term_at(d, scope)), self.label()),
            13..=14 => {
                let r = self.term_at(d, scope);
                Term::Modify(Box::new(r), self.label(), Box::new(self.term_at(d, scope)))
            }
            15..=16 => Term::Remove(Box::new(self.term_at(d, scope)), self.label()),
            _ => {
                let r = self.term_at(d, scope);
                Term::Extend(Box::new(r), self.label(), Box::new(self.term_at(d, scope)))
            }
        }
    }

    fn binder(&mut self, scope: &[Ident]) -> Ident {
        // reuse names now and then to exercise shadowing
        if !scope.is_empty() && self.rng.gen_bool(0.1) {
            return scope.choose(&mut self.rng).unwrap().clone();
        }
        Ident::from(["x", "y", "z", "r", "s", "f", "g"].choose(&mut self.rng).unwrap().to_string())
    }

    fn leaf(&mut self, scope: &[Ident]) -> Term {
        if !scope.is_empty() && self.rng.gen_bool(0.7) {
            return Term::Var(scope.choose(&mut self.rng).unwrap().clone());
        }
        if self.rng.gen_bool(0.2) {
            return Term::Record(BTreeMap::new());
        }
        Term::Const(self.literal())
    }

    /// A closed term biased towards record programs that type check:
    /// operations are applied to record-shaped subterms whose fields are
    /// tracked as they are built.
    pub fn typed_term(&mut self) -> Term {
        let depth = self.cfg.depth;
        let mut scope = Vec::new();
        self.typed_at(depth, &mut scope, &Shape::Any)
    }

    fn typed_at(&mut self, depth: u32, scope: &mut Vec<(Ident, Shape)>, want: &Shape) -> Term {
        let fitting: Vec<Ident> = scope.iter().filter(|(_, s)| s.fits(want)).map(|(x, _)| x.clone()).collect();
        if depth <= 1 || self.rng.gen_bool(0.1) {
            if !fitting.is_empty() && self.rng.gen_bool(0.6) {
                return Term::Var(fitting.choose(&mut self.rng).unwrap().clone());
            }
            return self.value_of(want);
        }
        let d = depth - 1;
        match want {
            Shape::Record(fields) => match self.rng.gen_range(0..6) {
                0 => {
                    let fs = fields.iter().map(|(l, s)| (l.clone(), self.typed_at(d, scope, s))).collect();
                    Term::Record(fs)
                }
                1 => {
                    // extend a smaller record with one of the wanted fields
                    let Some((l, s)) = fields.iter().nth(self.rng.gen_range(0..fields.len().max(1))) else {
                        return Term::Record(BTreeMap::new());
                    };
                    let mut rest = fields.clone();
                    rest.remove(l);
                    let r = self.typed_at(d, scope, &Shape::Record(rest));
                    Term::Extend(Box::new(r), l.clone(), Box::new(self.typed_at(d, scope, s)))
                }
                2 => {
                    // remove a field that is not wanted
                    let free: Vec<Label> = self.cfg.labels.iter().filter(|l| !fields.contains_key(*l)).cloned().collect();
                    let Some(l) = free.choose(&mut self.rng).cloned() else {
                        return self.typed_at(d, scope, want);
                    };
                    let mut more = fields.clone();
                    more.insert(l.clone(), Shape::Base(self.base()));
                    Term::Remove(Box::new(self.typed_at(d, scope, &Shape::Record(more))), l)
                }
                3 if !fields.is_empty() => {
                    let (l, s) = fields.iter().nth(self.rng.gen_range(0..fields.len())).unwrap();
                    let (l, s) = (l.clone(), s.clone());
                    let r = self.typed_at(d, scope, want);
                    Term::Modify(Box::new(r), l, Box::new(self.typed_at(d, scope, &s)))
                }
                _ => self.typed_common(d, scope, want),
            },
            _ => self.typed_common(d, scope, want),
        }
    }

    /// Forms that can produce any shape: selection, let, application.
    fn typed_common(&mut self, d: u32, scope: &mut Vec<(Ident, Shape)>, want: &Shape) -> Term {
        match self.rng.gen_range(0..4) {
            0 => {
                let l = self.label();
                let mut fields = BTreeMap::new();
                fields.insert(l.clone(), want.concrete(self));
                for extra in self.labels(2) {
                    if extra != l {
                        let s = Shape::Base(self.base());
                        fields.insert(extra, s);
                    }
                }
                Term::Select(Box::new(self.typed_at(d, scope, &Shape::Record(fields))), l)
            }
            1 => {
                let x = self.binder(&[]);
                let shape = self.shape(2);
                let bound = self.typed_at(d, scope, &shape);
                scope.push((x.clone(), shape));
                let body = self.typed_at(d, scope, want);
                scope.pop();
                Term::Let(x, Box::new(bound), Box::new(body))
            }
            2 => {
                // (\x. body) arg
                let x = self.binder(&[]);
                let shape = self.shape(2);
                scope.push((x.clone(), shape.clone()));
                let body = self.typed_at(d, scope, want);
                scope.pop();
                let arg = self.typed_at(d, scope, &shape);
                Term::App(Box::new(Term::Abs(x, Box::new(body))), Box::new(arg))
            }
            _ => {
                // a polymorphic record function used at the wanted shape
                let x = Ident::from("h");
                let l = self.label();
                let f = Term::Abs(x.clone(), Box::new(Term::Select(Box::new(Term::Var(x)), l.clone())));
                let mut fields = BTreeMap::new();
                fields.insert(l, want.concrete(self));
                let arg = self.typed_at(d, scope, &Shape::Record(fields));
                Term::App(Box::new(f), Box::new(arg))
            }
        }
    }

    fn base(&mut self) -> BaseType {
        *[BaseType::Int, BaseType::Bool, BaseType::String].choose(&mut self.rng).unwrap()
    }

    fn shape(&mut self, depth: u32) -> Shape {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return Shape::Base(self.base());
        }
        Shape::Record(self.labels(3).into_iter().map(|l| (l, self.shape(depth - 1))).collect())
    }

    fn value_of(&mut self, want: &Shape) -> Term {
        match want {
            Shape::Any => Term::Const(self.literal()),
            Shape::Base(b) => Term::Const(match b {
                BaseType::Int => Literal::Int(self.rng.gen_range(0..10)),
                BaseType::Bool => Literal::Bool(self.rng.gen()),
                BaseType::String => Literal::Str("s".into()),
            }),
            Shape::Record(fs) => Term::Record(fs.iter().map(|(l, s)| (l.clone(), self.value_of(s))).collect()),
        }
    }

    /// A small random monotype over the given variables.
    pub fn mono(&mut self, vars: &[TyVar], depth: u32) -> MonoType {
        let leaf = depth == 0 || self.rng.gen_bool(0.4);
        if leaf {
            if !vars.is_empty() && self.rng.gen_bool(0.5) {
                return MonoType::Var(*vars.choose(&mut self.rng).unwrap());
            }
            return MonoType::Base(self.base());
        }
        match self.rng.gen_range(0..3) {
            0 => MonoType::arrow(self.mono(vars, depth - 1), self.mono(vars, depth - 1)),
            1 => MonoType::Record(self.labels(3).into_iter().map(|l| (l, self.mono(vars, depth - 1))).collect()),
            _ => {
                let base = if !vars.is_empty() && self.rng.gen_bool(0.5) {
                    MonoType::Var(*vars.choose(&mut self.rng).unwrap())
                } else {
                    MonoType::Record(Fields::new())
                };
                let n = self.rng.gen_range(1..=2);
                (0..n).fold(base, |acc, _| {
                    let sign = if self.rng.gen() { Sign::Plus } else { Sign::Minus };
                    let l = self.label();
                    let t = self.mono(vars, 0);
                    acc.op_unchecked(sign, l, t)
                })
            }
        }
    }

    pub fn kind(&mut self, vars: &[TyVar]) -> Kind {
        if self.rng.gen_bool(0.3) {
            return Kind::Universal;
        }
        let mut left = Fields::new();
        let mut right = Fields::new();
        for l in self.labels(3) {
            let t = self.mono(vars, 1);
            if self.rng.gen() {
                left.insert(l, t);
            } else {
                right.insert(l, t);
            }
        }
        Kind::Record { left, right }
    }

    pub fn poly(&mut self) -> PolyType {
        let n = self.rng.gen_range(0..3u32);
        let mut quantifiers = Vec::new();
        let mut vars = Vec::new();
        for i in 0..n {
            let v = TyVar(i + 1);
            quantifiers.push((v, self.kind(&vars)));
            vars.push(v);
        }
        PolyType::new(quantifiers, self.mono(&vars, 3))
    }

    /// A chain of at most `max_chain` field operations, with no attempt at
    /// kindability. Each label keeps one field type.
    pub fn raw_chain(&mut self, base: MonoType) -> MonoType {
        let types = self.label_types(&[]);
        let n = self.rng.gen_range(0..=self.cfg.max_chain);
        (0..n).fold(base, |acc, _| {
            let l = self.label();
            let sign = if self.rng.gen() { Sign::Plus } else { Sign::Minus };
            acc.op_unchecked(sign, l.clone(), types[&l].clone())
        })
    }

    /// One field type per label. Field types contain no field operations,
    /// so a chain built from them is kindable whenever its top level is.
    fn label_types(&mut self, vars: &[TyVar]) -> BTreeMap<Label, MonoType> {
        let labels = self.cfg.labels.clone();
        labels
            .into_iter()
            .map(|l| {
                let t = loop {
                    let t = self.mono(vars, 1);
                    if t.op_count() == 0 {
                        break t;
                    }
                };
                (l, t)
            })
            .collect()
    }

    /// A kindable chain with its kind assignment. The base is a fresh
    /// variable (kinded by the presence each label starts with) or a record.
    pub fn kindable_chain(&mut self) -> (KindAssignment, MonoType) {
        let field_var = TyVar(1);
        let base_var = TyVar(2);
        let types = self.label_types(&[field_var]);
        let mut present: BTreeMap<Label, bool> =
            self.cfg.labels.iter().map(|l| (l.clone(), self.rng.gen())).collect();
        let var_base = self.rng.gen_bool(0.6);
        let n = self.rng.gen_range(0..=self.cfg.max_chain);
        let mut ops = Vec::new();
        let mut touched = BTreeMap::new();
        for _ in 0..n {
            let l = self.label();
            let now = present[&l];
            touched.entry(l.clone()).or_insert(now);
            ops.push((if now { Sign::Minus } else { Sign::Plus }, l.clone()));
            present.insert(l, !now);
        }
        let mut k = KindAssignment::new().with(field_var, Kind::Universal);
        let base = if var_base {
            let (mut left, mut right) = (Fields::new(), Fields::new());
            for (l, was) in &touched {
                let side = if *was { &mut left } else { &mut right };
                side.insert(l.clone(), types[l].clone());
            }
            k.insert(base_var, Kind::Record { left, right });
            MonoType::Var(base_var)
        } else {
            // untouched labels may be anything; touched ones start as recorded
            let mut fs = Fields::new();
            for l in &self.cfg.labels {
                let start = touched.get(l).copied().unwrap_or_else(|| self.rng.gen());
                if start {
                    fs.insert(l.clone(), types[l].clone());
                }
            }
            MonoType::Record(fs)
        };
        let t = ops
            .into_iter()
            .fold(base, |acc, (sign, l)| acc.op_unchecked(sign, l.clone(), types[&l].clone()));
        (k, t)
    }

    /// A substitution on `vars` into small types over `targets`.
    pub fn substitution(&mut self, vars: &[TyVar], targets: &[TyVar]) -> Substitution {
        let mut s = Substitution::identity();
        for v in vars {
            if self.rng.gen_bool(0.7) {
                let t = self.mono(targets, 2);
                s.insert(*v, t);
            }
        }
        s
    }
}

/// A coarse description of the value a generated term should produce.
#[derive(Debug, Clone)]
enum Shape {
    Any,
    Base(BaseType),
    Record(BTreeMap<Label, Shape>),
}

impl Shape {
    fn fits(&self, want: &Shape) -> bool {
        match (self, want) {
            (_, Shape::Any) => true,
            (Shape::Base(a), Shape::Base(b)) => a == b,
            (Shape::Record(a), Shape::Record(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|((l1, s1), (l2, s2))| l1 == l2 && s1.fits(s2))
            }
            _ => false,
        }
    }

    fn concrete(&self, g: &mut Gen) -> Shape {
        match self {
            Shape::Any => Shape::Base(g.base()),
            other => other.clone(),
        }
    }
}

/// The finite universe of ground types used to enumerate unifiers: the base
/// types and every record over the configured labels with base-typed fields.
pub fn ground_universe(labels: &[Label], bases: &[BaseType]) -> Vec<MonoType> {
    let mut records: Vec<Fields> = vec![Fields::new()];
    for l in labels {
        let mut next = Vec::new();
        for r in &records {
            next.push(r.clone());
            for b in bases {
                let mut r2 = r.clone();
                r2.insert(l.clone(), MonoType::Base(*b));
                next.push(r2);
            }
        }
        records = next;
    }
    bases
        .iter()
        .map(|b| MonoType::Base(*b))
        .chain(records.into_iter().map(MonoType::Record))
        .collect()
}

/// A kinded equation set over a small vocabulary: two or three variables,
/// kinds over the given labels, and sides that are kindable chains of at
/// most `max_ops` operations.
pub fn kinded_equations(
    g: &mut Gen,
    labels: &[Label],
    bases: &[BaseType],
    max_ops: usize,
) -> (KindAssignment, Vec<(MonoType, MonoType)>) {
    let n = g.rng.gen_range(2..=3u32);
    let vars: Vec<TyVar> = (1..=n).map(TyVar).collect();
    let field = |g: &mut Gen, earlier: &[TyVar]| -> MonoType {
        if !earlier.is_empty() && g.rng.gen_bool(0.3) {
            MonoType::Var(*earlier.choose(&mut g.rng).unwrap())
        } else {
            MonoType::Base(*bases.choose(&mut g.rng).unwrap())
        }
    };
    let mut k = KindAssignment::new();
    for (i, v) in vars.iter().enumerate() {
        let earlier: Vec<TyVar> = vars[..i].iter().copied().filter(|w| k.get(*w) == Some(&Kind::Universal)).collect();
        let kind = if i == 0 || g.rng.gen_bool(0.25) {
            Kind::Universal
        } else {
            let (mut left, mut right) = (Fields::new(), Fields::new());
            for l in labels {
                match g.rng.gen_range(0..3) {
                    0 => {
                        left.insert(l.clone(), field(g, &earlier));
                    }
                    1 => {
                        right.insert(l.clone(), field(g, &earlier));
                    }
                    _ => {}
                }
            }
            Kind::Record { left, right }
        };
        k.insert(*v, kind);
    }
    let n_eqs = g.rng.gen_range(1..=2);
    let eqs = (0..n_eqs)
        .map(|_| (side(g, &k, labels, bases, max_ops), side(g, &k, labels, bases, max_ops)))
        .collect();
    (k, eqs)
}

fn side(g: &mut Gen, k: &KindAssignment, labels: &[Label], bases: &[BaseType], max_ops: usize) -> MonoType {
    let vars: Vec<TyVar> = k.vars().collect();
    let base_ty = |g: &mut Gen| MonoType::Base(*bases.choose(&mut g.rng).unwrap());
    match g.rng.gen_range(0..6) {
        0 => base_ty(g),
        1 | 2 => MonoType::Var(*vars.choose(&mut g.rng).unwrap()),
        3 => {
            let mut fs = Fields::new();
            for l in labels {
                if g.rng.gen() {
                    let t = if g.rng.gen_bool(0.3) { MonoType::Var(*vars.choose(&mut g.rng).unwrap()) } else { base_ty(g) };
                    fs.insert(l.clone(), t);
                }
            }
            MonoType::Record(fs)
        }
        _ => {
            // a chain over a record-kinded variable, respecting its kind
            let record_vars: Vec<TyVar> = vars.iter().copied().filter(|v| k.get(*v).is_some_and(Kind::is_record)).collect();
            let Some(b) = record_vars.choose(&mut g.rng).copied() else {
                return MonoType::Var(*vars.choose(&mut g.rng).unwrap());
            };
            let Some(Kind::Record { left, right }) = k.get(b) else { unreachable!() };
            let mut state: BTreeMap<Label, (bool, MonoType)> = BTreeMap::new();
            for (l, t) in left {
                state.insert(l.clone(), (true, t.clone()));
            }
            for (l, t) in right {
                state.insert(l.clone(), (false, t.clone()));
            }
            let n = g.rng.gen_range(1..=max_ops);
            let mut t = MonoType::Var(b);
            for _ in 0..n {
                let known: Vec<Label> = state.keys().cloned().collect();
                let Some(l) = known.choose(&mut g.rng).cloned() else { break };
                let (present, ty) = state[&l].clone();
                let sign = if present { Sign::Minus } else { Sign::Plus };
                t = t.op_unchecked(sign, l.clone(), ty.clone());
                state.insert(l, (!present, ty));
            }
            t
        }
    }
}

/// Every assignment of universe types to the variables of `k` that respects
/// `k` and satisfies `eqs`.
pub fn ground_unifiers(
    k: &KindAssignment,
    eqs: &[(MonoType, MonoType)],
    universe: &[MonoType],
) -> Vec<Substitution> {
    let vars: Vec<TyVar> = k.vars().collect();
    assignments(&vars, universe)
        .filter(|s| respects(&KindAssignment::new(), s, k).is_ok() && satisfies(s, eqs))
        .collect()
}

fn assignments<'a>(vars: &'a [TyVar], universe: &'a [MonoType]) -> impl Iterator<Item = Substitution> + 'a {
    let total = universe.len().checked_pow(vars.len() as u32).expect("universe too large");
    (0..total).map(move |mut n| {
        let mut s = Substitution::identity();
        for v in vars {
            s.insert(*v, universe[n % universe.len()].clone());
            n /= universe.len();
        }
        s
    })
}

/// Whether `g` gives every label a single field type across the record
/// types of the problem: the kinds of `k`, the images of record-kinded
/// variables, and the top-level fields and operations of each equation side.
/// Field types are compared up to equivalence; nested records are not
/// inspected, since a nested record is a different record.
pub fn label_consistent(g: &Substitution, k: &KindAssignment, eqs: &[(MonoType, MonoType)]) -> bool {
    let mut seen: BTreeMap<Label, MonoType> = BTreeMap::new();
    let mut note = |l: &Label, t: MonoType| match seen.get(l) {
        Some(prev) => crate::normalize::equiv(prev, &t),
        None => {
            seen.insert(l.clone(), t);
            true
        }
    };
    let top_level = |t: &MonoType, note: &mut dyn FnMut(&Label, MonoType) -> bool| -> bool {
        let t = g.apply(t);
        let (base, ops) = t.chain();
        let base_ok = match base {
            MonoType::Record(fs) => fs.iter().all(|(l, ft)| note(l, ft.clone())),
            _ => true,
        };
        base_ok && ops.into_iter().all(|op| note(&op.label, op.ty))
    };
    for (v, kind) in k.iter() {
        if let Kind::Record { left, right } = kind {
            for (l, t) in left.iter().chain(right) {
                if !note(l, g.apply(t)) {
                    return false;
                }
            }
            if !top_level(&MonoType::Var(v), &mut note) {
                return false;
            }
        }
    }
    eqs.iter().all(|(a, b)| top_level(a, &mut note) && top_level(b, &mut note))
}

/// Whether the ground unifier `g` of `(k, _)` factors through the computed
/// unifier `(k1, s)`: some `s2` respecting `k1` has `g = s2 ∘ s` on `dom k`.
/// Variables of `k1` that were already in `k` are pinned by `g`; the others
/// (introduced during unification) are searched in the universe.
pub fn factors_through(
    g: &Substitution,
    k: &KindAssignment,
    k1: &KindAssignment,
    s: &Substitution,
    universe: &[MonoType],
) -> bool {
    let mut pinned = Substitution::identity();
    let mut open = Vec::new();
    for v in k1.vars() {
        match g.get(v) {
            Some(t) if k.contains(v) => pinned.insert(v, t.clone()),
            _ => open.push(v),
        }
    }
    let found = assignments(&open, universe).any(|extra| {
        let mut s2 = pinned.clone();
        for (v, t) in extra.iter() {
            s2.insert(v, t.clone());
        }
        respects(&KindAssignment::new(), &s2, k1).is_ok()
            && k.vars().all(|v| crate::normalize::equiv(&s2.apply(&s.lookup(v)), &g.lookup(v)))
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinding::{is_record_kindable, wf_kind_assignment};

    #[test]
    fn deterministic() {
        let a: Vec<Term> = { let mut g = Gen::new(7); (0..20).map(|_| g.term(&[])).collect() };
        let b: Vec<Term> = { let mut g = Gen::new(7); (0..20).map(|_| g.term(&[])).collect() };
        assert_eq!(a, b);
    }

    #[test]
    fn kindable_chains_are_kindable() {
        let mut g = Gen::new(1);
        for _ in 0..300 {
            let (k, t) = g.kindable_chain();
            assert!(wf_kind_assignment(&k));
            assert!(is_record_kindable(&k, &t), "{t}");
        }
    }

    #[test]
    fn universe_size() {
        let ls = ["l", "m"].map(Label::new);
        assert_eq!(ground_universe(&ls, &[BaseType::Int, BaseType::Bool]).len(), 2 + 9);
    }

    #[test]
    fn equation_sets_are_well_formed() {
        let ls = ["l", "m"].map(Label::new);
        let mut g = Gen::new(3);
        for _ in 0..200 {
            let (k, eqs) = kinded_equations(&mut g, &ls, &[BaseType::Int, BaseType::Bool], 2);
            assert!(wf_kind_assignment(&k));
            for (a, b) in &eqs {
                for t in [a, b] {
                    if t.is_chain() {
                        assert!(is_record_kindable(&k, t), "{t}");
                    }
                }
            }
        }
    }
}
