//! Randomized property checks shared by the acceptance and property suites.
//! Each check runs a fixed number of seeded trials and collects violations
//! instead of panicking, so callers can report or assert as they see fit.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;

use extrec::checker::validate;
use extrec::eval::{eval, matches_type};
use extrec::gen::{factors_through, ground_unifiers, ground_universe, kinded_equations, label_consistent, Gen};
use extrec::infer::infer;
use extrec::kinding::has_kind;
use extrec::normalize::{all_redexes, normalize, reduce_at_choice, repeated_chain_labels, sort_chains};
use extrec::parser::{parse_kind_in, parse_mono_in, parse_term, parse_type, Scope};
use extrec::pretty::{self, Printer};
use extrec::subst::{respects, Substitution};
use extrec::syntax::{BaseType, Kind, KindAssignment, Label, MonoType, Term, TyVar, TypeAssignment};
use extrec::unify::unify;

#[derive(Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.violations.push(msg);
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => format!("{} checked, 0 violations", self.checked),
            Some(first) => format!("{} checked, {} violations; first: {first}", self.checked, self.violations.len()),
        }
    }
}

fn empty() -> (KindAssignment, TypeAssignment) {
    (KindAssignment::new(), TypeAssignment::new())
}

/// Inference succeeds only with valid derivations and respecting results.
/// Alternates arbitrary terms with mostly typable ones.
pub fn soundness(seed: u64, n: usize) -> (Report, usize) {
    let mut g = Gen::new(seed);
    let (k, env) = empty();
    let mut rep = Report::default();
    let mut typed = 0;
    for i in 0..n {
        let m = if i % 2 == 0 { g.term(&[]) } else { g.typed_term() };
        rep.checked += 1;
        let Ok(r) = infer(&k, &env, &m) else { continue };
        typed += 1;
        if let Err(e) = validate(&r.derivation) {
            rep.fail(format!("`{m}`: {e}"));
        }
        if let Err(e) = respects(&r.kinds, &r.subst, &k) {
            rep.fail(format!("`{m}`: result does not respect K: {e:?}"));
        }
    }
    (rep, typed)
}

/// Every ground unifier in a small universe factors through the computed
/// unifier, and failure means there is no ground unifier.
///
/// Ground unifiers that give one label two field types are reported
/// separately in the second report rather than counted as violations.
pub fn most_general(seed: u64, n: usize) -> (Report, Report) {
    let labels = [Label::new("l"), Label::new("m")];
    let bases = [BaseType::Int, BaseType::Bool];
    let universe = ground_universe(&labels, &bases);
    let mut g = Gen::new(seed);
    let (mut rep, mut mixed) = (Report::default(), Report::default());
    for _ in 0..n {
        let (k, eqs) = kinded_equations(&mut g, &labels, &bases, 2);
        rep.checked += 1;
        mixed.checked += 1;
        let grounds = ground_unifiers(&k, &eqs, &universe);
        let unified = unify(&k, &eqs);
        let bad = grounds.iter().filter(|gr| match &unified {
            Ok(u) => !factors_through(gr, &k, &u.kinds, &u.subst, &universe),
            Err(_) => true,
        });
        for gr in bad {
            let target = if label_consistent(gr, &k, &eqs) { &mut rep } else { &mut mixed };
            let msg = match &unified {
                Ok(u) => format!("K={k:?} E={eqs:?}: ground unifier {gr:?} does not factor through {:?}", u.subst),
                Err(e) => format!("K={k:?} E={eqs:?}: unify failed ({e}) but {gr:?} unifies"),
            };
            target.fail(msg);
        }
    }
    (rep, mixed)
}

/// The one type each label carries in a chain (or in the base's kind),
/// used to build candidate kinds.
fn label_types(k: &KindAssignment, t: &MonoType) -> BTreeMap<Label, MonoType> {
    let mut out = BTreeMap::new();
    let (base, ops) = t.chain();
    for op in ops {
        out.entry(op.label).or_insert(op.ty);
    }
    match base {
        MonoType::Record(fs) => {
            for (l, ty) in fs {
                out.entry(l.clone()).or_insert_with(|| ty.clone());
            }
        }
        MonoType::Var(v) => {
            if let Some(Kind::Record { left, right }) = k.get(*v) {
                for (l, ty) in left.iter().chain(right) {
                    out.entry(l.clone()).or_insert_with(|| ty.clone());
                }
            }
        }
        _ => {}
    }
    out
}

/// Candidate kinds for a chain: each label is unconstrained, required or
/// forbidden, with its own type or with `String`. The flag says whether the
/// kind keeps every label the chain mentions at its one type.
fn candidate_kinds(labels: &[Label], types: &BTreeMap<Label, MonoType>) -> Vec<(Kind, bool)> {
    let mut kinds = vec![(Vec::new(), Vec::new(), true)];
    for l in labels {
        let own = types.get(l);
        let mut choices = vec![(own.cloned().unwrap_or_else(MonoType::int), true)];
        if own != Some(&MonoType::string()) {
            choices.push((MonoType::string(), own.is_none()));
        }
        let mut next = Vec::new();
        for (left, right, consistent) in &kinds {
            next.push((left.clone(), right.clone(), *consistent));
            for (ty, fits) in &choices {
                let mut l2: Vec<(Label, MonoType)> = left.clone();
                l2.push((l.clone(), ty.clone()));
                next.push((l2, right.clone(), consistent & fits));
                let mut r2: Vec<(Label, MonoType)> = right.clone();
                r2.push((l.clone(), ty.clone()));
                next.push((left.clone(), r2, consistent & fits));
            }
        }
        kinds = next;
    }
    kinds
        .into_iter()
        .map(|(l, r, c)| (Kind::Record { left: l.into_iter().collect(), right: r.into_iter().collect() }, c))
        .collect()
}

/// A substitution for the variables of a generated chain (`1 :: U` and,
/// for variable-based chains, the base `2`) that respects their kinds,
/// together with the kinds of the variables it introduces.
fn respecting_subst(g: &mut Gen, k: &KindAssignment) -> (KindAssignment, Substitution) {
    let (field, base, free, row) = (TyVar(1), TyVar(2), TyVar(3), TyVar(4));
    let labels = g.cfg.labels.clone();
    let mut k1 = KindAssignment::new().with(free, Kind::Universal);
    let mut s = Substitution::identity();
    s.insert(field, g.mono(&[free], 2));
    if let Some(Kind::Record { left, right }) = k.get(base) {
        let (left, right) = (s.apply_fields(left), s.apply_fields(right));
        let unmentioned: Vec<Label> =
            labels.iter().filter(|l| !left.contains_key(*l) && !right.contains_key(*l)).cloned().collect();
        let image = if g.rng.gen() {
            let mut fs = left.clone();
            for l in &unmentioned {
                if g.rng.gen() {
                    fs.insert(l.clone(), g.mono(&[free], 1));
                }
            }
            MonoType::Record(fs)
        } else {
            let mut left2 = left.clone();
            let mut t = MonoType::Var(row);
            if let Some(l) = unmentioned.first().filter(|_| g.rng.gen()) {
                let ty = g.mono(&[free], 1);
                left2.insert(l.clone(), ty.clone());
                t = t.contr(l.as_str(), ty);
            }
            k1.insert(row, Kind::Record { left: left2, right });
            t
        };
        s.insert(base, image);
    }
    (k1, s)
}

/// Confluence under random reduction orders, kind preservation of single
/// steps, distinct labels in canonical chains, and commutation of
/// normalization with substitution.
///
/// Kind changes under kinds that give a label of the chain a second type
/// are reported separately in the second report.
pub fn rewriting(seed: u64, n: usize) -> (Report, Report) {
    let mut g = Gen::new(seed);
    let labels = g.cfg.labels.clone();
    let (mut rep, mut mixed) = (Report::default(), Report::default());
    for _ in 0..n {
        let (k, t) = g.kindable_chain();
        rep.checked += 1;
        mixed.checked += 1;
        let canonical = normalize(&t);

        for _ in 0..3 {
            let mut cur = t.clone();
            while let Some(next) = reduce_at_choice(&cur, &mut |n| g.rng.gen_range(0..n)) {
                cur = next;
            }
            if sort_chains(&cur) != canonical {
                rep.fail(format!("{t}: order-dependent result {cur} vs {canonical}"));
            }
        }

        let kinds = candidate_kinds(&labels, &label_types(&k, &t));
        let mut cur = t.clone();
        loop {
            let steps = all_redexes(&cur);
            for next in &steps {
                for (kind, consistent) in &kinds {
                    if has_kind(&k, &cur, kind) != has_kind(&k, next, kind) {
                        let target = if *consistent { &mut rep } else { &mut mixed };
                        target.fail(format!("{cur} -> {next} changes whether it has kind {kind}"));
                    }
                }
            }
            if steps.is_empty() {
                break;
            }
            let i = g.rng.gen_range(0..steps.len());
            cur = steps[i].clone();
        }

        let repeated = repeated_chain_labels(&canonical);
        if !repeated.is_empty() {
            rep.fail(format!("{t}: canonical form {canonical} repeats {repeated:?}"));
        }

        let (k1, s) = respecting_subst(&mut g, &k);
        if let Err(e) = respects(&k1, &s, &k) {
            rep.fail(format!("generated substitution {s:?} does not respect {k:?}: {e:?}"));
            continue;
        }
        let lhs = normalize(&s.apply(&canonical));
        let rhs = normalize(&s.apply(&t));
        if lhs != rhs {
            rep.fail(format!("{t} under {s:?}: {lhs} vs {rhs}"));
        }
    }
    (rep, mixed)
}

/// Closed well-typed terms evaluate without error to values of their type.
pub fn evaluation(seed: u64, n: usize) -> Report {
    let mut g = Gen::new(seed);
    let (k, env) = empty();
    let mut rep = Report::default();
    let mut attempts = 0;
    while rep.checked < n && attempts < 20 * n {
        attempts += 1;
        let m = g.typed_term();
        let Ok(r) = infer(&k, &env, &m) else { continue };
        rep.checked += 1;
        match eval(&m) {
            Ok(v) if matches_type(&v, &r.ty) => {}
            Ok(v) => rep.fail(format!("`{m}` : {} evaluated to {v}", r.ty)),
            Err(e) => rep.fail(format!("`{m}` : {} went wrong: {e}", r.ty)),
        }
    }
    if rep.checked < n {
        rep.fail(format!("only {} typable terms in {attempts} attempts", rep.checked));
    }
    rep
}

/// Renames the free variables of an original value to the ones the parser
/// chose for their printed names.
fn renaming(printer: &mut Printer, scope: &Scope, vars: impl IntoIterator<Item = TyVar>) -> Substitution {
    let mut s = Substitution::identity();
    for v in vars {
        if let Some(w) = scope.get(&printer.namer.name(v)) {
            s.insert(v, MonoType::Var(w));
        }
    }
    s
}

/// `parse(pretty(v)) = v` for terms, polytypes, monotypes and kinds.
pub fn round_trip(seed: u64, n: usize) -> Report {
    let mut g = Gen::new(seed);
    let vars = [TyVar(1), TyVar(2), TyVar(3)];
    let mut rep = Report::default();
    for i in 0..n {
        rep.checked += 1;
        match i % 4 {
            0 => {
                let m: Term = if i % 8 == 0 { g.term(&[]) } else { g.typed_term() };
                let text = pretty::term(&m);
                match parse_term(&text) {
                    Ok(back) if back == m => {}
                    other => rep.fail(format!("term {m:?} printed as `{text}` parsed as {other:?}")),
                }
            }
            1 => {
                let s = g.poly();
                let text = pretty::poly(&s);
                match parse_type(&text) {
                    Ok(back) if back == s => {}
                    other => rep.fail(format!("type {s:?} printed as `{text}` parsed as {other:?}")),
                }
            }
            2 => {
                let t = if g.rng.gen() { g.mono(&vars, 3) } else { g.kindable_chain().1 };
                let mut p = Printer::new();
                let text = p.mono(&t);
                let mut scope = Scope::new();
                match parse_mono_in(&text, &mut scope) {
                    Ok(back) if back == renaming(&mut p, &scope, t.ftv()).apply(&t) => {}
                    other => rep.fail(format!("type {t:?} printed as `{text}` parsed as {other:?}")),
                }
            }
            _ => {
                let k = g.kind(&vars);
                let mut p = Printer::new();
                let text = p.kind(&k);
                let mut scope = Scope::new();
                match parse_kind_in(&text, &mut scope) {
                    Ok(back) if back == renaming(&mut p, &scope, k.ftv()).apply_kind(&k) => {}
                    other => rep.fail(format!("kind {k:?} printed as `{text}` parsed as {other:?}")),
                }
            }
        }
    }
    rep
}
