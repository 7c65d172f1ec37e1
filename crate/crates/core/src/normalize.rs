//! Type reduction on extensible types, canonical forms and type equivalence.
//!
//! The reduction rules collapse field operations over record bases and cancel
//! same-label extension/contraction pairs. Canonical forms additionally sort
//! the surviving operations of each chain by label (stably, so operations on
//! the same label keep their relative order).

use std::collections::BTreeMap;

use crate::syntax::{FieldOp, Fields, Label, MonoType, Sign, TyVar};

/// Applies one reduction step at the leftmost-innermost redex, or returns
/// `None` when `t` is in normal form.
pub fn reduce_once(t: &MonoType) -> Option<MonoType> {
    match t {
        MonoType::Base(_) | MonoType::Var(_) => None,
        MonoType::Arrow(a, b) => {
            if let Some(a2) = reduce_once(a) {
                return Some(MonoType::Arrow(Box::new(a2), b.clone()));
            }
            reduce_once(b).map(|b2| MonoType::Arrow(a.clone(), Box::new(b2)))
        }
        MonoType::Record(fs) => {
            for (l, ft) in fs {
                if let Some(ft2) = reduce_once(ft) {
                    let mut fs2 = fs.clone();
                    fs2.insert(l.clone(), ft2);
                    return Some(MonoType::Record(fs2));
                }
            }
            None
        }
        MonoType::Ext(inner, l, ty) | MonoType::Contr(inner, l, ty) => {
            let sign = if matches!(t, MonoType::Ext(..)) { Sign::Plus } else { Sign::Minus };
            if let Some(inner2) = reduce_once(inner) {
                return Some(inner2.op_unchecked(sign, l.clone(), (**ty).clone()));
            }
            if let Some(ty2) = reduce_once(ty) {
                return Some((**inner).clone().op_unchecked(sign, l.clone(), ty2));
            }
            root_redex(t)
        }
    }
}

/// The rewrite applicable at the top of a chain whose last operation is the
/// root node, if any.
fn root_redex(t: &MonoType) -> Option<MonoType> {
    let (base, mut ops) = t.chain();
    let last = ops.len() - 1;
    if let Some(i) = cancelling_partner(&ops[..last], &ops[last]) {
        ops.remove(last);
        ops.remove(i);
        return Some(MonoType::from_chain(base.clone(), ops));
    }
    if last == 0 {
        if let MonoType::Record(fs) = base {
            return fold_into_record(fs, &ops[0]).map(MonoType::Record);
        }
    }
    None
}

/// Index of the first earlier operation that cancels with `op`: same label,
/// opposite sign and an equivalent field type.
fn cancelling_partner(earlier: &[FieldOp], op: &FieldOp) -> Option<usize> {
    earlier
        .iter()
        .position(|e| e.label == op.label && e.sign != op.sign && equiv(&e.ty, &op.ty))
}

/// `{F} - {l: τ}` when `F(l) ≐ τ`, and `{F} + {l: τ}` when `l ∉ dom(F)`.
fn fold_into_record(fs: &Fields, op: &FieldOp) -> Option<Fields> {
    match op.sign {
        Sign::Minus => match fs.get(&op.label) {
            Some(ft) if equiv(ft, &op.ty) => {
                let mut out = fs.clone();
                out.remove(&op.label);
                Some(out)
            }
            _ => None,
        },
        Sign::Plus => {
            if fs.contains_key(&op.label) {
                return None;
            }
            let mut out = fs.clone();
            out.insert(op.label.clone(), op.ty.clone());
            Some(out)
        }
    }
}

/// Canonical form: the normal form with every chain's operations sorted by
/// label.
pub fn normalize(t: &MonoType) -> MonoType {
    match t {
        MonoType::Base(_) | MonoType::Var(_) => t.clone(),
        MonoType::Arrow(a, b) => MonoType::arrow(normalize(a), normalize(b)),
        MonoType::Record(fs) => {
            MonoType::Record(fs.iter().map(|(l, ft)| (l.clone(), normalize(ft))).collect())
        }
        MonoType::Ext(..) | MonoType::Contr(..) => {
            let (base, ops) = t.chain();
            let base = normalize(base);
            let ops = ops
                .into_iter()
                .map(|op| FieldOp::new(op.sign, op.label, normalize(&op.ty)))
                .collect();
            let (base, ops) = canonical_chain(base, ops);
            MonoType::from_chain(base, ops)
        }
    }
}

/// Reduces a chain whose base and field types are already canonical.
fn canonical_chain(mut base: MonoType, mut ops: Vec<FieldOp>) -> (MonoType, Vec<FieldOp>) {
    loop {
        let (b, reduced) = reduce_chain(base, ops);
        let mut sorted = reduced.clone();
        sorted.sort_by(|x, y| x.label.cmp(&y.label));
        if sorted == reduced {
            return (b, sorted);
        }
        base = b;
        ops = sorted;
    }
}

/// Processes operations innermost first, exactly as repeated leftmost-
/// innermost reduction would.
fn reduce_chain(mut base: MonoType, ops: Vec<FieldOp>) -> (MonoType, Vec<FieldOp>) {
    let mut pending = ops;
    loop {
        let mut kept: Vec<FieldOp> = Vec::with_capacity(pending.len());
        let mut cancelled_stuck_head = false;
        for op in pending {
            if let Some(i) = cancelling_partner(&kept, &op) {
                kept.remove(i);
                // removing the head of a stuck record chain may unblock folding
                cancelled_stuck_head |= i == 0 && matches!(base, MonoType::Record(_));
                continue;
            }
            if kept.is_empty() {
                if let MonoType::Record(fs) = &base {
                    if let Some(fs2) = fold_into_record(fs, &op) {
                        base = MonoType::Record(fs2);
                        continue;
                    }
                }
            }
            kept.push(op);
        }
        if !cancelled_stuck_head {
            return (base, kept);
        }
        pending = kept;
    }
}

/// Reference implementation of [`normalize`]: rewrite to a fixed point with
/// [`reduce_once`], sort, and repeat until stable.
pub fn normalize_by_rewriting(t: &MonoType) -> MonoType {
    let mut cur = t.clone();
    loop {
        while let Some(next) = reduce_once(&cur) {
            cur = next;
        }
        let sorted = sort_chains(&cur);
        if sorted == cur {
            return cur;
        }
        cur = sorted;
    }
}

/// Stably sorts the operations of every chain by label, without reducing.
pub fn sort_chains(t: &MonoType) -> MonoType {
    match t {
        MonoType::Base(_) | MonoType::Var(_) => t.clone(),
        MonoType::Arrow(a, b) => MonoType::arrow(sort_chains(a), sort_chains(b)),
        MonoType::Record(fs) => {
            MonoType::Record(fs.iter().map(|(l, ft)| (l.clone(), sort_chains(ft))).collect())
        }
        MonoType::Ext(..) | MonoType::Contr(..) => {
            let (base, ops) = t.chain();
            let mut ops: Vec<FieldOp> = ops
                .into_iter()
                .map(|op| FieldOp::new(op.sign, op.label, sort_chains(&op.ty)))
                .collect();
            ops.sort_by(|x, y| x.label.cmp(&y.label));
            MonoType::from_chain(sort_chains(base), ops)
        }
    }
}

pub fn is_normal(t: &MonoType) -> bool {
    reduce_once(t).is_none()
}

pub fn is_canonical(t: &MonoType) -> bool {
    normalize(t) == *t
}

/// `τ1 ≐ τ2`: equal canonical forms.
pub fn equiv(t1: &MonoType, t2: &MonoType) -> bool {
    t1 == t2 || normalize(t1) == normalize(t2)
}

/// Field extensions of an extensible type's chain, by label.
pub fn efields(t: &MonoType) -> Option<Fields> {
    chain_fields(t, Sign::Plus)
}

/// Field contractions of an extensible type's chain, by label.
pub fn cfields(t: &MonoType) -> Option<Fields> {
    chain_fields(t, Sign::Minus)
}

fn chain_fields(t: &MonoType, sign: Sign) -> Option<Fields> {
    if !t.is_extensible() {
        return None;
    }
    let (_, ops) = t.chain();
    Some(
        ops.into_iter()
            .filter(|op| op.sign == sign)
            .map(|op| (op.label, op.ty))
            .collect(),
    )
}

/// `F1 + F2`: union, preferring `F1` on shared labels.
pub fn fmap_plus(f1: &Fields, f2: &Fields) -> Fields {
    let mut out = f2.clone();
    for (l, t) in f1 {
        out.insert(l.clone(), t.clone());
    }
    out
}

/// `F1 - F2`: `F1` restricted to labels outside `dom(F2)`.
pub fn fmap_minus(f1: &Fields, f2: &Fields) -> Fields {
    f1.iter()
        .filter(|(l, _)| !f2.contains_key(*l))
        .map(|(l, t)| (l.clone(), t.clone()))
        .collect()
}

/// Labels that occur more than once in some chain of `t`.
pub fn repeated_chain_labels(t: &MonoType) -> Vec<Label> {
    let mut out = Vec::new();
    collect_repeats(t, &mut out);
    out
}

fn collect_repeats(t: &MonoType, out: &mut Vec<Label>) {
    match t {
        MonoType::Base(_) | MonoType::Var(_) => {}
        MonoType::Arrow(a, b) => {
            collect_repeats(a, out);
            collect_repeats(b, out);
        }
        MonoType::Record(fs) => fs.values().for_each(|ft| collect_repeats(ft, out)),
        MonoType::Ext(..) | MonoType::Contr(..) => {
            let (base, ops) = t.chain();
            collect_repeats(base, out);
            let mut seen: BTreeMap<&Label, ()> = BTreeMap::new();
            for op in &ops {
                if seen.insert(&op.label, ()).is_some() {
                    out.push(op.label.clone());
                }
                collect_repeats(&op.ty, out);
            }
        }
    }
}

/// A randomizable rewrite step, used to check that reduction order does not
/// matter. `choose(n)` picks one of `n` admissible redexes.
pub fn reduce_at_choice(t: &MonoType, choose: &mut dyn FnMut(usize) -> usize) -> Option<MonoType> {
    let redexes = all_redexes(t);
    if redexes.is_empty() {
        return None;
    }
    let pick = choose(redexes.len());
    Some(redexes.into_iter().nth(pick).expect("choice out of range"))
}

/// Every type reachable from `t` by one rewrite at any position and with any
/// admissible pair of cancelling operations.
pub fn all_redexes(t: &MonoType) -> Vec<MonoType> {
    let mut out = Vec::new();
    match t {
        MonoType::Base(_) | MonoType::Var(_) => {}
        MonoType::Arrow(a, b) => {
            for a2 in all_redexes(a) {
                out.push(MonoType::Arrow(Box::new(a2), b.clone()));
            }
            for b2 in all_redexes(b) {
                out.push(MonoType::Arrow(a.clone(), Box::new(b2)));
            }
        }
        MonoType::Record(fs) => {
            for (l, ft) in fs {
                for ft2 in all_redexes(ft) {
                    let mut fs2 = fs.clone();
                    fs2.insert(l.clone(), ft2);
                    out.push(MonoType::Record(fs2));
                }
            }
        }
        MonoType::Ext(..) | MonoType::Contr(..) => {
            let (base, ops) = t.chain();
            for b2 in all_redexes(base) {
                out.push(MonoType::from_chain(b2, ops.clone()));
            }
            for (k, op) in ops.iter().enumerate() {
                for ty2 in all_redexes(&op.ty) {
                    let mut ops2 = ops.clone();
                    ops2[k].ty = ty2;
                    out.push(MonoType::from_chain(base.clone(), ops2));
                }
            }
            // cancel a pair that is adjacent within its label's subsequence
            for j in 0..ops.len() {
                let prev = (0..j).rev().find(|&i| ops[i].label == ops[j].label);
                if let Some(i) = prev {
                    if ops[i].sign != ops[j].sign && equiv(&ops[i].ty, &ops[j].ty) {
                        let mut ops2 = ops.clone();
                        ops2.remove(j);
                        ops2.remove(i);
                        out.push(MonoType::from_chain(base.clone(), ops2));
                    }
                }
            }
            if let (MonoType::Record(fs), Some(first)) = (base, ops.first()) {
                if let Some(fs2) = fold_into_record(fs, first) {
                    out.push(MonoType::from_chain(MonoType::Record(fs2), ops[1..].to_vec()));
                }
            }
        }
    }
    out
}

/// Substitution equality: pointwise equivalence over the union of domains.
pub fn subst_equal(
    s1: &BTreeMap<TyVar, MonoType>,
    s2: &BTreeMap<TyVar, MonoType>,
) -> bool {
    s1.keys().chain(s2.keys()).all(|v| {
        let var = MonoType::Var(*v);
        equiv(s1.get(v).unwrap_or(&var), s2.get(v).unwrap_or(&var))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::TyVar;

    fn tv(n: u32) -> MonoType {
        MonoType::Var(TyVar(n))
    }

    fn int() -> MonoType {
        MonoType::int()
    }

    fn boolean() -> MonoType {
        MonoType::bool()
    }

    #[test]
    fn single_rewrite_steps() {
        let r = MonoType::record([("l1", int()), ("l2", boolean())]).contr("l1", int());
        assert_eq!(reduce_once(&r), Some(MonoType::record([("l2", boolean())])));

        let r = MonoType::empty_record().ext("l", int());
        assert_eq!(reduce_once(&r), Some(MonoType::record([("l", int())])));

        assert_eq!(reduce_once(&tv(1).contr("l", int()).ext("l", int())), Some(tv(1)));
        assert_eq!(reduce_once(&tv(1).ext("l", int()).contr("l", int())), Some(tv(1)));
        assert_eq!(reduce_once(&tv(1)), None);
    }

    #[test]
    fn operations_on_distinct_labels_commute() {
        let a = tv(1).ext("l1", int()).contr("l2", boolean());
        let b = tv(1).contr("l2", boolean()).ext("l1", int());
        assert_eq!(normalize(&a), normalize(&b));
        assert!(equiv(&a, &b));
    }

    #[test]
    fn cancellation_inside_longer_chain() {
        let a = tv(1).ext("l1", int()).contr("l2", boolean()).contr("l1", int());
        let b = tv(1).ext("l1", int()).contr("l1", int()).contr("l2", boolean());
        assert_eq!(normalize(&a), normalize(&b));
        assert_eq!(normalize(&a), tv(1).contr("l2", boolean()));
    }

    #[test]
    fn distinct_bases_are_not_identified() {
        let a = tv(1).ext("l1", int()).contr("l2", boolean());
        let b = tv(2).contr("l1", int()).ext("l2", boolean());
        assert!(!equiv(&a, &b));
        let a = tv(1).contr("l1", int()).ext("l2", boolean()).ext("l1", int());
        let b = tv(2).ext("l1", int()).contr("l1", int()).ext("l2", boolean());
        assert!(!equiv(&a, &b));
        assert_eq!(normalize(&a), tv(1).ext("l2", boolean()));
        assert_eq!(normalize(&b), tv(2).ext("l2", boolean()));
    }

    #[test]
    fn arrows_without_chains_are_untouched() {
        let t = MonoType::arrow(int(), int());
        assert_eq!(normalize(&t), t);
    }

    #[test]
    fn record_base_chains_collapse() {
        let t = MonoType::record([("a", int())])
            .ext("b", boolean())
            .contr("a", int())
            .ext("c", int());
        assert_eq!(normalize(&t), MonoType::record([("b", boolean()), ("c", int())]));
    }

    #[test]
    fn stuck_record_chain_stays() {
        let t = MonoType::record([("a", int())]).ext("a", int());
        assert_eq!(normalize(&t), t);
    }

    #[test]
    fn normalization_is_deep() {
        let inner = tv(1).ext("l", int()).contr("l", int());
        let t = MonoType::arrow(
            MonoType::record([("f", inner.clone())]),
            tv(2).ext("m", inner.clone()),
        );
        let want = MonoType::arrow(MonoType::record([("f", tv(1))]), tv(2).ext("m", tv(1)));
        assert_eq!(normalize(&t), want);
        assert_eq!(normalize_by_rewriting(&t), want);
    }

    #[test]
    fn efields_and_cfields() {
        let t = tv(1).ext("l1", int()).contr("l2", boolean()).ext("l3", MonoType::string());
        let e = efields(&t).unwrap();
        assert_eq!(e.keys().map(Label::as_str).collect::<Vec<_>>(), ["l1", "l3"]);
        let c = cfields(&t).unwrap();
        assert_eq!(c.keys().map(Label::as_str).collect::<Vec<_>>(), ["l2"]);
        assert!(efields(&tv(1)).unwrap().is_empty());
        assert!(efields(&int()).is_none());
    }

    #[test]
    fn field_map_operations() {
        let f = |xs: &[(&str, MonoType)]| -> Fields {
            xs.iter().map(|(l, t)| (Label::new(l), t.clone())).collect()
        };
        assert_eq!(
            fmap_plus(&f(&[("l", int())]), &f(&[("l", boolean()), ("m", int())])),
            f(&[("l", int()), ("m", int())])
        );
        assert_eq!(
            fmap_minus(&f(&[("l", int()), ("m", int())]), &f(&[("m", boolean())])),
            f(&[("l", int())])
        );
        assert!(fmap_plus(&Fields::new(), &Fields::new()).is_empty());
    }

    #[test]
    fn substitution_equality() {
        let s = |t: MonoType| BTreeMap::from([(TyVar(1), t)]);
        assert!(subst_equal(&s(int()), &s(int())));
        assert!(subst_equal(&s(tv(2).ext("l", int()).contr("l", int())), &s(tv(2))));
        assert!(!subst_equal(&s(int()), &s(boolean())));
        // identity entries are equal to absence
        assert!(subst_equal(&s(tv(1)), &BTreeMap::new()));
    }
}
