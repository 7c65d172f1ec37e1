//! Well-formedness and the kinding judgment `K ⊩ τ :: κ`.
//!
//! `has_kind` synthesizes the most informative field facts derivable for an
//! extensible type and then checks the requested kind against them, so any
//! subset of the derivable fields is accepted.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::normalize::equiv;
use crate::syntax::{Fields, Kind, KindAssignment, Label, MonoType, PolyType, TyVar, TypeAssignment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("type variable {0:?} is not in the kind assignment")]
    Unbound(TyVar),
    #[error("not an extensible type")]
    NotExtensible,
    #[error("type variable {0:?} has the universal kind, not a record kind")]
    UniversalBase(TyVar),
    #[error("cannot extend with field `{0}`: it is not known to be absent with that type")]
    ExtendPresent(Label),
    #[error("cannot remove field `{0}`: it is not known to be present with that type")]
    RemoveAbsent(Label),
    #[error("field `{0}` is required but not present")]
    MissingField(Label),
    #[error("field `{0}` is required absent but may be present")]
    ForbiddenField(Label),
    #[error("label `{0}` is on both sides of the kind")]
    Overlap(Label),
}

/// What is derivably known about the fields of an extensible type.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldInfo {
    /// Fields known present, with their types.
    pub present: Fields,
    /// Fields known absent with a fixed type.
    pub absent: Fields,
    /// For types built on a record, every label outside this set (and outside
    /// `present`/`absent`) is absent with any type.
    pub closed_over: Option<BTreeSet<Label>>,
}

impl FieldInfo {
    fn absent_with(&self, l: &Label, ty: &MonoType) -> bool {
        match self.absent.get(l) {
            Some(t) => equiv(t, ty),
            None => self.freely_absent(l),
        }
    }

    fn freely_absent(&self, l: &Label) -> bool {
        match &self.closed_over {
            Some(seen) => !seen.contains(l) && !self.present.contains_key(l),
            None => false,
        }
    }

    fn present_with(&self, l: &Label, ty: &MonoType) -> bool {
        self.present.get(l).is_some_and(|t| equiv(t, ty))
    }
}

/// Returns the first variable in the domain whose kind mentions an unbound
/// variable.
pub fn check_kind_assignment(k: &KindAssignment) -> Result<(), (TyVar, TyVar)> {
    for (v, kind) in k.iter() {
        if let Some(w) = kind.ftv().into_iter().find(|w| !k.contains(*w)) {
            return Err((v, w));
        }
    }
    Ok(())
}

pub fn wf_kind_assignment(k: &KindAssignment) -> bool {
    check_kind_assignment(k).is_ok()
}

pub fn wf_type(k: &KindAssignment, t: &PolyType) -> bool {
    t.ftv().iter().all(|v| k.contains(*v))
}

pub fn wf_mono(k: &KindAssignment, t: &MonoType) -> bool {
    t.ftv().iter().all(|v| k.contains(*v))
}

pub fn wf_kind(k: &KindAssignment, kind: &Kind) -> bool {
    kind.ftv().iter().all(|v| k.contains(*v))
}

pub fn wf_env(k: &KindAssignment, g: &TypeAssignment) -> bool {
    g.iter().all(|(_, t)| wf_type(k, t))
}

/// Maximal field information for an extensible type under `K`.
pub fn field_info(k: &KindAssignment, t: &MonoType) -> Result<FieldInfo, KindError> {
    match t {
        MonoType::Record(fs) => Ok(FieldInfo {
            present: fs.clone(),
            absent: Fields::new(),
            closed_over: Some(fs.keys().cloned().collect()),
        }),
        MonoType::Var(v) => match k.get(*v) {
            None => Err(KindError::Unbound(*v)),
            Some(Kind::Universal) => Err(KindError::UniversalBase(*v)),
            Some(Kind::Record { left, right }) => Ok(FieldInfo {
                present: left.clone(),
                absent: right.clone(),
                closed_over: None,
            }),
        },
        MonoType::Ext(inner, l, ty) => {
            let mut info = field_info(k, inner)?;
            if !info.absent_with(l, ty) {
                return Err(KindError::ExtendPresent(l.clone()));
            }
            info.absent.remove(l);
            if let Some(seen) = &mut info.closed_over {
                seen.insert(l.clone());
            }
            info.present.insert(l.clone(), (**ty).clone());
            Ok(info)
        }
        MonoType::Contr(inner, l, ty) => {
            let mut info = field_info(k, inner)?;
            if !info.present_with(l, ty) {
                return Err(KindError::RemoveAbsent(l.clone()));
            }
            info.present.remove(l);
            info.absent.insert(l.clone(), (**ty).clone());
            Ok(info)
        }
        MonoType::Base(_) | MonoType::Arrow(..) => Err(KindError::NotExtensible),
    }
}

/// Decides `K ⊩ τ :: κ`, explaining a negative answer.
pub fn kind_check(k: &KindAssignment, t: &MonoType, kind: &Kind) -> Result<(), KindError> {
    if let Some(v) = t.ftv().into_iter().chain(kind.ftv()).find(|v| !k.contains(*v)) {
        return Err(KindError::Unbound(v));
    }
    let (left, right) = match kind {
        Kind::Universal => return Ok(()),
        Kind::Record { left, right } => (left, right),
    };
    if let Some(l) = left.keys().find(|l| right.contains_key(*l)) {
        return Err(KindError::Overlap(l.clone()));
    }
    let info = field_info(k, t)?;
    for (l, ty) in left {
        if !info.present_with(l, ty) {
            return Err(KindError::MissingField(l.clone()));
        }
    }
    for (l, ty) in right {
        if !info.absent_with(l, ty) {
            return Err(KindError::ForbiddenField(l.clone()));
        }
    }
    Ok(())
}

pub fn has_kind(k: &KindAssignment, t: &MonoType, kind: &Kind) -> bool {
    kind_check(k, t, kind).is_ok()
}

/// Whether `t` has some record kind under `K`.
pub fn is_record_kindable(k: &KindAssignment, t: &MonoType) -> bool {
    wf_mono(k, t) && field_info(k, t).is_ok()
}
