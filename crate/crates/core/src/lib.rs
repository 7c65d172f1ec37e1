//! A polymorphic record calculus with extensible records.
//!
//! Records can gain fields (`extend`) and lose them (`remove`) as well as be
//! selected from and modified. Types use kinded quantification: a record kind
//! `<<F_l || F_r>>` lists fields a record must have and fields it must lack.

pub mod checker;
pub mod cli;
pub mod eval;
pub mod gen;
pub mod infer;
pub mod kinding;
pub mod normalize;
pub mod parser;
pub mod pretty;
pub mod subst;
pub mod syntax;
pub mod unify;
