//! Call-by-value evaluation of closed terms.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::normalize::normalize;
use crate::syntax::{BaseType, Ident, Label, Literal, MonoType, Term};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(String),
    Record(BTreeMap<Label, Value>),
    Closure(Closure),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    pub param: Ident,
    pub body: Rc<Term>,
    pub env: Env,
}

/// Immutable environment; extension shares the tail.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Env(Option<Rc<(Ident, Value, Env)>>);

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn bind(&self, x: Ident, v: Value) -> Env {
        Env(Some(Rc::new((x, v, self.clone()))))
    }

    pub fn get(&self, x: &str) -> Option<&Value> {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if &*node.0 == x {
                return Some(&node.1);
            }
            cur = &node.2;
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuntimeError {
    #[error("unbound variable `{0}`")]
    Unbound(Ident),
    #[error("record has no field `{0}`")]
    MissingField(Label),
    #[error("record already has field `{0}`")]
    PresentField(Label),
    #[error("expected a record, found {0}")]
    NotARecord(String),
    #[error("expected a function, found {0}")]
    NotAFunction(String),
}

pub fn eval(m: &Term) -> Result<Value, RuntimeError> {
    eval_in(&Env::new(), m)
}

pub fn eval_in(env: &Env, m: &Term) -> Result<Value, RuntimeError> {
    match m {
        Term::Var(x) => env.get(x).cloned().ok_or_else(|| RuntimeError::Unbound(x.clone())),
        Term::Const(Literal::Int(n)) => Ok(Value::Int(*n)),
        Term::Const(Literal::Bool(b)) => Ok(Value::Bool(*b)),
        Term::Const(Literal::Str(s)) => Ok(Value::Str(s.clone())),
        Term::Abs(x, body) => Ok(Value::Closure(Closure {
            param: x.clone(),
            body: Rc::new((**body).clone()),
            env: env.clone(),
        })),
        Term::App(f, a) => {
            let f = eval_in(env, f)?;
            let a = eval_in(env, a)?;
            match f {
                Value::Closure(c) => eval_in(&c.env.bind(c.param.clone(), a), &c.body),
                other => Err(RuntimeError::NotAFunction(other.to_string())),
            }
        }
        Term::Let(x, bound, body) => {
            let v = eval_in(env, bound)?;
            eval_in(&env.bind(x.clone(), v), body)
        }
        Term::Record(fields) => fields
            .iter()
            .map(|(l, t)| Ok((l.clone(), eval_in(env, t)?)))
            .collect::<Result<_, _>>()
            .map(Value::Record),
        Term::Select(r, l) => {
            let mut fs = record(eval_in(env, r)?)?;
            fs.remove(l).ok_or_else(|| RuntimeError::MissingField(l.clone()))
        }
        Term::Modify(r, l, v) => {
            let mut fs = record(eval_in(env, r)?)?;
            let v = eval_in(env, v)?;
            let slot = fs.get_mut(l).ok_or_else(|| RuntimeError::MissingField(l.clone()))?;
            *slot = v;
            Ok(Value::Record(fs))
        }
        Term::Remove(r, l) => {
            let mut fs = record(eval_in(env, r)?)?;
            fs.remove(l).ok_or_else(|| RuntimeError::MissingField(l.clone()))?;
            Ok(Value::Record(fs))
        }
        Term::Extend(r, l, v) => {
            let mut fs = record(eval_in(env, r)?)?;
            let v = eval_in(env, v)?;
            if fs.insert(l.clone(), v).is_some() {
                return Err(RuntimeError::PresentField(l.clone()));
            }
            Ok(Value::Record(fs))
        }
    }
}

fn record(v: Value) -> Result<BTreeMap<Label, Value>, RuntimeError> {
    match v {
        Value::Record(fs) => Ok(fs),
        other => Err(RuntimeError::NotARecord(other.to_string())),
    }
}

/// Whether `v` has the shape of `t`. Type variables match anything and
/// functions are only checked to be closures.
pub fn matches_type(v: &Value, t: &MonoType) -> bool {
    match (v, normalize(t)) {
        (_, MonoType::Var(_)) => true,
        (Value::Int(_), MonoType::Base(BaseType::Int))
        | (Value::Bool(_), MonoType::Base(BaseType::Bool))
        | (Value::Str(_), MonoType::Base(BaseType::String)) => true,
        (Value::Closure(_), MonoType::Arrow(..)) => true,
        (Value::Record(fs), MonoType::Record(ts)) => {
            fs.len() == ts.len()
                && fs.iter().zip(&ts).all(|((l1, v), (l2, t))| l1 == l2 && matches_type(v, t))
        }
        // an open chain: the named fields must be present or absent as stated
        (Value::Record(fs), t @ (MonoType::Ext(..) | MonoType::Contr(..))) => {
            let (_, ops) = t.chain();
            ops.iter().all(|op| match op.sign {
                crate::syntax::Sign::Plus => fs.get(&op.label).is_some_and(|v| matches_type(v, &op.ty)),
                crate::syntax::Sign::Minus => !fs.contains_key(&op.label),
            })
        }
        _ => false,
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "{s:?}"),
            Value::Record(fs) => {
                f.write_str("{")?;
                for (i, (l, v)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l} = {v}")?;
                }
                f.write_str("}")
            }
            Value::Closure(c) => write!(f, "<fun {}>", c.param),
        }
    }
}
