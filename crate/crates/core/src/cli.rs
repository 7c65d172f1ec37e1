//! The `extrec` command line.
//!
//! [`run`] does all the work and returns what a process would print, so the
//! binary is a thin wrapper and the commands can be tested in-process.
//!
//! Exit status is 0 on success, 1 when the analysis fails (a type error, a
//! unification failure, a runtime error) and 2 for usage and parse errors.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value as Json};

use crate::checker::{check, validate, CheckError};
use crate::eval::eval;
use crate::gen::Gen;
use crate::infer::{generalize, infer, InferError};
use crate::normalize::normalize;
use crate::parser::{self, parse_equations_in, parse_kind_in, parse_mono_in, parse_term, parse_type_in, Scope};
use crate::pretty::{self, Printer};
use crate::syntax::{Kind, KindAssignment, Term, TypeAssignment};
use crate::unify::unify;

#[derive(Parser, Debug)]
#[command(name = "extrec", version, about = "Type inference for extensible polymorphic records")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term, type or kind and print it back.
    Parse(ParseArgs),
    /// Infer the principal type of a term.
    Infer(InferArgs),
    /// Check a term against a claimed type.
    Check(CheckArgs),
    /// Unify equations, one `TYPE = TYPE` per line (`;` also separates).
    Unify(UnifyArgs),
    /// Print the canonical form of a type.
    Normalize(NormalizeArgs),
    /// Evaluate a closed term.
    Eval(EvalArgs),
    /// Generate random terms, infer them and validate the derivations.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Read the input from a file.
    file: Option<PathBuf>,
    /// Take the input from the command line.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ParseSource {
    file: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    /// Parse a type instead of a term.
    #[arg(short = 't', long = "type")]
    ty: Option<String>,
    /// Parse a kind instead of a term.
    #[arg(short = 'k', long = "kind")]
    kind: Option<String>,
}

#[derive(Args, Debug)]
struct ParseArgs {
    #[command(flatten)]
    source: ParseSource,
}

#[derive(Args, Debug)]
struct InferArgs {
    /// Environment file with `'a :: KIND` and `x : TYPE` lines.
    #[arg(long)]
    env: Option<PathBuf>,
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    env: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    expr: String,
    #[arg(short = 't', long = "type")]
    ty: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct UnifyArgs {
    /// Kinds of the variables; unlisted variables get kind U.
    #[arg(long)]
    env: Option<PathBuf>,
    #[command(flatten)]
    source: Source,
    /// Also print the transformation rules applied, as comments.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct NormalizeArgs {
    #[arg(short = 't', long = "type")]
    ty: String,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    source: Source,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Generate arbitrary terms rather than mostly typable ones.
    #[arg(long)]
    untyped: bool,
}

/// What a process running the command would produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Analysis { stdout: String, message: String },
}

impl Failure {
    fn analysis(message: impl Into<String>) -> Failure {
        Failure::Analysis { stdout: String::new(), message: message.into() }
    }
}

impl From<parser::ParseError> for Failure {
    fn from(e: parser::ParseError) -> Failure {
        Failure::Usage(format!("parse error: {e}"))
    }
}

type CmdResult = Result<String, Failure>;

/// Runs the command line `args`, whose first element is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Infer(a) => cmd_infer(a),
        Command::Check(a) => cmd_check(a),
        Command::Unify(a) => cmd_unify(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Fuzz(a) => cmd_fuzz(a),
    };
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Analysis { stdout, message }) => {
            Outcome { code: 1, stdout, stderr: format!("error: {message}\n") }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn source_text(s: &Source) -> Result<String, Failure> {
    match (&s.file, &s.expr) {
        (Some(p), _) => read(p),
        (_, Some(e)) => Ok(e.clone()),
        (None, None) => Err(Failure::Usage("no input given".into())),
    }
}

fn load_env(path: &Option<PathBuf>, scope: &mut Scope) -> Result<parser::Env, Failure> {
    match path {
        Some(p) => Ok(parser::parse_env_in(&read(p)?, scope)?),
        None => Ok(parser::Env::default()),
    }
}

fn line(s: impl AsRef<str>) -> String {
    format!("{}\n", s.as_ref())
}

fn cmd_parse(a: ParseArgs) -> CmdResult {
    let s = a.source;
    let mut scope = Scope::new();
    if let Some(t) = s.ty {
        let ty = parse_type_in(&t, &mut scope)?;
        return Ok(line(Printer::with_namer(scope.namer()).poly(&ty)));
    }
    if let Some(k) = s.kind {
        let kind = parse_kind_in(&k, &mut scope)?;
        return Ok(line(Printer::with_namer(scope.namer()).kind(&kind)));
    }
    let text = source_text(&Source { file: s.file, expr: s.expr })?;
    Ok(line(pretty::term(&parse_term(&text)?)))
}

fn cmd_infer(a: InferArgs) -> CmdResult {
    let mut scope = Scope::new();
    let env = load_env(&a.env, &mut scope)?;
    let m = parse_term(&source_text(&a.source)?)?;
    let fail = |e: InferError| Failure::analysis(e.describe(&mut Printer::with_namer(scope.namer())));
    let r = infer(&env.kinds, &env.types, &m).map_err(fail)?;
    let g = r.subst.apply_env(&env.types);
    let (_, sigma) = generalize(&m, &r.kinds, &g, &r.ty).map_err(fail)?;

    let mut p = Printer::with_namer(scope.namer());
    let poly = p.poly(&sigma);
    if !a.json {
        return Ok(line(poly));
    }
    let ty = p.mono(&r.ty);
    let kinds = kind_map(&mut p, &r.kinds);
    let mut subst = Map::new();
    for (v, t) in r.subst.iter() {
        let name = p.namer.name(v);
        subst.insert(name, Json::String(p.mono(t)));
    }
    let out = json!({
        "kind_assignment": kinds,
        "substitution": subst,
        "type": ty,
        "poly_type": poly,
    });
    Ok(line(serde_json::to_string_pretty(&out).expect("json")))
}

fn kind_map(p: &mut Printer, k: &KindAssignment) -> Map<String, Json> {
    let mut out = Map::new();
    for v in k.dependency_order(&k.domain()) {
        let kind = p.kind(k.get(v).expect("variable from domain"));
        out.insert(p.namer.name(v), Json::String(kind));
    }
    out
}

fn cmd_check(a: CheckArgs) -> CmdResult {
    let mut scope = Scope::new();
    let env = load_env(&a.env, &mut scope)?;
    let m = parse_term(&a.expr)?;
    let s = parse_type_in(&a.ty, &mut scope)?;
    let verdict = check(&env.kinds, &env.types, &m, &s).map_err(|e| match e {
        CheckError::InferenceFailed(e) => {
            format!("inference failed: {}", e.describe(&mut Printer::with_namer(scope.namer())))
        }
        other => other.to_string(),
    });
    let text = match (&verdict, a.json) {
        (Ok(()), false) => line("OK"),
        (Err(e), false) => line(format!("FAIL: {e}")),
        (Ok(()), true) => line(json!({ "ok": true }).to_string()),
        (Err(e), true) => line(json!({ "ok": false, "reason": e.to_string() }).to_string()),
    };
    match verdict {
        Ok(()) => Ok(text),
        Err(e) => Err(Failure::Analysis { stdout: text, message: e }),
    }
}

fn cmd_unify(a: UnifyArgs) -> CmdResult {
    let mut scope = Scope::new();
    let env = load_env(&a.env, &mut scope)?;
    let text = source_text(&a.source)?.replace(';', "\n");
    let eqs = parse_equations_in(&text, &mut scope)?;
    let mut k = env.kinds.clone();
    let mentioned = eqs.iter().flat_map(|(l, r)| l.ftv().into_iter().chain(r.ftv()));
    for v in mentioned.chain(env.kinds.range_ftv()).collect::<Vec<_>>() {
        if !k.contains(v) {
            k.insert(v, Kind::Universal);
        }
    }
    let u = match unify(&k, &eqs) {
        Ok(u) => u,
        Err(e) => {
            let e = e.describe(&mut Printer::with_namer(scope.namer()));
            let stdout = if a.json {
                line(json!({ "ok": false, "reason": e }).to_string())
            } else {
                line(format!("FAIL: {e}"))
            };
            return Err(Failure::Analysis { stdout, message: e });
        }
    };
    let mut p = Printer::with_namer(scope.namer());
    if a.json {
        let kinds = kind_map(&mut p, &u.kinds);
        let mut subst = Map::new();
        for (v, t) in u.subst.iter() {
            let name = p.namer.name(v);
            subst.insert(name, Json::String(p.mono(t)));
        }
        let rules: Vec<&str> = u.trace.iter().map(|s| s.rule.name()).collect();
        let out = json!({ "kind_assignment": kinds, "substitution": subst, "rules": rules });
        return Ok(line(serde_json::to_string_pretty(&out).expect("json")));
    }
    let mut out = String::new();
    if a.trace {
        for step in &u.trace {
            writeln!(out, "# rule {}", step.rule.name()).unwrap();
        }
    }
    out.push_str(&p.kind_assignment(&u.kinds));
    out.push_str(&p.substitution(&u.subst));
    Ok(out)
}

fn cmd_normalize(a: NormalizeArgs) -> CmdResult {
    let mut scope = Scope::new();
    let t = parse_mono_in(&a.ty, &mut scope)?;
    Ok(line(Printer::with_namer(scope.namer()).mono(&normalize(&t))))
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let m = parse_term(&source_text(&a.source)?)?;
    let v = eval(&m).map_err(|e| Failure::analysis(e.to_string()))?;
    Ok(line(v.to_string()))
}

fn cmd_fuzz(a: FuzzArgs) -> CmdResult {
    let mut g = Gen::new(a.seed);
    let empty = (KindAssignment::new(), TypeAssignment::new());
    let (mut typed, mut invalid) = (0, 0);
    let mut out = String::new();
    for i in 0..a.count {
        let m: Term = if a.untyped { g.term(&[]) } else { g.typed_term() };
        writeln!(out, "[{i}] {}", pretty::term(&m)).unwrap();
        match infer(&empty.0, &empty.1, &m) {
            Ok(r) => {
                typed += 1;
                let verdict = match validate(&r.derivation) {
                    Ok(()) => "derivation ok".to_string(),
                    Err(e) => {
                        invalid += 1;
                        format!("INVALID DERIVATION: {e}")
                    }
                };
                let (_, sigma) = crate::subst::closure(&r.kinds, &empty.1, &r.ty);
                writeln!(out, "    : {}  ({verdict})", pretty::poly(&sigma)).unwrap();
            }
            Err(e) => writeln!(out, "    ! {e}").unwrap(),
        }
    }
    writeln!(out, "{typed} of {} typable, {invalid} invalid derivations", a.count).unwrap();
    if invalid > 0 {
        return Err(Failure::Analysis { stdout: out, message: format!("{invalid} invalid derivations") });
    }
    Ok(out)
}
