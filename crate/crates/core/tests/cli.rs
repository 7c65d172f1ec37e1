use std::path::PathBuf;
use std::process::Command;

use extrec::cli::{run, Outcome};
use extrec::parser::{parse_env, parse_kind, parse_mono, parse_type};

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("extrec").chain(args.iter().copied()))
}

/// Writes `contents` to a file unique to this test and returns its path.
fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("extrec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const EXTENSION_ENV: &str = "# the environment of extend(x, l, y).l\n'a :: << || l: 'b>>\n'b :: U\nx : 'a\ny : 'b\n";

#[test]
fn selector_type() {
    let o = go(&["infer", "-e", "\\x. x.l"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "forall 'a :: U. forall 'b :: <<l: 'a || >>. 'b -> 'a\n");
}

#[test]
fn inference_under_an_environment() {
    let env = scratch_file("ex.env", EXTENSION_ENV);
    let o = go(&["infer", "--env", env.to_str().unwrap(), "-e", "extend(x, l, y).l"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "'b\n"), "{}", o.stderr);
}

#[test]
fn json_output_reparses() {
    let env = scratch_file("json.env", EXTENSION_ENV);
    for args in [
        vec!["infer", "--json", "-e", "\\r. extend(remove(r, l), m, r.l)"],
        vec!["infer", "--json", "--env", env.to_str().unwrap(), "-e", "extend(x, l, y).l"],
        vec!["infer", "--json", "-e", "let f = \\r. r.a in {p = f {a = 1}, q = f}"],
    ] {
        let o = go(&args);
        assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        parse_type(v["poly_type"].as_str().unwrap()).unwrap();
        parse_mono(v["type"].as_str().unwrap()).unwrap();
        for (_, k) in v["kind_assignment"].as_object().unwrap() {
            parse_kind(k.as_str().unwrap()).unwrap();
        }
        for (_, t) in v["substitution"].as_object().unwrap() {
            parse_mono(t.as_str().unwrap()).unwrap();
        }
    }
}

#[test]
fn json_names_agree_with_the_environment() {
    let env = scratch_file("names.env", EXTENSION_ENV);
    let o = go(&["infer", "--json", "--env", env.to_str().unwrap(), "-e", "extend(x, l, y).l"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["type"], "'b");
    assert_eq!(v["kind_assignment"]["'a"], "<< || l: 'b>>");
    assert_eq!(v["substitution"].as_object().unwrap().len(), 4);
}

#[test]
fn normalize_and_parse() {
    assert_eq!(go(&["normalize", "-t", "('a + {l: Int}) - {l: Int}"]).stdout, "'a\n");
    assert_eq!(go(&["normalize", "-t", "{} + {m: Bool} + {l: Int}"]).stdout, "{l: Int, m: Bool}\n");
    assert_eq!(go(&["parse", "-e", "(\\x.x)  {l=1}.l"]).stdout, "(\\x. x) {l = 1}.l\n");
    assert_eq!(go(&["parse", "-k", "<<l:Int||>>"]).stdout, "<<l: Int || >>\n");
    assert_eq!(go(&["parse", "-e", "\\x."]).code, 2);
}

#[test]
fn check_verdicts() {
    let ok = go(&["check", "-e", "\\x. x.l", "-t", "forall 'b :: <<l: Int || >>. 'b -> Int"]);
    assert_eq!((ok.code, ok.stdout.as_str()), (0, "OK\n"));
    let bad = go(&["check", "-e", "\\x. x", "-t", "Int -> Bool"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.starts_with("FAIL: "), "{}", bad.stdout);
    let rm = go(&["check", "-e", "remove({l = 1, m = 2}, l)", "-t", "{l: Int, m: Int} - {l: Int}"]);
    assert_eq!(rm.stdout, "OK\n");
    let json = go(&["check", "--json", "-e", "\\x. x", "-t", "Int -> Bool"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["ok"], false);
}

#[test]
fn unify_prints_an_environment() {
    let kinds = scratch_file("u.env", "'a :: << || l: 'c>>\n'b :: <<l: 'c || >>\n'c :: U\n");
    let o = go(&["unify", "--trace", "--env", kinds.to_str().unwrap(), "-e", "('a + {l: 'c}) - {l: 'c} = 'b - {l: 'c}"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("# rule viii\n"), "{}", o.stdout);
    let env = parse_env(&o.stdout).unwrap();
    assert_eq!(env.kinds.len(), 2);
    assert_eq!(env.subst.len(), 1);
    assert!(o.stdout.contains("'b := 'a + {l: 'c}"), "{}", o.stdout);

    let fail = go(&["unify", "-e", "Int = Bool"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.starts_with("FAIL: "));
    // several equations, unlisted variables default to U
    let o = go(&["unify", "-e", "'x = 'y -> Int; 'y = Bool"]);
    assert!(o.stdout.contains("'x := Bool -> Int"), "{}", o.stdout);
}

#[test]
fn eval_prints_values() {
    assert_eq!(go(&["eval", "-e", "remove({l = 1, m = 2}, l)"]).stdout, "{m = 2}\n");
    assert_eq!(go(&["eval", "-e", "extend({}, l, true).l"]).stdout, "true\n");
    let prog = scratch_file("prog.rec", "let f = \\r. modify(r, n, \"b\") in (f {n = \"a\", k = 0}).n\n");
    assert_eq!(go(&["eval", prog.to_str().unwrap()]).stdout, "\"b\"\n");
    assert_eq!(go(&["eval", "-e", "{l = 1}.m"]).code, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(go(&["infer"]).code, 2);
    assert_eq!(go(&["infer", "-e", "x", "some-file"]).code, 2);
    assert_eq!(go(&["infer", "missing-file.rec"]).code, 2);
    assert_eq!(go(&["check", "-e", "1"]).code, 2);
    let o = go(&["infer", "-e", "y"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("unbound variable `y`"), "{}", o.stderr);
}

#[test]
fn fuzzing_is_deterministic() {
    let a = go(&["fuzz", "--seed", "42", "--count", "30"]);
    let b = go(&["fuzz", "--seed", "42", "--count", "30"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, go(&["fuzz", "--seed", "43", "--count", "30"]).stdout);
    assert!(a.stdout.ends_with("0 invalid derivations\n"));
}

#[test]
fn the_binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_extrec");
    let out = Command::new(bin).args(["normalize", "-t", "('a + {l: Int}) - {l: Int}"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "'a\n");
    let out = Command::new(bin).args(["infer", "-e", "\\x. x x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).args(["infer", "-e", "("]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
