//! Infers principal types for a few record programs.
use extrec::infer::principal;
use extrec::parser::parse_term;
use extrec::syntax::{KindAssignment, TypeAssignment};

fn main() {
    let (k, g) = (KindAssignment::new(), TypeAssignment::new());
    for src in [
        "\\x. x.l",
        "\\r. remove(r, l)",
        "\\r. \\v. extend(r, l, v)",
        "\\r. modify(r, count, r.count)",
        "let f = \\r. r.a in {p = f {a = 1}, q = f {a = true, b = 2}}",
        "\\r. r.l r.l",
        "{l = 1}.m",
    ] {
        let m = parse_term(src).unwrap();
        match principal(&k, &g, &m) {
            Ok((_, sigma)) => println!("{src}\n  : {sigma}"),
            Err(e) => println!("{src}\n  ! {e}"),
        }
    }
}
