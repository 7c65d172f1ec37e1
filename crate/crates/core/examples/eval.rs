//! Evaluates record programs.
use extrec::eval::eval;
use extrec::parser::parse_term;

fn main() {
    for src in [
        "remove({l = 1, m = 2}, l)",
        "extend({}, name, \"ada\").name",
        "let bump = \\r. modify(r, n, true) in bump {n = false, k = 0}",
        "(\\x. x.l) {l = 1}",
        "{l = 1}.m",
    ] {
        match eval(&parse_term(src).unwrap()) {
            Ok(v) => println!("{src}  =>  {v}"),
            Err(e) => println!("{src}  !!  {e}"),
        }
    }
}
