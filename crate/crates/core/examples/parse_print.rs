//! Parses terms, types and kinds and prints them back in canonical form.
use extrec::parser::{parse_kind, parse_term, parse_type};

fn main() {
    let term = parse_term("let get = \\r.r.name in get (extend({}, name, \"ada\"))").unwrap();
    println!("term: {term}");

    let ty = parse_type("forall 'a::U. forall 'r::<<name:'a||>>. 'r -> 'a").unwrap();
    println!("type: {ty}");

    let kind = parse_kind("<<x:Int || y:Bool>>").unwrap();
    println!("kind: {kind}");

    match parse_term("\\x. (x") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
