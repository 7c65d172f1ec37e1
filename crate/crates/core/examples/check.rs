//! Checks terms against given type schemes and validates an inferred derivation.
use extrec::checker::{check, validate};
use extrec::infer::infer;
use extrec::parser::{parse_term, parse_type};
use extrec::syntax::{KindAssignment, TypeAssignment};

fn main() {
    let (k, g) = (KindAssignment::new(), TypeAssignment::new());
    for (src, ty) in [
        ("\\x. x.l", "forall 'b :: <<l: Int || >>. 'b -> Int"),
        ("\\x. x.l", "{l: Int, m: Bool} -> Int"),
        ("\\x. x.l", "{m: Bool} -> Int"),
        ("remove({l = 1, m = 2}, l)", "{m: Int}"),
    ] {
        let verdict = check(&k, &g, &parse_term(src).unwrap(), &parse_type(ty).unwrap());
        println!("{src} : {ty}  ->  {verdict:?}");
    }

    let r = infer(&k, &g, &parse_term("let id = \\x. x in id {l = id 1}").unwrap()).unwrap();
    println!("derivation of {} nodes, valid: {:?}", r.derivation.size(), validate(&r.derivation));
}
