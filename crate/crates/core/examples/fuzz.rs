//! Generates random terms from a seed, infers their types and validates the
//! resulting derivations.
use extrec::checker::validate;
use extrec::gen::Gen;
use extrec::infer::infer;
use extrec::syntax::{KindAssignment, TypeAssignment};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut g = Gen::new(seed);
    let (k, env) = (KindAssignment::new(), TypeAssignment::new());
    let (mut typed, mut valid) = (0, 0);
    for _ in 0..200 {
        let m = g.typed_term();
        if let Ok(r) = infer(&k, &env, &m) {
            typed += 1;
            valid += validate(&r.derivation).is_ok() as u32;
            if typed <= 5 {
                println!("{m}\n  : {}", r.ty);
            }
        }
    }
    println!("seed {seed}: {typed} of 200 typable, {valid} derivations valid");
}
