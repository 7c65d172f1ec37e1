//! Rewrites record type chains to their canonical form.
use extrec::normalize::{equiv, normalize};
use extrec::parser::{parse_mono_in, Scope};
use extrec::pretty::Printer;

fn main() {
    let mut scope = Scope::new();
    for src in [
        "('a + {l: Int}) - {l: Int}",
        "{} + {m: Bool} + {l: Int}",
        "({l: Int, m: Bool} - {l: Int}) + {k: String}",
        "'b - {x: Int} - {y: Int} + {x: Int}",
    ] {
        let t = parse_mono_in(src, &mut scope).unwrap();
        println!("{src}  ~>  {}", Printer::with_namer(scope.namer()).mono(&normalize(&t)));
    }

    let a = parse_mono_in("'r + {l: Int} + {m: Bool}", &mut scope).unwrap();
    let b = parse_mono_in("'r + {m: Bool} + {l: Int}", &mut scope).unwrap();
    println!("equivalent up to field order: {}", equiv(&a, &b));
}
