//! Asks which kinds a record type expression carries.
use extrec::kinding::{field_info, has_kind};
use extrec::parser::{parse_env_in, parse_kind_in, parse_mono_in, Scope};
use extrec::pretty::Printer;

fn main() {
    let mut scope = Scope::new();
    let env = parse_env_in("'r :: <<a: Int || b: Bool>>", &mut scope).unwrap();
    for src in ["('r - {a: Int}) + {b: Bool}", "'r + {c: String}"] {
        let t = parse_mono_in(src, &mut scope).unwrap();
        println!("{src}: {:?}", field_info(&env.kinds, &t));
        for kind in ["<<b: Bool || a: Int>>", "<<b: Bool || >>", "<< || a: String>>", "U"] {
            let k = parse_kind_in(kind, &mut scope).unwrap();
            let mut p = Printer::with_namer(scope.namer());
            println!("  :: {:<22} {}", p.kind(&k), has_kind(&env.kinds, &t, &k));
        }
    }
}
