//! Solves kinded equations and shows the rules that fired.
use extrec::parser::{parse_env_in, parse_equations_in, Scope};
use extrec::pretty::Printer;
use extrec::unify::unify;

fn main() {
    let mut scope = Scope::new();
    let env = parse_env_in("'a :: << || l: 'c>>\n'b :: <<l: 'c || >>\n'c :: U", &mut scope).unwrap();
    let eqs = parse_equations_in("('a + {l: 'c}) - {l: 'c} = 'b - {l: 'c}", &mut scope).unwrap();

    let u = unify(&env.kinds, &eqs).unwrap();
    let mut p = Printer::with_namer(scope.namer());
    for step in &u.trace {
        println!("rule {}", step.rule.name());
    }
    print!("substitution:\n{}", p.substitution(&u.subst));
    print!("kinds:\n{}", p.kind_assignment(&u.kinds));

    let clash = parse_equations_in("'c -> Int = Bool -> 'c", &mut scope).unwrap();
    if let Err(e) = unify(&env.kinds, &clash) {
        println!("error: {}", e.describe(&mut p));
    }
}
