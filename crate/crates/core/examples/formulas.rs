//! Parsing, printing, substitution and parameter settling.

use topoforce::formulas::{parse, print, Formula, ParamEnv, Var};
use topoforce::harness::pools::parse_open;
use topoforce::terms::{hat, Term};
use topoforce::ground::HFSet;
use topoforce::topology::FiniteSpace;

fn main() {
    let t = FiniteSpace::sierpinski();
    let r = t.point("r").unwrap();
    let mut env = ParamEnv::new();
    env.insert("sigma".into(), Term::new([], [(Term::empty(), r)]));
    env.insert("one".into(), hat(&t, &HFSet::nat(1)));

    let texts = [
        "~(sigma = one) \\/ ~~(sigma = one)",
        "forall x. forall y. (~(x = y) \\/ ~~(x = y))",
        "∀x ∈ sigma. ∃y. (x ∈ y ∧ y ⊆ one)",
        "x = one",
    ];
    for text in texts {
        match parse(text, &env) {
            Ok(phi) => {
                println!("{text}\n  printed: {}", print(&phi, &env));
                println!("  closed: {}, Δ0: {}, desugared: {}", phi.is_closed(), phi.is_delta0(), print(&phi.desugar(), &env));
            }
            Err(e) => println!("{text}\n  error: {e}"),
        }
    }

    // Substituting a term for a free variable, then settling the parameters at r.
    let open = parse_open("exists y. (x = y /\\ y in one)", &["x"], &env);
    let x = Var::new("x");
    let closed = open.substitute(&x, &env["sigma"]).unwrap();
    println!("\nphi(sigma)   = {}", print(&closed, &env));
    let settled = closed.settle(&t, r);
    println!("phi(sigma)^r = {}", print(&settled, &env));
    println!("free vars of phi: {:?}", open.free_vars());
    println!("alpha-normal: {}", Formula::forall("q", open.clone()).alpha_normalize());
}
