//! Terms, the hat embedding, settling, and explicit universes.

use topoforce::ground::HFSet;
use topoforce::terms::{gen_universe, hat, Closure, Term, UniverseConfig};
use topoforce::topology::FiniteSpace;

fn main() {
    let t = FiniteSpace::sierpinski();
    let (r, s) = (t.point("r").unwrap(), t.point("s").unwrap());
    let one = hat(&t, &HFSet::nat(1));

    // 0 gets into sigma only when we settle at r.
    let sigma = Term::new([], [(Term::empty(), r)]);
    // 1 is a member on {s}; sigma is a member everywhere.
    let tau = Term::new([(one.clone(), t.open(&["s"]).unwrap()), (sigma.clone(), t.full())], []);

    for term in [&sigma, &tau] {
        println!("{}", term.render(&t));
        for p in [r, s] {
            let settled = term.settle(&t, p);
            println!("  at {}: {}  (ground: {})", t.label(p), settled.check(&t).unwrap(), settled.is_ground(&t));
        }
    }

    let config = UniverseConfig::new(1, &[Closure::Settle, Closure::Subterms, Closure::SingletonPerOpen], 16);
    let u = gen_universe(&t, &[tau], &config);
    println!("\nuniverse {} ({} terms, truncated: {})", u.id(), u.len(), u.truncated());
    for (term, how) in u.terms().iter().zip(u.provenance()) {
        println!("  {:<12} {}", format!("{how:?}"), term.render(&t));
    }
    println!("closed under settling: {}, under subterms: {}", u.is_settle_closed(&t), u.is_subterm_closed());
}
