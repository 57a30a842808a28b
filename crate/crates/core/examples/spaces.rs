//! Building finite spaces and asking about their topology.
//!
//! Run with `cargo run --example spaces`.

use topoforce::topology::{validate_space, FiniteSpace};

fn describe(name: &str, t: &FiniteSpace) {
    println!("{name}: points {:?}", t.labels());
    for o in t.opens() {
        println!("  open {}", t.show(*o));
    }
    for r in t.points() {
        let u = t.min_nbhds()[r.index()];
        let h = t.homogeneous_nbhd(r).unwrap();
        println!(
            "  U_{} = {}  connected: {}  homogeneous nbhd: {}",
            t.label(r),
            t.show(u),
            t.connected(u).unwrap(),
            h.map(|o| t.show(o)).unwrap_or_else(|| "none".into())
        );
    }
    println!(
        "  locally connected: {}, locally homogeneous: {}\n",
        t.is_locally_connected(),
        t.is_locally_homogeneous().unwrap()
    );
}

fn main() {
    describe("Sierpinski", &FiniteSpace::sierpinski());
    describe("discrete(2)", &FiniteSpace::discrete(2));

    // A three-point chain a < b < c in the specialisation order.
    let chain = validate_space(&["a", "b", "c"], &[vec![], vec!["c"], vec!["b", "c"], vec!["a", "b", "c"]]).unwrap();
    describe("chain", &chain);
    println!("components of {}: {:?}", chain.show(chain.full()), chain.components(chain.full()).unwrap().iter().map(|o| chain.show(*o)).collect::<Vec<_>>());
    let interior = chain.interior(chain.subset(&["a", "c"]).unwrap()).unwrap();
    println!("interior of {{a, c}} = {}", chain.show(interior));

    // Families that are not topologies are rejected with the offending sets.
    match validate_space(&["a", "b", "c"], &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
