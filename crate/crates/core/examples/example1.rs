//! The two-point counterexample: excluded middle fails, full separation fails.

use topoforce::forcing::EvalContext;
use topoforce::formulas::{parse, print};
use topoforce::harness::pools::{EXAMPLE1_NON_VALIDITY, EXAMPLE1_PHI};
use topoforce::harness::{example1_fixture, example1_regression};

fn main() {
    let (t, sigma, universe) = example1_fixture();
    let mut env = topoforce::harness::pools::pool_env(&t);
    env.insert("sigma".into(), sigma);
    let ctx = EvalContext::new(t.clone(), universe);

    for text in [EXAMPLE1_NON_VALIDITY, EXAMPLE1_PHI] {
        let phi = parse(text, &env).unwrap();
        let tv = ctx.tv(&phi);
        println!("{}\n  tv = {}", print(&phi, &env), t.show(tv));
        for &j in t.opens() {
            let v = ctx.forces(j, &phi);
            println!("  {} forces: {}{}", t.show(j), v.value, if v.quantifier_touched { format!(" (relative to {})", v.relative_to) } else { String::new() });
        }
    }
    println!("locally homogeneous: {}\n", t.is_locally_homogeneous().unwrap());

    let report = example1_regression();
    print!("{}", report.render_text());
}
