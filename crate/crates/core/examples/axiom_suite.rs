//! Axiom instance suites on a few spaces, with the text report.

use topoforce::harness::{run_axiom_suite, Axiom, SuiteOptions, UniverseSpec};
use topoforce::topology::FiniteSpace;

fn main() {
    let spaces = [FiniteSpace::discrete(1), FiniteSpace::sierpinski(), FiniteSpace::indiscrete(2)];
    for t in &spaces {
        let report = run_axiom_suite(t, &UniverseSpec::default_for(t), &Axiom::ALL, &SuiteOptions { timings: true });
        print!("{}", report.render_text());
        let slowest = report.checks.iter().filter_map(|c| c.elapsed_ms.map(|ms| (ms, c))).fold(None, |acc: Option<(f64, _)>, x| match acc {
            Some(a) if a.0 >= x.0 => Some(a),
            _ => Some(x),
        });
        if let Some((ms, c)) = slowest {
            println!("slowest check ({ms:.2} ms): [{}] {}", c.group, c.formula);
        }
        println!();
    }
}
