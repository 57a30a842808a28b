//! Enumerating topologies and correlating their properties with the axioms.

use topoforce::harness::{brute_force_count, correlation_sweep, enumerate_spaces};
use topoforce::terms::UniverseConfig;

fn main() {
    for n in 1..=4 {
        println!("n = {n}: {} topologies (brute force {})", enumerate_spaces(n).unwrap().len(), brute_force_count(n).unwrap());
    }
    println!();
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let table = correlation_sweep(n, &UniverseConfig::default()).unwrap();
    print!("{}", table.render_text());
    println!("implications hold: {}", table.passed());
}
