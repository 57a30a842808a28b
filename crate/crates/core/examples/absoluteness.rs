//! Bounded sentences with ground parameters are decided and agree with classical truth.

use topoforce::forcing::EvalContext;
use topoforce::ground::{eval_classical, ClassicalEnv};
use topoforce::harness::pools::Delta0Generator;
use topoforce::terms::{gen_universe, UniverseConfig};
use topoforce::topology::FiniteSpace;

fn main() {
    let t = FiniteSpace::sierpinski();
    let mut generator = Delta0Generator::new(&t, 11, 3, 3);
    let universe = gen_universe(&t, generator.params(), &UniverseConfig { cap: 32, ..UniverseConfig::default() });
    let ctx = EvalContext::new(t.clone(), universe);
    let (mut agree, mut valid) = (0, 0);
    for i in 0..40 {
        let phi = generator.sentence();
        let tv = ctx.tv(&phi);
        let classical = eval_classical(&t, &phi, &ClassicalEnv::new()).unwrap();
        if ctx.check_delta0_absoluteness(&phi).unwrap() {
            agree += 1;
        }
        valid += (tv == t.full()) as usize;
        if i < 5 {
            println!("{phi}\n  tv = {}, classical = {classical}", t.show(tv));
        }
    }
    println!("{agree}/40 absolute, {valid} valid");
}
