//! The literal forcing relation against the truth-value evaluator, with cache statistics.

use topoforce::forcing::EvalContext;
use topoforce::harness::pools::{cross_check_pool, pool_env};
use topoforce::harness::{enumerate_spaces, space_id, UniverseSpec};
use topoforce::formulas::print;

fn main() {
    for space in enumerate_spaces(2).unwrap() {
        let ctx = EvalContext::new(space.clone(), UniverseSpec::with_cap(&space, 12).build(&space));
        let env = pool_env(&space);
        let mut agree = 0;
        let mut shown = 0;
        for phi in cross_check_pool(&space) {
            let tv = ctx.tv(&phi);
            let ok = space.opens().iter().all(|&j| ctx.forces(j, &phi).value == j.is_subset(tv));
            agree += ok as usize;
            if tv != space.full() && !tv.is_empty() && shown < 3 {
                println!("  {:<50} tv = {}", print(&phi, &env), space.show(tv));
                shown += 1;
            }
        }
        println!("{}: {agree}/{} formulas agree; {:?}\n", space_id(&space), cross_check_pool(&space).len(), ctx.cache_stats());
    }
}
