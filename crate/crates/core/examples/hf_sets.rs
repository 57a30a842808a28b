//! Hereditarily finite sets and the classical evaluator.

use topoforce::formulas::{parse, ParamEnv};
use topoforce::ground::{all_hf_up_to_rank, canonicalize, eval_classical, subsets_of, ClassicalEnv, HFSet, HfLiteral};
use topoforce::terms::hat;
use topoforce::topology::FiniteSpace;

fn main() {
    let two = HFSet::nat(2);
    let three = HFSet::nat(3);
    println!("2 = {two}, rank {}", two.rank());
    println!("<2, 3> = {}", HFSet::ordered_pair(&two, &three));
    println!("union of 3 = {}", three.union_all());
    println!("subsets of 2: {:?}", subsets_of(&two).unwrap());
    println!("|V_3| = {}", all_hf_up_to_rank(2).unwrap().len());
    println!("|V_4| = {}", all_hf_up_to_rank(3).unwrap().len());

    // Document literals are canonicalised, so order and duplicates do not matter.
    let raw: HfLiteral = serde_json::from_str(r#"[[[]], [], [[]]]"#).unwrap();
    println!("[[[]], [], [[]]] = {}", canonicalize(&raw));

    // Classical truth of a bounded sentence with hat parameters.
    let t = FiniteSpace::discrete(1);
    let mut env = ParamEnv::new();
    env.insert("two".into(), hat(&t, &two));
    env.insert("three".into(), hat(&t, &three));
    for text in ["forall x in two. x in three", "exists x in three. ~(x in two)", "two in two"] {
        let phi = parse(text, &env).unwrap();
        println!("{text}: {}", eval_classical(&t, &phi, &ClassicalEnv::new()).unwrap());
    }
}
