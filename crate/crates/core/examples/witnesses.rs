//! Witness terms for the axioms, each checked against its instance.

use topoforce::forcing::EvalContext;
use topoforce::formulas::Var;
use topoforce::ground::HFSet;
use topoforce::harness::exponent_universe;
use topoforce::harness::pools::{parse_open, pool_env, pool_seeds};
use topoforce::terms::{gen_universe, hat, UniverseConfig};
use topoforce::topology::FiniteSpace;
use topoforce::witnesses::{self, WitnessReport};

fn show(r: &WitnessReport) {
    println!("[{}] forced: {}  tv = {:?}\n  witness {}\n  {}", r.axiom, r.forced, r.tv, r.witness, r.formula);
}

fn main() {
    let t = FiniteSpace::discrete(2);
    let mut env = pool_env(&t);
    let ctx = EvalContext::new(t.clone(), gen_universe(&t, &pool_seeds(&t), &UniverseConfig::default()));
    let (sigma, tau) = (env["sigma"].clone(), env["tau"].clone());
    let (x, y) = (Var::new("x"), Var::new("y"));

    let w = witnesses::pair_term(&t, &sigma, &tau);
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "pairing", &[&sigma, &tau], &w, &witnesses::pairing_instance(&sigma, &tau, &w), &env));

    let w = witnesses::union_term(&tau);
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "union", &[&tau], &w, &witnesses::union_instance(&tau, &w), &env));

    let phi = parse_open("~(x = n1)", &["x"], &env);
    let w = witnesses::sep_term(&ctx, &tau, &x, &phi, t.full()).unwrap();
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "bounded separation", &[&tau], &w, &witnesses::separation_instance(&tau, &x, &phi, &w), &env));

    let c = witnesses::eps_term(&t, &tau).unwrap();
    env.insert("w".into(), c.clone());
    show(&WitnessReport::check(&ctx, "eventual power set", &[&tau], &c, &witnesses::eps_instance(&tau, &c), &env));

    let phi = parse_open("x in y", &["x", "y"], &env);
    let j = ctx.tv(&witnesses::collection_antecedent(&tau, &x, &y, &phi));
    let w = witnesses::collection_bound(&ctx, &tau, &x, &y, &phi, j).unwrap();
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "collection", &[&tau], &w, &witnesses::collection_instance(&tau, &x, &y, &phi, &w), &env));

    let phi = parse_open("y = n0", &["x", "y"], &env);
    let w = witnesses::replacement_term(&ctx, &tau, &x, &y, &phi).unwrap();
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "replacement", &[&tau], &w, &witnesses::replacement_instance(&tau, &x, &y, &phi, &w), &env));

    // The discrete space is locally homogeneous, so full separation has a witness.
    let phi = parse_open("x = n0 /\\ forall y. (~(y = n1) \\/ ~~(y = n1))", &["x"], &env);
    let gate = |r| t.homogeneous_nbhd(r).unwrap();
    let w = witnesses::full_sep_term(&ctx, &sigma, &x, &phi, &gate).unwrap();
    env.insert("w".into(), w.clone());
    show(&WitnessReport::check(&ctx, "full separation", &[&sigma], &w, &witnesses::separation_instance(&sigma, &x, &phi, &w), &env));

    // Function spaces need their own universe of classical and glued functions.
    let (a, b) = (HFSet::nat(1), HFSet::nat(2));
    let ectx = EvalContext::new(t.clone(), exponent_universe(&t, &a, &b).unwrap());
    let (ha, hb) = (hat(&t, &a), hat(&t, &b));
    let w = witnesses::exp_term(&ectx, &ha, &hb).unwrap();
    env.insert("w".into(), w.clone());
    let inst = witnesses::exp_instance(&t, &ha, &hb, &w).unwrap();
    show(&WitnessReport::check(&ectx, "exponentiation", &[&ha, &hb], &w, &inst, &env));
}
