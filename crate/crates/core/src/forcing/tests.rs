use super::*;
use crate::formulas::{parse, ParamEnv};
use crate::ground::HFSet;
use crate::terms::{gen_universe, hat, UniverseConfig};

fn example1() -> (EvalContext, ParamEnv) {
    let t = FiniteSpace::sierpinski();
    let r = t.point("r").unwrap();
    let sigma = Term::new([], [(hat(&t, &HFSet::nat(0)), r)]);
    let u = gen_universe(&t, std::slice::from_ref(&sigma), &UniverseConfig::default());
    let mut env = ParamEnv::new();
    env.insert("sigma".into(), sigma);
    for n in 0..3 {
        env.insert(format!("n{n}"), hat(&t, &HFSet::nat(n)));
    }
    (EvalContext::new(t, u), env)
}

#[test]
fn example1_truth_values() {
    let (ctx, env) = example1();
    let t = ctx.space();
    let s_only = t.open(&["s"]).unwrap();
    let f = |text: &str| parse(text, &env).unwrap();
    assert_eq!(ctx.tv(&f("sigma = n0")), s_only);
    assert_eq!(ctx.tv(&f("sigma = n1")), OpenSet::EMPTY);
    assert_eq!(ctx.tv(&f("~(sigma = n1)")), s_only);
    assert_eq!(ctx.tv(&f("~~(sigma = n1)")), OpenSet::EMPTY);
    assert_eq!(ctx.tv(&f("~(sigma = n1) \\/ ~~(sigma = n1)")), s_only);
    assert!(!ctx.forces(t.full(), &f("~(sigma = n1) \\/ ~~(sigma = n1)")).value);
    assert!(ctx.forces(s_only, &f("sigma = n0")).value);
    assert!(ctx.forces(t.full(), &f("sigma = sigma")).value);
}

#[test]
fn reflexivity_of_hats() {
    let (ctx, env) = example1();
    for n in 0..3 {
        let h = &env[&format!("n{n}")];
        assert_eq!(ctx.tv_eq(h, h), ctx.space().full());
    }
}

#[test]
fn verdict_flags() {
    let (ctx, env) = example1();
    let full = ctx.space().full();
    let atomic = ctx.forces(full, &parse("n0 in n1", &env).unwrap());
    assert!(atomic.value && !atomic.quantifier_touched);
    assert_eq!(atomic.relative_to, ctx.universe().id());
    let q = ctx.forces(full, &parse("forall x. x = x", &env).unwrap());
    assert!(q.value && q.quantifier_touched);
}

#[test]
fn errors_on_bad_inputs() {
    let (ctx, env) = example1();
    let open = crate::formulas::Formula::eq(crate::formulas::Arg::var("x"), env["n0"].clone());
    assert!(matches!(ctx.try_tv(&open), Err(ForcingError::NotClosed(_))));
    let r_only = ctx.space().subset(&["r"]).unwrap();
    assert!(matches!(ctx.try_forces(r_only, &parse("bot", &env).unwrap()), Err(ForcingError::NotOpen(_))));
}

#[test]
fn literal_and_lattice_agree_on_a_small_pool() {
    let (ctx, env) = example1();
    let pool = [
        "bot",
        "sigma in n1",
        "n0 in sigma",
        "sigma = n0 -> sigma = n1",
        "~~(sigma = n0)",
        "exists x. x in sigma",
        "forall x. (x in sigma -> x = n0)",
        "forall x. (x = sigma \\/ ~(x = sigma))",
        "forall x. forall y. (~(x = y) \\/ ~~(x = y))",
        "exists x. forall y. (y in x <-> y in sigma)",
    ];
    for text in pool {
        let phi = parse(text, &env).unwrap();
        let tv = ctx.tv(&phi);
        for &j in ctx.space().opens() {
            assert_eq!(ctx.forces(j, &phi).value, j.is_subset(tv), "{text} at {}", ctx.space().show(j));
        }
    }
}

#[test]
fn delta0_absoluteness_examples() {
    let (ctx, env) = example1();
    assert!(ctx.check_delta0_absoluteness(&parse("n0 in n1", &env).unwrap()).unwrap());
    let f = parse("n1 in n1", &env).unwrap();
    assert!(ctx.check_delta0_absoluteness(&f).unwrap());
    assert_eq!(ctx.tv(&f), OpenSet::EMPTY);
    assert!(matches!(
        ctx.check_delta0_absoluteness(&parse("sigma in n1", &env).unwrap()),
        Err(ForcingError::NotGroundParams(_))
    ));
    assert!(matches!(
        ctx.check_delta0_absoluteness(&parse("forall x. x = x", &env).unwrap()),
        Err(ForcingError::NotDelta0(_))
    ));
}

#[test]
fn settling_reflection_examples() {
    let (ctx, env) = example1();
    let s_only = ctx.space().open(&["s"]).unwrap();
    let phi = parse("sigma = n0", &env).unwrap();
    assert!(ctx.settling_reflection(s_only, &phi).unwrap());
    let full = ctx.space().full();
    assert!(matches!(ctx.settling_reflection(full, &phi), Err(ForcingError::PreconditionFailed(_))));
    assert!(ctx.settling_reflection(full, &parse("n0 in n1", &env).unwrap()).unwrap());
}

#[test]
fn settled_equality_matches_ground_equality() {
    let (ctx, _) = example1();
    let t = ctx.space();
    for a in ctx.universe().terms() {
        for b in ctx.universe().terms() {
            for r in t.points() {
                let (x, y) = (ctx.settle(a, r), ctx.settle(b, r));
                assert_eq!(x == y, crate::terms::ground_equal(t, &x, &y).unwrap());
            }
        }
    }
}
