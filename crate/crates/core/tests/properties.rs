use proptest::prelude::*;

use topoforce::forcing::EvalContext;
use topoforce::formulas::{parse, print, Arg, Formula, ParamEnv, Var};
use topoforce::harness::enumerate_spaces;
use topoforce::harness::pools::{pool_env, pool_seeds};
use topoforce::terms::{gen_universe, Term, UniverseConfig};
use topoforce::topology::{FiniteSpace, Point};

fn spaces() -> Vec<FiniteSpace> {
    (1..=3).flat_map(|n| enumerate_spaces(n).unwrap()).collect()
}

/// Shape of a random formula; parameters and variables are indices resolved later.
#[derive(Debug, Clone)]
enum Shape {
    Bot,
    Eq(usize, usize),
    Mem(usize, usize),
    And(Box<Shape>, Box<Shape>),
    Or(Box<Shape>, Box<Shape>),
    Imp(Box<Shape>, Box<Shape>),
    Forall(Box<Shape>),
    Exists(Box<Shape>),
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![
        1 => Just(Shape::Bot),
        3 => (0..16usize, 0..16usize).prop_map(|(a, b)| Shape::Eq(a, b)),
        3 => (0..16usize, 0..16usize).prop_map(|(a, b)| Shape::Mem(a, b)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(p, q)| Shape::And(Box::new(p), Box::new(q))),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| Shape::Or(Box::new(p), Box::new(q))),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| Shape::Imp(Box::new(p), Box::new(q))),
            inner.clone().prop_map(|p| Shape::Forall(Box::new(p))),
            inner.prop_map(|p| Shape::Exists(Box::new(p))),
        ]
    })
}

/// Builds a closed formula: an index picks a bound variable when one is in
/// scope and the index is even, a parameter otherwise. Quantifier depth is capped at 2.
fn build(s: &Shape, params: &[Term], scope: &mut Vec<Var>) -> Formula {
    let arg = |i: usize, scope: &[Var]| -> Arg {
        if !scope.is_empty() && i.is_multiple_of(2) {
            Arg::Var(scope[i / 2 % scope.len()].clone())
        } else {
            Arg::Param(params[i % params.len()].clone())
        }
    };
    match s {
        Shape::Bot => Formula::bot(),
        Shape::Eq(a, b) => Formula::eq(arg(*a, scope), arg(*b, scope)),
        Shape::Mem(a, b) => Formula::mem(arg(*a, scope), arg(*b, scope)),
        Shape::And(p, q) => Formula::and(build(p, params, scope), build(q, params, scope)),
        Shape::Or(p, q) => Formula::or(build(p, params, scope), build(q, params, scope)),
        Shape::Imp(p, q) => Formula::imp(build(p, params, scope), build(q, params, scope)),
        Shape::Forall(p) | Shape::Exists(p) if scope.len() >= 2 => build(p, params, scope),
        Shape::Forall(p) | Shape::Exists(p) => {
            let v = Var::new(&format!("x{}", scope.len()));
            scope.push(v.clone());
            let body = build(p, params, scope);
            scope.pop();
            if matches!(s, Shape::Forall(_)) {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
    }
}

fn context(space: &FiniteSpace) -> EvalContext {
    let universe = gen_universe(space, &pool_seeds(space), &UniverseConfig { cap: 8, ..UniverseConfig::default() });
    EvalContext::new(space.clone(), universe)
}

fn setup(space_ix: usize, s: &Shape) -> (FiniteSpace, ParamEnv, Formula) {
    let all = spaces();
    let space = all[space_ix % all.len()].clone();
    let env = pool_env(&space);
    let params: Vec<Term> = env.values().cloned().collect();
    let phi = build(s, &params, &mut Vec::new());
    (space, env, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn literal_forcing_matches_truth_value(ix in 0..34usize, s in shape()) {
        let (space, _, phi) = setup(ix, &s);
        let ctx = context(&space);
        let tv = ctx.tv(&phi);
        for &j in space.opens() {
            prop_assert_eq!(ctx.forces(j, &phi).value, j.is_subset(tv), "J = {}", space.show(j));
        }
    }

    #[test]
    fn truth_values_are_open_and_heyting(ix in 0..34usize, s in shape(), t in shape()) {
        let (space, env, phi) = setup(ix, &s);
        let psi = build(&t, &env.values().cloned().collect::<Vec<_>>(), &mut Vec::new());
        let ctx = context(&space);
        let (a, b) = (ctx.tv(&phi), ctx.tv(&psi));
        prop_assert!(space.is_open(a));
        prop_assert_eq!(ctx.tv(&Formula::and(phi.clone(), psi.clone())), a.intersection(b));
        prop_assert_eq!(ctx.tv(&Formula::or(phi.clone(), psi.clone())), a.union(b));
        let em = Formula::not(Formula::not(Formula::or(phi.clone(), Formula::not(phi.clone()))));
        prop_assert_eq!(ctx.tv(&em), space.full());
        // Without parameters the settling clause is idle and → is the Heyting implication.
        if !phi.has_params() && !psi.has_params() {
            let h = space.interior(space.full().difference(a).union(b)).unwrap();
            prop_assert_eq!(ctx.tv(&Formula::imp(phi, psi)), h);
        }
    }

    #[test]
    fn settling_reflection(ix in 0..34usize, s in shape()) {
        let (space, _, phi) = setup(ix, &s);
        let ctx = context(&space);
        let tv = ctx.tv(&phi);
        for r in tv.points() {
            prop_assert!(ctx.tv(&ctx.settle_formula(&phi, r)).contains(r));
        }
    }

    #[test]
    fn print_parse_round_trip(ix in 0..34usize, s in shape()) {
        let (_, env, phi) = setup(ix, &s);
        let text = print(&phi, &env);
        let back = parse(&text, &env).unwrap();
        prop_assert_eq!(back.alpha_normalize(), phi.alpha_normalize(), "{}", text);
    }

    #[test]
    fn settled_terms_are_ground_fixed_points(ix in 0..34usize, picks in prop::collection::vec((0..16usize, 0..8u64, 0..3u8, any::<bool>()), 0..6)) {
        let all = spaces();
        let space = &all[ix % all.len()];
        let base: Vec<Term> = pool_env(space).values().cloned().collect();
        let opens = space.opens();
        let mut entries = Vec::new();
        let mut points = Vec::new();
        for (t, o, p, as_point) in picks {
            let child = base[t % base.len()].clone();
            if as_point {
                points.push((child, Point(p % space.len() as u8)));
            } else {
                entries.push((child, opens[o as usize % opens.len()]));
            }
        }
        let sigma = Term::new(entries, points);
        for r in space.points() {
            let settled = sigma.settle(space, r);
            prop_assert!(settled.is_ground(space));
            prop_assert_eq!(settled.settle(space, r), settled.clone());
            for q in space.points() {
                prop_assert_eq!(settled.settle(space, q), settled.clone());
            }
        }
    }
}
