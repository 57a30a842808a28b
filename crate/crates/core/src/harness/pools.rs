//! Formula pools shared by the suites and the acceptance checks.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::formulas::{parse, Arg, Formula, ParamEnv, Var};
use crate::ground::{all_hf_up_to_rank, HFSet};
use crate::terms::{hat, Term, TermUniverse};
use crate::topology::FiniteSpace;

/// Named parameters available to every pool on `space`:
/// `n0..n3` are hats, `sigma = {⟨0̂, p⟩}` for the first point `p`,
/// `rho = {⟨0̂, U⟩}` for the minimal neighbourhood `U` of the last point, and
/// `tau = {⟨sigma, T⟩, ⟨1̂, V⟩}` for the minimal neighbourhood `V` of the first point.
pub fn pool_env(space: &FiniteSpace) -> ParamEnv {
    let mut env = ParamEnv::new();
    for k in 0..4 {
        env.insert(format!("n{k}"), hat(space, &HFSet::nat(k)));
    }
    let first = space.points().next().expect("non-empty space");
    let last = space.points().last().expect("non-empty space");
    let zero = Term::empty();
    let sigma = Term::new([], [(zero.clone(), first)]);
    let rho = Term::new([(zero, space.min_nbhds()[last.index()])], []);
    let tau = Term::new(
        [(sigma.clone(), space.full()), (hat(space, &HFSet::nat(1)), space.min_nbhds()[first.index()])],
        [],
    );
    env.insert("sigma".into(), sigma);
    env.insert("rho".into(), rho);
    env.insert("tau".into(), tau);
    env
}

/// The non-hat members of [`pool_env`], for seeding universes.
pub fn pool_seeds(space: &FiniteSpace) -> Vec<Term> {
    let env = pool_env(space);
    ["sigma", "rho", "tau"].iter().map(|k| env[*k].clone()).collect()
}

/// Sentences for the two-evaluator cross-check. Every connective appears;
/// quantifier nesting (counting `sub`) is at most three.
pub const CROSS_CHECK_POOL: &[&str] = &[
    "bot",
    "n0 = n0",
    "n0 in n1",
    "n1 in n1",
    "sigma = n0",
    "sigma = n1",
    "rho = n1",
    "n0 in sigma",
    "n0 in rho",
    "sigma in n2",
    "rho in n2",
    "sigma = rho",
    "tau in n2",
    "sigma in tau",
    "rho in tau",
    "~(sigma = n1)",
    "~~(sigma = n1)",
    "~(sigma = n1) \\/ ~~(sigma = n1)",
    "sigma = n0 \\/ sigma = n1",
    "sigma = n0 /\\ rho = n1",
    "sigma = n0 -> rho = n1",
    "rho = n1 -> sigma = n0",
    "(sigma = n0 -> bot) -> bot",
    "sigma = rho <-> rho = sigma",
    "sigma sub n1",
    "n1 sub sigma",
    "rho sub sigma \\/ sigma sub rho",
    "~(n0 in sigma) \\/ n0 in sigma",
    "((n0 in rho -> n0 in sigma) -> n0 in rho) -> n0 in rho",
    "sigma in tau /\\ ~(rho in tau)",
    "forall x. x = x",
    "exists x. x in sigma",
    "exists x. x in rho",
    "forall x. (x in sigma -> x = n0)",
    "forall x in sigma. x = n0",
    "exists x in n2. x = sigma",
    "forall x. (x = sigma \\/ ~(x = sigma))",
    "forall x. ~~(x = n0 \\/ ~(x = n0))",
    "exists x. ~(x = n0)",
    "forall x in tau. x in n2",
    "exists x. (x in tau /\\ ~(x = sigma))",
    "forall x. (x in rho <-> x in sigma)",
    "~(forall x. (x in sigma -> bot))",
    "(exists x. x in sigma) -> sigma = n1",
    "forall x. (x sub n0 -> x = n0)",
    "exists x. (x = sigma /\\ x = rho)",
    "forall x. forall y. (x = y -> y = x)",
    "forall x. forall y. (~(x = y) \\/ ~~(x = y))",
    "exists x. forall y. (y in x <-> y in sigma)",
    "forall x. exists y. x = y",
    "forall x. ((exists y. y in x) \\/ ~(exists y. y in x))",
    "exists x. exists y. (x in y /\\ y in tau)",
    "forall x in n2. exists y in n2. (x in y \\/ y in x \\/ x = y)",
    "forall x. (x in sigma -> (forall y. (y in x -> bot)))",
    "exists x. (x in n2 /\\ (forall y. (y in sigma -> y in x)))",
    "forall x. ((forall y. (y in x -> y in rho)) -> x sub rho)",
    "forall x. forall y. forall z. (x = y /\\ y = z -> x = z)",
    "forall x. forall y. forall z. (x = y /\\ x in z -> y in z)",
    "forall x. forall y. forall z. (x = y /\\ z in x -> z in y)",
    "exists x. forall y. exists z. (z in x <-> y = z)",
    "forall x. exists y. forall z. (z in y <-> z = x)",
    "~~(exists x. forall y. ~(y in x))",
    "forall x. forall y. (x sub y /\\ y sub x -> x = y)",
    "exists x. (x in tau /\\ (forall y in x. exists z in sigma. y = z))",
    "forall x. (x in rho -> x in sigma) \\/ exists y. (y in rho /\\ ~(y in sigma))",
    "(forall x. (x in sigma \\/ ~(x in sigma))) -> sigma = n1 \\/ ~(sigma = n1)",
];

pub fn cross_check_pool(space: &FiniteSpace) -> Vec<Formula> {
    let env = pool_env(space);
    CROSS_CHECK_POOL.iter().map(|t| parse(t, &env).expect("pool formula parses")).collect()
}

/// The five equality axioms.
pub const EQUALITY_AXIOMS: &[&str] = &[
    "forall x. x = x",
    "forall x. forall y. (x = y -> y = x)",
    "forall x. forall y. forall z. (x = y /\\ y = z -> x = z)",
    "forall x. forall y. forall z. (x = y /\\ x in z -> y in z)",
    "forall x. forall y. forall z. (x = y /\\ z in x -> z in y)",
];

/// Strips leading universal quantifiers and instantiates them with every tuple
/// from the universe.
pub fn universal_instances(phi: &Formula, universe: &TermUniverse) -> Vec<Formula> {
    let mut vars = Vec::new();
    let mut body = phi.clone();
    while let crate::formulas::Node::Forall(v, b) = body.node() {
        vars.push(v.clone());
        body = b.clone();
    }
    let mut out = vec![body];
    for v in &vars {
        out = out.into_iter().flat_map(|f| universe.terms().iter().map(move |t| f.subst(v, t)).collect::<Vec<_>>()).collect();
    }
    out
}

/// Intuitionistic validities over schematic letters `A`, `B`, `C` and a
/// predicate `P(x)`.
pub const CONSTRUCTIVE_SCHEMATA: &[&str] = &[
    "A -> A",
    "A /\\ (A -> B) -> B",
    "~~(A \\/ ~A)",
    "A -> B -> A",
    "(A -> B -> C) -> (A -> B) -> A -> C",
    "A /\\ B -> A",
    "A -> A \\/ B",
    "(A -> C) /\\ (B -> C) -> A \\/ B -> C",
    "bot -> A",
    "(A -> B) -> ~B -> ~A",
    "A -> ~~A",
    "~~~A -> ~A",
    "(forall x. P) -> P[s]",
    "P[s] -> (exists x. P)",
    "~(exists x. P) <-> (forall x. ~P)",
];

/// Closed formulas substituted for `A`, `B`, `C`.
pub const PROPOSITION_LETTERS: &[&str] = &["sigma = n1", "n0 in rho", "~(sigma = n1)", "exists x. x in sigma", "bot"];

/// One-variable predicates substituted for `P(x)`.
pub const PREDICATES: &[&str] = &["x = sigma", "x in n2", "x in rho", "~(x = n0)"];

/// Instantiates one schema. `P[s]` is the predicate with `x := s`.
pub fn instantiate_schema(schema: &str, letters: [&str; 3], predicate: &str, s: &str) -> String {
    let p_s = predicate.replace('x', s);
    schema
        .replace("P[s]", &format!("({p_s})"))
        .replace('P', &format!("({predicate})"))
        .replace('A', &format!("({})", letters[0]))
        .replace('B', &format!("({})", letters[1]))
        .replace('C', &format!("({})", letters[2]))
}

/// Every instance of the constructive suite: all letter triples, and for the
/// predicate schemata every predicate and every universe member for `s`.
pub fn constructive_instances(space: &FiniteSpace, universe: &TermUniverse) -> Vec<(String, Formula)> {
    let mut env = pool_env(space);
    for (i, t) in universe.terms().iter().enumerate() {
        env.insert(format!("u{i}"), t.clone());
    }
    let mut out = Vec::new();
    for schema in CONSTRUCTIVE_SCHEMATA {
        let uses_p = schema.contains('P');
        let letters_used = ['A', 'B', 'C'].iter().filter(|c| schema.contains(**c)).count();
        if uses_p {
            for pred in PREDICATES {
                if schema.contains("P[s]") {
                    for i in 0..universe.len() {
                        let text = instantiate_schema(schema, ["", "", ""], pred, &format!("u{i}"));
                        out.push((text.clone(), parse(&text, &env).expect("schema instance parses")));
                    }
                } else {
                    let text = instantiate_schema(schema, ["", "", ""], pred, "");
                    out.push((text.clone(), parse(&text, &env).expect("schema instance parses")));
                }
            }
            continue;
        }
        let n = PROPOSITION_LETTERS.len();
        let combos = n.pow(letters_used as u32);
        for k in 0..combos {
            let pick = |d: u32| PROPOSITION_LETTERS[(k / n.pow(d)) % n];
            let letters = [pick(0), if letters_used > 1 { pick(1) } else { "" }, if letters_used > 2 { pick(2) } else { "" }];
            let text = instantiate_schema(schema, letters, "", "");
            out.push((text.clone(), parse(&text, &env).expect("schema instance parses")));
        }
    }
    out
}

/// The classical non-validity refuted by Example 1.
pub const EXAMPLE1_NON_VALIDITY: &str = "~(sigma = n1) \\/ ~~(sigma = n1)";

/// Example 1's `φ`.
pub const EXAMPLE1_PHI: &str = "forall x. forall y. (~(x = y) \\/ ~~(x = y))";

/// Δ0 one-variable predicates `φ(x)` for Bounded Separation.
pub const SEPARATION_PREDICATES: &[&str] = &[
    "x = n0",
    "n0 in x",
    "x in n2",
    "~(x = n1)",
    "exists y in x. y = n0",
    "forall y in x. y in n1",
    "x in sigma \\/ x = n1",
];

/// One-variable predicates with unbounded quantifiers, for Full Separation.
pub const FULL_SEPARATION_PREDICATES: &[&str] = &[
    "forall y. (y in x -> y in x)",
    "exists y. (y in x /\\ y = n0)",
    "x = n0 /\\ forall y. (~(y = n1) \\/ ~~(y = n1))",
    "x = n0 /\\ (forall y. forall z. (~(y = z) \\/ ~~(y = z)))",
];

/// Two-variable relations `φ(x, y)` for Collection.
pub const COLLECTION_RELATIONS: &[&str] = &["y = x", "x in y", "~(x = y)", "y = n0 \\/ y = x", "x sub y"];

/// Two-variable functional relations `φ(x, y)` for Replacement.
pub const REPLACEMENT_RELATIONS: &[&str] = &["y = x", "y = n0", "x in y /\\ y in n2", "(x = n0 /\\ y = n1) \\/ (n0 in x /\\ y = n0)"];

/// One-variable predicates `P(x)` for the Set Induction schema.
pub const INDUCTION_PREDICATES: &[&str] = &["x = x", "~(x in x)", "x in n2 \\/ ~(x in n2)", "~(x = sigma)", "x in rho -> x = n0"];

/// Parses a formula with the given free variables, resolving other names in `env`.
pub fn parse_open(text: &str, free: &[&str], env: &ParamEnv) -> Formula {
    // Bind the free variables with a quantifier prefix, then strip it.
    let prefix: String = free.iter().map(|v| format!("forall {v}. ")).collect();
    let mut f = parse(&format!("{prefix}({text})"), env).expect("pool formula parses");
    for _ in free {
        let crate::formulas::Node::Forall(_, body) = f.node() else { unreachable!() };
        f = body.clone();
    }
    f
}

/// Random Δ0 sentences with ground parameters.
pub struct Delta0Generator {
    rng: StdRng,
    params: Vec<Term>,
    max_depth: u32,
}

impl Delta0Generator {
    /// Parameters are the hats of all sets of rank ≤ `rank`.
    pub fn new(space: &FiniteSpace, seed: u64, rank: u32, max_depth: u32) -> Delta0Generator {
        let params = all_hf_up_to_rank(rank).expect("rank within budget").iter().map(|x| hat(space, x)).collect();
        Delta0Generator { rng: StdRng::seed_from_u64(seed), params, max_depth }
    }

    pub fn params(&self) -> &[Term] {
        &self.params
    }

    pub fn sentence(&mut self) -> Formula {
        self.gen(self.max_depth, &mut Vec::new())
    }

    fn arg(&mut self, scope: &[Var]) -> Arg {
        if !scope.is_empty() && self.rng.gen_bool(0.6) {
            Arg::Var(scope.choose(&mut self.rng).expect("non-empty").clone())
        } else {
            Arg::Param(self.params.choose(&mut self.rng).expect("non-empty").clone())
        }
    }

    fn gen(&mut self, depth: u32, scope: &mut Vec<Var>) -> Formula {
        let pick = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..10) };
        match pick {
            0 => Formula::eq(self.arg(scope), self.arg(scope)),
            1 | 2 => Formula::mem(self.arg(scope), self.arg(scope)),
            3 => Formula::and(self.gen(depth - 1, scope), self.gen(depth - 1, scope)),
            4 => Formula::or(self.gen(depth - 1, scope), self.gen(depth - 1, scope)),
            5 => Formula::imp(self.gen(depth - 1, scope), self.gen(depth - 1, scope)),
            6 => Formula::not(self.gen(depth - 1, scope)),
            7 if self.rng.gen_bool(0.2) => Formula::bot(),
            7 => Formula::iff(self.gen(depth - 1, scope), self.gen(depth - 1, scope)),
            _ => {
                let bound = self.arg(scope);
                let v = Var::new(&format!("x{}", scope.len()));
                scope.push(v.clone());
                let body = self.gen(depth - 1, scope);
                scope.pop();
                if pick == 8 {
                    Formula::forall_in(v, bound, body)
                } else {
                    Formula::exists_in(v, bound, body)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{gen_universe, UniverseConfig};

    #[test]
    fn pools_parse_everywhere() {
        for space in [FiniteSpace::sierpinski(), FiniteSpace::discrete(3), FiniteSpace::indiscrete(1)] {
            let pool = cross_check_pool(&space);
            assert!(pool.len() >= 60);
            assert!(pool.iter().all(|f| f.is_closed()));
            let u = gen_universe(&space, &pool_seeds(&space), &UniverseConfig::new(1, &[], 6));
            assert!(!constructive_instances(&space, &u).is_empty());
        }
    }

    #[test]
    fn pool_covers_every_connective_and_depth() {
        fn depth(f: &Formula) -> usize {
            use crate::formulas::Node::*;
            match f.node() {
                Bot | Eq(..) | Mem(..) => 0,
                And(p, q) | Or(p, q) | Imp(p, q) => depth(p).max(depth(q)),
                Exists(_, p) | Forall(_, p) => 1 + depth(p),
                _ => unreachable!(),
            }
        }
        let pool = cross_check_pool(&FiniteSpace::sierpinski());
        let core: Vec<Formula> = pool.iter().map(|f| f.desugar()).collect();
        assert!(core.iter().all(|f| depth(f) <= 3));
        assert!(core.iter().any(|f| depth(f) == 3));
        let text: String = CROSS_CHECK_POOL.join(" ");
        for token in ["bot", "=", " in ", "/\\", "\\/", "->", "<->", "~", "forall", "exists", "sub"] {
            assert!(text.contains(token), "{token}");
        }
    }

    #[test]
    fn schema_instantiation() {
        let s = instantiate_schema("A /\\ (A -> B) -> B", ["bot", "n0 in n1", ""], "", "");
        assert_eq!(s, "(bot) /\\ ((bot) -> (n0 in n1)) -> (n0 in n1)");
        let p = instantiate_schema("(forall x. P) -> P[s]", ["", "", ""], "x in n2", "u3");
        assert_eq!(p, "(forall x. (x in n2)) -> (u3 in n2)");
    }

    #[test]
    fn generator_is_deterministic_and_bounded() {
        let t = FiniteSpace::sierpinski();
        let mut a = Delta0Generator::new(&t, 7, 3, 3);
        let mut b = Delta0Generator::new(&t, 7, 3, 3);
        assert_eq!(a.params().len(), 16);
        for _ in 0..50 {
            let (f, g) = (a.sentence(), b.sentence());
            assert_eq!(f, g);
            assert!(f.is_delta0() && f.is_closed());
        }
    }

    #[test]
    fn universal_instances_enumerates_tuples() {
        let t = FiniteSpace::sierpinski();
        let u = gen_universe(&t, &[], &UniverseConfig::new(1, &[], 10));
        let f = parse(EQUALITY_AXIOMS[1], &ParamEnv::new()).unwrap();
        assert_eq!(universal_instances(&f, &u).len(), u.len() * u.len());
    }
}
