//! Axiom suites, Example 1, space enumeration and the correlation sweep.

mod enumerate;
pub mod io;
pub mod pools;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::EvalContext;
use crate::formulas::{parse, print, Arg, Formula, ParamEnv, Var};
use crate::ground::{eval_classical, subsets_of, ClassicalEnv, HFSet};
use crate::terms::{gen_universe, hat, Closure, Term, TermUniverse, UniverseConfig};
use crate::topology::{FiniteSpace, OpenSet};
use crate::witnesses::{self, WitnessError};

pub use enumerate::{brute_force_count, enumerate_spaces, space_id, MAX_ENUM_POINTS};
use pools::{parse_open, pool_env, pool_seeds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
}

/// Header note carried by every report that includes Replacement.
pub const REPLACEMENT_NOTE: &str =
    "every finite space is locally connected; a failing Replacement instance is treated as an evaluator bug";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Pairing,
    Union,
    Extensionality,
    SetInduction,
    EventualPowerSet,
    BoundedSeparation,
    Collection,
    FullSeparation,
    Replacement,
    Exponentiation,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Pairing,
        Axiom::Union,
        Axiom::Extensionality,
        Axiom::SetInduction,
        Axiom::EventualPowerSet,
        Axiom::BoundedSeparation,
        Axiom::Collection,
        Axiom::FullSeparation,
        Axiom::Replacement,
        Axiom::Exponentiation,
    ];

    /// The axioms forced over every space.
    pub const MAIN: [Axiom; 7] = [
        Axiom::Pairing,
        Axiom::Union,
        Axiom::Extensionality,
        Axiom::SetInduction,
        Axiom::EventualPowerSet,
        Axiom::BoundedSeparation,
        Axiom::Collection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Pairing => "pairing",
            Axiom::Union => "union",
            Axiom::Extensionality => "extensionality",
            Axiom::SetInduction => "set-induction",
            Axiom::EventualPowerSet => "eventual-power-set",
            Axiom::BoundedSeparation => "bounded-separation",
            Axiom::Collection => "collection",
            Axiom::FullSeparation => "full-separation",
            Axiom::Replacement => "replacement",
            Axiom::Exponentiation => "exponentiation",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Axiom, HarnessError> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Axiom::ALL.into_iter().find(|a| a.name() == key).ok_or_else(|| HarnessError::UnknownAxiom(s.to_string()))
    }
}

/// What a universe was built from, so a pass is never read as absolute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseDescriptor {
    pub id: String,
    pub size: usize,
    pub cap: usize,
    pub truncated: bool,
    pub hat_rank: u32,
    pub close_under: Vec<Closure>,
    pub seeds: usize,
}

impl UniverseDescriptor {
    pub fn new(universe: &TermUniverse, config: &UniverseConfig, seeds: usize) -> UniverseDescriptor {
        UniverseDescriptor {
            id: universe.id().to_string(),
            size: universe.len(),
            cap: universe.cap(),
            truncated: universe.truncated(),
            hat_rank: config.hat_rank,
            close_under: config.close_under.iter().copied().collect(),
            seeds,
        }
    }
}

/// One recorded check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub group: String,
    pub formula: String,
    pub expected: String,
    /// Points of the truth value, in label order; empty for non-formula checks.
    pub tv: Vec<String>,
    pub verdict: bool,
    pub quantifier_touched: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub space: String,
    pub universe: UniverseDescriptor,
    pub notes: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

/// Pass counts for one group of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: String,
    pub passed: usize,
    pub total: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.verdict)
    }

    /// Per-group counts, groups in first-appearance order.
    pub fn summary(&self) -> Vec<GroupSummary> {
        let mut out: Vec<GroupSummary> = Vec::new();
        for c in &self.checks {
            let i = match out.iter().position(|g| g.group == c.group) {
                Some(i) => i,
                None => {
                    out.push(GroupSummary { group: c.group.clone(), passed: 0, total: 0 });
                    out.len() - 1
                }
            };
            out[i].total += 1;
            out[i].passed += c.verdict as usize;
        }
        out
    }

    pub fn group_passed(&self, group: &str) -> bool {
        self.checks.iter().filter(|c| c.group == group).all(|c| c.verdict)
    }

    /// Human-readable rendering: header, per-group counts, then every failure.
    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}\nspace {}\n", self.suite, self.space);
        let u = &self.universe;
        out += &format!(
            "universe {} ({} terms, cap {}{})\n",
            u.id,
            u.size,
            u.cap,
            if u.truncated { ", truncated" } else { "" }
        );
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        for g in self.summary() {
            let mark = if g.passed == g.total { "PASS" } else { "FAIL" };
            out += &format!("{mark} {:<26} {}/{}\n", g.group, g.passed, g.total);
        }
        for c in self.failures() {
            out += &format!("  failed [{}] {} : tv = {{{}}}, expected {}", c.group, c.formula, c.tv.join(", "), c.expected);
            if let Some(n) = &c.note {
                out += &format!(" ({n})");
            }
            out.push('\n');
        }
        out
    }
}

/// Universe generation parameters plus explicit seed terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseSpec {
    pub config: UniverseConfig,
    pub seeds: Vec<Term>,
}

impl UniverseSpec {
    /// The default configuration seeded with the pool terms of `space`.
    pub fn default_for(space: &FiniteSpace) -> UniverseSpec {
        UniverseSpec { config: UniverseConfig::default(), seeds: pool_seeds(space) }
    }

    pub fn with_cap(space: &FiniteSpace, cap: usize) -> UniverseSpec {
        UniverseSpec { config: UniverseConfig { cap, ..UniverseConfig::default() }, seeds: pool_seeds(space) }
    }

    pub fn build(&self, space: &FiniteSpace) -> TermUniverse {
        gen_universe(space, &self.seeds, &self.config)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Record wall-clock time per check. Off by default so reports are reproducible byte for byte.
    pub timings: bool,
}

/// Collects check records against one evaluation context.
pub struct Recorder<'a> {
    ctx: &'a EvalContext,
    env: ParamEnv,
    timings: bool,
    checks: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    /// Names universe members `u0, u1, ...` alongside the pool names.
    pub fn new(ctx: &'a EvalContext, timings: bool) -> Recorder<'a> {
        let mut env = pool_env(ctx.space());
        for (i, t) in ctx.universe().terms().iter().enumerate() {
            env.insert(format!("u{i}"), t.clone());
        }
        Recorder { ctx, env, timings, checks: Vec::new() }
    }

    pub fn env(&self) -> &ParamEnv {
        &self.env
    }

    fn text(&self, phi: &Formula, extra: &[(&str, &Term)]) -> String {
        if extra.is_empty() {
            return print(phi, &self.env);
        }
        let mut env = self.env.clone();
        for (k, t) in extra {
            env.insert((*k).to_string(), (*t).clone());
        }
        print(phi, &env)
    }

    /// Records whether `tv(φ)` satisfies `test`.
    pub fn expect(
        &mut self,
        group: &str,
        phi: &Formula,
        extra: &[(&str, &Term)],
        expected: &str,
        test: impl FnOnce(OpenSet) -> bool,
    ) -> bool {
        let start = Instant::now();
        let (tv, note) = match self.ctx.try_tv(phi) {
            Ok(tv) => (Some(tv), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let verdict = tv.map(test).unwrap_or(false);
        let elapsed = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let record = CheckRecord {
            group: group.to_string(),
            formula: self.text(phi, extra),
            expected: expected.to_string(),
            tv: tv.map(|o| self.ctx.space().names(o)).unwrap_or_default(),
            verdict,
            quantifier_touched: phi.has_quantifier(),
            universe: None,
            note,
            elapsed_ms: elapsed,
        };
        self.checks.push(record);
        verdict
    }

    /// Records `tv(φ) = T`.
    pub fn expect_valid(&mut self, group: &str, phi: &Formula, extra: &[(&str, &Term)]) -> bool {
        let full = self.ctx.space().full();
        self.expect(group, phi, extra, "T", |tv| tv == full)
    }

    /// Records a check that is not a truth-value computation.
    pub fn fact(&mut self, group: &str, description: &str, verdict: bool, note: Option<String>) -> bool {
        self.checks.push(CheckRecord {
            group: group.to_string(),
            formula: description.to_string(),
            expected: "true".to_string(),
            tv: Vec::new(),
            verdict,
            quantifier_touched: false,
            universe: None,
            note,
            elapsed_ms: None,
        });
        verdict
    }

    /// Records a construction error as a failed check.
    pub fn error(&mut self, group: &str, description: &str, err: &WitnessError) {
        self.fact(group, description, false, Some(err.to_string()));
    }

    /// Marks every record added after `from` as relative to `universe`.
    fn tag_universe(&mut self, from: usize, universe: &str) {
        for c in &mut self.checks[from..] {
            c.universe = Some(universe.to_string());
        }
    }

    pub fn into_checks(self) -> Vec<CheckRecord> {
        self.checks
    }
}

fn settled_check(ctx: &EvalContext, t: &Term, r: crate::topology::Point) -> HFSet {
    ctx.settle(t, r).check(ctx.space()).expect("settled terms are ground")
}

/// Runs the selected axiom suites on `space` with one universe.
pub fn run_axiom_suite(space: &FiniteSpace, spec: &UniverseSpec, selection: &[Axiom], options: &SuiteOptions) -> SuiteReport {
    let universe = spec.build(space);
    let descriptor = UniverseDescriptor::new(&universe, &spec.config, spec.seeds.len());
    let ctx = EvalContext::new(space.clone(), universe);
    let mut rec = Recorder::new(&ctx, options.timings);
    let mut notes = vec![format!("verdicts are relative to universe {}", descriptor.id)];
    let mut selection = selection.to_vec();
    selection.sort();
    selection.dedup();
    for axiom in &selection {
        match axiom {
            Axiom::Pairing => pairing(&mut rec),
            Axiom::Union => union(&mut rec),
            Axiom::Extensionality => extensionality(&mut rec),
            Axiom::SetInduction => set_induction(&mut rec),
            Axiom::EventualPowerSet => eventual_power_set(&mut rec),
            Axiom::BoundedSeparation => bounded_separation(&mut rec),
            Axiom::Collection => collection(&mut rec),
            Axiom::FullSeparation => full_separation(&mut rec, &mut notes),
            Axiom::Replacement => {
                notes.push(REPLACEMENT_NOTE.to_string());
                replacement(&mut rec)
            }
            Axiom::Exponentiation => {
                notes.push("exponentiation instances use their own universes, named per check".to_string());
                exponentiation(&mut rec, options.timings)
            }
        }
    }
    SuiteReport {
        suite: format!("axioms[{}]", selection.iter().map(|a| a.name()).collect::<Vec<_>>().join(",")),
        space: space_id(space),
        universe: descriptor,
        notes,
        checks: rec.into_checks(),
    }
}

fn pairing(rec: &mut Recorder) {
    let ctx = rec.ctx;
    let u = ctx.universe().terms();
    for (i, s) in u.iter().enumerate() {
        for t in &u[i..] {
            let w = witnesses::pair_term(ctx.space(), s, t);
            let ok = rec.expect_valid("pairing", &witnesses::pairing_instance(s, t, &w), &[("w", &w)]);
            if ok {
                let oracle = ctx.space().points().all(|r| {
                    settled_check(ctx, &w, r) == HFSet::pair(&settled_check(ctx, s, r), &settled_check(ctx, t, r))
                });
                if !oracle {
                    rec.fact("pairing-oracle", &format!("{} = pair", w.render(ctx.space())), false, None);
                }
            }
        }
    }
}

fn union(rec: &mut Recorder) {
    let ctx = rec.ctx;
    for s in ctx.universe().terms() {
        let w = witnesses::union_term(s);
        rec.expect_valid("union", &witnesses::union_instance(s, &w), &[("w", &w)]);
        let oracle = ctx.space().points().all(|r| settled_check(ctx, &w, r) == settled_check(ctx, s, r).union_all());
        rec.fact("union-oracle", &format!("(⋃ {})^r = ⋃ ({})^r", s.render(ctx.space()), s.render(ctx.space())), oracle, None);
    }
}

/// `∀x ∀y (∀z (z ∈ x ↔ z ∈ y) → x = y)`.
pub const EXTENSIONALITY: &str = "forall x. forall y. ((forall z. (z in x <-> z in y)) -> x = y)";

fn extensionality(rec: &mut Recorder) {
    let phi = parse(EXTENSIONALITY, &ParamEnv::new()).expect("fixed sentence");
    rec.expect_valid("extensionality", &phi, &[]);
}

/// `(∀x ((∀y ∈ x P(y)) → P(x))) → ∀x P(x)`.
pub fn set_induction_instance(p: &Formula, x: &Var) -> Formula {
    let y = crate::formulas::fresh_var("y", |v| p.all_vars().contains(v) || v == x);
    let step = Formula::imp(Formula::forall_in(y.clone(), Arg::Var(x.clone()), p.rename_free(x, &y)), p.clone());
    Formula::imp(Formula::forall(x.clone(), step), Formula::forall(x.clone(), p.clone()))
}

fn set_induction(rec: &mut Recorder) {
    let x = Var::new("x");
    for text in pools::INDUCTION_PREDICATES {
        let p = parse_open(text, &["x"], rec.env());
        rec.expect_valid("set-induction", &set_induction_instance(&p, &x), &[]);
    }
}

fn eventual_power_set(rec: &mut Recorder) {
    let ctx = rec.ctx;
    for s in ctx.universe().terms() {
        let c = match witnesses::eps_term(ctx.space(), s) {
            Ok(c) => c,
            Err(e) => {
                rec.error("eventual-power-set", &s.render(ctx.space()), &e);
                continue;
            }
        };
        rec.expect_valid("eventual-power-set", &witnesses::eps_instance(s, &c), &[("w", &c)]);
        let oracle = ctx.space().points().all(|r| {
            let power = HFSet::from_elements(subsets_of(&settled_check(ctx, s, r)).unwrap_or_default());
            settled_check(ctx, &c, r) == power
        });
        rec.fact("eventual-power-set-oracle", &format!("C({})^r = P(σ^r)", s.render(ctx.space())), oracle, None);
    }
}

fn bounded_separation(rec: &mut Recorder) {
    let ctx = rec.ctx;
    let x = Var::new("x");
    let full = ctx.space().full();
    for text in pools::SEPARATION_PREDICATES {
        let phi = parse_open(text, &["x"], rec.env());
        for s in ctx.universe().terms() {
            let w = match witnesses::sep_term(ctx, s, &x, &phi, full) {
                Ok(w) => w,
                Err(e) => {
                    rec.error("bounded-separation", text, &e);
                    continue;
                }
            };
            rec.expect_valid("bounded-separation", &witnesses::separation_instance(s, &x, &phi, &w), &[("w", &w)]);
            let oracle = ctx.space().points().all(|r| {
                let phi_r = ctx.settle_formula(&phi, r);
                let base = settled_check(ctx, s, r);
                let members = base.elements().iter().filter(|e| {
                    let env: ClassicalEnv = [(x.clone(), (*e).clone())].into_iter().collect();
                    eval_classical(ctx.space(), &phi_r, &env).unwrap_or(false)
                });
                settled_check(ctx, &w, r) == HFSet::from_elements(members.cloned())
            });
            rec.fact(
                "bounded-separation-oracle",
                &format!("{{x in {} | {text}}}^r by comprehension", s.render(ctx.space())),
                oracle,
                None,
            );
        }
    }
}

fn collection(rec: &mut Recorder) {
    let ctx = rec.ctx;
    let (x, y) = (Var::new("x"), Var::new("y"));
    for text in pools::COLLECTION_RELATIONS {
        let phi = parse_open(text, &["x", "y"], rec.env());
        for s in ctx.universe().terms() {
            let j = ctx.tv(&witnesses::collection_antecedent(s, &x, &y, &phi));
            match witnesses::collection_bound(ctx, s, &x, &y, &phi, j) {
                Ok(w) => {
                    rec.expect_valid("collection", &witnesses::collection_instance(s, &x, &y, &phi, &w), &[("w", &w)]);
                }
                Err(e) => rec.error("collection", text, &e),
            }
        }
    }
}

fn full_separation(rec: &mut Recorder, notes: &mut Vec<String>) {
    let ctx = rec.ctx;
    let space = ctx.space();
    let x = Var::new("x");
    let homogeneous = space.is_locally_homogeneous().unwrap_or(false);
    if !homogeneous {
        notes.push("space is not locally homogeneous: full-separation witnesses are gated by minimal neighbourhoods".into());
    }
    let gate = |r| space.homogeneous_nbhd(r).ok().flatten();
    for text in pools::FULL_SEPARATION_PREDICATES {
        let phi = parse_open(text, &["x"], rec.env());
        for s in ctx.universe().terms() {
            let w = if homogeneous {
                witnesses::full_sep_term(ctx, s, &x, &phi, &gate)
            } else {
                witnesses::full_sep_term_unchecked(ctx, s, &x, &phi, &|r| space.min_nbhds()[r.index()])
            };
            match w {
                Ok(w) => {
                    rec.expect_valid("full-separation", &witnesses::separation_instance(s, &x, &phi, &w), &[("w", &w)]);
                }
                Err(e) => rec.error("full-separation", text, &e),
            }
        }
    }
}

fn replacement(rec: &mut Recorder) {
    let ctx = rec.ctx;
    let (x, y) = (Var::new("x"), Var::new("y"));
    for text in pools::REPLACEMENT_RELATIONS {
        let phi = parse_open(text, &["x", "y"], rec.env());
        for s in ctx.universe().terms() {
            match witnesses::replacement_term(ctx, s, &x, &y, &phi) {
                Ok(w) => {
                    rec.expect_valid("replacement", &witnesses::replacement_instance(s, &x, &y, &phi, &w), &[("w", &w)]);
                }
                Err(e) => rec.error("replacement", text, &e),
            }
        }
    }
}

/// Domain and codomain sizes for the exponentiation instances.
pub const EXPONENT_PAIRS: &[(u64, u64)] = &[(0, 2), (1, 2), (2, 1), (2, 2)];

/// Universe for exponentiation over ground `a`, `b`: classical and glued
/// functions, closed under settling and subterms.
pub fn exponent_universe(space: &FiniteSpace, a: &HFSet, b: &HFSet) -> Result<TermUniverse, WitnessError> {
    let mut seeds = vec![hat(space, a), hat(space, b)];
    seeds.extend(witnesses::exp_seeds(space, a, b, 6)?);
    Ok(gen_universe(space, &seeds, &UniverseConfig::new(1, &[Closure::Settle, Closure::Subterms], 64)))
}

fn exponentiation(rec: &mut Recorder, timings: bool) {
    let space = rec.ctx.space();
    for &(m, n) in EXPONENT_PAIRS {
        let (a, b) = (HFSet::nat(m), HFSet::nat(n));
        let (sa, sb) = (hat(space, &a), hat(space, &b));
        let label = format!("{m}^{n}");
        let universe = match exponent_universe(space, &a, &b) {
            Ok(u) => u,
            Err(e) => {
                rec.error("exponentiation", &label, &e);
                continue;
            }
        };
        let id = universe.id().to_string();
        let ctx = EvalContext::new(space.clone(), universe);
        let mut local = Recorder::new(&ctx, timings);
        match witnesses::exp_term(&ctx, &sa, &sb).and_then(|w| Ok((witnesses::exp_instance(space, &sa, &sb, &w)?, w))) {
            Ok((phi, w)) => {
                local.expect_valid("exponentiation", &phi, &[("w", &w)]);
            }
            Err(e) => local.error("exponentiation", &label, &e),
        }
        local.tag_universe(0, &id);
        rec.checks.extend(local.into_checks());
    }
}

/// The default closures plus pairing, capped at 12 terms.
pub fn example1_config() -> UniverseConfig {
    let mut config = UniverseConfig { cap: 12, ..UniverseConfig::default() };
    config.close_under.insert(Closure::Pair);
    config
}

/// The Example 1 space, `σ = {⟨0̂, r⟩}`, and its 12-term universe.
pub fn example1_fixture() -> (FiniteSpace, Term, TermUniverse) {
    let space = FiniteSpace::sierpinski();
    let r = space.point("r").expect("fixture point");
    let sigma = Term::new([], [(Term::empty(), r)]);
    let universe = gen_universe(&space, std::slice::from_ref(&sigma), &example1_config());
    (space, sigma, universe)
}

/// The Example 1 regression:
/// (a) `tv(σ ≠ 1̂ ∨ ¬(σ ≠ 1̂)) = {s}`, so `T` does not force it;
/// (b) `{s}` forces every universe instance of `x ≠ y ∨ ¬(x ≠ y)`, settled
///     clause included, and `{s} ⊩ φ` for the closed sentence;
/// (c) the space is not locally homogeneous;
/// (d) no candidate separates `{x ∈ σ | φ}` over `T`.
pub fn example1_regression() -> SuiteReport {
    let (space, sigma, universe) = example1_fixture();
    let descriptor = UniverseDescriptor::new(&universe, &example1_config(), 1);
    let s_open = space.open(&["s"]).expect("fixture open");
    let s_point = space.point("s").expect("fixture point");
    let ctx = EvalContext::new(space.clone(), universe);
    let mut rec = Recorder::new(&ctx, false);
    let mut env = rec.env().clone();
    env.insert("sigma".into(), sigma.clone());
    rec.env = env.clone();

    let a = parse(pools::EXAMPLE1_NON_VALIDITY, &env).expect("fixed formula");
    rec.expect("a", &a, &[], "{s}", |tv| tv == s_open);
    let forced = ctx.forces(space.full(), &a).value;
    rec.fact("a", "T does not force it (literal evaluator)", !forced, None);

    let phi = parse(pools::EXAMPLE1_PHI, &env).expect("fixed formula");
    let (x, y) = (Var::new("x"), Var::new("y"));
    let crate::formulas::Node::Forall(_, inner) = phi.node() else { unreachable!() };
    let crate::formulas::Node::Forall(_, body) = inner.node() else { unreachable!() };
    for s1 in ctx.universe().terms() {
        for t1 in ctx.universe().terms() {
            let inst = body.subst(&x, s1).subst(&y, t1);
            rec.expect("b", &inst, &[], "⊇ {s}", |tv| s_open.is_subset(tv));
            let settled = ctx.settle_formula(&inst, s_point);
            rec.expect("b", &settled, &[], "⊇ {s}", |tv| s_open.is_subset(tv));
        }
    }
    let lit = ctx.forces(s_open, &phi).value;
    rec.fact("b", "{s} forces phi (literal evaluator)", lit, None);
    rec.expect("b", &phi, &[], "{s}", |tv| tv == s_open);

    let homogeneous = space.is_locally_homogeneous();
    rec.fact("c", "not locally homogeneous", homogeneous == Ok(false), None);

    // Any Z with T ⊩ ∀x (x ∈ Z ↔ x ∈ σ ∧ φ) would make T decide φ.
    let xv = Var::new("x");
    let sep_phi = phi.clone();
    let mut candidates: Vec<Term> = ctx.universe().terms().to_vec();
    let full = space.full();
    for gate in [vec![full, full], space.min_nbhds().to_vec()] {
        if let Ok(w) = witnesses::full_sep_term_unchecked(&ctx, &sigma, &xv, &sep_phi, &|r| gate[r.index()]) {
            candidates.push(w);
        }
    }
    for z in &candidates {
        let inst = witnesses::separation_instance(&sigma, &xv, &sep_phi, z);
        rec.expect("d", &inst, &[("Z", z)], "≠ T", |tv| tv != full);
    }
    let decided = ctx.tv(&phi) == space.full() || ctx.tv(&Formula::not(phi.clone())) == space.full();
    rec.fact("d", "T decides neither phi nor ~phi", !decided, None);

    SuiteReport {
        suite: "example1".into(),
        space: space_id(&space),
        universe: descriptor,
        notes: vec![
            "sigma = {<0^, r>}; phi = forall x. forall y. (~(x = y) \\/ ~~(x = y))".into(),
            "group d expects failure: full separation does not hold on this space".into(),
        ],
        checks: rec.into_checks(),
    }
}

/// One row of the correlation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub space: String,
    pub locally_connected: bool,
    pub locally_homogeneous: bool,
    pub full_separation: bool,
    pub replacement: bool,
    pub exponentiation: bool,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub n: usize,
    pub notes: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Implication violations; any entry is a hard failure.
    pub violations: Vec<String>,
}

impl SweepTable {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("sweep n = {} ({} spaces)\n", self.n, self.rows.len());
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out += &format!(
            "{:<40} {:>4} {:>4} {:>8} {:>11} {:>14}\n",
            "space", "lc", "lh", "full-sep", "replacement", "exponentiation"
        );
        let b = |v: bool| if v { "yes" } else { "no" };
        for r in &self.rows {
            out += &format!(
                "{:<40} {:>4} {:>4} {:>8} {:>11} {:>14}\n",
                r.space,
                b(r.locally_connected),
                b(r.locally_homogeneous),
                b(r.full_separation),
                b(r.replacement),
                b(r.exponentiation)
            );
        }
        for v in &self.violations {
            out += &format!("VIOLATION {v}\n");
        }
        out
    }
}

/// Computes the topological properties and the Full Separation, Replacement
/// and Exponentiation suites for every space on `n` points, in parallel.
pub fn correlation_sweep(n: usize, config: &UniverseConfig) -> Result<SweepTable, HarnessError> {
    let spaces = enumerate_spaces(n)?;
    let selection = [Axiom::FullSeparation, Axiom::Replacement, Axiom::Exponentiation];
    let rows: Vec<(SweepRow, Vec<String>)> = spaces
        .par_iter()
        .map(|space| {
            let spec = UniverseSpec { config: config.clone(), seeds: pool_seeds(space) };
            let report = run_axiom_suite(space, &spec, &selection, &SuiteOptions::default());
            let row = SweepRow {
                space: space_id(space),
                locally_connected: space.is_locally_connected(),
                locally_homogeneous: space.is_locally_homogeneous().unwrap_or(false),
                full_separation: report.group_passed("full-separation"),
                replacement: report.group_passed("replacement"),
                exponentiation: report.group_passed("exponentiation"),
                checks: report.checks.len(),
                failures: report.failures().count(),
            };
            let mut violations = Vec::new();
            if !row.locally_connected {
                violations.push(format!("{}: not locally connected", row.space));
            }
            if !row.replacement {
                violations.push(format!("{}: replacement instance failed", row.space));
            }
            if !row.exponentiation {
                violations.push(format!("{}: exponentiation instance failed", row.space));
            }
            if row.locally_homogeneous && !row.full_separation {
                violations.push(format!("{}: locally homogeneous but full separation failed", row.space));
            }
            (row, violations)
        })
        .collect();
    let mut table = SweepTable { n, notes: vec![REPLACEMENT_NOTE.to_string()], rows: Vec::new(), violations: Vec::new() };
    for (row, v) in rows {
        table.rows.push(row);
        table.violations.extend(v);
    }
    Ok(table)
}

#[cfg(test)]
mod tests;
