//! Witness terms for the axioms, built the way their proofs build them, and the
//! instance formulas each witness is supposed to make true.
//!
//! Extensionality and Set Induction have no constructors: their proofs build
//! no terms, so the harness checks those sentences directly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::{EvalContext, ForcingError};
use crate::formulas::{fresh_var, print, Arg, Formula, ParamEnv, Var};
use crate::ground::{subsets_of, GroundError, HFSet};
use crate::terms::{hat, Term, TermError};
use crate::topology::{FiniteSpace, OpenSet, Point};

/// Upper bound on `|χ|^|σ|` for [`exp_term`].
pub const MAX_FUNCTIONS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("formula is not Δ0: {0}")]
    NotDelta0(String),
    #[error("formula has free variables other than {expected:?}: {found:?}")]
    UnexpectedFreeVars { expected: Vec<String>, found: Vec<String> },
    #[error("no homogeneous neighbourhood supplied for point {0}")]
    NotHomogeneous(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("antecedent is not forced on {0}")]
    AntecedentNotForced(String),
    #[error("no witness in the universe for entry {entry} at point {point}")]
    NoWitnessFound { entry: usize, point: String },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
}

impl From<GroundError> for WitnessError {
    fn from(e: GroundError) -> Self {
        match e {
            GroundError::BudgetExceeded(m) => WitnessError::BudgetExceeded(m),
            GroundError::Term(t) => WitnessError::Term(t),
            other => WitnessError::Forcing(ForcingError::Ground(other)),
        }
    }
}

/// A witness together with the instance it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub axiom: String,
    pub inputs: Vec<String>,
    pub witness: String,
    pub formula: String,
    pub tv: Vec<String>,
    pub forced: bool,
    pub universe: String,
}

impl WitnessReport {
    /// Evaluates `instance` afresh in `ctx`. `env` names the parameters for printing.
    pub fn check(
        ctx: &EvalContext,
        axiom: &str,
        inputs: &[&Term],
        witness: &Term,
        instance: &Formula,
        env: &ParamEnv,
    ) -> WitnessReport {
        let space = ctx.space();
        let tv = ctx.tv(instance);
        WitnessReport {
            axiom: axiom.to_string(),
            inputs: inputs.iter().map(|t| t.render(space)).collect(),
            witness: witness.render(space),
            formula: print(instance, env),
            tv: space.names(tv),
            forced: tv == space.full(),
            universe: ctx.universe().id().to_string(),
        }
    }
}

fn expect_free(phi: &Formula, vars: &[&Var]) -> Result<(), WitnessError> {
    let free = phi.free_vars();
    if free.iter().all(|v| vars.contains(&v)) {
        Ok(())
    } else {
        Err(WitnessError::UnexpectedFreeVars {
            expected: vars.iter().map(|v| v.to_string()).collect(),
            found: free.iter().map(|v| v.to_string()).collect(),
        })
    }
}

fn avoid(phi: &Formula, base: &str) -> Var {
    let vars = phi.all_vars();
    fresh_var(base, |v| vars.contains(v))
}

// ---- Pairing ----

/// `{⟨σ, T⟩, ⟨τ, T⟩}`.
pub fn pair_term(space: &FiniteSpace, sigma: &Term, tau: &Term) -> Term {
    Term::pair(space, sigma, tau)
}

/// `σ ∈ w ∧ τ ∈ w`.
pub fn pairing_instance(sigma: &Term, tau: &Term, w: &Term) -> Formula {
    Formula::and(Formula::mem(sigma, w), Formula::mem(tau, w))
}

// ---- Union ----

/// The union of the four families of entries in the Union proof.
pub fn union_term(sigma: &Term) -> Term {
    let mut open = Vec::new();
    let mut point = Vec::new();
    for (si, ji) in sigma.open_entries() {
        // ⟨τ, J ∩ J_i⟩ for ⟨τ, J⟩ ∈ σ_i, ⟨σ_i, J_i⟩ ∈ σ
        for (t, j) in si.open_entries() {
            open.push((t.clone(), j.intersection(*ji)));
        }
        // ⟨τ, r⟩ for ⟨τ, r⟩ ∈ σ_i, r ∈ K, ⟨σ_i, K⟩ ∈ σ
        for (t, r) in si.point_entries() {
            if ji.contains(*r) {
                point.push((t.clone(), *r));
            }
        }
    }
    for (si, r) in sigma.point_entries() {
        // ⟨τ, r⟩ for ⟨τ, r⟩ ∈ σ_i, ⟨σ_i, r⟩ ∈ σ
        for (t, q) in si.point_entries() {
            if q == r {
                point.push((t.clone(), *r));
            }
        }
        // ⟨τ, r⟩ for ⟨τ, K⟩ ∈ σ_i, r ∈ K, ⟨σ_i, r⟩ ∈ σ
        for (t, k) in si.open_entries() {
            if k.contains(*r) {
                point.push((t.clone(), *r));
            }
        }
    }
    Term::new(open, point)
}

/// `∀z (z ∈ w ↔ ∃y ∈ σ. z ∈ y)`.
pub fn union_instance(sigma: &Term, w: &Term) -> Formula {
    Formula::forall(
        "z",
        Formula::iff(
            Formula::mem(Arg::var("z"), w),
            Formula::exists_in("y", sigma, Formula::mem(Arg::var("z"), Arg::var("y"))),
        ),
    )
}

// ---- Separation ----

/// Bounded Separation witness for `{x ∈ σ | φ(x)}`.
///
/// Open part: `⟨σ_i, J_i ∩ J ∩ tv(φ(σ_i))⟩`, i.e. every open inside `J` that
/// forces `φ(σ_i)` contributes. Point part: `⟨x̂, r⟩` for `⟨x̂, T⟩ ∈ σ^r` with
/// `T ⊩ φ^r(x̂)`.
pub fn sep_term(ctx: &EvalContext, sigma: &Term, x: &Var, phi: &Formula, j: OpenSet) -> Result<Term, WitnessError> {
    if !phi.is_delta0() {
        return Err(WitnessError::NotDelta0(phi.to_string()));
    }
    expect_free(phi, &[x])?;
    let full = ctx.space().full();
    Ok(separation_term(ctx, sigma, x, phi, j, |_| full))
}

/// Full Separation witness: as [`sep_term`], but the point part at `r` is gated
/// by `K(r) ⊩ φ^r(x̂)`, where `K(r)` must be a homogeneous open containing `r`.
pub fn full_sep_term(
    ctx: &EvalContext,
    sigma: &Term,
    x: &Var,
    phi: &Formula,
    k: &dyn Fn(Point) -> Option<OpenSet>,
) -> Result<Term, WitnessError> {
    expect_free(phi, &[x])?;
    let space = ctx.space();
    let mut gate = Vec::with_capacity(space.len());
    for r in space.points() {
        let ok = k(r).filter(|u| {
            u.contains(r) && space.is_open(*u) && space.is_homogeneous(*u).unwrap_or(false)
        });
        match ok {
            Some(u) => gate.push(u),
            None => return Err(WitnessError::NotHomogeneous(space.label(r).to_string())),
        }
    }
    Ok(separation_term(ctx, sigma, x, phi, space.full(), |r| gate[r.index()]))
}

/// The same construction with an arbitrary gate and no homogeneity check; used
/// to exhibit failures on spaces that are not locally homogeneous.
pub fn full_sep_term_unchecked(
    ctx: &EvalContext,
    sigma: &Term,
    x: &Var,
    phi: &Formula,
    k: &dyn Fn(Point) -> OpenSet,
) -> Result<Term, WitnessError> {
    expect_free(phi, &[x])?;
    Ok(separation_term(ctx, sigma, x, phi, ctx.space().full(), k))
}

fn separation_term(
    ctx: &EvalContext,
    sigma: &Term,
    x: &Var,
    phi: &Formula,
    j: OpenSet,
    gate: impl Fn(Point) -> OpenSet,
) -> Term {
    let open = sigma
        .open_entries()
        .iter()
        .map(|(si, ji)| (si.clone(), ji.intersection(j).intersection(ctx.tv(&phi.subst(x, si)))))
        .filter(|(_, o)| !o.is_empty());
    let mut point = Vec::new();
    for r in ctx.space().points() {
        let settled = ctx.settle(sigma, r);
        let phi_r = ctx.settle_formula(phi, r);
        for (xh, _) in settled.open_entries() {
            if gate(r).is_subset(ctx.tv(&phi_r.subst(x, xh))) {
                point.push((xh.clone(), r));
            }
        }
    }
    Term::new(open.collect::<Vec<_>>(), point)
}

/// `∀z (z ∈ τ ↔ z ∈ σ ∧ φ(z))`.
pub fn separation_instance(sigma: &Term, x: &Var, phi: &Formula, tau: &Term) -> Formula {
    let z = avoid(phi, "z");
    let zf = Arg::Var(z.clone());
    Formula::forall(
        z.clone(),
        Formula::iff(Formula::mem(zf.clone(), tau), Formula::and(Formula::mem(zf, sigma), phi.rename_free(x, &z))),
    )
}

// ---- Eventual Power Set ----

/// `{⟨x̂, r⟩ | σ^r = ŝ, x ⊆ s}`.
pub fn eps_term(space: &FiniteSpace, sigma: &Term) -> Result<Term, WitnessError> {
    let mut point = Vec::new();
    for r in space.points() {
        let s = sigma.settle(space, r).check(space)?;
        for x in subsets_of(&s)? {
            point.push((hat(space, &x), r));
        }
    }
    Ok(Term::new([], point))
}

/// `∀Y (Y ⊆ σ → ¬∀Z (Z ∈ C → Y ≠ Z))`.
pub fn eps_instance(sigma: &Term, c: &Term) -> Formula {
    let (y, z) = (Arg::var("Y"), Arg::var("Z"));
    Formula::forall(
        "Y",
        Formula::imp(
            Formula::sub(y.clone(), sigma),
            Formula::not(Formula::forall("Z", Formula::imp(Formula::mem(z.clone(), c), Formula::neq(y, z)))),
        ),
    )
}

// ---- Collection ----

/// `∀x ∈ σ ∃y φ(x, y)`.
pub fn collection_antecedent(sigma: &Term, x: &Var, y: &Var, phi: &Formula) -> Formula {
    Formula::forall_in(x.clone(), sigma, Formula::exists(y.clone(), phi.clone()))
}

/// Bounding set for `φ` over `σ` on `J`, where `J ⊩ ∀x ∈ σ ∃y φ(x, y)`.
///
/// Open part: for each entry `⟨σ_i, J_i⟩` and `r ∈ J_i ∩ J`, the first `τ` in
/// the universe with `r ∈ tv(φ(σ_i, τ))`, tagged with `J_i ∩ J ∩ tv(φ(σ_i, τ))`.
/// Point part: for each `r`, `⟨x̂, T⟩ ∈ σ^r` and `s`, the settled `τ^s` of the
/// first `τ` with `s ∈ tv(φ^r(x̂, τ))`, tagged with `r`.
pub fn collection_bound(
    ctx: &EvalContext,
    sigma: &Term,
    x: &Var,
    y: &Var,
    phi: &Formula,
    j: OpenSet,
) -> Result<Term, WitnessError> {
    expect_free(phi, &[x, y])?;
    let space = ctx.space();
    let antecedent = collection_antecedent(sigma, x, y, phi);
    if !j.is_subset(ctx.tv(&antecedent)) {
        return Err(WitnessError::AntecedentNotForced(space.show(j)));
    }
    let universe = ctx.universe().terms();
    let mut open = Vec::new();
    for (i, (si, ji)) in sigma.open_entries().iter().enumerate() {
        let phi_i = phi.subst(x, si);
        for r in ji.intersection(j).points() {
            let found = universe.iter().find_map(|tau| {
                let v = ctx.tv(&phi_i.subst(y, tau));
                v.contains(r).then(|| (tau.clone(), ji.intersection(j).intersection(v)))
            });
            match found {
                Some(entry) => open.push(entry),
                None => {
                    return Err(WitnessError::NoWitnessFound { entry: i, point: space.label(r).to_string() })
                }
            }
        }
    }
    let mut point = Vec::new();
    for r in space.points() {
        let phi_r = ctx.settle_formula(phi, r);
        for (xh, _) in ctx.settle(sigma, r).open_entries() {
            let phi_rx = phi_r.subst(x, xh);
            for s in space.points() {
                if let Some(tau) = universe.iter().find(|tau| ctx.tv(&phi_rx.subst(y, tau)).contains(s)) {
                    point.push((ctx.settle(tau, s), r));
                }
            }
        }
    }
    Ok(Term::new(open, point))
}

/// `(∀x ∈ σ ∃y φ) → ∀x ∈ σ ∃y ∈ w φ`.
pub fn collection_instance(sigma: &Term, x: &Var, y: &Var, phi: &Formula, w: &Term) -> Formula {
    Formula::imp(
        collection_antecedent(sigma, x, y, phi),
        Formula::forall_in(x.clone(), sigma, Formula::exists_in(y.clone(), w, phi.clone())),
    )
}

// ---- Replacement ----

/// `∀x ∈ σ ∃y (φ(x, y) ∧ ∀y' (φ(x, y') → y' = y))`.
pub fn replacement_antecedent(sigma: &Term, x: &Var, y: &Var, phi: &Formula) -> Formula {
    let y2 = avoid(phi, &format!("{y}'"));
    let unique = Formula::forall(
        y2.clone(),
        Formula::imp(phi.rename_free(y, &y2), Formula::eq(Arg::Var(y2), Arg::Var(y.clone()))),
    );
    Formula::forall_in(x.clone(), sigma, Formula::exists(y.clone(), Formula::and(phi.clone(), unique)))
}

/// Image of `σ` under a functional `φ`, following the Replacement sketch.
///
/// Open part: `⟨τ, tv(σ_i ∈ σ ∧ φ(σ_i, τ))⟩` for entries `σ_i` and `τ` in the
/// universe. Point part: `⟨τ^r, r⟩` for `⟨x̂, T⟩ ∈ σ^r` and the first `τ` with
/// `r ∈ tv(φ^r(x̂, τ))`.
pub fn replacement_term(ctx: &EvalContext, sigma: &Term, x: &Var, y: &Var, phi: &Formula) -> Result<Term, WitnessError> {
    expect_free(phi, &[x, y])?;
    let universe = ctx.universe().terms();
    let mut open = Vec::new();
    for (si, _) in sigma.open_entries() {
        let member = Formula::mem(si, sigma);
        let phi_i = phi.subst(x, si);
        for tau in universe {
            let v = ctx.tv(&Formula::and(member.clone(), phi_i.subst(y, tau)));
            if !v.is_empty() {
                open.push((tau.clone(), v));
            }
        }
    }
    let mut point = Vec::new();
    for r in ctx.space().points() {
        let phi_r = ctx.settle_formula(phi, r);
        for (xh, _) in ctx.settle(sigma, r).open_entries() {
            let phi_rx = phi_r.subst(x, xh);
            if let Some(tau) = universe.iter().find(|tau| ctx.tv(&phi_rx.subst(y, tau)).contains(r)) {
                point.push((ctx.settle(tau, r), r));
            }
        }
    }
    Ok(Term::new(open, point))
}

/// `A → ∀z (z ∈ w ↔ ∃x ∈ σ φ(x, z))` with `A` the functionality antecedent.
pub fn replacement_instance(sigma: &Term, x: &Var, y: &Var, phi: &Formula, w: &Term) -> Formula {
    let z = avoid(phi, "z");
    Formula::imp(
        replacement_antecedent(sigma, x, y, phi),
        Formula::forall(
            z.clone(),
            Formula::iff(
                Formula::mem(Arg::Var(z.clone()), w),
                Formula::exists_in(x.clone(), sigma, phi.rename_free(y, &z)),
            ),
        ),
    )
}

// ---- Exponentiation ----

/// All functions from `a` to `b`, as sets of Kuratowski pairs.
pub fn classical_functions(a: &HFSet, b: &HFSet) -> Result<Vec<HFSet>, WitnessError> {
    let count = (b.len() as f64).powi(a.len() as i32);
    if count > MAX_FUNCTIONS as f64 {
        return Err(WitnessError::BudgetExceeded(format!("{count} functions > {MAX_FUNCTIONS}")));
    }
    let mut out: Vec<Vec<HFSet>> = vec![Vec::new()];
    for x in a.elements() {
        out = out
            .into_iter()
            .flat_map(|f| {
                b.elements().iter().map(move |y| {
                    let mut g = f.clone();
                    g.push(HFSet::ordered_pair(x, y));
                    g
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(HFSet::from_elements).collect())
}

/// "`z` is a function from `a` to `b`" for ground `a`, `b`, with the bounded
/// quantifiers over `a` and `b` unfolded into finite conjunctions and
/// disjunctions over the hats of their elements.
pub fn fun_formula(space: &FiniteSpace, a: &HFSet, b: &HFSet, z: &Var) -> Formula {
    let zf = Arg::Var(z.clone());
    let pair = |x: &HFSet, y: &HFSet| hat(space, &HFSet::ordered_pair(x, y));
    let p = fresh_var("p", |v| v == z);
    let all_pairs: Vec<Term> = a.elements().iter().flat_map(|x| b.elements().iter().map(move |y| pair(x, y))).collect();
    let graph = Formula::forall_in(
        p.clone(),
        zf.clone(),
        Formula::or_all(all_pairs.iter().map(|t| Formula::eq(Arg::Var(p.clone()), t))),
    );
    let total = Formula::and_all(
        a.elements().iter().map(|x| Formula::or_all(b.elements().iter().map(|y| Formula::mem(pair(x, y), zf.clone())))),
    );
    let single = Formula::and_all(a.elements().iter().flat_map(|x| {
        let zf = zf.clone();
        let ys = b.elements();
        (0..ys.len()).flat_map(move |i| {
            let zf = zf.clone();
            (i + 1..ys.len()).map(move |k| {
                Formula::not(Formula::and(
                    Formula::mem(pair(x, &ys[i]), zf.clone()),
                    Formula::mem(pair(x, &ys[k]), zf.clone()),
                ))
            })
        })
    }));
    Formula::and(graph, Formula::and(total, single))
}

/// Function-space witness for ground `σ`, `χ`: `⟨ρ, tv(Fun(ρ))⟩` for `ρ` in the
/// universe, plus `⟨f̂, r⟩` for every classical function `f: σ^r → χ^r`.
pub fn exp_term(ctx: &EvalContext, sigma: &Term, chi: &Term) -> Result<Term, WitnessError> {
    let space = ctx.space();
    let (a, b) = (sigma.check(space)?, chi.check(space)?);
    let z = Var::new("z");
    let fun = fun_formula(space, &a, &b, &z);
    let open: Vec<(Term, OpenSet)> = ctx
        .universe()
        .terms()
        .iter()
        .map(|rho| (rho.clone(), ctx.tv(&fun.subst(&z, rho))))
        .filter(|(_, o)| !o.is_empty())
        .collect();
    let mut point = Vec::new();
    for r in space.points() {
        let (ar, br) = (ctx.settle(sigma, r).check(space)?, ctx.settle(chi, r).check(space)?);
        for f in classical_functions(&ar, &br)? {
            point.push((hat(space, &f), r));
        }
    }
    Ok(Term::new(open, point))
}

/// `∀z (z ∈ τ ↔ Fun(z))`.
pub fn exp_instance(space: &FiniteSpace, sigma: &Term, chi: &Term, tau: &Term) -> Result<Formula, WitnessError> {
    let (a, b) = (sigma.check(space)?, chi.check(space)?);
    let z = Var::new("z");
    Ok(Formula::forall(
        z.clone(),
        Formula::iff(Formula::mem(Arg::Var(z.clone()), tau), fun_formula(space, &a, &b, &z)),
    ))
}

/// Universe seeds for exponentiation checks: the classical functions, and
/// functions glued from two classical ones over an open `O` and the interior
/// of its complement.
pub fn exp_seeds(space: &FiniteSpace, a: &HFSet, b: &HFSet, max_glued: usize) -> Result<Vec<Term>, WitnessError> {
    let funcs = classical_functions(a, b)?;
    let mut out: Vec<Term> = funcs.iter().map(|f| hat(space, f)).collect();
    let full = space.full();
    let mut glued = BTreeSet::new();
    'outer: for &o in space.opens() {
        if o.is_empty() || o == full {
            continue;
        }
        let rest = space.interior(full.difference(o)).expect("subset of the space");
        for f in &funcs {
            for g in &funcs {
                if f == g {
                    continue;
                }
                if glued.len() >= max_glued {
                    break 'outer;
                }
                let entries = f
                    .elements()
                    .iter()
                    .map(|p| (hat(space, p), o))
                    .chain(g.elements().iter().map(|p| (hat(space, p), rest)))
                    .filter(|(_, e)| !e.is_empty());
                glued.insert(Term::new(entries.collect::<Vec<_>>(), []));
            }
        }
    }
    out.extend(glued);
    Ok(out)
}
