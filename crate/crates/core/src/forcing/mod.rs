//! The forcing relation `J ⊩ φ` over a finite space, relative to an explicit
//! term universe.
//!
//! Two evaluators are provided. [`EvalContext::forces`] follows the clause
//! definitions literally, searching the lattice of opens. [`EvalContext::tv`]
//! computes the largest open forcing a formula from lattice equations. The two
//! are independent and are expected to agree: `forces(J, φ) ⇔ J ⊆ tv(φ)`.

mod literal;
mod truth;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{Arg, Formula};
use crate::ground::{eval_classical, ClassicalEnv, GroundError};
use crate::terms::{settle_cached, Term, TermUniverse};
use crate::topology::{FiniteSpace, OpenSet, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("formula is not closed: free variables {0:?}")]
    NotClosed(Vec<String>),
    #[error("formula is not Δ0: {0}")]
    NotDelta0(String),
    #[error("parameter is not a ground term: {0}")]
    NotGroundParams(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{0} is not an open set of the space")]
    NotOpen(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// Outcome of a forcing question, tagged with the universe it depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: bool,
    pub relative_to: String,
    /// False when no quantifier was evaluated, i.e. the answer is exact.
    pub quantifier_touched: bool,
}

/// A memo table that tolerates concurrent readers and duplicate writers.
struct Memo<K, V>(Mutex<HashMap<K, V>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }

    fn get(&self, k: &K) -> Option<V> {
        self.0.lock().expect("memo poisoned").get(k).cloned()
    }

    fn put(&self, k: K, v: V) -> V {
        self.0.lock().expect("memo poisoned").entry(k).or_insert(v).clone()
    }

    fn len(&self) -> usize {
        self.0.lock().expect("memo poisoned").len()
    }
}

#[derive(Default, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub settled_terms: usize,
    pub settled_formulas: usize,
    pub desugared: usize,
    pub tv: usize,
    pub tv_atoms: usize,
    pub forces: usize,
    pub forces_atoms: usize,
}

/// A space, a quantifier domain, and memo tables for both evaluators.
pub struct EvalContext {
    space: FiniteSpace,
    universe: TermUniverse,
    settle_term: Memo<(Term, Point), Term>,
    settle_formula: Memo<(Formula, Point), Formula>,
    desugar: Memo<Formula, Formula>,
    tv: Memo<Formula, OpenSet>,
    tv_eq: Memo<(Term, Term), OpenSet>,
    tv_mem: Memo<(Term, Term), OpenSet>,
    forces: Memo<(Formula, OpenSet), bool>,
    forces_eq: Memo<(Term, Term, OpenSet), bool>,
    forces_mem: Memo<(Term, Term, OpenSet), bool>,
}

impl EvalContext {
    pub fn new(space: FiniteSpace, universe: TermUniverse) -> EvalContext {
        EvalContext {
            space,
            universe,
            settle_term: Memo::new(),
            settle_formula: Memo::new(),
            desugar: Memo::new(),
            tv: Memo::new(),
            tv_eq: Memo::new(),
            tv_mem: Memo::new(),
            forces: Memo::new(),
            forces_eq: Memo::new(),
            forces_mem: Memo::new(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn universe(&self) -> &TermUniverse {
        &self.universe
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            settled_terms: self.settle_term.len(),
            settled_formulas: self.settle_formula.len(),
            desugared: self.desugar.len(),
            tv: self.tv.len(),
            tv_atoms: self.tv_eq.len() + self.tv_mem.len(),
            forces: self.forces.len(),
            forces_atoms: self.forces_eq.len() + self.forces_mem.len(),
        }
    }

    /// `σ^r`, memoised.
    pub fn settle(&self, sigma: &Term, r: Point) -> Term {
        let key = (sigma.clone(), r);
        if let Some(t) = self.settle_term.get(&key) {
            return t;
        }
        let mut local = HashMap::new();
        let out = settle_cached(sigma, self.space.full(), r, &mut local);
        self.settle_term.put(key, out)
    }

    /// `φ^r`, memoised.
    pub fn settle_formula(&self, phi: &Formula, r: Point) -> Formula {
        if !phi.has_params() {
            return phi.clone();
        }
        let key = (phi.clone(), r);
        if let Some(f) = self.settle_formula.get(&key) {
            return f;
        }
        let out = phi.map_params(&mut |t| self.settle(t, r));
        self.settle_formula.put(key, out)
    }

    fn core(&self, phi: &Formula) -> Formula {
        if phi.is_core() {
            return phi.clone();
        }
        if let Some(f) = self.desugar.get(phi) {
            return f;
        }
        self.desugar.put(phi.clone(), phi.desugar())
    }

    fn ensure_closed(phi: &Formula) -> Result<(), ForcingError> {
        let free = phi.free_vars();
        if free.is_empty() {
            Ok(())
        } else {
            Err(ForcingError::NotClosed(free.iter().map(|v| v.to_string()).collect()))
        }
    }

    /// The largest open forcing `φ`.
    ///
    /// # Panics
    /// If `φ` has free variables; see [`EvalContext::try_tv`].
    pub fn tv(&self, phi: &Formula) -> OpenSet {
        self.try_tv(phi).unwrap_or_else(|e| panic!("tv: {e}"))
    }

    pub fn try_tv(&self, phi: &Formula) -> Result<OpenSet, ForcingError> {
        Self::ensure_closed(phi)?;
        Ok(self.tv_core(&self.core(phi)))
    }

    /// `tv(φ) = T`, as a verdict.
    pub fn valid(&self, phi: &Formula) -> Verdict {
        self.verdict(self.tv(phi) == self.space.full(), phi)
    }

    /// Literal `J ⊩ φ`.
    ///
    /// # Panics
    /// If `φ` has free variables or `J` is not open; see [`EvalContext::try_forces`].
    pub fn forces(&self, j: OpenSet, phi: &Formula) -> Verdict {
        self.try_forces(j, phi).unwrap_or_else(|e| panic!("forces: {e}"))
    }

    pub fn try_forces(&self, j: OpenSet, phi: &Formula) -> Result<Verdict, ForcingError> {
        Self::ensure_closed(phi)?;
        if !self.space.is_open(j) {
            return Err(ForcingError::NotOpen(self.space.show(j)));
        }
        let value = self.forces_core(j, &self.core(phi));
        Ok(self.verdict(value, phi))
    }

    fn verdict(&self, value: bool, phi: &Formula) -> Verdict {
        Verdict { value, relative_to: self.universe.id().to_string(), quantifier_touched: phi.has_quantifier() }
    }

    /// For a Δ0 sentence with ground parameters: `tv(φ) ∈ {∅, T}` and
    /// `tv(φ) = T` exactly when the classical reading holds.
    pub fn check_delta0_absoluteness(&self, phi: &Formula) -> Result<bool, ForcingError> {
        if !phi.is_delta0() {
            return Err(ForcingError::NotDelta0(phi.to_string()));
        }
        Self::ensure_closed(phi)?;
        if let Some(t) = phi.params().iter().find(|t| !t.is_ground(&self.space)) {
            return Err(ForcingError::NotGroundParams(t.render(&self.space)));
        }
        let tv = self.tv(phi);
        let classical = eval_classical(&self.space, phi, &ClassicalEnv::new())?;
        let two_valued = tv.is_empty() || tv == self.space.full();
        Ok(two_valued && (tv == self.space.full()) == classical)
    }

    /// Given `J ⊩ φ`, every `r ∈ J` lies in `tv(φ^r)`.
    pub fn settling_reflection(&self, j: OpenSet, phi: &Formula) -> Result<bool, ForcingError> {
        if !self.try_forces(j, phi)?.value {
            return Err(ForcingError::PreconditionFailed(format!(
                "{} does not force {phi}",
                self.space.show(j)
            )));
        }
        Ok(j.points().all(|r| self.tv(&self.settle_formula(phi, r)).contains(r)))
    }

    pub(crate) fn full(&self) -> OpenSet {
        self.space.full()
    }

    /// Largest open inside `s`: the points whose minimal neighbourhood fits.
    pub(crate) fn interior(&self, s: OpenSet) -> OpenSet {
        let nb = self.space.min_nbhds();
        self.space.points().filter(|r| nb[r.index()].is_subset(s)).fold(OpenSet::EMPTY, |acc, r| {
            acc.union(OpenSet(r.bit()))
        })
    }

    pub(crate) fn complement(&self, s: OpenSet) -> OpenSet {
        self.space.full().difference(s)
    }

    /// `σ^r = τ^r`. Settled terms are canonical hats, so structural equality
    /// coincides with equality of the sets they name.
    pub(crate) fn settle_agree(&self, sigma: &Term, tau: &Term, r: Point) -> bool {
        self.settle(sigma, r) == self.settle(tau, r)
    }
}

pub(crate) fn atom_terms<'a>(a: &'a Arg, b: &'a Arg) -> (&'a Term, &'a Term) {
    match (a, b) {
        (Arg::Param(s), Arg::Param(t)) => (s, t),
        _ => unreachable!("closed formulas have only parameter arguments"),
    }
}

#[cfg(test)]
mod tests;
