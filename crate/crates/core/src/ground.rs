//! Hereditarily finite sets: the desk-scale ground model, plus a classical
//! evaluator for bounded formulas used as the absoluteness oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{Arg, Formula, Node, Var};
use crate::terms::TermError;
use crate::topology::FiniteSpace;

/// Largest `k` accepted by [`all_hf_up_to_rank`]; rank ≤ 4 already has 65536 sets.
pub const MAX_ENUM_RANK: u32 = 4;

/// Default cardinality bound for [`subsets_of`].
pub const DEFAULT_SUBSET_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("formula is not bounded (Δ0): {0}")]
    NotDelta0(String),
    #[error("unbound variable `{0}`")]
    UnboundParameter(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A hereditarily finite set in canonical form: elements sorted and distinct,
/// hereditarily. Structural equality is extensional equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HFSet(Arc<Vec<HFSet>>);

impl HFSet {
    pub fn empty() -> HFSet {
        HFSet::default()
    }

    /// Builds a set from arbitrary (possibly repeated, unordered) elements.
    pub fn from_elements<I: IntoIterator<Item = HFSet>>(elements: I) -> HFSet {
        let mut v: Vec<HFSet> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        HFSet(Arc::new(v))
    }

    /// Von Neumann numeral: `0 = ∅`, `n + 1 = n ∪ {n}`.
    pub fn nat(n: u64) -> HFSet {
        let mut elems = Vec::new();
        for _ in 0..n {
            let next = HFSet::from_elements(elems.iter().cloned());
            elems.push(next);
        }
        HFSet::from_elements(elems)
    }

    pub fn elements(&self) -> &[HFSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HFSet) -> bool {
        self.0.iter().all(|x| other.contains(x))
    }

    /// `rank(∅) = 0`, `rank(x) = 1 + max rank of the elements`.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|x| x.rank() + 1).max().unwrap_or(0)
    }

    /// `⋃x`.
    pub fn union_all(&self) -> HFSet {
        HFSet::from_elements(self.0.iter().flat_map(|y| y.0.iter().cloned()))
    }

    /// `{a, b}`.
    pub fn pair(a: &HFSet, b: &HFSet) -> HFSet {
        HFSet::from_elements([a.clone(), b.clone()])
    }

    /// Kuratowski ordered pair `{{a}, {a, b}}`.
    pub fn ordered_pair(a: &HFSet, b: &HFSet) -> HFSet {
        HFSet::pair(&HFSet::from_elements([a.clone()]), &HFSet::pair(a, b))
    }

    /// The numeral this set encodes, if it is one.
    pub fn as_nat(&self) -> Option<u64> {
        let n = self.len() as u64;
        (*self == HFSet::nat(n)).then_some(n)
    }

    /// Nested-array literal, e.g. `[[],[[]]]` for 2.
    pub fn to_literal(&self) -> HfLiteral {
        HfLiteral::List(self.0.iter().map(HFSet::to_literal).collect())
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_nat() {
            return write!(f, "{n}");
        }
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw HF literal as found in documents: nested arrays, or `{"nat": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HfLiteral {
    Nat { nat: u64 },
    List(Vec<HfLiteral>),
}

/// Canonical form of a raw literal; extensionally equal literals give identical sets.
pub fn canonicalize(raw: &HfLiteral) -> HFSet {
    match raw {
        HfLiteral::Nat { nat } => HFSet::nat(*nat),
        HfLiteral::List(items) => HFSet::from_elements(items.iter().map(canonicalize)),
    }
}

/// All sets of rank ≤ `k` (that is, `V_{k+1}`), in binary-counter order over the
/// previous level: for `k = 2` this is `0, 1, {1}, 2`.
pub fn all_hf_up_to_rank(k: u32) -> Result<Vec<HFSet>, GroundError> {
    if k > MAX_ENUM_RANK {
        return Err(GroundError::BudgetExceeded(format!("rank bound {k} > {MAX_ENUM_RANK}")));
    }
    let mut level = vec![HFSet::empty()];
    for _ in 0..k {
        level = powerset(&level);
    }
    Ok(level)
}

fn powerset(items: &[HFSet]) -> Vec<HFSet> {
    (0u64..1 << items.len())
        .map(|mask| {
            HFSet::from_elements(
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, x)| x.clone()),
            )
        })
        .collect()
}

/// All `2^|x|` subsets of `x` with the default bound.
pub fn subsets_of(x: &HFSet) -> Result<Vec<HFSet>, GroundError> {
    subsets_of_bounded(x, DEFAULT_SUBSET_BOUND)
}

pub fn subsets_of_bounded(x: &HFSet, bound: usize) -> Result<Vec<HFSet>, GroundError> {
    if x.len() > bound {
        return Err(GroundError::BudgetExceeded(format!("|x| = {} > {bound}", x.len())));
    }
    Ok(powerset(x.elements()))
}

/// Variable assignment for [`eval_classical`].
pub type ClassicalEnv = BTreeMap<Var, HFSet>;

/// Tarskian truth of a bounded formula over HF sets. Parameters must be ground
/// terms of `space`; free variables are looked up in `env`.
pub fn eval_classical(space: &FiniteSpace, phi: &Formula, env: &ClassicalEnv) -> Result<bool, GroundError> {
    let core = phi.desugar();
    let mut env = env.clone();
    Classical { space }.eval(&core, &mut env)
}

struct Classical<'a> {
    space: &'a FiniteSpace,
}

impl Classical<'_> {
    fn value(&self, a: &Arg, env: &ClassicalEnv) -> Result<HFSet, GroundError> {
        match a {
            Arg::Var(v) => env.get(v).cloned().ok_or_else(|| GroundError::UnboundParameter(v.to_string())),
            Arg::Param(t) => Ok(t.check(self.space)?),
        }
    }

    fn eval(&self, phi: &Formula, env: &mut ClassicalEnv) -> Result<bool, GroundError> {
        Ok(match phi.node() {
            Node::Bot => false,
            Node::Eq(a, b) => self.value(a, env)? == self.value(b, env)?,
            Node::Mem(a, b) => self.value(b, env)?.contains(&self.value(a, env)?),
            Node::And(p, q) => self.eval(p, env)? && self.eval(q, env)?,
            Node::Or(p, q) => self.eval(p, env)? || self.eval(q, env)?,
            Node::Imp(p, q) => !self.eval(p, env)? || self.eval(q, env)?,
            Node::Forall(..) | Node::Exists(..) => {
                let (v, bound, body, universal) = phi
                    .as_bounded()
                    .ok_or_else(|| GroundError::NotDelta0(phi.to_string()))?;
                let range = self.value(bound, env)?;
                let saved = env.get(v).cloned();
                let mut result = universal;
                for x in range.elements() {
                    env.insert(v.clone(), x.clone());
                    if self.eval(body, env)? != universal {
                        result = !universal;
                        break;
                    }
                }
                match saved {
                    Some(old) => env.insert(v.clone(), old),
                    None => env.remove(v),
                };
                result
            }
            _ => return Err(GroundError::NotDelta0(format!("unexpected sugar in {phi}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse, ParamEnv};
    use crate::terms::hat;

    fn lit(s: &str) -> HfLiteral {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&lit("[[],[]]")), HFSet::from_elements([HFSet::empty()]));
        assert_eq!(canonicalize(&lit("[]")), HFSet::empty());
        assert_eq!(canonicalize(&lit("[[],[[]]]")), HFSet::nat(2));
        assert_eq!(canonicalize(&lit(r#"[{"nat": 1}, []]"#)), HFSet::nat(2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(HFSet::empty().rank(), 0);
        assert_eq!(HFSet::nat(3).rank(), 3);
        assert_eq!(all_hf_up_to_rank(2).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_order_and_budget() {
        let v = all_hf_up_to_rank(2).unwrap();
        let one = HFSet::nat(1);
        assert_eq!(v, vec![HFSet::empty(), one.clone(), HFSet::from_elements([one]), HFSet::nat(2)]);
        assert!(matches!(all_hf_up_to_rank(5), Err(GroundError::BudgetExceeded(_))));
    }

    #[test]
    fn subsets_examples() {
        let two = HFSet::nat(2);
        let subs = subsets_of(&two).unwrap();
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&HFSet::from_elements([HFSet::nat(1)])));
        assert_eq!(subsets_of(&HFSet::empty()).unwrap(), vec![HFSet::empty()]);
        assert_eq!(subsets_of(&HFSet::nat(3)).unwrap().len(), 8);
        assert!(subsets_of(&HFSet::nat(11)).is_err());
    }

    #[test]
    fn display_uses_numerals() {
        assert_eq!(HFSet::nat(3).to_string(), "3");
        assert_eq!(HFSet::from_elements([HFSet::nat(1)]).to_string(), "{1}");
    }

    fn env_nats(space: &FiniteSpace) -> ParamEnv {
        (0..4).map(|n| (format!("n{n}"), hat(space, &HFSet::nat(n)))).collect()
    }

    #[test]
    fn classical_examples() {
        let t = FiniteSpace::sierpinski();
        let env = env_nats(&t);
        let truth = |s: &str| eval_classical(&t, &parse(s, &env).unwrap(), &ClassicalEnv::new()).unwrap();
        assert!(truth("n0 in n1"));
        assert!(truth("forall x in n2. x in n2"));
        assert!(truth("n1 sub n2 /\\ ~(n2 sub n1)"));
        assert!(!truth("n1 in n1"));
        assert!(truth("exists x in n3. forall y in x. bot"));
    }

    #[test]
    fn classical_rejects_unbounded() {
        let t = FiniteSpace::sierpinski();
        let env = env_nats(&t);
        let phi = parse("forall x. x = x", &env).unwrap();
        assert!(matches!(eval_classical(&t, &phi, &ClassicalEnv::new()), Err(GroundError::NotDelta0(_))));
    }

    #[test]
    fn classical_rejects_nonground_params() {
        use crate::terms::Term;
        let t = FiniteSpace::sierpinski();
        let r = t.point("r").unwrap();
        let sigma = Term::new([], [(hat(&t, &HFSet::empty()), r)]);
        let env: ParamEnv = [("sigma".to_string(), sigma)].into_iter().collect();
        let phi = parse("sigma = sigma", &env).unwrap();
        assert!(matches!(eval_classical(&t, &phi, &ClassicalEnv::new()), Err(GroundError::Term(_))));
    }
}
