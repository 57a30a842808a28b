//! First-order set-theoretic formulas with term parameters.
//!
//! The AST keeps the surface sugar (`~`, `<->`, bounded quantifiers, `sub`) so
//! that printing reproduces what was parsed; [`Formula::desugar`] reduces to the
//! core connectives the evaluators understand.

mod parser;
mod printer;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::terms::Term;
use crate::topology::{FiniteSpace, Point};

pub use parser::parse;
pub use printer::print;

/// Parameter names available to the parser and printer.
pub type ParamEnv = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("variable `{0}` is not free in the formula")]
    NotFree(String),
}

/// A bound or free variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// Leaf of an atomic formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Arg {
    Var(Var),
    Param(Term),
}

impl Arg {
    pub fn var(name: &str) -> Arg {
        Arg::Var(Var::new(name))
    }

    fn mentions(&self, v: &Var) -> bool {
        matches!(self, Arg::Var(w) if w == v)
    }
}

impl From<Term> for Arg {
    fn from(t: Term) -> Self {
        Arg::Param(t)
    }
}

impl From<&Term> for Arg {
    fn from(t: &Term) -> Self {
        Arg::Param(t.clone())
    }
}

impl From<Var> for Arg {
    fn from(v: Var) -> Self {
        Arg::Var(v)
    }
}

impl From<&Var> for Arg {
    fn from(v: &Var) -> Self {
        Arg::Var(v.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Node {
    Bot,
    Eq(Arg, Arg),
    Mem(Arg, Arg),
    And(Formula, Formula),
    Or(Formula, Formula),
    Imp(Formula, Formula),
    Exists(Var, Formula),
    Forall(Var, Formula),
    // Sugar, removed by `desugar`.
    Sub(Arg, Arg),
    Not(Formula),
    Iff(Formula, Formula),
    ForallIn(Var, Arg, Formula),
    ExistsIn(Var, Arg, Formula),
}

/// Immutable, shared formula node with a cached structural hash.
#[derive(Clone)]
pub struct Formula(Arc<FNode>);

struct FNode {
    node: Node,
    hash: u64,
    has_params: bool,
    has_quantifier: bool,
    is_core: bool,
}

impl Formula {
    pub fn from_node(node: Node) -> Formula {
        let mut h = DefaultHasher::new();
        let (mut has_params, mut has_quantifier, mut is_core) = (false, false, true);
        let arg = |a: &Arg, h: &mut DefaultHasher, hp: &mut bool| {
            match a {
                Arg::Var(v) => {
                    0u8.hash(h);
                    v.hash(h);
                }
                Arg::Param(t) => {
                    1u8.hash(h);
                    h.write_u64(t.structural_hash());
                    *hp = true;
                }
            }
        };
        let sub = |f: &Formula, h: &mut DefaultHasher, hp: &mut bool, hq: &mut bool, core: &mut bool| {
            h.write_u64(f.0.hash);
            *hp |= f.0.has_params;
            *hq |= f.0.has_quantifier;
            *core &= f.0.is_core;
        };
        std::mem::discriminant(&node).hash(&mut h);
        match &node {
            Node::Bot => {}
            Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
                arg(a, &mut h, &mut has_params);
                arg(b, &mut h, &mut has_params);
            }
            Node::And(p, q) | Node::Or(p, q) | Node::Imp(p, q) | Node::Iff(p, q) => {
                sub(p, &mut h, &mut has_params, &mut has_quantifier, &mut is_core);
                sub(q, &mut h, &mut has_params, &mut has_quantifier, &mut is_core);
            }
            Node::Not(p) => sub(p, &mut h, &mut has_params, &mut has_quantifier, &mut is_core),
            Node::Exists(v, p) | Node::Forall(v, p) => {
                v.hash(&mut h);
                has_quantifier = true;
                sub(p, &mut h, &mut has_params, &mut has_quantifier, &mut is_core);
            }
            Node::ForallIn(v, b, p) | Node::ExistsIn(v, b, p) => {
                v.hash(&mut h);
                has_quantifier = true;
                arg(b, &mut h, &mut has_params);
                sub(p, &mut h, &mut has_params, &mut has_quantifier, &mut is_core);
            }
        }
        if matches!(node, Node::Sub(..) | Node::Not(_) | Node::Iff(..) | Node::ForallIn(..) | Node::ExistsIn(..)) {
            is_core = false;
        }
        if matches!(node, Node::Sub(..)) {
            has_quantifier = true;
        }
        Formula(Arc::new(FNode { node, hash: h.finish(), has_params, has_quantifier, is_core }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    /// Contains at least one term parameter.
    pub fn has_params(&self) -> bool {
        self.0.has_params
    }

    /// Contains a quantifier (including sugar that expands to one).
    pub fn has_quantifier(&self) -> bool {
        self.0.has_quantifier
    }

    /// Uses only the core connectives.
    pub fn is_core(&self) -> bool {
        self.0.is_core
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    // ---- builders ----

    pub fn bot() -> Formula {
        Formula::from_node(Node::Bot)
    }

    pub fn eq(a: impl Into<Arg>, b: impl Into<Arg>) -> Formula {
        Formula::from_node(Node::Eq(a.into(), b.into()))
    }

    pub fn mem(a: impl Into<Arg>, b: impl Into<Arg>) -> Formula {
        Formula::from_node(Node::Mem(a.into(), b.into()))
    }

    pub fn sub(a: impl Into<Arg>, b: impl Into<Arg>) -> Formula {
        Formula::from_node(Node::Sub(a.into(), b.into()))
    }

    pub fn neq(a: impl Into<Arg>, b: impl Into<Arg>) -> Formula {
        Formula::not(Formula::eq(a, b))
    }

    pub fn and(p: Formula, q: Formula) -> Formula {
        Formula::from_node(Node::And(p, q))
    }

    pub fn or(p: Formula, q: Formula) -> Formula {
        Formula::from_node(Node::Or(p, q))
    }

    pub fn imp(p: Formula, q: Formula) -> Formula {
        Formula::from_node(Node::Imp(p, q))
    }

    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::from_node(Node::Iff(p, q))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Formula) -> Formula {
        Formula::from_node(Node::Not(p))
    }

    pub fn forall(v: impl Into<Var>, p: Formula) -> Formula {
        Formula::from_node(Node::Forall(v.into(), p))
    }

    pub fn exists(v: impl Into<Var>, p: Formula) -> Formula {
        Formula::from_node(Node::Exists(v.into(), p))
    }

    pub fn forall_in(v: impl Into<Var>, bound: impl Into<Arg>, p: Formula) -> Formula {
        Formula::from_node(Node::ForallIn(v.into(), bound.into(), p))
    }

    pub fn exists_in(v: impl Into<Var>, bound: impl Into<Arg>, p: Formula) -> Formula {
        Formula::from_node(Node::ExistsIn(v.into(), bound.into(), p))
    }

    /// Conjunction of a list; `bot -> bot` (true) when empty.
    pub fn and_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(|| Formula::imp(Formula::bot(), Formula::bot()))
    }

    /// Disjunction of a list; `bot` when empty.
    pub fn or_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::bot)
    }

    // ---- structure ----

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut arg = |a: &Arg, bound: &Vec<Var>| {
            if let Arg::Var(v) = a {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self.node() {
            Node::Bot => {}
            Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
                arg(a, bound);
                arg(b, bound);
            }
            Node::And(p, q) | Node::Or(p, q) | Node::Imp(p, q) | Node::Iff(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Node::Not(p) => p.collect_free(bound, out),
            Node::Exists(v, p) | Node::Forall(v, p) => {
                bound.push(v.clone());
                p.collect_free(bound, out);
                bound.pop();
            }
            Node::ForallIn(v, b, p) | Node::ExistsIn(v, b, p) => {
                arg(b, bound);
                bound.push(v.clone());
                p.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f.node() {
            Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
                for x in [a, b] {
                    if let Arg::Var(v) = x {
                        out.insert(v.clone());
                    }
                }
            }
            Node::Exists(v, _) | Node::Forall(v, _) => {
                out.insert(v.clone());
            }
            Node::ForallIn(v, b, _) | Node::ExistsIn(v, b, _) => {
                out.insert(v.clone());
                if let Arg::Var(w) = b {
                    out.insert(w.clone());
                }
            }
            _ => {}
        });
        out
    }

    /// Distinct term parameters, in first-occurrence order.
    pub fn params(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        self.visit(&mut |f| {
            let mut add = |a: &Arg| {
                if let Arg::Param(t) = a {
                    if !out.contains(t) {
                        out.push(t.clone());
                    }
                }
            };
            match f.node() {
                Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
                    add(a);
                    add(b);
                }
                Node::ForallIn(_, b, _) | Node::ExistsIn(_, b, _) => add(b),
                _ => {}
            }
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self.node() {
            Node::Bot | Node::Eq(..) | Node::Mem(..) | Node::Sub(..) => {}
            Node::And(p, q) | Node::Or(p, q) | Node::Imp(p, q) | Node::Iff(p, q) => {
                p.visit(f);
                q.visit(f);
            }
            Node::Not(p) | Node::Exists(_, p) | Node::Forall(_, p) | Node::ForallIn(_, _, p) | Node::ExistsIn(_, _, p) => {
                p.visit(f)
            }
        }
    }

    /// Rebuilds the formula with every argument passed through `f`, sharing
    /// unchanged sub-formulas. `f` sees the variables bound at that point.
    fn map_args(&self, bound: &mut Vec<Var>, f: &mut dyn FnMut(&Arg, &[Var]) -> Option<Arg>) -> Option<Formula> {
        let mut one = |a: &Arg, bound: &Vec<Var>| f(a, bound);
        let keep = |new: Option<Arg>, old: &Arg| new.unwrap_or_else(|| old.clone());
        let node = match self.node() {
            Node::Bot => return None,
            Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
                let (na, nb) = (one(a, bound), one(b, bound));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                let (a, b) = (keep(na, a), keep(nb, b));
                match self.node() {
                    Node::Eq(..) => Node::Eq(a, b),
                    Node::Mem(..) => Node::Mem(a, b),
                    _ => Node::Sub(a, b),
                }
            }
            Node::And(p, q) | Node::Or(p, q) | Node::Imp(p, q) | Node::Iff(p, q) => {
                let (np, nq) = (p.map_args(bound, f), q.map_args(bound, f));
                if np.is_none() && nq.is_none() {
                    return None;
                }
                let (p, q) = (np.unwrap_or_else(|| p.clone()), nq.unwrap_or_else(|| q.clone()));
                match self.node() {
                    Node::And(..) => Node::And(p, q),
                    Node::Or(..) => Node::Or(p, q),
                    Node::Imp(..) => Node::Imp(p, q),
                    _ => Node::Iff(p, q),
                }
            }
            Node::Not(p) => Node::Not(p.map_args(bound, f)?),
            Node::Exists(v, p) | Node::Forall(v, p) => {
                bound.push(v.clone());
                let np = p.map_args(bound, f);
                bound.pop();
                match self.node() {
                    Node::Exists(..) => Node::Exists(v.clone(), np?),
                    _ => Node::Forall(v.clone(), np?),
                }
            }
            Node::ForallIn(v, b, p) | Node::ExistsIn(v, b, p) => {
                let nb = f(b, bound);
                bound.push(v.clone());
                let np = p.map_args(bound, f);
                bound.pop();
                if nb.is_none() && np.is_none() {
                    return None;
                }
                let (b, p) = (keep(nb, b), np.unwrap_or_else(|| p.clone()));
                match self.node() {
                    Node::ForallIn(..) => Node::ForallIn(v.clone(), b, p),
                    _ => Node::ExistsIn(v.clone(), b, p),
                }
            }
        };
        Some(Formula::from_node(node))
    }

    /// `φ[v := σ]`. Parameters are closed, so no capture can occur.
    pub fn substitute(&self, v: &Var, sigma: &Term) -> Result<Formula, FormulaError> {
        if !self.free_vars().contains(v) {
            return Err(FormulaError::NotFree(v.to_string()));
        }
        Ok(self.subst(v, sigma))
    }

    /// Substitution without the freeness check; returns `self` when `v` is not free.
    pub fn subst(&self, v: &Var, sigma: &Term) -> Formula {
        self.map_args(&mut Vec::new(), &mut |a, bound| {
            (a.mentions(v) && !bound.contains(v)).then(|| Arg::Param(sigma.clone()))
        })
        .unwrap_or_else(|| self.clone())
    }

    /// Renames free occurrences of `from` to the variable `to` (which must not be
    /// captured by binders in `self`).
    pub fn rename_free(&self, from: &Var, to: &Var) -> Formula {
        self.map_args(&mut Vec::new(), &mut |a, bound| {
            (a.mentions(from) && !bound.contains(from)).then(|| Arg::Var(to.clone()))
        })
        .unwrap_or_else(|| self.clone())
    }

    /// Replaces every parameter `σ` by `f(σ)`.
    pub fn map_params(&self, f: &mut dyn FnMut(&Term) -> Term) -> Formula {
        if !self.has_params() {
            return self.clone();
        }
        self.map_args(&mut Vec::new(), &mut |a, _| match a {
            Arg::Param(t) => {
                let n = f(t);
                (n != *t).then_some(Arg::Param(n))
            }
            Arg::Var(_) => None,
        })
        .unwrap_or_else(|| self.clone())
    }

    /// `φ^r`: every parameter settled at `r`; bound variables untouched.
    pub fn settle(&self, space: &FiniteSpace, r: Point) -> Formula {
        let mut cache = HashMap::new();
        let full = space.full();
        self.map_params(&mut |t| crate::terms::settle_cached(t, full, r, &mut cache))
    }

    /// Expands `~`, `<->`, `sub` and bounded quantifiers into core connectives.
    pub fn desugar(&self) -> Formula {
        if self.is_core() {
            return self.clone();
        }
        match self.node() {
            Node::Bot | Node::Eq(..) | Node::Mem(..) => self.clone(),
            Node::And(p, q) => Formula::and(p.desugar(), q.desugar()),
            Node::Or(p, q) => Formula::or(p.desugar(), q.desugar()),
            Node::Imp(p, q) => Formula::imp(p.desugar(), q.desugar()),
            Node::Exists(v, p) => Formula::exists(v.clone(), p.desugar()),
            Node::Forall(v, p) => Formula::forall(v.clone(), p.desugar()),
            Node::Not(p) => Formula::imp(p.desugar(), Formula::bot()),
            Node::Iff(p, q) => {
                let (p, q) = (p.desugar(), q.desugar());
                Formula::and(Formula::imp(p.clone(), q.clone()), Formula::imp(q, p))
            }
            Node::ForallIn(v, b, p) => Formula::forall(
                v.clone(),
                Formula::imp(Formula::mem(v.clone(), b.clone()), p.desugar()),
            ),
            Node::ExistsIn(v, b, p) => Formula::exists(
                v.clone(),
                Formula::and(Formula::mem(v.clone(), b.clone()), p.desugar()),
            ),
            Node::Sub(a, b) => {
                let z = fresh_var("z", |c| a.mentions(c) || b.mentions(c));
                Formula::forall(
                    z.clone(),
                    Formula::imp(Formula::mem(z.clone(), a.clone()), Formula::mem(z, b.clone())),
                )
            }
        }
    }

    /// Recognises a desugared bounded quantifier: `∀x (x ∈ b → φ)` or
    /// `∃x (x ∈ b ∧ φ)` with `b` not the bound variable. Returns
    /// `(x, b, φ, is_universal)`.
    pub fn as_bounded(&self) -> Option<(&Var, &Arg, &Formula, bool)> {
        let (v, body, universal) = match self.node() {
            Node::Forall(v, body) => (v, body, true),
            Node::Exists(v, body) => (v, body, false),
            _ => return None,
        };
        let (guard, rest) = match (body.node(), universal) {
            (Node::Imp(g, rest), true) | (Node::And(g, rest), false) => (g, rest),
            _ => return None,
        };
        match guard.node() {
            Node::Mem(Arg::Var(x), b) if x == v && !b.mentions(v) => Some((v, b, rest, universal)),
            _ => None,
        }
    }

    /// After desugaring, every quantifier is bounded.
    pub fn is_delta0(&self) -> bool {
        fn check(f: &Formula) -> bool {
            match f.node() {
                Node::Bot | Node::Eq(..) | Node::Mem(..) => true,
                Node::And(p, q) | Node::Or(p, q) | Node::Imp(p, q) => check(p) && check(q),
                Node::Exists(..) | Node::Forall(..) => f.as_bounded().is_some_and(|(_, _, body, _)| check(body)),
                _ => false,
            }
        }
        check(&self.desugar())
    }

    /// Renames bound variables to `x0`, `x1`, ... in binding order, avoiding free names.
    pub fn alpha_normalize(&self) -> Formula {
        let free = self.free_vars();
        let mut counter = 0usize;
        self.alpha(&mut Vec::new(), &free, &mut counter)
    }

    fn alpha(&self, scope: &mut Vec<(Var, Var)>, free: &BTreeSet<Var>, counter: &mut usize) -> Formula {
        let arg = |a: &Arg, scope: &Vec<(Var, Var)>| -> Arg {
            match a {
                Arg::Var(v) => scope
                    .iter()
                    .rev()
                    .find(|(old, _)| old == v)
                    .map(|(_, new)| Arg::Var(new.clone()))
                    .unwrap_or_else(|| a.clone()),
                Arg::Param(_) => a.clone(),
            }
        };
        let bind = |counter: &mut usize| -> Var {
            loop {
                let cand = Var::new(&format!("x{}", *counter));
                *counter += 1;
                if !free.contains(&cand) {
                    return cand;
                }
            }
        };
        let node = match self.node() {
            Node::Bot => Node::Bot,
            Node::Eq(a, b) => Node::Eq(arg(a, scope), arg(b, scope)),
            Node::Mem(a, b) => Node::Mem(arg(a, scope), arg(b, scope)),
            Node::Sub(a, b) => Node::Sub(arg(a, scope), arg(b, scope)),
            Node::And(p, q) => Node::And(p.alpha(scope, free, counter), q.alpha(scope, free, counter)),
            Node::Or(p, q) => Node::Or(p.alpha(scope, free, counter), q.alpha(scope, free, counter)),
            Node::Imp(p, q) => Node::Imp(p.alpha(scope, free, counter), q.alpha(scope, free, counter)),
            Node::Iff(p, q) => Node::Iff(p.alpha(scope, free, counter), q.alpha(scope, free, counter)),
            Node::Not(p) => Node::Not(p.alpha(scope, free, counter)),
            Node::Exists(v, p) | Node::Forall(v, p) => {
                let nv = bind(counter);
                scope.push((v.clone(), nv.clone()));
                let np = p.alpha(scope, free, counter);
                scope.pop();
                if matches!(self.node(), Node::Exists(..)) {
                    Node::Exists(nv, np)
                } else {
                    Node::Forall(nv, np)
                }
            }
            Node::ForallIn(v, b, p) | Node::ExistsIn(v, b, p) => {
                let nb = arg(b, scope);
                let nv = bind(counter);
                scope.push((v.clone(), nv.clone()));
                let np = p.alpha(scope, free, counter);
                scope.pop();
                if matches!(self.node(), Node::ForallIn(..)) {
                    Node::ForallIn(nv, nb, np)
                } else {
                    Node::ExistsIn(nv, nb, np)
                }
            }
        };
        Formula::from_node(node)
    }
}

/// First of `base`, `base_1`, `base_2`, ... for which `taken` is false.
pub fn fresh_var(base: &str, taken: impl Fn(&Var) -> bool) -> Var {
    let first = Var::new(base);
    if !taken(&first) {
        return first;
    }
    (1..)
        .map(|i| Var::new(&format!("{base}_{i}")))
        .find(|v| !taken(v))
        .expect("unbounded supply of names")
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self, &ParamEnv::new()))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::HFSet;
    use crate::terms::hat;

    fn fixture() -> (FiniteSpace, ParamEnv) {
        let t = FiniteSpace::sierpinski();
        let r = t.point("r").unwrap();
        let h0 = hat(&t, &HFSet::nat(0));
        let mut env = ParamEnv::new();
        env.insert("sigma".into(), Term::new([], [(h0.clone(), r)]));
        env.insert("h0".into(), h0);
        env.insert("h1".into(), hat(&t, &HFSet::nat(1)));
        env.insert("s".into(), hat(&t, &HFSet::nat(2)));
        env.insert("t".into(), hat(&t, &HFSet::nat(3)));
        env.insert("u".into(), hat(&t, &HFSet::nat(4)));
        (t, env)
    }

    #[test]
    fn desugar_negation() {
        let (_, env) = fixture();
        let f = parse("~(s in t)", &env).unwrap();
        let expected = Formula::imp(Formula::mem(env["s"].clone(), env["t"].clone()), Formula::bot());
        assert_eq!(f.desugar(), expected);
        assert_eq!(f.desugar().desugar(), f.desugar());
    }

    #[test]
    fn delta0_recognition() {
        let (_, env) = fixture();
        assert!(parse("forall x in t. x in u", &env).unwrap().is_delta0());
        assert!(parse("s sub t /\\ exists x in s. forall y in x. y = y", &env).unwrap().is_delta0());
        let ex1 = parse("forall x. forall y. (~(x = y) \\/ ~~(x = y))", &env).unwrap();
        assert!(!ex1.is_delta0());
        // A hand-written bounded quantifier counts too.
        assert!(parse("forall x. (x in t -> x in t)", &env).unwrap().is_delta0());
        assert!(!parse("forall x. (x in x -> bot)", &env).unwrap().is_delta0());
    }

    #[test]
    fn substitution_and_free_vars() {
        let (_, env) = fixture();
        let f = parse("forall y. (x in y -> y = x)", &ParamEnv::new()).unwrap_err();
        assert!(matches!(f, FormulaError::UnknownParameter(_)));
        let body = Formula::forall("y", Formula::imp(Formula::mem(Arg::var("x"), Arg::var("y")), Formula::eq(Arg::var("y"), Arg::var("x"))));
        assert_eq!(body.free_vars(), [Var::new("x")].into_iter().collect());
        let s = body.substitute(&Var::new("x"), &env["s"]).unwrap();
        assert!(s.is_closed());
        assert_eq!(s.params(), vec![env["s"].clone()]);
        assert!(matches!(s.substitute(&Var::new("x"), &env["s"]), Err(FormulaError::NotFree(_))));
        // Bound occurrences are not replaced.
        let shadow = Formula::and(Formula::eq(Arg::var("x"), Arg::var("x")), Formula::forall("x", Formula::eq(Arg::var("x"), Arg::var("x"))));
        let out = shadow.substitute(&Var::new("x"), &env["s"]).unwrap();
        assert_eq!(out.free_vars().len(), 0);
        assert!(matches!(out.node(), Node::And(_, q) if !q.has_params()));
    }

    #[test]
    fn settle_formula_examples() {
        let (t, env) = fixture();
        let r = t.point("r").unwrap();
        let s_pt = t.point("s").unwrap();
        let f = Formula::eq(env["sigma"].clone(), env["h1"].clone());
        assert_eq!(f.settle(&t, r), Formula::eq(env["h1"].clone(), env["h1"].clone()));
        let plain = parse("forall x. x = x", &env).unwrap();
        assert!(plain.settle(&t, r).ptr_eq(&plain));
        let once = f.settle(&t, r);
        assert_eq!(once.settle(&t, s_pt), once);
    }

    #[test]
    fn alpha_normalization_identifies_renamings() {
        let (_, env) = fixture();
        let a = parse("forall x. exists y. x in y", &env).unwrap();
        let b = parse("forall p. exists q. p in q", &env).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.alpha_normalize(), b.alpha_normalize());
        assert_eq!(a.is_delta0(), a.alpha_normalize().is_delta0());
    }

    #[test]
    fn sub_desugars_with_fresh_variable() {
        let f = Formula::sub(Arg::var("z"), Arg::var("w"));
        let d = f.desugar();
        let Node::Forall(v, _) = d.node() else { panic!("expected a quantifier") };
        assert_eq!(v.name(), "z_1");
        assert_eq!(d.free_vars(), [Var::new("z"), Var::new("w")].into_iter().collect());
    }
}
