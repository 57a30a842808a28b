//! Terms over a finite space: finite sets of `(term, open)` and `(term, point)`
//! pairs, the ground-model embedding, settling, and finite term universes.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{all_hf_up_to_rank, HFSet};
use crate::topology::{FiniteSpace, OpenSet, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term is not a ground-model term: {0}")]
    NotGround(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Groundness {
    /// The empty term: ground over every space.
    Any,
    /// No point entries, every open entry (hereditarily) carries this extent.
    Extent(u64),
    No,
}

/// A term: canonically sorted, duplicate-free open and point entries.
///
/// Nodes are shared behind an `Arc` and carry a precomputed structural hash, so
/// equality on distinct terms is usually decided by the hash alone.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

struct TermNode {
    open: Vec<(Term, OpenSet)>,
    point: Vec<(Term, Point)>,
    hash: u64,
    rank: u32,
    size: usize,
    ground: Groundness,
}

impl Term {
    /// Builds a term from entries in any order; duplicates are dropped.
    pub fn new<O, P>(open: O, point: P) -> Term
    where
        O: IntoIterator<Item = (Term, OpenSet)>,
        P: IntoIterator<Item = (Term, Point)>,
    {
        let mut open: Vec<(Term, OpenSet)> = open.into_iter().collect();
        let mut point: Vec<(Term, Point)> = point.into_iter().collect();
        open.sort();
        open.dedup();
        point.sort();
        point.dedup();

        let mut h = DefaultHasher::new();
        open.len().hash(&mut h);
        for (t, o) in &open {
            h.write_u64(t.0.hash);
            o.hash(&mut h);
        }
        point.len().hash(&mut h);
        for (t, p) in &point {
            h.write_u64(t.0.hash);
            p.hash(&mut h);
        }
        let rank = open
            .iter()
            .map(|(t, _)| t.rank() + 1)
            .chain(point.iter().map(|(t, _)| t.rank() + 1))
            .max()
            .unwrap_or(0);
        let size = 1 + open.iter().map(|(t, _)| t.size()).sum::<usize>() + point.iter().map(|(t, _)| t.size()).sum::<usize>();
        let ground = if !point.is_empty() {
            Groundness::No
        } else {
            open.iter().try_fold(Groundness::Any, |acc, (t, o)| {
                let fits = matches!(t.0.ground, Groundness::Any) || t.0.ground == Groundness::Extent(o.0);
                match acc {
                    _ if !fits => None,
                    Groundness::Any => Some(Groundness::Extent(o.0)),
                    Groundness::Extent(m) if m == o.0 => Some(acc),
                    _ => None,
                }
            })
            .unwrap_or(Groundness::No)
        };
        Term(Arc::new(TermNode { open, point, hash: h.finish(), rank, size, ground }))
    }

    /// The term with no entries (`0̂`).
    pub fn empty() -> Term {
        Term::new([], [])
    }

    pub fn open_entries(&self) -> &[(Term, OpenSet)] {
        &self.0.open
    }

    pub fn point_entries(&self) -> &[(Term, Point)] {
        &self.0.point
    }

    /// V-rank: 0 for the empty term, otherwise one more than the largest entry rank.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    /// Whether this is `x̂` for some `x`, relative to `space`.
    pub fn is_ground(&self, space: &FiniteSpace) -> bool {
        match self.0.ground {
            Groundness::Any => true,
            Groundness::Extent(m) => m == space.full().bits(),
            Groundness::No => false,
        }
    }

    /// The inverse of [`hat`]: the HF set a ground term names.
    pub fn check(&self, space: &FiniteSpace) -> Result<HFSet, TermError> {
        if !self.is_ground(space) {
            return Err(TermError::NotGround(self.render(space)));
        }
        Ok(self.check_unchecked())
    }

    fn check_unchecked(&self) -> HFSet {
        HFSet::from_elements(self.0.open.iter().map(|(t, _)| t.check_unchecked()))
    }

    /// `σ^r`: keep open entries whose extent contains `r` and point entries tagged
    /// `r`, settle them recursively, and retag everything with the whole space.
    pub fn settle(&self, space: &FiniteSpace, r: Point) -> Term {
        let mut cache = HashMap::new();
        settle_cached(self, space.full(), r, &mut cache)
    }

    /// `{⟨a, T⟩, ⟨b, T⟩}`.
    pub fn pair(space: &FiniteSpace, a: &Term, b: &Term) -> Term {
        let full = space.full();
        Term::new([(a.clone(), full), (b.clone(), full)], [])
    }

    /// Immediate sub-terms (open entries, then point entries), without duplicates.
    pub fn children(&self) -> Vec<Term> {
        let mut seen = HashSet::new();
        self.0
            .open
            .iter()
            .map(|(t, _)| t)
            .chain(self.0.point.iter().map(|(t, _)| t))
            .filter(|t| seen.insert((*t).clone()))
            .cloned()
            .collect()
    }

    /// Human-readable rendering using the space's labels: ground terms print as
    /// `^x`, others as `{<t, {r, s}>, <t, @r>}`.
    pub fn render(&self, space: &FiniteSpace) -> String {
        if self.is_ground(space) {
            return format!("^{}", self.check_unchecked());
        }
        let mut parts: Vec<String> = self
            .0
            .open
            .iter()
            .map(|(t, o)| format!("<{}, {}>", t.render(space), space.show(*o)))
            .collect();
        parts.extend(self.0.point.iter().map(|(t, p)| format!("<{}, @{}>", t.render(space), space.label(*p))));
        format!("{{{}}}", parts.join(", "))
    }
}

pub(crate) fn settle_cached(sigma: &Term, full: OpenSet, r: Point, cache: &mut HashMap<Term, Term>) -> Term {
    if let Some(t) = cache.get(sigma) {
        return t.clone();
    }
    let mut entries = Vec::new();
    for (t, o) in sigma.open_entries() {
        if o.contains(r) {
            entries.push((settle_cached(t, full, r, cache), full));
        }
    }
    for (t, p) in sigma.point_entries() {
        if *p == r {
            entries.push((settle_cached(t, full, r, cache), full));
        }
    }
    let out = Term::new(entries, []);
    cache.insert(sigma.clone(), out.clone());
    out
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.open == other.0.open && self.0.point == other.0.point)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .rank
            .cmp(&other.0.rank)
            .then_with(|| self.0.open.cmp(&other.0.open))
            .then_with(|| self.0.point.cmp(&other.0.point))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Space-free rendering: extents as bitmasks, points as indices.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Groundness::Any | Groundness::Extent(_) = self.0.ground {
            return write!(f, "^{}", self.check_unchecked());
        }
        write!(f, "{{")?;
        let mut first = true;
        for (t, o) in &self.0.open {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "<{t}, #{:b}>", o.bits())?;
        }
        for (t, p) in &self.0.point {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "<{t}, @{}>", p.0)?;
        }
        write!(f, "}}")
    }
}

/// `x̂ = {⟨ŷ, T⟩ | y ∈ x}`.
pub fn hat(space: &FiniteSpace, x: &HFSet) -> Term {
    let full = space.full();
    Term::new(x.elements().iter().map(|y| (hat(space, y), full)), [])
}

/// Ground terms are equal iff the sets they name are equal.
pub fn ground_equal(space: &FiniteSpace, g: &Term, h: &Term) -> Result<bool, TermError> {
    Ok(g.check(space)? == h.check(space)?)
}

/// Structural equality on canonical forms.
pub fn term_equal(a: &Term, b: &Term) -> bool {
    a == b
}

/// How a universe member came to be included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    Hat,
    Settled,
    Subterm,
    Pair,
    Constructed,
}

/// Closure operations a universe can be generated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// Add `σ^r` for every member and point.
    Settle,
    /// Add the entries of every member.
    Subterms,
    /// Add `{⟨a, T⟩, ⟨b, T⟩}` for members `a`, `b` (one round, until the cap).
    Pair,
    /// Add `{⟨0̂, J⟩}` for every open `J`.
    SingletonPerOpen,
    /// Add `{⟨0̂, r⟩}` for every point `r`.
    SingletonPerPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct UniverseConfig {
    pub hat_rank: u32,
    pub close_under: BTreeSet<Closure>,
    pub cap: usize,
}

impl Default for UniverseConfig {
    fn default() -> Self {
        UniverseConfig {
            hat_rank: 2,
            close_under: [Closure::Settle, Closure::Subterms, Closure::SingletonPerOpen, Closure::SingletonPerPoint]
                .into_iter()
                .collect(),
            cap: 20,
        }
    }
}

impl UniverseConfig {
    pub fn new(hat_rank: u32, close_under: &[Closure], cap: usize) -> Self {
        UniverseConfig { hat_rank, close_under: close_under.iter().copied().collect(), cap }
    }

    fn has(&self, c: Closure) -> bool {
        self.close_under.contains(&c)
    }
}

/// An explicit, ordered, duplicate-free stand-in for "all terms".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermUniverse {
    terms: Vec<Term>,
    provenance: Vec<Provenance>,
    cap: usize,
    truncated: bool,
    id: String,
}

impl TermUniverse {
    /// A universe made of exactly these terms (deduplicated, order kept).
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> TermUniverse {
        let mut b = Builder::new(usize::MAX);
        for t in terms {
            b.push(t, Provenance::Seed);
        }
        b.finish()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Whether generation stopped at the cap before the requested closure was reached.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Stable fingerprint of the member list.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    /// Is every member's settling, at every point, also a member?
    pub fn is_settle_closed(&self, space: &FiniteSpace) -> bool {
        let set: HashSet<&Term> = self.terms.iter().collect();
        self.terms.iter().all(|t| space.points().all(|r| set.contains(&t.settle(space, r))))
    }

    /// Is every entry of every member also a member?
    pub fn is_subterm_closed(&self) -> bool {
        let set: HashSet<&Term> = self.terms.iter().collect();
        self.terms.iter().all(|t| t.children().iter().all(|c| set.contains(c)))
    }
}

struct Builder {
    terms: Vec<Term>,
    provenance: Vec<Provenance>,
    seen: HashSet<Term>,
    cap: usize,
    truncated: bool,
}

impl Builder {
    fn new(cap: usize) -> Self {
        Builder { terms: Vec::new(), provenance: Vec::new(), seen: HashSet::new(), cap, truncated: false }
    }

    fn push(&mut self, t: Term, p: Provenance) -> bool {
        if self.seen.contains(&t) {
            return true;
        }
        if self.terms.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        self.seen.insert(t.clone());
        self.terms.push(t);
        self.provenance.push(p);
        true
    }

    /// Adds `t` together with everything the closure rules demand, or nothing at all
    /// if that would exceed the cap.
    fn push_closed(&mut self, t: Term, p: Provenance, space: &FiniteSpace, config: &UniverseConfig) {
        let mut pending: Vec<(Term, Provenance)> = Vec::new();
        let mut local: HashSet<Term> = HashSet::new();
        let mut stack = vec![(t, p)];
        while let Some((t, p)) = stack.pop() {
            if self.seen.contains(&t) || !local.insert(t.clone()) {
                continue;
            }
            let mut next = Vec::new();
            if config.has(Closure::Subterms) {
                next.extend(t.children().into_iter().map(|c| (c, Provenance::Subterm)));
            }
            if config.has(Closure::Settle) {
                next.extend(space.points().map(|r| (t.settle(space, r), Provenance::Settled)));
            }
            pending.push((t, p));
            // Reverse so that the stack yields them in generation order.
            stack.extend(next.into_iter().rev());
        }
        if self.terms.len() + pending.len() > self.cap {
            self.truncated = true;
            return;
        }
        for (t, p) in pending {
            self.push(t, p);
        }
    }

    fn finish(self) -> TermUniverse {
        let mut h = DefaultHasher::new();
        for t in &self.terms {
            h.write_u64(t.structural_hash());
        }
        let id = format!("U{:016x}-{}", h.finish(), self.terms.len());
        TermUniverse { terms: self.terms, provenance: self.provenance, cap: self.cap, truncated: self.truncated, id }
    }
}

/// Generates a universe: the seeds, every `x̂` with `rank(x) ≤ hat_rank`, then the
/// constructed families and pairs, each added only together with its closure
/// under the requested operations and only while the cap allows.
pub fn gen_universe(space: &FiniteSpace, seeds: &[Term], config: &UniverseConfig) -> TermUniverse {
    let mut b = Builder::new(config.cap);
    for s in seeds {
        b.push_closed(s.clone(), Provenance::Seed, space, config);
    }
    // Ranks above the enumeration bound are clamped to it.
    let hats = all_hf_up_to_rank(config.hat_rank.min(crate::ground::MAX_ENUM_RANK)).unwrap_or_default();
    for x in &hats {
        b.push_closed(hat(space, x), Provenance::Hat, space, config);
    }
    let zero = Term::empty();
    if config.has(Closure::SingletonPerOpen) {
        for o in space.opens() {
            b.push_closed(Term::new([(zero.clone(), *o)], []), Provenance::Constructed, space, config);
        }
    }
    if config.has(Closure::SingletonPerPoint) {
        for r in space.points() {
            b.push_closed(Term::new([], [(zero.clone(), r)]), Provenance::Constructed, space, config);
        }
    }
    if config.has(Closure::Pair) {
        let current = b.terms.clone();
        'outer: for (i, a) in current.iter().enumerate() {
            for c in &current[i..] {
                if b.terms.len() >= b.cap {
                    b.truncated = true;
                    break 'outer;
                }
                b.push_closed(Term::pair(space, a, c), Provenance::Pair, space, config);
            }
        }
    }
    b.finish()
}
