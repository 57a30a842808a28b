//! Finite topological spaces presented by their full lattice of opens.
//!
//! Points are stored in lexicographic label order and addressed by index, so an
//! open set is a bitmask over at most [`MAX_POINTS`] points. Every operation here
//! is a pure function of an immutable [`FiniteSpace`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported point count (one bit per point).
pub const MAX_POINTS: usize = 64;

/// Default number of candidate bijections a homogeneity search may try.
pub const DEFAULT_HOMOGENEITY_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point label `{0}`")]
    DuplicatePoint(String),
    #[error("too many points: {0} (at most {MAX_POINTS})")]
    TooManyPoints(usize),
    #[error("the empty set is not open")]
    MissingEmpty,
    #[error("the whole space is not open")]
    MissingFull,
    #[error("union of {0:?} and {1:?} is not open")]
    NotClosedUnderUnion(Vec<String>, Vec<String>),
    #[error("intersection of {0:?} and {1:?} is not open")]
    NotClosedUnderIntersection(Vec<String>, Vec<String>),
    #[error("{0:?} is not an open set of this space")]
    NotOpen(Vec<String>),
    #[error("homeomorphism search exceeded its budget of {0} bijections")]
    SearchBudgetExceeded(usize),
}

/// A point of a [`FiniteSpace`], identified by its index in label order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point(pub u8);

impl Point {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// A subset of the points of a space, as a bitmask. Whether it is open depends on
/// the space it is used with; [`FiniteSpace::open`] performs that check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct OpenSet(pub u64);

impl OpenSet {
    pub const EMPTY: OpenSet = OpenSet(0);

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, p: Point) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn is_subset(self, other: OpenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & other.0)
    }

    pub fn difference(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & !other.0)
    }

    pub fn points(self) -> impl Iterator<Item = Point> {
        let bits = self.0;
        (0..64u8).filter(move |i| bits & (1u64 << i) != 0).map(Point)
    }
}

// Ordered by member list, which with index-ordered points is lexicographic in labels.
impl Ord for OpenSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.points().cmp(other.points())
    }
}

impl PartialOrd for OpenSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite topological space: labelled points and the complete family of opens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Vec<String>,
    opens: Vec<OpenSet>,
    min_nbhds: Vec<OpenSet>,
    full: OpenSet,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSpace {{ points: {:?}, opens: [", self.labels)?;
        for (i, o) in self.opens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.show(*o))?;
        }
        write!(f, "] }}")
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Checks that `points` and `family` present a topology and builds the space.
///
/// The family is deduplicated and stored in canonical order; points are sorted
/// lexicographically.
pub fn validate_space<P, S>(points: &[P], family: &[Vec<S>]) -> Result<FiniteSpace, TopologyError>
where
    P: AsRef<str>,
    S: AsRef<str>,
{
    let mut labels: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
    labels.sort();
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return Err(TopologyError::DuplicatePoint(w[0].clone()));
        }
    }
    if labels.len() > MAX_POINTS {
        return Err(TopologyError::TooManyPoints(labels.len()));
    }
    let mut masks = BTreeSet::new();
    for set in family {
        let mut bits = 0u64;
        for name in set {
            let i = labels
                .binary_search_by(|l| l.as_str().cmp(name.as_ref()))
                .map_err(|_| TopologyError::UnknownPoint(name.as_ref().to_owned()))?;
            bits |= 1u64 << i;
        }
        masks.insert(bits);
    }
    FiniteSpace::from_masks(labels, masks.into_iter().collect())
}

impl FiniteSpace {
    /// Builds a space from sorted labels and open bitmasks, validating the topology axioms.
    pub fn from_masks(labels: Vec<String>, masks: Vec<u64>) -> Result<FiniteSpace, TopologyError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let full = full_mask(n);
        let mut opens: Vec<OpenSet> = masks.into_iter().map(OpenSet).collect();
        opens.sort_by_key(|o| o.0);
        opens.dedup();
        let names = |o: OpenSet| -> Vec<String> { o.points().map(|p| labels[p.index()].clone()).collect() };
        if let Some(o) = opens.iter().find(|o| o.0 & !full != 0) {
            return Err(TopologyError::UnknownPoint(format!("bit pattern {:#x}", o.0)));
        }
        if !opens.iter().any(|o| o.0 == 0) {
            return Err(TopologyError::MissingEmpty);
        }
        if !opens.iter().any(|o| o.0 == full) {
            return Err(TopologyError::MissingFull);
        }
        let present = |m: u64| opens.binary_search_by_key(&m, |o| o.0).is_ok();
        for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                if !present(a.0 | b.0) {
                    return Err(TopologyError::NotClosedUnderUnion(names(*a), names(*b)));
                }
                if !present(a.0 & b.0) {
                    return Err(TopologyError::NotClosedUnderIntersection(names(*a), names(*b)));
                }
            }
        }
        opens.sort();
        let min_nbhds = (0..n as u8)
            .map(|i| {
                let p = Point(i);
                opens
                    .iter()
                    .filter(|o| o.contains(p))
                    .fold(OpenSet(full), |acc, o| acc.intersection(*o))
            })
            .collect();
        Ok(FiniteSpace { labels, opens, min_nbhds, full: OpenSet(full) })
    }

    /// The discrete space on `n` points labelled `a`, `b`, ...
    pub fn discrete(n: usize) -> FiniteSpace {
        let masks = (0..1u64 << n).collect();
        FiniteSpace::from_masks(default_labels(n), masks).expect("discrete topology")
    }

    /// The indiscrete space on `n` points labelled `a`, `b`, ...
    pub fn indiscrete(n: usize) -> FiniteSpace {
        FiniteSpace::from_masks(default_labels(n), vec![0, full_mask(n)]).expect("indiscrete topology")
    }

    /// The two-point space `{r, s}` with opens `∅`, `{s}`, `{r, s}`.
    pub fn sierpinski() -> FiniteSpace {
        validate_space(&["r", "s"], &[vec![], vec!["s"], vec!["r", "s"]]).expect("Sierpinski topology")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.labels.len() as u8).map(Point)
    }

    /// All opens in canonical order.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn full(&self) -> OpenSet {
        self.full
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p.index()]
    }

    pub fn point(&self, label: &str) -> Result<Point, TopologyError> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map(|i| Point(i as u8))
            .map_err(|_| TopologyError::UnknownPoint(label.to_owned()))
    }

    /// Subset of points from labels, without an openness check.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<OpenSet, TopologyError> {
        let mut bits = 0;
        for l in labels {
            bits |= self.point(l.as_ref())?.bit();
        }
        Ok(OpenSet(bits))
    }

    /// Open set from labels; fails if the subset is not open.
    pub fn open<S: AsRef<str>>(&self, labels: &[S]) -> Result<OpenSet, TopologyError> {
        let set = self.subset(labels)?;
        if self.is_open(set) {
            Ok(set)
        } else {
            Err(TopologyError::NotOpen(self.names(set)))
        }
    }

    pub fn is_open(&self, set: OpenSet) -> bool {
        self.opens.contains(&set)
    }

    pub fn names(&self, set: OpenSet) -> Vec<String> {
        set.points().map(|p| self.labels[p.index()].clone()).collect()
    }

    /// `{a, b}`-style rendering of a point set.
    pub fn show(&self, set: OpenSet) -> String {
        format!("{{{}}}", self.names(set).join(", "))
    }

    pub fn contains_point(&self, p: Point) -> bool {
        p.index() < self.labels.len()
    }

    /// The intersection of all opens containing `r`: the least open neighbourhood.
    pub fn min_nbhd(&self, r: Point) -> Result<OpenSet, TopologyError> {
        self.min_nbhds
            .get(r.index())
            .copied()
            .ok_or_else(|| TopologyError::UnknownPoint(format!("#{}", r.0)))
    }

    /// Precomputed least neighbourhoods, indexed by point.
    pub fn min_nbhds(&self) -> &[OpenSet] {
        &self.min_nbhds
    }

    /// Largest open contained in `subset` (the union of all opens inside it).
    pub fn interior(&self, subset: OpenSet) -> Result<OpenSet, TopologyError> {
        if !subset.is_subset(self.full) {
            return Err(TopologyError::UnknownPoint(format!("bit pattern {:#x}", subset.0)));
        }
        Ok(self.interior_unchecked(subset))
    }

    pub(crate) fn interior_unchecked(&self, subset: OpenSet) -> OpenSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(subset))
            .fold(OpenSet::EMPTY, |acc, o| acc.union(*o))
    }

    /// Opens contained in `within`, in canonical order.
    pub fn opens_within(&self, within: OpenSet) -> impl Iterator<Item = OpenSet> + '_ {
        self.opens.iter().copied().filter(move |o| o.is_subset(within))
    }

    fn require_open(&self, u: OpenSet) -> Result<(), TopologyError> {
        if self.is_open(u) {
            Ok(())
        } else {
            Err(TopologyError::NotOpen(self.names(u)))
        }
    }

    /// True iff `u` cannot be split into two nonempty disjoint opens. `∅` counts as connected.
    pub fn connected(&self, u: OpenSet) -> Result<bool, TopologyError> {
        self.require_open(u)?;
        Ok(self.connected_unchecked(u))
    }

    fn connected_unchecked(&self, u: OpenSet) -> bool {
        !self
            .opens_within(u)
            .any(|v| !v.is_empty() && v != u && self.is_open(u.difference(v)))
    }

    /// Splits an open into its connected components (each open, pairwise disjoint),
    /// ordered canonically.
    pub fn components(&self, u: OpenSet) -> Result<Vec<OpenSet>, TopologyError> {
        self.require_open(u)?;
        // Specialisation graph restricted to u: r ~ s when s lies in the least neighbourhood of r.
        let mut remaining = u;
        let mut out = Vec::new();
        while let Some(start) = remaining.points().next() {
            let mut comp = start.bit();
            loop {
                let mut grown = comp;
                for p in u.points() {
                    let nb = self.min_nbhds[p.index()];
                    if comp & p.bit() != 0 || nb.0 & comp != 0 {
                        grown |= nb.0 | p.bit();
                    }
                }
                grown &= u.0;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(OpenSet(comp));
            remaining = remaining.difference(OpenSet(comp));
        }
        out.sort();
        Ok(out)
    }

    /// Every point has a neighbourhood basis of connected opens.
    pub fn is_locally_connected(&self) -> bool {
        self.points().all(|r| {
            self.opens.iter().filter(|o| o.contains(r)).all(|o| {
                self.opens_within(*o)
                    .any(|c| c.contains(r) && self.connected_unchecked(c))
            })
        })
    }

    /// Whether every pair of points of the open `u` is related by a homeomorphism
    /// between open neighbourhoods inside `u`.
    pub fn is_homogeneous(&self, u: OpenSet) -> Result<bool, TopologyError> {
        self.is_homogeneous_with_budget(u, DEFAULT_HOMOGENEITY_BUDGET)
    }

    pub fn is_homogeneous_with_budget(&self, u: OpenSet, budget: usize) -> Result<bool, TopologyError> {
        self.require_open(u)?;
        let mut search = HomeoSearch { space: self, budget, tried: 0 };
        let pts: Vec<Point> = u.points().collect();
        for (i, &r) in pts.iter().enumerate() {
            for &s in &pts[i + 1..] {
                if !search.locally_homogeneous_around(u, r, s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest homogeneous open neighbourhood of `r`, if any.
    pub fn homogeneous_nbhd(&self, r: Point) -> Result<Option<OpenSet>, TopologyError> {
        let mut candidates: Vec<OpenSet> = self.opens.iter().copied().filter(|o| o.contains(r)).collect();
        candidates.sort_by_key(|o| (o.len(), *o));
        for c in candidates {
            if self.is_homogeneous(c)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Every point has a homogeneous open neighbourhood.
    pub fn is_locally_homogeneous(&self) -> Result<bool, TopologyError> {
        for r in self.points() {
            if self.homogeneous_nbhd(r)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The specialisation preorder: `r ≤ s` iff every open containing `r` contains `s`.
    pub fn specializes(&self, r: Point, s: Point) -> bool {
        self.min_nbhds[r.index()].contains(s)
    }
}

struct HomeoSearch<'a> {
    space: &'a FiniteSpace,
    budget: usize,
    tried: usize,
}

impl HomeoSearch<'_> {
    fn locally_homogeneous_around(&mut self, u: OpenSet, r: Point, s: Point) -> Result<bool, TopologyError> {
        let space = self.space;
        let around = |p: Point| -> Vec<OpenSet> { space.opens_within(u).filter(|o| o.contains(p)).collect() };
        let (nr, ns) = (around(r), around(s));
        for jr in &nr {
            for js in ns.iter().filter(|js| js.len() == jr.len()) {
                if self.homeomorphic_pointed(*jr, r, *js, s)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Is there a bijection `jr → js` sending `r` to `s` that carries the opens
    /// inside `jr` exactly onto the opens inside `js`?
    fn homeomorphic_pointed(&mut self, jr: OpenSet, r: Point, js: OpenSet, s: Point) -> Result<bool, TopologyError> {
        let src: Vec<Point> = jr.points().filter(|&p| p != r).collect();
        let mut dst: Vec<Point> = js.points().filter(|&p| p != s).collect();
        let src_opens: Vec<OpenSet> = self.space.opens_within(jr).collect();
        let mut dst_opens: Vec<u64> = self.space.opens_within(js).map(|o| o.0).collect();
        if src_opens.len() != dst_opens.len() {
            return Ok(false);
        }
        dst_opens.sort_unstable();
        let n = dst.len();
        permute(&mut dst, n, &mut |perm| {
            self.tried += 1;
            if self.tried > self.budget {
                return Err(TopologyError::SearchBudgetExceeded(self.budget));
            }
            let image = |o: OpenSet| -> u64 {
                let mut bits = 0;
                if o.contains(r) {
                    bits |= s.bit();
                }
                for (i, p) in src.iter().enumerate() {
                    if o.contains(*p) {
                        bits |= perm[i].bit();
                    }
                }
                bits
            };
            // Images are distinct (bijection) and equal in number, so "all images open" is
            // the same as "the opens correspond".
            Ok(src_opens.iter().all(|o| dst_opens.binary_search(&image(*o)).is_ok()))
        })
    }
}

/// Heap's algorithm; stops at the first permutation for which `visit` returns true.
fn permute<T, E>(items: &mut [T], k: usize, visit: &mut dyn FnMut(&[T]) -> Result<bool, E>) -> Result<bool, E> {
    if k <= 1 {
        return visit(items);
    }
    for i in 0..k - 1 {
        if permute(items, k - 1, visit)? {
            return Ok(true);
        }
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    permute(items, k - 1, visit)
}

/// `a`, `b`, `c`, ... (then `p26`, `p27`, ... past the alphabet).
pub fn default_labels(n: usize) -> Vec<String> {
    let mut labels: Vec<String> = (0..n)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("p{i:02}") })
        .collect();
    labels.sort();
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> FiniteSpace {
        FiniteSpace::sierpinski()
    }

    #[test]
    fn example1_space_validates() {
        let t = ex1();
        assert_eq!(t.len(), 2);
        assert_eq!(t.opens().len(), 3);
        assert_eq!(t.labels(), &["r".to_string(), "s".to_string()]);
    }

    #[test]
    fn missing_empty_and_full() {
        let err = validate_space(&["r", "s"], &[vec!["s"], vec!["r", "s"]]).unwrap_err();
        assert_eq!(err, TopologyError::MissingEmpty);
        let empty: Vec<&str> = vec![];
        let err = validate_space(&["a", "b"], &[empty, vec!["a"], vec!["b"]]).unwrap_err();
        assert_eq!(err, TopologyError::MissingFull);
    }

    #[test]
    fn closure_failures_carry_witnesses() {
        let e: Vec<&str> = vec![];
        let err = validate_space(&["a", "b", "c"], &[e.clone(), vec!["a"], vec!["b"], vec!["a", "b", "c"]]).unwrap_err();
        assert_eq!(err, TopologyError::NotClosedUnderUnion(vec!["a".into()], vec!["b".into()]));
        let err = validate_space(
            &["a", "b", "c"],
            &[e, vec!["a", "b"], vec!["b", "c"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert!(matches!(err, TopologyError::NotClosedUnderIntersection(..)));
    }

    #[test]
    fn unknown_and_duplicate_points() {
        let err = validate_space(&["a"], &[vec!["z"]]).unwrap_err();
        assert_eq!(err, TopologyError::UnknownPoint("z".into()));
        let err = validate_space::<_, &str>(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, TopologyError::DuplicatePoint("a".into()));
    }

    #[test]
    fn family_is_deduplicated_and_sorted() {
        let e: Vec<&str> = vec![];
        let t = validate_space(&["s", "r"], &[vec!["r", "s"], vec!["s"], e.clone(), vec!["s"], e]).unwrap();
        assert_eq!(t.opens().len(), 3);
        let shown: Vec<String> = t.opens().iter().map(|o| t.show(*o)).collect();
        assert_eq!(shown, ["{}", "{r, s}", "{s}"]);
    }

    #[test]
    fn min_nbhd_examples() {
        let t = ex1();
        let r = t.point("r").unwrap();
        let s = t.point("s").unwrap();
        assert_eq!(t.min_nbhd(s).unwrap(), t.open(&["s"]).unwrap());
        assert_eq!(t.min_nbhd(r).unwrap(), t.full());
        let d = FiniteSpace::discrete(2);
        assert_eq!(d.min_nbhd(Point(0)).unwrap(), d.open(&["a"]).unwrap());
        assert!(t.min_nbhd(Point(5)).is_err());
    }

    #[test]
    fn interior_examples() {
        let t = ex1();
        assert_eq!(t.interior(t.subset(&["r"]).unwrap()).unwrap(), OpenSet::EMPTY);
        assert_eq!(t.interior(t.full()).unwrap(), t.full());
        assert_eq!(t.interior(t.subset(&["s"]).unwrap()).unwrap(), t.subset(&["s"]).unwrap());
    }

    #[test]
    fn connectedness_examples() {
        let t = ex1();
        assert!(t.connected(t.full()).unwrap());
        let d = FiniteSpace::discrete(2);
        assert!(!d.connected(d.full()).unwrap());
        assert_eq!(d.components(d.full()).unwrap(), vec![OpenSet(1), OpenSet(2)]);
        assert!(d.connected(OpenSet::EMPTY).unwrap());
        assert!(d.components(OpenSet::EMPTY).unwrap().is_empty());
        assert!(t.connected(t.subset(&["r"]).unwrap()).is_err());
    }

    #[test]
    fn local_connectedness_examples() {
        assert!(ex1().is_locally_connected());
        assert!(FiniteSpace::discrete(3).is_locally_connected());
        assert!(FiniteSpace::indiscrete(3).is_locally_connected());
    }

    #[test]
    fn homogeneity_examples() {
        let t = ex1();
        assert!(!t.is_homogeneous(t.full()).unwrap());
        assert!(!t.is_locally_homogeneous().unwrap());
        assert!(t.is_homogeneous(t.open(&["s"]).unwrap()).unwrap());
        let d = FiniteSpace::discrete(2);
        assert!(d.is_homogeneous(d.full()).unwrap());
        assert!(d.is_locally_homogeneous().unwrap());
        assert!(FiniteSpace::indiscrete(3).is_locally_homogeneous().unwrap());
    }

    #[test]
    fn homogeneity_budget_is_reported() {
        let t = FiniteSpace::indiscrete(5);
        let err = t.is_homogeneous_with_budget(t.full(), 3).unwrap_err();
        assert_eq!(err, TopologyError::SearchBudgetExceeded(3));
    }

    #[test]
    fn open_order_is_lexicographic_in_labels() {
        let d = FiniteSpace::discrete(2);
        let shown: Vec<String> = d.opens().iter().map(|o| d.show(*o)).collect();
        assert_eq!(shown, ["{}", "{a}", "{a, b}", "{b}"]);
    }
}
