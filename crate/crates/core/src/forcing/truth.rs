use super::{atom_terms, EvalContext};
use crate::formulas::{Formula, Node};
use crate::terms::Term;
use crate::topology::OpenSet;

impl EvalContext {
    /// `tv` on a closed, desugared formula.
    pub(crate) fn tv_core(&self, phi: &Formula) -> OpenSet {
        if let Some(v) = self.tv.get(phi) {
            return v;
        }
        let full = self.full();
        let out = match phi.node() {
            Node::Bot => OpenSet::EMPTY,
            Node::Eq(a, b) => {
                let (s, t) = atom_terms(a, b);
                self.tv_eq(s, t)
            }
            Node::Mem(a, b) => {
                let (s, t) = atom_terms(a, b);
                self.tv_mem(s, t)
            }
            Node::And(p, q) => self.tv_core(p).intersection(self.tv_core(q)),
            Node::Or(p, q) => self.tv_core(p).union(self.tv_core(q)),
            Node::Imp(p, q) => {
                let h = self.interior(self.complement(self.tv_core(p)).union(self.tv_core(q)));
                if !phi.has_params() {
                    h
                } else {
                    let d = self.space().points().fold(OpenSet::EMPTY, |acc, r| {
                        let (pr, qr) = (self.settle_formula(p, r), self.settle_formula(q, r));
                        let hr = self.interior(self.complement(self.tv_core(&pr)).union(self.tv_core(&qr)));
                        if hr.contains(r) {
                            acc.union(OpenSet(r.bit()))
                        } else {
                            acc
                        }
                    });
                    h.intersection(self.interior(d))
                }
            }
            Node::Exists(v, p) => self
                .universe()
                .terms()
                .iter()
                .fold(OpenSet::EMPTY, |acc, sigma| acc.union(self.tv_core(&p.subst(v, sigma)))),
            Node::Forall(v, p) => {
                let all = |body: &Formula| {
                    self.universe().terms().iter().fold(full, |acc, sigma| acc.intersection(self.tv_core(&body.subst(v, sigma))))
                };
                let first = all(p);
                if !p.has_params() {
                    first
                } else {
                    let d = self.space().points().fold(OpenSet::EMPTY, |acc, r| {
                        if all(&self.settle_formula(p, r)).contains(r) {
                            acc.union(OpenSet(r.bit()))
                        } else {
                            acc
                        }
                    });
                    first.intersection(self.interior(d))
                }
            }
            _ => unreachable!("tv_core expects a desugared formula"),
        };
        self.tv.put(phi.clone(), out)
    }

    /// `tv(σ = τ)`.
    pub fn tv_eq(&self, sigma: &Term, tau: &Term) -> OpenSet {
        let key = (sigma.clone(), tau.clone());
        if let Some(v) = self.tv_eq.get(&key) {
            return v;
        }
        let mut s = self.full();
        for (si, ji) in sigma.open_entries() {
            s = s.intersection(self.complement(*ji).union(self.tv_mem(si, tau)));
        }
        for (tj, kj) in tau.open_entries() {
            s = s.intersection(self.complement(*kj).union(self.tv_mem(tj, sigma)));
        }
        for r in self.space().points() {
            if s.contains(r) && !self.settle_agree(sigma, tau, r) {
                s = s.difference(OpenSet(r.bit()));
            }
        }
        self.tv_eq.put(key, self.interior(s))
    }

    /// `tv(σ ∈ τ)`.
    pub fn tv_mem(&self, sigma: &Term, tau: &Term) -> OpenSet {
        let key = (sigma.clone(), tau.clone());
        if let Some(v) = self.tv_mem.get(&key) {
            return v;
        }
        let out = tau
            .open_entries()
            .iter()
            .fold(OpenSet::EMPTY, |acc, (ti, ji)| acc.union(ji.intersection(self.tv_eq(sigma, ti))));
        self.tv_mem.put(key, out)
    }
}
