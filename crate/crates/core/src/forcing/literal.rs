use super::{atom_terms, EvalContext};
use crate::formulas::{Formula, Node};
use crate::terms::Term;
use crate::topology::OpenSet;

impl EvalContext {
    /// Opens `O` with `r ∈ O ⊆ within`.
    fn nbhds_within(&self, within: OpenSet, r: crate::topology::Point) -> impl Iterator<Item = OpenSet> + '_ {
        self.space().opens_within(within).filter(move |o| o.contains(r))
    }

    /// Literal `J ⊩ φ` on a closed, desugared formula.
    pub(crate) fn forces_core(&self, j: OpenSet, phi: &Formula) -> bool {
        let key = (phi.clone(), j);
        if let Some(v) = self.forces.get(&key) {
            return v;
        }
        let u = self.universe().terms();
        let out = match phi.node() {
            Node::Bot => j.is_empty(),
            Node::Eq(a, b) => {
                let (s, t) = atom_terms(a, b);
                self.forces_eq(j, s, t)
            }
            Node::Mem(a, b) => {
                let (s, t) = atom_terms(a, b);
                self.forces_mem(j, s, t)
            }
            Node::And(p, q) => self.forces_core(j, p) && self.forces_core(j, q),
            Node::Or(p, q) => j.points().all(|r| {
                self.nbhds_within(j, r).any(|o| self.forces_core(o, p) || self.forces_core(o, q))
            }),
            Node::Imp(p, q) => {
                let ordinary = self
                    .space()
                    .opens_within(j)
                    .all(|jp| !self.forces_core(jp, p) || self.forces_core(jp, q));
                ordinary
                    && j.points().all(|r| {
                        let (pr, qr) = (self.settle_formula(p, r), self.settle_formula(q, r));
                        self.nbhds_within(j, r).any(|o| {
                            self.space().opens_within(o).all(|k| !self.forces_core(k, &pr) || self.forces_core(k, &qr))
                        })
                    })
            }
            Node::Exists(v, p) => j.points().all(|r| {
                self.nbhds_within(j, r).any(|o| u.iter().any(|sigma| self.forces_core(o, &p.subst(v, sigma))))
            }),
            Node::Forall(v, p) => {
                u.iter().all(|sigma| self.forces_core(j, &p.subst(v, sigma)))
                    && j.points().all(|r| {
                        let pr = self.settle_formula(p, r);
                        self.nbhds_within(j, r).any(|o| u.iter().all(|sigma| self.forces_core(o, &pr.subst(v, sigma))))
                    })
            }
            _ => unreachable!("forces_core expects a desugared formula"),
        };
        self.forces.put(key, out)
    }

    fn forces_eq(&self, j: OpenSet, sigma: &Term, tau: &Term) -> bool {
        let key = (sigma.clone(), tau.clone(), j);
        if let Some(v) = self.forces_eq.get(&key) {
            return v;
        }
        let out = sigma.open_entries().iter().all(|(si, ji)| self.forces_mem(j.intersection(*ji), si, tau))
            && tau.open_entries().iter().all(|(ti, ki)| self.forces_mem(j.intersection(*ki), ti, sigma))
            && j.points().all(|r| self.settle_agree(sigma, tau, r));
        self.forces_eq.put(key, out)
    }

    fn forces_mem(&self, j: OpenSet, sigma: &Term, tau: &Term) -> bool {
        let key = (sigma.clone(), tau.clone(), j);
        if let Some(v) = self.forces_mem.get(&key) {
            return v;
        }
        let out = j.points().all(|r| {
            tau.open_entries().iter().any(|(ti, ji)| {
                // J_r need only lie inside J_i, not inside J.
                self.nbhds_within(*ji, r).any(|o| self.forces_eq(o, sigma, ti))
            })
        });
        self.forces_mem.put(key, out)
    }
}
