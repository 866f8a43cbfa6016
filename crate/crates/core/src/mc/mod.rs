//! Explicit-state CTL* model checking.
//!
//! CTL-shaped subformulas are computed by fixpoint iteration; other path
//! formulas go through the atom-graph construction in [`tableau`].

mod ctl;
pub mod tableau;

use alloc::format;
use alloc::vec::Vec;

use crate::bisim::greatest_bisimulation;
use crate::formula::{Formula, SetAtom};
use crate::{Error, Kripke, Result, StateSet};

pub use tableau::Lasso;

/// Evaluates state formulas on a classical structure. Set atoms naming a
/// registered origin structure are read through the greatest bisimulation
/// between the origin and the checked structure over the origin's props.
pub struct Checker<'a> {
    k: &'a Kripke,
    origins: Vec<&'a Kripke>,
}

impl<'a> Checker<'a> {
    pub fn new(k: &'a Kripke) -> Self {
        Checker { k, origins: Vec::new() }
    }

    pub fn with_origin(mut self, origin: &'a Kripke) -> Self {
        self.origins.push(origin);
        self
    }

    pub fn structure(&self) -> &Kripke {
        self.k
    }

    fn classical(&self) -> Result<()> {
        if self.k.is_classical() {
            Ok(())
        } else {
            Err(Error::NonClassical)
        }
    }

    pub fn eval(&self, f: &Formula) -> Result<StateSet> {
        self.classical()?;
        self.eval_rec(f)
    }

    /// All initial states satisfy `f`.
    pub fn check(&self, f: &Formula) -> Result<bool> {
        let set = self.eval(f)?;
        Ok(self.k.init().iter().all(|&s| set.contains(s)))
    }

    fn set_atom(&self, a: &SetAtom) -> Result<StateSet> {
        if a.model == self.k.name() {
            return self.k.state_set(&a.states);
        }
        let origin = self
            .origins
            .iter()
            .find(|o| o.name() == a.model)
            .ok_or_else(|| Error::UnknownModel(a.model.clone()))?;
        let ys = origin.state_set(&a.states)?;
        let rel = greatest_bisimulation(origin, self.k, origin.props())?;
        Ok(StateSet::from_indices(
            self.k.num_states(),
            rel.pairs.iter().filter(|(s, _)| ys.contains(*s)).map(|&(_, t)| t),
        ))
    }

    fn eval_rec(&self, f: &Formula) -> Result<StateSet> {
        use Formula::*;
        let n = self.k.num_states();
        Ok(match f {
            True => StateSet::full(n),
            False => StateSet::empty(n),
            Prop(p) => self.k.prop_set(self.k.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone()))?),
            Set(a) => self.set_atom(a)?,
            Not(a) => self.eval_rec(a)?.complement(),
            And(a, b) => self.eval_rec(a)?.intersect(&self.eval_rec(b)?),
            Or(a, b) => self.eval_rec(a)?.union(&self.eval_rec(b)?),
            Implies(a, b) => self.eval_rec(a)?.complement().union(&self.eval_rec(b)?),
            E(p) => self.eval_path(p, false)?,
            A(p) => self.eval_path(p, true)?,
            Next(_) | Until(..) | Release(..) | Future(_) | Globally(_) => {
                return Err(Error::NotStateFormula(format!("{}", f)))
            }
            Forall(..) | Exists(..) => return Err(Error::Quantified),
        })
    }

    fn eval_path(&self, p: &Formula, universal: bool) -> Result<StateSet> {
        use Formula::*;
        let k = self.k;
        let st = |g: &Formula| g.is_state_formula();
        Ok(match p {
            Next(a) if st(a) => {
                let a = self.eval_rec(a)?;
                if universal { ctl::pre_a(k, &a) } else { ctl::pre_e(k, &a) }
            }
            Until(a, b) if st(a) && st(b) => {
                let (a, b) = (self.eval_rec(a)?, self.eval_rec(b)?);
                if universal { ctl::au(k, &a, &b) } else { ctl::eu(k, &a, &b) }
            }
            Release(a, b) if st(a) && st(b) => {
                let (a, b) = (self.eval_rec(a)?, self.eval_rec(b)?);
                if universal { ctl::ar(k, &a, &b) } else { ctl::er(k, &a, &b) }
            }
            Future(a) if st(a) => {
                let a = self.eval_rec(a)?;
                let all = StateSet::full(k.num_states());
                if universal { ctl::au(k, &all, &a) } else { ctl::eu(k, &all, &a) }
            }
            Globally(a) if st(a) => {
                let a = self.eval_rec(a)?;
                let none = StateSet::empty(k.num_states());
                if universal { ctl::ar(k, &none, &a) } else { ctl::er(k, &none, &a) }
            }
            g if st(g) => self.eval_rec(g)?,
            g => {
                let graph = tableau::Graph::build(self, g, universal)?;
                let e = graph.satisfiable_states();
                if universal { e.complement() } else { e }
            }
        })
    }

    /// A lasso from `s` satisfying path formula `p` (or violating it when
    /// `negate`), if one exists.
    pub fn lasso(&self, p: &Formula, negate: bool, s: usize) -> Result<Option<Lasso>> {
        self.classical()?;
        let graph = tableau::Graph::build(self, p, negate)?;
        Ok(graph.witness(s))
    }
}

pub fn eval_states(k: &Kripke, f: &Formula) -> Result<StateSet> {
    Checker::new(k).eval(f)
}

pub fn check(k: &Kripke, f: &Formula) -> Result<bool> {
    Checker::new(k).check(f)
}

/// A path witness for `E ψ` or a counterexample path for `A ψ` at the first
/// initial state where one exists.
pub fn path_evidence(k: &Kripke, f: &Formula) -> Result<Option<(usize, Lasso)>> {
    let (p, negate) = match f {
        Formula::E(p) => (&**p, false),
        Formula::A(p) => (&**p, true),
        _ => return Ok(None),
    };
    let c = Checker::new(k);
    for &s in k.init() {
        if let Some(l) = c.lasso(p, negate, s)? {
            return Ok(Some((s, l)));
        }
    }
    Ok(None)
}
