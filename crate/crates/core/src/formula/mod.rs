//! CTL* formulas with optional root propositional quantification.

mod parse;
mod render;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

pub use parse::parse;

/// `Y@M`: the state set `Y` of structure `M` used as an atomic formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetAtom {
    pub model: String,
    pub states: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Prop(String),
    Set(SetAtom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    A(Box<Formula>),
    E(Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Future(Box<Formula>),
    Globally(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Mixed,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FragmentInfo {
    pub is_ctl: bool,
    pub is_ltl: bool,
    pub is_actl_star: bool,
    pub is_ectl_star: bool,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analysis {
    pub fragment: FragmentInfo,
    pub occurrences: usize,
    pub polarity: Polarity,
    /// Every occurrence sits below universal path quantifiers only, after
    /// negations are pushed to the atoms.
    pub universal_in: bool,
    pub existential_in: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

macro_rules! unary {
    ($name:ident, $variant:ident) => {
        pub fn $name(f: Formula) -> Formula {
            Formula::$variant(Box::new(f))
        }
    };
}

macro_rules! binary {
    ($name:ident, $variant:ident) => {
        pub fn $name(a: Formula, b: Formula) -> Formula {
            Formula::$variant(Box::new(a), Box::new(b))
        }
    };
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(name.to_string())
    }

    pub fn set(model: &str, states: impl IntoIterator<Item = String>) -> Formula {
        Formula::Set(SetAtom { model: model.to_string(), states: states.into_iter().collect() })
    }

    unary!(not, Not);
    unary!(a, A);
    unary!(e, E);
    unary!(next, Next);
    unary!(future, Future);
    unary!(globally, Globally);
    binary!(and, And);
    binary!(or, Or);
    binary!(implies, Implies);
    binary!(until, Until);
    binary!(release, Release);

    pub fn ax(f: Formula) -> Formula {
        Formula::a(Formula::next(f))
    }
    pub fn ex(f: Formula) -> Formula {
        Formula::e(Formula::next(f))
    }
    pub fn af(f: Formula) -> Formula {
        Formula::a(Formula::future(f))
    }
    pub fn ef(f: Formula) -> Formula {
        Formula::e(Formula::future(f))
    }
    pub fn ag(f: Formula) -> Formula {
        Formula::a(Formula::globally(f))
    }
    pub fn eg(f: Formula) -> Formula {
        Formula::e(Formula::globally(f))
    }
    pub fn au(a: Formula, b: Formula) -> Formula {
        Formula::a(Formula::until(a, b))
    }
    pub fn eu(a: Formula, b: Formula) -> Formula {
        Formula::e(Formula::until(a, b))
    }
    pub fn ar(a: Formula, b: Formula) -> Formula {
        Formula::a(Formula::release(a, b))
    }
    pub fn er(a: Formula, b: Formula) -> Formula {
        Formula::e(Formula::release(a, b))
    }

    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(f))
    }
    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(f))
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Prop(_) | Set(_) => Vec::new(),
            Not(a) | A(a) | E(a) | Next(a) | Future(a) | Globally(a) => alloc::vec![&**a],
            Forall(_, a) | Exists(_, a) => alloc::vec![&**a],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | Release(a, b) => {
                alloc::vec![&**a, &**b]
            }
        }
    }

    fn map_children(&self, mut g: impl FnMut(&Formula) -> Formula) -> Formula {
        use Formula::*;
        let b = |f: Formula| Box::new(f);
        match self {
            True | False | Prop(_) | Set(_) => self.clone(),
            Not(a) => Not(b(g(a))),
            A(a) => A(b(g(a))),
            E(a) => E(b(g(a))),
            Next(a) => Next(b(g(a))),
            Future(a) => Future(b(g(a))),
            Globally(a) => Globally(b(g(a))),
            Forall(x, a) => Forall(x.clone(), b(g(a))),
            Exists(x, a) => Exists(x.clone(), b(g(a))),
            And(l, r) => And(b(g(l)), b(g(r))),
            Or(l, r) => Or(b(g(l)), b(g(r))),
            Implies(l, r) => Implies(b(g(l)), b(g(r))),
            Until(l, r) => Until(b(g(l)), b(g(r))),
            Release(l, r) => Release(b(g(l)), b(g(r))),
        }
    }

    /// One node per operator, quantifier and atom; `AX` counts as two.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let mut inner = BTreeSet::new();
                a.collect_props(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
            _ => self.children().iter().for_each(|c| c.collect_props(out)),
        }
    }

    pub fn has_set_atoms(&self) -> bool {
        matches!(self, Formula::Set(_)) || self.children().iter().any(|c| c.has_set_atoms())
    }

    pub fn has_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
            || self.children().iter().any(|c| c.has_quantifier())
    }

    pub fn has_path_quantifier(&self) -> bool {
        matches!(self, Formula::A(_) | Formula::E(_))
            || self.children().iter().any(|c| c.has_path_quantifier())
    }

    /// True when no temporal operator occurs outside a path quantifier.
    pub fn is_state_formula(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Prop(_) | Set(_) | A(_) | E(_) => true,
            Not(a) => a.is_state_formula(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.is_state_formula() && b.is_state_formula(),
            _ => false,
        }
    }

    pub fn is_ctl(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Prop(_) | Set(_) => true,
            Not(a) => a.is_ctl(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.is_ctl() && b.is_ctl(),
            A(p) | E(p) => match &**p {
                Next(a) | Future(a) | Globally(a) => a.is_ctl(),
                Until(a, b) | Release(a, b) => a.is_ctl() && b.is_ctl(),
                _ => false,
            },
            _ => false,
        }
    }

    /// `A ψ` with ψ free of path quantifiers.
    pub fn is_ltl(&self) -> bool {
        match self {
            Formula::A(p) => !p.has_path_quantifier() && !p.has_quantifier(),
            _ => false,
        }
    }

    /// The quantified variable, kind and body of a root-quantified formula.
    pub fn quantifier(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(x, b) => Some((Quantifier::Forall, x, b)),
            Formula::Exists(x, b) => Some((Quantifier::Exists, x, b)),
            _ => None,
        }
    }

    /// Replaces every maximal occurrence of `psi` by `chi`; returns the count.
    pub fn substitute(&self, psi: &Formula, chi: &Formula) -> (Formula, usize) {
        let mut n = 0;
        let out = self.subst_rec(psi, chi, &mut n);
        (out, n)
    }

    fn subst_rec(&self, psi: &Formula, chi: &Formula, n: &mut usize) -> Formula {
        if self == psi {
            *n += 1;
            return chi.clone();
        }
        self.map_children(|c| c.subst_rec(psi, chi, n))
    }

    pub fn occurrences(&self, psi: &Formula) -> usize {
        if self == psi {
            return 1;
        }
        self.children().iter().map(|c| c.occurrences(psi)).sum()
    }

    /// Negation normal form; `->` is expanded. Quantifiers are rejected.
    pub fn nnf(&self) -> Result<Formula> {
        self.nnf_rec(false)
    }

    fn nnf_rec(&self, neg: bool) -> Result<Formula> {
        use Formula::*;
        Ok(match self {
            True => if neg { False } else { True },
            False => if neg { True } else { False },
            Prop(_) | Set(_) => {
                if neg {
                    Formula::not(self.clone())
                } else {
                    self.clone()
                }
            }
            Not(a) => a.nnf_rec(!neg)?,
            And(a, b) => {
                let (l, r) = (a.nnf_rec(neg)?, b.nnf_rec(neg)?);
                if neg { Formula::or(l, r) } else { Formula::and(l, r) }
            }
            Or(a, b) => {
                let (l, r) = (a.nnf_rec(neg)?, b.nnf_rec(neg)?);
                if neg { Formula::and(l, r) } else { Formula::or(l, r) }
            }
            Implies(a, b) => {
                let (l, r) = (a.nnf_rec(!neg)?, b.nnf_rec(neg)?);
                if neg { Formula::and(l, r) } else { Formula::or(l, r) }
            }
            A(p) => {
                let q = p.nnf_rec(neg)?;
                if neg { Formula::e(q) } else { Formula::a(q) }
            }
            E(p) => {
                let q = p.nnf_rec(neg)?;
                if neg { Formula::a(q) } else { Formula::e(q) }
            }
            Next(a) => Formula::next(a.nnf_rec(neg)?),
            Until(a, b) => {
                let (l, r) = (a.nnf_rec(neg)?, b.nnf_rec(neg)?);
                if neg { Formula::release(l, r) } else { Formula::until(l, r) }
            }
            Release(a, b) => {
                let (l, r) = (a.nnf_rec(neg)?, b.nnf_rec(neg)?);
                if neg { Formula::until(l, r) } else { Formula::release(l, r) }
            }
            Future(a) => {
                let q = a.nnf_rec(neg)?;
                if neg { Formula::globally(q) } else { Formula::future(q) }
            }
            Globally(a) => {
                let q = a.nnf_rec(neg)?;
                if neg { Formula::future(q) } else { Formula::globally(q) }
            }
            Forall(..) | Exists(..) => return Err(Error::Quantified),
        })
    }

    /// Drops every path quantifier, leaving a path formula.
    pub fn pathify(&self) -> Formula {
        match self {
            Formula::A(p) | Formula::E(p) => p.pathify(),
            _ => self.map_children(|c| c.pathify()),
        }
    }

    /// Calls `visit(negated, quantifiers)` for each maximal occurrence of
    /// `psi`, where `quantifiers` lists enclosing path quantifiers as
    /// effective universality after negation pushing, outermost first.
    fn walk_occurrences(
        &self,
        psi: &Formula,
        neg: bool,
        quants: &mut Vec<bool>,
        visit: &mut dyn FnMut(bool, &[bool]),
    ) {
        use Formula::*;
        if self == psi {
            visit(neg, quants);
            return;
        }
        match self {
            Not(a) => a.walk_occurrences(psi, !neg, quants, visit),
            Implies(a, b) => {
                a.walk_occurrences(psi, !neg, quants, visit);
                b.walk_occurrences(psi, neg, quants, visit);
            }
            A(a) | E(a) => {
                quants.push(matches!(self, A(_)) != neg);
                a.walk_occurrences(psi, neg, quants, visit);
                quants.pop();
            }
            _ => {
                for c in self.children() {
                    c.walk_occurrences(psi, neg, quants, visit);
                }
            }
        }
    }

    pub fn polarity(&self, psi: &Formula) -> Polarity {
        let (mut pos, mut neg) = (false, false);
        self.walk_occurrences(psi, false, &mut Vec::new(), &mut |n, _| {
            if n {
                neg = true
            } else {
                pos = true
            }
        });
        match (pos, neg) {
            (false, false) => Polarity::Absent,
            (true, false) => Polarity::Positive,
            (false, true) => Polarity::Negative,
            (true, true) => Polarity::Mixed,
        }
    }

    pub fn universal_in(&self, psi: &Formula) -> bool {
        let mut ok = true;
        self.walk_occurrences(psi, false, &mut Vec::new(), &mut |_, q| {
            ok &= q.iter().all(|&u| u)
        });
        ok
    }

    pub fn existential_in(&self, psi: &Formula) -> bool {
        let mut ok = true;
        self.walk_occurrences(psi, false, &mut Vec::new(), &mut |_, q| {
            ok &= q.iter().all(|&u| !u)
        });
        ok
    }

    pub fn fragment(&self) -> FragmentInfo {
        let (actl, ectl) = match self.nnf() {
            Ok(n) => (!n.contains_node(&|f| matches!(f, Formula::E(_))), !n.contains_node(&|f| matches!(f, Formula::A(_)))),
            Err(_) => (false, false),
        };
        FragmentInfo {
            is_ctl: self.is_ctl(),
            is_ltl: self.is_ltl(),
            is_actl_star: actl,
            is_ectl_star: ectl,
            size: self.size(),
        }
    }

    fn contains_node(&self, pred: &dyn Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().iter().any(|c| c.contains_node(pred))
    }

    pub fn analyze(&self, psi: &Formula) -> Analysis {
        Analysis {
            fragment: self.fragment(),
            occurrences: self.occurrences(psi),
            polarity: self.polarity(psi),
            universal_in: self.universal_in(psi),
            existential_in: self.existential_in(psi),
        }
    }

    /// Maximal subformulas rooted at a path quantifier that is existential
    /// after negation pushing.
    pub fn existential_subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect_existential(false, &mut out);
        out
    }

    fn collect_existential(&self, neg: bool, out: &mut Vec<Formula>) {
        use Formula::*;
        match self {
            A(_) | E(_) if matches!(self, E(_)) != neg => {
                if !out.contains(self) {
                    out.push(self.clone());
                }
            }
            Not(a) => a.collect_existential(!neg, out),
            Implies(a, b) => {
                a.collect_existential(!neg, out);
                b.collect_existential(neg, out);
            }
            _ => self.children().iter().for_each(|c| c.collect_existential(neg, out)),
        }
    }

    /// All subformulas, preorder, without duplicates.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        for c in self.children() {
            c.collect_subformulas(out);
        }
    }
}
