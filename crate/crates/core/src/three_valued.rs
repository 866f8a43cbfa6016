//! Kleene three-valued logic and checking over partially labelled structures.

use core::fmt;

/// Truth order `False < Maybe < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truth {
    False,
    Maybe,
    True,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Maybe => None,
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Maybe => Truth::Maybe,
        }
    }

    pub fn and(self, o: Truth) -> Truth {
        self.min(o)
    }

    pub fn or(self, o: Truth) -> Truth {
        self.max(o)
    }

    pub fn implies(self, o: Truth) -> Truth {
        self.not().or(o)
    }

    /// Information order: `Maybe` is below both classical values.
    pub fn info_le(self, o: Truth) -> bool {
        self == Truth::Maybe || self == o
    }

    pub fn symbol(self) -> char {
        match self {
            Truth::True => 'T',
            Truth::Maybe => 'M',
            Truth::False => 'F',
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bisim::Relation;
use crate::formula::Formula;
use crate::qctl::{exists_bisim, forall_bisim, witness_structure};
use crate::vacuity::{fresh_prop, Bounds, Route, Status, Verdict, Witness};
use crate::{Error, Kripke, Limits, Result};

fn pre(k: &Kripke, z: &[Truth], universal: bool) -> Vec<Truth> {
    (0..k.num_states())
        .map(|s| {
            let it = k.succ(s).iter().map(|&t| z[t]);
            if universal {
                it.fold(Truth::True, Truth::and)
            } else {
                it.fold(Truth::False, Truth::or)
            }
        })
        .collect()
}

fn fixpoint(k: &Kripke, a: &[Truth], b: &[Truth], universal: bool, release: bool) -> Vec<Truth> {
    let mut z = vec![if release { Truth::True } else { Truth::False }; k.num_states()];
    loop {
        let p = pre(k, &z, universal);
        let next: Vec<Truth> = (0..z.len())
            .map(|s| if release { b[s].and(a[s].or(p[s])) } else { b[s].or(a[s].and(p[s])) })
            .collect();
        if next == z {
            return z;
        }
        z = next;
    }
}

/// Per-state Kleene value of a CTL formula, computed bottom-up.
pub fn eval_compositional(k: &Kripke, f: &Formula) -> Result<Vec<Truth>> {
    use Formula::*;
    let n = k.num_states();
    let lift = |v: Vec<Truth>, g: fn(Truth) -> Truth| v.into_iter().map(g).collect::<Vec<_>>();
    Ok(match f {
        True => vec![Truth::True; n],
        False => vec![Truth::False; n],
        Prop(p) => {
            let i = k.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone()))?;
            (0..n).map(|s| k.label(s, i)).collect()
        }
        Set(a) => {
            if a.model != k.name() {
                return Err(Error::UnknownModel(a.model.clone()));
            }
            let ys = k.state_set(&a.states)?;
            (0..n).map(|s| Truth::from_bool(ys.contains(s))).collect()
        }
        Not(a) => lift(eval_compositional(k, a)?, Truth::not),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            let (x, y) = (eval_compositional(k, a)?, eval_compositional(k, b)?);
            (0..n)
                .map(|s| match f {
                    And(..) => x[s].and(y[s]),
                    Or(..) => x[s].or(y[s]),
                    _ => x[s].implies(y[s]),
                })
                .collect()
        }
        A(p) | E(p) if f.is_ctl() => {
            let u = matches!(f, A(_));
            match &**p {
                Next(a) => pre(k, &eval_compositional(k, a)?, u),
                Until(a, b) => fixpoint(k, &eval_compositional(k, a)?, &eval_compositional(k, b)?, u, false),
                Release(a, b) => fixpoint(k, &eval_compositional(k, a)?, &eval_compositional(k, b)?, u, true),
                Future(a) => fixpoint(k, &vec![Truth::True; n], &eval_compositional(k, a)?, u, false),
                Globally(a) => fixpoint(k, &vec![Truth::False; n], &eval_compositional(k, a)?, u, true),
                _ => unreachable!("is_ctl"),
            }
        }
        Forall(..) | Exists(..) => return Err(Error::Quantified),
        _ => return Err(Error::NotCtl(format!("{}", f))),
    })
}

/// Meet over the initial states.
pub fn check_compositional(k: &Kripke, f: &Formula) -> Result<Truth> {
    let v = eval_compositional(k, f)?;
    Ok(k.init().iter().map(|&s| v[s]).fold(Truth::True, Truth::and))
}

/// Greatest refinement relation between `less` and `more`: labels grow in the
/// information order, transitions match both ways, and initial states are
/// related in both directions.
pub fn is_refinement(less: &Kripke, more: &Kripke) -> Result<Option<Relation>> {
    let idx = less
        .props()
        .iter()
        .map(|p| more.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone())))
        .collect::<Result<Vec<_>>>()?;
    if idx.len() != more.props().len() {
        return Err(Error::Structure("refinement needs the same propositions".to_string()));
    }
    let (na, nb) = (less.num_states(), more.num_states());
    let mut r = vec![vec![false; nb]; na];
    for (s, row) in r.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            *cell = idx.iter().enumerate().all(|(p, &q)| less.label(s, p).info_le(more.label(t, q)));
        }
    }
    loop {
        let mut changed = false;
        for s in 0..na {
            for t in 0..nb {
                if !r[s][t] {
                    continue;
                }
                let forth = less.succ(s).iter().all(|&s2| more.succ(t).iter().any(|&t2| r[s2][t2]));
                let back = more.succ(t).iter().all(|&t2| less.succ(s).iter().any(|&s2| r[s2][t2]));
                if !(forth && back) {
                    r[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let ok = less.init().iter().all(|&s| more.init().iter().any(|&t| r[s][t]))
        && more.init().iter().all(|&t| less.init().iter().any(|&s| r[s][t]));
    if !ok {
        return Ok(None);
    }
    let pairs = (0..na).flat_map(|s| (0..nb).map(move |t| (s, t))).filter(|&(s, t)| r[s][t]).collect();
    Ok(Some(Relation { left: less.name().into(), right: more.name().into(), pairs }))
}

/// `K` with the fresh proposition `x` set to `Maybe` everywhere.
pub fn lift_kx(k: &Kripke, x: &str) -> Result<Kripke> {
    k.add_prop(x, &vec![Truth::Maybe; k.num_states()])
}

/// Every classical resolution of the `Maybe` labels.
pub fn labeling_completions(k: &Kripke, limits: Limits) -> Result<Vec<Kripke>> {
    let holes: Vec<(usize, usize)> = (0..k.num_states())
        .flat_map(|s| (0..k.props().len()).map(move |p| (s, p)))
        .filter(|&(s, p)| k.label(s, p) == Truth::Maybe)
        .collect();
    if holes.len() > limits.maybes {
        return Err(Error::BoundExceeded { what: "Maybe labels", size: holes.len(), bound: limits.maybes });
    }
    let mut out = Vec::with_capacity(1 << holes.len());
    for m in 0u64..1 << holes.len() {
        let mut labels: Vec<Vec<Truth>> = (0..k.num_states()).map(|s| k.labels(s).to_vec()).collect();
        for (i, &(s, p)) in holes.iter().enumerate() {
            labels[s][p] = Truth::from_bool(m >> i & 1 == 1);
        }
        out.push(k.relabel(labels)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThoroughResult {
    pub value: Option<Truth>,
    /// A completion satisfying the formula, when one was exhibited.
    pub satisfying: Option<Kripke>,
    /// A completion falsifying the formula, when one was exhibited.
    pub falsifying: Option<Kripke>,
}

/// Thorough value of `phi` on `K` with `x` unknown. Completions are read as
/// all structures bisimilar to `K` on `props(K)` with `x` free.
pub fn thorough_kx(k: &Kripke, x: &str, phi: &Formula, limits: Limits) -> Result<ThoroughResult> {
    let all = forall_bisim(k, x, phi, limits)?;
    if all.value == Some(true) {
        return Ok(ThoroughResult { value: Some(Truth::True), satisfying: None, falsifying: None });
    }
    let some = exists_bisim(k, x, phi, limits)?;
    if some.value == Some(false) {
        return Ok(ThoroughResult { value: Some(Truth::False), satisfying: None, falsifying: None });
    }
    let falsifying = all.witness.as_ref().map(|w| witness_structure(k, x, w)).transpose()?;
    let satisfying = some.witness.as_ref().map(|w| witness_structure(k, x, w)).transpose()?;
    let value = if all.value == Some(false) && some.value == Some(true) { Some(Truth::Maybe) } else { None };
    Ok(ThoroughResult { value, satisfying, falsifying })
}

/// Vacuity of `psi` in `phi` on `K` read off the thorough value of
/// `phi[psi <- x]` with `x` unknown.
pub fn vacuity_via_thorough(phi: &Formula, psi: &Formula, k: &Kripke, limits: Limits) -> Result<Verdict> {
    let x = fresh_prop(k, phi);
    let (phix, n) = phi.substitute(psi, &Formula::prop(&x));
    if n == 0 {
        return Ok(Verdict::vacuous(Route::AbsentSubformula));
    }
    let lifted = lift_kx(k, &x)?;
    let comp = if phix.is_ctl() { Some(check_compositional(&lifted, &phix)?) } else { None };
    if matches!(comp, Some(Truth::True | Truth::False)) {
        return Ok(Verdict::vacuous(Route::Compositional3));
    }
    let r = thorough_kx(k, &x, &phix, limits)?;
    Ok(match r.value {
        Some(Truth::True | Truth::False) => Verdict::vacuous(Route::Thorough),
        Some(Truth::Maybe) => Verdict {
            status: Status::NonVacuous,
            route: Route::Thorough,
            witness: Some(Witness {
                prop: x,
                formula: phix,
                satisfying: r.satisfying.expect("Maybe carries both witnesses"),
                falsifying: r.falsifying.expect("Maybe carries both witnesses"),
            }),
            bounds: None,
        },
        None => Verdict {
            status: Status::Unknown,
            route: Route::Undecided,
            witness: None,
            bounds: Some(Bounds { compositional: comp, labeling: None }),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::{duplicate, KripkeBuilder};

    fn l() -> Kripke {
        KripkeBuilder::new("L").prop("p").state("a0", &["p"]).init("a0").trans("a0", "a0").build().unwrap()
    }

    fn p() -> Kripke {
        KripkeBuilder::new("P")
            .prop("p")
            .prop("q")
            .state("c0", &["p"])
            .state("c1", &["q"])
            .init("c0")
            .trans("c0", "c1")
            .trans("c1", "c1")
            .build()
            .unwrap()
    }

    #[test]
    fn kleene_tables() {
        use Truth::*;
        assert_eq!(Maybe.and(False), False);
        assert_eq!(Maybe.or(True), True);
        assert_eq!(Maybe.not(), Maybe);
        assert!(Maybe.info_le(True) && Maybe.info_le(False) && !True.info_le(False));
    }

    #[test]
    fn compositional_on_lifted() {
        let lx = lift_kx(&l(), "x").unwrap();
        assert_eq!(check_compositional(&lx, &parse("AG ((AX x) | (AX !x))").unwrap()).unwrap(), Truth::Maybe);
        assert_eq!(check_compositional(&lx, &parse("AG (x -> x)").unwrap()).unwrap(), Truth::Maybe);
        assert_eq!(check_compositional(&lx, &parse("AG p | x").unwrap()).unwrap(), Truth::True);
        assert!(matches!(check_compositional(&lx, &parse("A(X x | X !x)").unwrap()), Err(Error::NotCtl(_))));
    }

    #[test]
    fn thorough_values() {
        let lim = Limits::default();
        let q = |s: &str| parse(s).unwrap();
        assert_eq!(thorough_kx(&l(), "x", &q("AG ((AX x) | (AX !x))"), lim).unwrap().value, Some(Truth::Maybe));
        assert_eq!(thorough_kx(&l(), "x", &q("A((X x) | (X !x))"), lim).unwrap().value, Some(Truth::True));
        assert_eq!(thorough_kx(&p(), "x", &q("AG (x -> x)"), lim).unwrap().value, Some(Truth::True));
    }

    #[test]
    fn refinement_matches_bisimulation_for_completions() {
        let lx = lift_kx(&l(), "x").unwrap();
        let d = duplicate(&l(), 2).unwrap();
        let mixed = d.x_variant("x", &crate::StateSet::from_indices(2, [1])).unwrap();
        assert!(is_refinement(&lx, &mixed).unwrap().is_some());
        let wrong = KripkeBuilder::new("W")
            .prop("p")
            .prop("x")
            .state("w", &[])
            .init("w")
            .trans("w", "w")
            .build()
            .unwrap();
        assert!(is_refinement(&lx, &wrong).unwrap().is_none());
        assert_eq!(labeling_completions(&lx, Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn thorough_vacuity() {
        let lim = Limits::default();
        let v = vacuity_via_thorough(&parse("AG ((AX p) | (AX !p))").unwrap(), &parse("p").unwrap(), &l(), lim).unwrap();
        assert_eq!(v.status, Status::NonVacuous);
        let v = vacuity_via_thorough(&parse("A((X p) | (X !p))").unwrap(), &parse("p").unwrap(), &l(), lim).unwrap();
        assert_eq!(v.status, Status::Vacuous);
    }
}
