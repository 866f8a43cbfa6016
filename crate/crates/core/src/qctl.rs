//! Root-quantified CTL* (`forall x . φ`, `exists x . φ`) under the
//! structure, tree and bisimulation semantics.
//!
//! Structure semantics ranges over the `2^|S|` labellings of `x` on `K`.
//! Bisimulation semantics ranges over all structures bisimilar to `K` on
//! `props(K)`, with `x` free. Tree semantics ranges over the x-labellings of
//! the computation tree. Only the structure semantics is decided by plain
//! enumeration; the other two are decided where a sound route applies.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bisim::quotient;
use crate::formula::{Formula, Quantifier};
use crate::kripke::{disjoint_union, duplicate, parallel_x, UnrollingMap};
use crate::mc::{check, eval_states};
use crate::{Error, Kripke, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    Structure,
    Tree,
    Bisimulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRoute {
    BruteForceY,
    KParallelX,
    Duality,
    DeterministicCollapse,
    PathFormulaEquivalence,
    ChainImplication,
    RegularWitness,
    Unknown,
}

impl QRoute {
    pub fn name(self) -> &'static str {
        match self {
            QRoute::BruteForceY => "BruteForceY",
            QRoute::KParallelX => "KParallelX",
            QRoute::Duality => "Duality",
            QRoute::DeterministicCollapse => "DeterministicCollapse",
            QRoute::PathFormulaEquivalence => "PathFormulaEquivalence",
            QRoute::ChainImplication => "ChainImplication",
            QRoute::RegularWitness => "RegularWitness",
            QRoute::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QWitness {
    /// A labelling `Y` of `x` on `K` itself.
    Labeling(Vec<alloc::string::String>),
    /// A structure over `props(K) ∪ {x}`, bisimilar to `K` on `props(K)`.
    Structure(Kripke),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QEvalResult {
    pub value: Option<bool>,
    pub route: QRoute,
    pub witness: Option<QWitness>,
}

impl QEvalResult {
    fn decided(value: bool, route: QRoute, witness: Option<QWitness>) -> Self {
        QEvalResult { value: Some(value), route, witness }
    }

    fn unknown() -> Self {
        QEvalResult { value: None, route: QRoute::Unknown, witness: None }
    }
}

fn split(q: &Formula) -> Result<(Quantifier, &str, &Formula)> {
    q.quantifier().ok_or(Error::NotQuantified)
}

fn fresh(k: &Kripke, x: &str) -> Result<()> {
    if k.prop_index(x).is_some() {
        Err(Error::PropClash(x.to_string()))
    } else {
        Ok(())
    }
}

pub fn eval(k: &Kripke, q: &Formula, sem: Semantics, limits: Limits) -> Result<QEvalResult> {
    match sem {
        Semantics::Structure => eval_structural(k, q, limits),
        Semantics::Tree => eval_tree(k, q, limits),
        Semantics::Bisimulation => eval_bisimulation(k, q, limits),
    }
}

pub fn eval_structural(k: &Kripke, q: &Formula, limits: Limits) -> Result<QEvalResult> {
    let (qt, x, body) = split(q)?;
    for (ys, kv) in k.x_variants(x, limits.states)? {
        let sat = check(&kv, body)?;
        let decisive = match qt {
            Quantifier::Forall => !sat,
            Quantifier::Exists => sat,
        };
        if decisive {
            let w = QWitness::Labeling(k.state_names(&ys));
            return Ok(QEvalResult::decided(sat, QRoute::BruteForceY, Some(w)));
        }
    }
    Ok(QEvalResult::decided(qt == Quantifier::Forall, QRoute::BruteForceY, None))
}

pub fn eval_bisimulation(k: &Kripke, q: &Formula, limits: Limits) -> Result<QEvalResult> {
    let (qt, x, body) = split(q)?;
    match qt {
        Quantifier::Forall => forall_bisim(k, x, body, limits),
        Quantifier::Exists => exists_bisim(k, x, body, limits),
    }
}

/// Candidate members of the bisimulation class of `K` carrying `x`, tried
/// in order: x-variants of `K`, of its quotient and of its 2-fold
/// duplicate, then `K || chi`.
pub(crate) fn find_member(k: &Kripke, x: &str, body: &Formula, want: bool, limits: Limits) -> Result<Option<Kripke>> {
    let mut bases = vec![k.clone(), quotient(k, k.props())?];
    if 2 * k.num_states() <= limits.states {
        bases.push(duplicate(k, 2)?);
    }
    for base in &bases {
        if base.num_states() > limits.states {
            continue;
        }
        for (_, kv) in base.x_variants(x, limits.states)? {
            if check(&kv, body)? == want {
                return Ok(Some(kv));
            }
        }
    }
    let kx = parallel_x(k, x)?;
    if want {
        return with_satisfying_init(k, &kx, body);
    }
    Ok(if check(&kx, body)? { None } else { Some(kx) })
}

/// `K || chi` restricted to one satisfying copy of each initial state of `K`.
fn with_satisfying_init(k: &Kripke, kx: &Kripke, body: &Formula) -> Result<Option<Kripke>> {
    let sat = eval_states(kx, body)?;
    let mut init = Vec::new();
    for &s in k.init() {
        match (0..2).map(|i| 2 * s + i).find(|&t| sat.contains(t)) {
            Some(t) => init.push(t),
            None => return Ok(None),
        }
    }
    Ok(Some(kx.with_init(init)?))
}

/// The structure a witness denotes: `Y` as an x-variant of `K`, or the
/// structure itself.
pub fn witness_structure(k: &Kripke, x: &str, w: &QWitness) -> Result<Kripke> {
    match w {
        QWitness::Labeling(names) => k.x_variant(x, &k.state_set(&names.iter().cloned().collect())?),
        QWitness::Structure(s) => Ok(s.clone()),
    }
}

/// `forall x . body` under bisimulation semantics.
pub fn forall_bisim(k: &Kripke, x: &str, body: &Formula, limits: Limits) -> Result<QEvalResult> {
    fresh(k, x)?;
    let xp = Formula::prop(x);
    if body.universal_in(&xp) {
        let kx = parallel_x(k, x)?;
        let v = check(&kx, body)?;
        let w = if v { None } else { Some(QWitness::Structure(kx)) };
        return Ok(QEvalResult::decided(v, QRoute::KParallelX, w));
    }
    if k.num_states() <= limits.states {
        let s = eval_structural(k, &Formula::forall(x, body.clone()), limits)?;
        if s.value == Some(false) {
            return Ok(QEvalResult::decided(false, QRoute::ChainImplication, s.witness));
        }
    }
    if let Some(w) = find_member(k, x, body, false, limits)? {
        return Ok(QEvalResult::decided(false, QRoute::RegularWitness, Some(QWitness::Structure(w))));
    }
    Ok(QEvalResult::unknown())
}

/// `exists x . body` under bisimulation semantics. Each initial state is
/// handled separately since members may be combined by disjoint union.
pub fn exists_bisim(k: &Kripke, x: &str, body: &Formula, limits: Limits) -> Result<QEvalResult> {
    fresh(k, x)?;
    if k.init().len() > 1 {
        let mut witness: Option<Kripke> = None;
        let mut route = QRoute::Unknown;
        for ks in k.rooted_at() {
            let r = exists_bisim(&ks, x, body, limits)?;
            match r.value {
                Some(false) => return Ok(r),
                None => return Ok(QEvalResult::unknown()),
                Some(true) => {
                    route = r.route;
                    let Some(QWitness::Structure(w)) = r.witness else { unreachable!("true carries a structure") };
                    witness = Some(match witness {
                        None => w,
                        Some(prev) => disjoint_union(&prev, &w)?,
                    });
                }
            }
        }
        return Ok(QEvalResult::decided(true, route, witness.map(QWitness::Structure)));
    }
    let xp = Formula::prop(x);
    if body.existential_in(&xp) {
        // Dual of the universal case: some member satisfies body iff some
        // copy of the initial state in K || chi does.
        let kx = parallel_x(k, x)?;
        return Ok(match with_satisfying_init(k, &kx, body)? {
            Some(w) => QEvalResult::decided(true, QRoute::Duality, Some(QWitness::Structure(w))),
            None => QEvalResult::decided(false, QRoute::Duality, None),
        });
    }
    if let Some(w) = find_member(k, x, body, true, limits)? {
        return Ok(QEvalResult::decided(true, QRoute::RegularWitness, Some(QWitness::Structure(w))));
    }
    Ok(QEvalResult::unknown())
}

pub fn eval_tree(k: &Kripke, q: &Formula, limits: Limits) -> Result<QEvalResult> {
    let (qt, x, body) = split(q)?;
    fresh(k, x)?;
    if qt == Quantifier::Exists {
        let neg = Formula::forall(x, Formula::not(body.clone()));
        let mut all = true;
        for ks in k.rooted_at() {
            match eval_tree(&ks, &neg, limits)?.value {
                Some(true) => return Ok(QEvalResult::decided(false, QRoute::Duality, None)),
                Some(false) => {}
                None => all = false,
            }
        }
        return Ok(if all { QEvalResult::decided(true, QRoute::Duality, None) } else { QEvalResult::unknown() });
    }
    if body.is_ltl() {
        let r = forall_bisim(k, x, body, limits)?;
        if r.value.is_some() {
            return Ok(QEvalResult { route: QRoute::PathFormulaEquivalence, ..r });
        }
    }
    if k.is_deterministic() {
        let kx = parallel_x(k, x)?;
        let v = check(&kx, &Formula::a(body.pathify()))?;
        let w = if v { None } else { Some(QWitness::Structure(kx)) };
        return Ok(QEvalResult::decided(v, QRoute::DeterministicCollapse, w));
    }
    if k.num_states() <= limits.states {
        let s = eval_structural(k, q, limits)?;
        if s.value == Some(false) {
            return Ok(QEvalResult::decided(false, QRoute::ChainImplication, s.witness));
        }
    }
    let b = forall_bisim(k, x, body, limits)?;
    if b.value == Some(true) {
        return Ok(QEvalResult::decided(true, QRoute::ChainImplication, None));
    }
    Ok(QEvalResult::unknown())
}

/// True when the unrolling map is valid and its source falsifies the body
/// of `forall x . body`, which refutes the formula under tree semantics.
pub fn refute_tree_with_witness(k: &Kripke, q: &Formula, u: &UnrollingMap) -> Result<bool> {
    let (qt, x, body) = split(q)?;
    if qt != Quantifier::Forall {
        return Err(Error::NotApplicable("tree refutation needs a universal quantifier".to_string()));
    }
    if u.target.clone().with_name(k.name()) != *k {
        return Err(Error::Precondition("unrolling target is not the checked structure".to_string()));
    }
    if !u.validate(x)? {
        return Err(Error::Precondition("invalid unrolling map".to_string()));
    }
    Ok(!check(&u.source, body)?)
}
