//! Vacuity of a formula in a subformula, and the decision procedures for
//! bisimulation vacuity.
//!
//! Throughout, `K ⊨ φ` means every initial state satisfies `φ`; a structure
//! falsifies `φ` when some initial state does not.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bisim::bisimilar_over;
use crate::formula::{Formula, Polarity};
use crate::kripke::{enumerate_all, parallel_x};
use crate::mc::{check, eval_states};
use crate::qctl::{exists_bisim, find_member};
use crate::three_valued::{check_compositional, lift_kx, vacuity_via_thorough, Truth};
use crate::{Error, Kripke, Limits, Result, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Vacuous,
    NonVacuous,
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Vacuous => "Vacuous",
            Status::NonVacuous => "NonVacuous",
            Status::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    AbsentSubformula,
    Monotone,
    SatParallelX,
    FalParallelX,
    StructureRefutation,
    VariantRefutation,
    /// Valid or unsatisfiable over every structure with at most this many states.
    BoundedValidity(usize),
    /// Structure vacuity only; not a bisimulation verdict.
    Structure,
    Compositional3,
    Thorough,
    Undecided,
}

impl Route {
    pub fn name(self) -> String {
        match self {
            Route::AbsentSubformula => "AbsentSubformula".into(),
            Route::Monotone => "Monotone".into(),
            Route::SatParallelX => "SatParallelX".into(),
            Route::FalParallelX => "FalParallelX".into(),
            Route::StructureRefutation => "StructureRefutation".into(),
            Route::VariantRefutation => "VariantRefutation".into(),
            Route::BoundedValidity(n) => format!("BoundedValidity({})", n),
            Route::Structure => "Structure".into(),
            Route::Compositional3 => "Compositional3".into(),
            Route::Thorough => "Thorough".into(),
            Route::Undecided => "Undecided".into(),
        }
    }
}

/// Two structures carrying the fresh proposition `prop`, both bisimilar to
/// `K` over `props(K)`, one satisfying `formula = φ[ψ←prop]` and one
/// falsifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub prop: String,
    pub formula: Formula,
    pub satisfying: Kripke,
    pub falsifying: Kripke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Compositional value on `K` with `x` unknown.
    pub compositional: Option<Truth>,
    /// Agreement of the x-variants of `K` itself.
    pub labeling: Option<Truth>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub route: Route,
    pub witness: Option<Witness>,
    pub bounds: Option<Bounds>,
}

impl Verdict {
    pub fn vacuous(route: Route) -> Verdict {
        Verdict { status: Status::Vacuous, route, witness: None, bounds: None }
    }

    fn refuted(route: Route, w: Witness) -> Verdict {
        Verdict { status: Status::NonVacuous, route, witness: Some(w), bounds: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub limits: Limits,
    pub bounded_validity: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Via {
    Auto,
    Mono,
    SatX,
    Thorough,
    Structure,
}

/// A proposition name occurring in neither `K` nor `phi`.
pub fn fresh_prop(k: &Kripke, phi: &Formula) -> String {
    let used = phi.props();
    let taken = |c: &str| k.prop_index(c).is_some() || used.contains(c);
    if !taken("x") {
        return "x".to_string();
    }
    (1..).map(|i| format!("x{}", i)).find(|c| !taken(c)).expect("unbounded")
}

fn require(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<()> {
    if !k.is_classical() {
        return Err(Error::NonClassical);
    }
    if phi.has_quantifier() || psi.has_quantifier() {
        return Err(Error::Quantified);
    }
    if !psi.is_state_formula() {
        return Err(Error::PathSubformula(format!("{}", psi)));
    }
    Ok(())
}

struct Prepared {
    x: String,
    phix: Formula,
    occurrences: usize,
}

fn prepare(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<Prepared> {
    require(phi, psi, k)?;
    let x = fresh_prop(k, phi);
    let (phix, occurrences) = phi.substitute(psi, &Formula::prop(&x));
    Ok(Prepared { x, phix, occurrences })
}

/// `φ[ψ←true]` and `φ[ψ←false]` get the same verdict on `K`.
pub fn constant_vacuous(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<bool> {
    require(phi, psi, k)?;
    let (t, f) = constant_verdicts(phi, psi, k)?;
    Ok(t == f)
}

fn constant_verdicts(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<(bool, bool)> {
    let t = check(k, &phi.substitute(psi, &Formula::True).0)?;
    let f = check(k, &phi.substitute(psi, &Formula::False).0)?;
    Ok((t, f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureVacuity {
    pub vacuous: bool,
    /// A set `Y` with `K ⊨ φ[ψ←Y]`, when one exists.
    pub satisfying: Option<StateSet>,
    /// A set `Y` with `K ⊭ φ[ψ←Y]`, when one exists.
    pub falsifying: Option<StateSet>,
}

/// Every `Y ⊆ S` gives the same verdict for `φ[ψ←Y]`.
pub fn structure_vacuous(phi: &Formula, psi: &Formula, k: &Kripke, limits: Limits) -> Result<StructureVacuity> {
    let pr = prepare(phi, psi, k)?;
    let (mut sat, mut fal) = (None, None);
    for (ys, kv) in k.x_variants(&pr.x, limits.states)? {
        let slot = if check(&kv, &pr.phix)? { &mut sat } else { &mut fal };
        if slot.is_none() {
            *slot = Some(ys);
        }
        if sat.is_some() && fal.is_some() {
            break;
        }
    }
    Ok(StructureVacuity { vacuous: sat.is_none() || fal.is_none(), satisfying: sat, falsifying: fal })
}

pub fn syntactic_monotone(phi: &Formula, psi: &Formula) -> bool {
    phi.occurrences(psi) == 1 || matches!(phi.polarity(psi), Polarity::Positive | Polarity::Negative)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonVacuity {
    pub vacuous: bool,
    /// `phi` was syntactically monotone in `psi`; otherwise the answer only
    /// reflects the constant substitutions.
    pub gated: bool,
}

pub fn is_mon_vacuous(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<MonVacuity> {
    Ok(MonVacuity { vacuous: constant_vacuous(phi, psi, k)?, gated: syntactic_monotone(phi, psi) })
}

fn sat_applicable(phi: &Formula, psi: &Formula) -> bool {
    phi.fragment().is_actl_star || phi.universal_in(psi)
}

fn fal_applicable(phi: &Formula, psi: &Formula) -> bool {
    phi.fragment().is_ectl_star || phi.existential_in(psi)
}

/// Vacuous satisfaction via `K || chi ⊨ φ[ψ←x]`.
pub fn is_sat_vacuous(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<bool> {
    let pr = prepare(phi, psi, k)?;
    if !check(k, phi)? {
        return Err(Error::Precondition("the structure does not satisfy the formula".into()));
    }
    if !sat_applicable(phi, psi) {
        return Err(Error::NotApplicable("subformula is not universal".into()));
    }
    check(&parallel_x(k, &pr.x)?, &pr.phix)
}

/// Vacuous falsification: no initial state of `K` has a copy in `K || chi`
/// satisfying `φ[ψ←x]`.
pub fn is_fal_vacuous(phi: &Formula, psi: &Formula, k: &Kripke) -> Result<bool> {
    let pr = prepare(phi, psi, k)?;
    if check(k, phi)? {
        return Err(Error::Precondition("the structure satisfies the formula".into()));
    }
    if !fal_applicable(phi, psi) {
        return Err(Error::NotApplicable("subformula is not existential".into()));
    }
    let kx = parallel_x(k, &pr.x)?;
    let sat = eval_states(&kx, &pr.phix)?;
    Ok(!k.init().iter().any(|&s| sat.contains(2 * s) || sat.contains(2 * s + 1)))
}

fn variant(k: &Kripke, x: &str, ys: &StateSet) -> Result<Kripke> {
    k.x_variant(x, ys)
}

fn constant_witness(k: &Kripke, pr: &Prepared, t: bool) -> Result<Witness> {
    let n = k.num_states();
    let (all, none) = (variant(k, &pr.x, &StateSet::full(n))?, variant(k, &pr.x, &StateSet::empty(n))?);
    let (satisfying, falsifying) = if t { (all, none) } else { (none, all) };
    Ok(Witness { prop: pr.x.clone(), formula: pr.phix.clone(), satisfying, falsifying })
}

/// `K` with `x` labelling exactly the states satisfying `psi`; it agrees
/// with `K` on `phi`.
fn own_variant(k: &Kripke, psi: &Formula, x: &str) -> Result<Kripke> {
    variant(k, x, &eval_states(k, psi)?)
}

pub fn decide(phi: &Formula, psi: &Formula, k: &Kripke, opts: Options) -> Result<Verdict> {
    decide_via(phi, psi, k, Via::Auto, opts)
}

/// Runs one named procedure, or the full dispatcher for `Via::Auto`.
pub fn decide_via(phi: &Formula, psi: &Formula, k: &Kripke, via: Via, opts: Options) -> Result<Verdict> {
    let pr = prepare(phi, psi, k)?;
    if pr.occurrences == 0 {
        return Ok(Verdict::vacuous(Route::AbsentSubformula));
    }
    match via {
        Via::Auto => auto(phi, psi, k, &pr, opts),
        Via::Mono => {
            if !syntactic_monotone(phi, psi) {
                return Err(Error::NotApplicable("formula is not syntactically monotone in the subformula".into()));
            }
            monotone(phi, psi, k, &pr)
        }
        Via::SatX => {
            if check(k, phi)? {
                sat_route(phi, psi, k, &pr)
            } else {
                fal_route(phi, psi, k, &pr, opts)
            }
        }
        Via::Thorough => vacuity_via_thorough(phi, psi, k, opts.limits),
        Via::Structure => {
            let sv = structure_vacuous(phi, psi, k, opts.limits)?;
            if sv.vacuous {
                Ok(Verdict::vacuous(Route::Structure))
            } else {
                Ok(Verdict::refuted(Route::Structure, structure_witness(k, &pr, &sv)?))
            }
        }
    }
}

fn monotone(phi: &Formula, psi: &Formula, k: &Kripke, pr: &Prepared) -> Result<Verdict> {
    let (t, f) = constant_verdicts(phi, psi, k)?;
    if t == f {
        Ok(Verdict::vacuous(Route::Monotone))
    } else {
        Ok(Verdict::refuted(Route::Monotone, constant_witness(k, pr, t)?))
    }
}

fn sat_route(phi: &Formula, psi: &Formula, k: &Kripke, pr: &Prepared) -> Result<Verdict> {
    if is_sat_vacuous(phi, psi, k)? {
        return Ok(Verdict::vacuous(Route::SatParallelX));
    }
    let w = Witness {
        prop: pr.x.clone(),
        formula: pr.phix.clone(),
        satisfying: own_variant(k, psi, &pr.x)?,
        falsifying: parallel_x(k, &pr.x)?,
    };
    Ok(Verdict::refuted(Route::SatParallelX, w))
}

fn fal_route(phi: &Formula, psi: &Formula, k: &Kripke, pr: &Prepared, opts: Options) -> Result<Verdict> {
    if is_fal_vacuous(phi, psi, k)? {
        return Ok(Verdict::vacuous(Route::FalParallelX));
    }
    let r = exists_bisim(k, &pr.x, &pr.phix, opts.limits)?;
    let satisfying = match r.witness {
        Some(w) => crate::qctl::witness_structure(k, &pr.x, &w)?,
        None => return Err(Error::Precondition("existential witness missing".into())),
    };
    let w = Witness {
        prop: pr.x.clone(),
        formula: pr.phix.clone(),
        satisfying,
        falsifying: own_variant(k, psi, &pr.x)?,
    };
    Ok(Verdict::refuted(Route::FalParallelX, w))
}

fn structure_witness(k: &Kripke, pr: &Prepared, sv: &StructureVacuity) -> Result<Witness> {
    let (Some(s), Some(f)) = (&sv.satisfying, &sv.falsifying) else {
        return Err(Error::Precondition("structure vacuity holds".into()));
    };
    Ok(Witness {
        prop: pr.x.clone(),
        formula: pr.phix.clone(),
        satisfying: variant(k, &pr.x, s)?,
        falsifying: variant(k, &pr.x, f)?,
    })
}

fn auto(phi: &Formula, psi: &Formula, k: &Kripke, pr: &Prepared, opts: Options) -> Result<Verdict> {
    if syntactic_monotone(phi, psi) {
        return monotone(phi, psi, k, pr);
    }
    let holds = check(k, phi)?;
    if holds && sat_applicable(phi, psi) {
        return sat_route(phi, psi, k, pr);
    }
    if !holds && fal_applicable(phi, psi) {
        return fal_route(phi, psi, k, pr, opts);
    }
    if k.num_states() <= opts.limits.states {
        let sv = structure_vacuous(phi, psi, k, opts.limits)?;
        if !sv.vacuous {
            return Ok(Verdict::refuted(Route::StructureRefutation, structure_witness(k, pr, &sv)?));
        }
    }
    if let Some(other) = find_member(k, &pr.x, &pr.phix, !holds, opts.limits)? {
        let own = own_variant(k, psi, &pr.x)?;
        let (satisfying, falsifying) = if holds { (own, other) } else { (other, own) };
        let w = Witness { prop: pr.x.clone(), formula: pr.phix.clone(), satisfying, falsifying };
        return Ok(Verdict::refuted(Route::VariantRefutation, w));
    }
    if let Some(n) = opts.bounded_validity {
        if bounded_validity(&pr.phix, n)?.is_some() {
            return Ok(Verdict::vacuous(Route::BoundedValidity(n)));
        }
    }
    Ok(Verdict { status: Status::Unknown, route: Route::Undecided, witness: None, bounds: Some(bounds(k, pr, opts.limits)?) })
}

fn bounds(k: &Kripke, pr: &Prepared, limits: Limits) -> Result<Bounds> {
    let compositional = if pr.phix.is_ctl() {
        Some(check_compositional(&lift_kx(k, &pr.x)?, &pr.phix)?)
    } else {
        None
    };
    let labeling = if k.num_states() <= limits.states {
        let (mut t, mut f) = (false, false);
        for (_, kv) in k.x_variants(&pr.x, limits.states)? {
            if check(&kv, &pr.phix)? {
                t = true
            } else {
                f = true
            }
        }
        Some(match (t, f) {
            (true, false) => Truth::True,
            (false, true) => Truth::False,
            _ => Truth::Maybe,
        })
    } else {
        None
    };
    Ok(Bounds { compositional, labeling })
}

const BOUNDED_VALIDITY_CAP: u64 = 1 << 20;

/// `Some(true)` if `f` holds at every state of every structure with at most
/// `n` states over its propositions, `Some(false)` if it holds nowhere,
/// `None` otherwise.
pub fn bounded_validity(f: &Formula, n: usize) -> Result<Option<bool>> {
    if f.has_set_atoms() || f.has_quantifier() {
        return Err(Error::NotApplicable("bounded validity needs a plain formula".into()));
    }
    let props: Vec<String> = f.props().into_iter().collect();
    let mut total: u64 = 0;
    for m in 1..=n as u32 {
        let bits = props.len() as u32 * m + m * m;
        total = total.saturating_add(if bits >= 63 { u64::MAX } else { 1 << bits });
    }
    if total > BOUNDED_VALIDITY_CAP {
        return Err(Error::BoundExceeded { what: "bounded validity structures", size: total as usize, bound: BOUNDED_VALIDITY_CAP as usize });
    }
    let (mut valid, mut unsat) = (true, true);
    for m in 1..=n {
        for k in enumerate_all(&props, m) {
            let s = eval_states(&k, f)?;
            valid &= s.is_full();
            unsat &= s.is_empty();
            if !valid && !unsat {
                return Ok(None);
            }
        }
    }
    Ok(if valid { Some(true) } else if unsat { Some(false) } else { None })
}

/// Checks a NonVacuous witness: both structures bisimilar to `K` over
/// `props(K)`, one satisfying and one falsifying the substituted formula.
/// Verdicts without a witness replay trivially.
pub fn replay(k: &Kripke, v: &Verdict) -> Result<bool> {
    let Some(w) = &v.witness else {
        return Ok(v.status != Status::NonVacuous);
    };
    Ok(bisimilar_over(&w.satisfying, k, k.props())?.is_some()
        && bisimilar_over(&w.falsifying, k, k.props())?.is_some()
        && check(&w.satisfying, &w.formula)?
        && !check(&w.falsifying, &w.formula)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    MaximalExistential,
    Subformulas(Vec<Formula>),
}

/// Replaces selected state subformulas by set atoms naming the states of
/// `K` where they hold.
pub fn prop_simplify(phi: &Formula, k: &Kripke, sel: &Selector) -> Result<Formula> {
    let targets = match sel {
        Selector::MaximalExistential => phi
            .existential_subformulas()
            .into_iter()
            .filter(|f| f.props().iter().all(|p| k.prop_index(p).is_some()))
            .collect(),
        Selector::Subformulas(fs) => {
            if let Some(bad) = fs.iter().find(|f| !f.is_state_formula()) {
                return Err(Error::PathSubformula(format!("{}", bad)));
            }
            fs.clone()
        }
    };
    let mut out = phi.clone();
    for t in targets {
        let set = eval_states(k, &t)?;
        out = out.substitute(&t, &Formula::set(k.name(), k.state_names(&set))).0;
    }
    Ok(out)
}
