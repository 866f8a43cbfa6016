//! Encodings into a single proposition `z`: structures via `ez`, CTL
//! formulas via `f`, CTL* formulas via `g`, and decoding back.
//!
//! Each state `s` gets a chain `(s,1) … (s,n+1)` hanging off `(s,0)`; the
//! chain head is marked `z` and position `o(p)+1` carries `z` iff `p` holds.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::formula::Formula;
use crate::mc::eval_states;
use crate::{Error, Kripke, Result, StateSet, Truth};

/// Bijection from propositions to `1..=n`; `o(p)` is the position plus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropOrdering {
    props: Vec<String>,
}

impl PropOrdering {
    pub fn new(props: Vec<String>) -> Result<Self> {
        for (i, p) in props.iter().enumerate() {
            if props[..i].contains(p) {
                return Err(Error::Structure(format!("proposition {} listed twice", p)));
            }
        }
        Ok(PropOrdering { props })
    }

    pub fn of(k: &Kripke) -> Self {
        PropOrdering { props: k.props().to_vec() }
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn o(&self, p: &str) -> Option<usize> {
        self.props.iter().position(|q| q == p).map(|i| i + 1)
    }

    fn get(&self, p: &str) -> Result<usize> {
        self.o(p).ok_or_else(|| Error::UnknownProp(p.to_string()))
    }
}

const Z: &str = "z";

pub fn ez_encode(k: &Kripke, o: &PropOrdering) -> Result<Kripke> {
    if !k.is_classical() {
        return Err(Error::NonClassical);
    }
    if k.prop_index(Z).is_some() {
        return Err(Error::PropClash(Z.to_string()));
    }
    let n = o.props().len();
    let idx = o
        .props()
        .iter()
        .map(|p| k.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone())))
        .collect::<Result<Vec<_>>>()?;
    if n != k.props().len() {
        return Err(Error::Structure("ordering must cover every proposition".into()));
    }
    let w = n + 2;
    let id = |s: usize, i: usize| s * w + i;
    let mut states = Vec::new();
    let mut labels = Vec::new();
    for s in 0..k.num_states() {
        for i in 0..w {
            states.push(format!("({},{})", k.states()[s], i));
            let z = match i {
                0 => false,
                1 => true,
                _ => k.label(s, idx[i - 2]) == Truth::True,
            };
            labels.push(alloc::vec![Truth::from_bool(z)]);
        }
    }
    let mut trans = Vec::new();
    for (s, t) in k.transitions() {
        trans.push((id(s, 0), id(t, 0)));
    }
    for s in 0..k.num_states() {
        for i in 0..w - 1 {
            trans.push((id(s, i), id(s, i + 1)));
        }
        trans.push((id(s, w - 1), id(s, w - 1)));
    }
    let init = k.init().iter().map(|&s| id(s, 0)).collect();
    Kripke::new(format!("ez_{}", k.name()), alloc::vec![Z.to_string()], states, init, trans, labels)
}

fn z() -> Formula {
    Formula::prop(Z)
}

fn nz() -> Formula {
    Formula::not(z())
}

fn iterate(k: usize, f: Formula, op: fn(Formula) -> Formula) -> Formula {
    (0..k).fold(f, |acc, _| op(acc))
}

fn and_nz(f: Formula) -> Formula {
    match f {
        Formula::True => nz(),
        Formula::False => Formula::False,
        f => Formula::and(nz(), f),
    }
}

fn imp_nz(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => z(),
        f => Formula::implies(nz(), f),
    }
}

fn marker(k: usize, negate: bool, path: bool) -> Formula {
    let end = if negate { nz() } else { z() };
    let inner = if path { iterate(k, end, Formula::next) } else { iterate(k, end, Formula::ax) };
    Formula::and(Formula::ex(z()), Formula::ax(Formula::implies(z(), inner)))
}

/// Single-proposition CTL translation.
pub fn f_translate(psi: &Formula, o: &PropOrdering) -> Result<Formula> {
    if psi.has_quantifier() {
        return Err(Error::Quantified);
    }
    if !psi.is_ctl() {
        return Err(Error::NotCtl(format!("{}", psi)));
    }
    f_rec(&psi.nnf()?, o)
}

fn f_rec(psi: &Formula, o: &PropOrdering) -> Result<Formula> {
    use Formula::*;
    Ok(match psi {
        True | False => psi.clone(),
        Prop(p) => marker(o.get(p)?, false, false),
        Not(a) => match &**a {
            Prop(p) => marker(o.get(p)?, true, false),
            _ => return Err(Error::NotApplicable(format!("negation not on an atom: {}", psi))),
        },
        And(a, b) => Formula::and(f_rec(a, o)?, f_rec(b, o)?),
        Or(a, b) => Formula::or(f_rec(a, o)?, f_rec(b, o)?),
        E(p) | A(p) => {
            let universal = matches!(psi, A(_));
            let (l, r, release) = match &**p {
                Next(a) => {
                    let fa = f_rec(a, o)?;
                    return Ok(if universal {
                        Formula::and(Formula::ex(nz()), Formula::ax(imp_nz(fa)))
                    } else {
                        Formula::ex(and_nz(fa))
                    });
                }
                Until(a, b) => (f_rec(a, o)?, f_rec(b, o)?, false),
                Release(a, b) => (f_rec(a, o)?, f_rec(b, o)?, true),
                Future(b) => (True, f_rec(b, o)?, false),
                Globally(b) => (False, f_rec(b, o)?, true),
                _ => return Err(Error::NotCtl(format!("{}", psi))),
            };
            match (universal, release) {
                (false, false) => Formula::eu(and_nz(l), and_nz(r)),
                (false, true) => Formula::er(and_nz(l), and_nz(r)),
                (true, false) => Formula::and(Formula::eg(nz()), Formula::au(imp_nz(l), imp_nz(r))),
                (true, true) => Formula::and(Formula::eg(nz()), Formula::ar(imp_nz(l), imp_nz(r))),
            }
        }
        Set(_) => return Err(Error::NotApplicable("set atoms cannot be encoded".into())),
        _ => return Err(Error::NotCtl(format!("{}", psi))),
    })
}

/// Single-proposition CTL* translation.
pub fn g_translate(psi: &Formula, o: &PropOrdering) -> Result<Formula> {
    if psi.has_quantifier() {
        return Err(Error::Quantified);
    }
    g_rec(&psi.nnf()?, o)
}

fn g_rec(psi: &Formula, o: &PropOrdering) -> Result<Formula> {
    use Formula::*;
    Ok(match psi {
        True | False => psi.clone(),
        Prop(p) => marker(o.get(p)?, false, true),
        Not(a) => match &**a {
            Prop(p) => marker(o.get(p)?, true, true),
            _ => return Err(Error::NotApplicable(format!("negation not on an atom: {}", psi))),
        },
        And(a, b) => Formula::and(g_rec(a, o)?, g_rec(b, o)?),
        Or(a, b) => Formula::or(g_rec(a, o)?, g_rec(b, o)?),
        E(a) => Formula::e(Formula::and(Formula::globally(nz()), g_rec(a, o)?)),
        A(a) => Formula::and(Formula::eg(nz()), Formula::a(Formula::implies(Formula::globally(nz()), g_rec(a, o)?))),
        Next(a) => Formula::next(g_rec(a, o)?),
        Future(a) => Formula::future(g_rec(a, o)?),
        Globally(a) => Formula::globally(g_rec(a, o)?),
        Until(a, b) => Formula::until(g_rec(a, o)?, g_rec(b, o)?),
        Release(a, b) => Formula::release(g_rec(a, o)?, g_rec(b, o)?),
        Set(_) => return Err(Error::NotApplicable("set atoms cannot be encoded".into())),
        Implies(..) | Forall(..) | Exists(..) => unreachable!("nnf"),
    })
}

/// Reads a structure over `o.props()` back from a model over `{z}`: the
/// base is the initial states plus everything reachable through `¬z`
/// successors, and labels come from the marker probes.
pub fn decode_single_prop(m: &Kripke, o: &PropOrdering) -> Result<Kripke> {
    if m.props() != [Z.to_string()] || !m.is_classical() {
        return Err(Error::Encoding("expected a classical structure over the single proposition z".into()));
    }
    let zs = m.prop_set(0);
    if m.init().iter().any(|&s| zs.contains(s)) {
        return Err(Error::Encoding("an initial state is labelled z".into()));
    }
    // Base states: those no z-state reaches.
    let mut chain = StateSet::empty(m.num_states());
    let mut stack: Vec<usize> = zs.iter().collect();
    while let Some(s) = stack.pop() {
        if chain.contains(s) {
            continue;
        }
        chain.insert(s);
        stack.extend(m.succ(s).iter().copied());
    }
    if m.init().iter().any(|&s| chain.contains(s)) {
        return Err(Error::Encoding("an initial state is reachable from a z-state".into()));
    }
    let mut base = StateSet::empty(m.num_states());
    for s in 0..m.num_states() {
        if !chain.contains(s) {
            base.insert(s);
        }
    }
    let order: Vec<usize> = base.iter().collect();
    let pos = |s: usize| order.iter().position(|&t| t == s);
    let mut labels: Vec<Vec<Truth>> = alloc::vec![Vec::new(); order.len()];
    for p in o.props() {
        let k = o.get(p)?;
        let yes = eval_states(m, &Formula::ax(Formula::implies(z(), iterate(k, z(), Formula::ax))))?;
        let no = eval_states(m, &Formula::ax(Formula::implies(z(), iterate(k, nz(), Formula::ax))))?;
        for (i, &s) in order.iter().enumerate() {
            if yes.contains(s) == no.contains(s) {
                return Err(Error::Encoding(format!("state {} has no consistent value for {}", m.states()[s], p)));
            }
            labels[i].push(Truth::from_bool(yes.contains(s)));
        }
    }
    let mut trans = Vec::new();
    for (i, &s) in order.iter().enumerate() {
        for &t in m.succ(s) {
            if let Some(j) = pos(t) {
                trans.push((i, j));
            }
        }
    }
    let init = m.init().iter().map(|&s| pos(s).expect("init in base")).collect();
    let states = order.iter().map(|&s| m.states()[s].clone()).collect();
    Kripke::new(format!("decode_{}", m.name()), o.props().to_vec(), states, init, trans, labels)
        .map_err(|e| Error::Encoding(format!("{}", e)))
}
