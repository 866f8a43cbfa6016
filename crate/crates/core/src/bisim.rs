//! Bisimulation and simulation over a chosen proposition set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Kripke, Result, Truth};

/// Pairs `(left state, right state)` of a relation between two structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub left: String,
    pub right: String,
    pub pairs: Vec<(usize, usize)>,
}

impl Relation {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a, b)).is_ok()
    }

    pub fn named_pairs(&self, a: &Kripke, b: &Kripke) -> Vec<(String, String)> {
        self.pairs.iter().map(|&(s, t)| (a.states()[s].clone(), b.states()[t].clone())).collect()
    }
}

fn prop_indices(k: &Kripke, props: &[String]) -> Result<Vec<usize>> {
    props.iter().map(|p| k.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone()))).collect()
}

fn label_on(k: &Kripke, s: usize, idx: &[usize]) -> Vec<Truth> {
    idx.iter().map(|&i| k.label(s, i)).collect()
}

/// Coarsest stable partition of the disjoint union `a ⊎ b`; block ids for
/// `a`'s states come first, then `b`'s.
fn refine(a: &Kripke, b: &Kripke, props: &[String]) -> Result<Vec<usize>> {
    let (ia, ib) = (prop_indices(a, props)?, prop_indices(b, props)?);
    let na = a.num_states();
    let total = na + b.num_states();
    let succ = |s: usize| -> Vec<usize> {
        if s < na {
            a.succ(s).to_vec()
        } else {
            b.succ(s - na).iter().map(|t| t + na).collect()
        }
    };
    let mut ids: BTreeMap<Vec<Truth>, usize> = BTreeMap::new();
    let mut block: Vec<usize> = (0..total)
        .map(|s| {
            let l = if s < na { label_on(a, s, &ia) } else { label_on(b, s - na, &ib) };
            let n = ids.len();
            *ids.entry(l).or_insert(n)
        })
        .collect();
    let mut count = ids.len();
    loop {
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..total)
            .map(|s| {
                let mut sig: Vec<usize> = succ(s).iter().map(|&t| block[t]).collect();
                sig.sort_unstable();
                sig.dedup();
                let n = ids.len();
                *ids.entry((block[s], sig)).or_insert(n)
            })
            .collect();
        let stable = ids.len() == count;
        block = next;
        count = ids.len();
        if stable {
            return Ok(block);
        }
    }
}

/// Greatest bisimulation between `a` and `b` over `props`, ignoring initial states.
pub fn greatest_bisimulation(a: &Kripke, b: &Kripke, props: &[String]) -> Result<Relation> {
    let block = refine(a, b, props)?;
    let na = a.num_states();
    let mut pairs = Vec::new();
    for s in 0..na {
        for t in 0..b.num_states() {
            if block[s] == block[na + t] {
                pairs.push((s, t));
            }
        }
    }
    Ok(Relation { left: a.name().into(), right: b.name().into(), pairs })
}

fn init_covered(rel: &Relation, a: &Kripke, b: &Kripke) -> bool {
    b.init().iter().all(|&t| a.init().iter().any(|&s| rel.contains(s, t)))
}

/// `Some(greatest bisimulation)` when it relates the initial states in both directions.
pub fn bisimilar_over(a: &Kripke, b: &Kripke, props: &[String]) -> Result<Option<Relation>> {
    let rel = greatest_bisimulation(a, b, props)?;
    let ok = init_covered(&rel, a, b)
        && a.init().iter().all(|&s| b.init().iter().any(|&t| rel.contains(s, t)));
    Ok(if ok { Some(rel) } else { None })
}

/// Greatest simulation of `b` by `a` over `props`; `(s, t)` means `s` simulates `t`.
pub fn greatest_simulation(a: &Kripke, b: &Kripke, props: &[String]) -> Result<Relation> {
    let (ia, ib) = (prop_indices(a, props)?, prop_indices(b, props)?);
    let (na, nb) = (a.num_states(), b.num_states());
    let mut rel = vec![vec![false; nb]; na];
    for (s, row) in rel.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            *cell = label_on(a, s, &ia) == label_on(b, t, &ib);
        }
    }
    loop {
        let mut changed = false;
        for s in 0..na {
            for t in 0..nb {
                if rel[s][t] && !b.succ(t).iter().all(|&t2| a.succ(s).iter().any(|&s2| rel[s2][t2])) {
                    rel[s][t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let pairs = (0..na).flat_map(|s| (0..nb).map(move |t| (s, t))).filter(|&(s, t)| rel[s][t]).collect();
    Ok(Relation { left: a.name().into(), right: b.name().into(), pairs })
}

/// `Some(ρ)` when `a` simulates `b`: every initial state of `b` is
/// simulated by some initial state of `a`.
pub fn simulates_over(a: &Kripke, b: &Kripke, props: &[String]) -> Result<Option<Relation>> {
    let rel = greatest_simulation(a, b, props)?;
    Ok(if init_covered(&rel, a, b) { Some(rel) } else { None })
}

/// Clause-by-clause check that `rel` is a simulation of `b` by `a`
/// including the initial-state condition.
pub fn is_simulation(a: &Kripke, b: &Kripke, props: &[String], rel: &Relation) -> Result<bool> {
    let (ia, ib) = (prop_indices(a, props)?, prop_indices(b, props)?);
    for &(s, t) in &rel.pairs {
        if s >= a.num_states() || t >= b.num_states() {
            return Ok(false);
        }
        if label_on(a, s, &ia) != label_on(b, t, &ib) {
            return Ok(false);
        }
        if !b.succ(t).iter().all(|&t2| a.succ(s).iter().any(|&s2| rel.contains(s2, t2))) {
            return Ok(false);
        }
    }
    Ok(init_covered(rel, a, b))
}

pub fn inverse(rel: &Relation) -> Relation {
    let mut pairs: Vec<(usize, usize)> = rel.pairs.iter().map(|&(s, t)| (t, s)).collect();
    pairs.sort_unstable();
    Relation { left: rel.right.clone(), right: rel.left.clone(), pairs }
}

pub fn is_bisimulation(a: &Kripke, b: &Kripke, props: &[String], rel: &Relation) -> Result<bool> {
    Ok(is_simulation(a, b, props, rel)? && is_simulation(b, a, props, &inverse(rel))?)
}

/// Quotient by the greatest auto-bisimulation over `props`. Each block is
/// named after its first member.
pub fn quotient(k: &Kripke, props: &[String]) -> Result<Kripke> {
    let n = k.num_states();
    let block = refine(k, k, props)?;
    let mut order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rep = Vec::new();
    for s in 0..n {
        if !order.contains_key(&block[s]) {
            order.insert(block[s], rep.len());
            rep.push(s);
        }
    }
    let of = |s: usize| order[&block[s]];
    let idx = prop_indices(k, props)?;
    let states = rep.iter().map(|&s| k.states()[s].clone()).collect();
    let labels = rep.iter().map(|&s| label_on(k, s, &idx)).collect();
    let init = k.init().iter().map(|&s| of(s)).collect();
    let trans: Vec<_> = k.transitions().map(|(s, t)| (of(s), of(t))).collect();
    Kripke::new(format!("{}_quot", k.name()), props.to_vec(), states, init, trans, labels)
}
