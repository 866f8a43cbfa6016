//! Atom-graph check for `E ψ`.
//!
//! ψ is put in negation normal form with its maximal state subformulas
//! evaluated to literals. A product node pairs a state with an atom: a
//! locally consistent truth assignment to the closure of ψ. `E ψ` holds at
//! `s` iff some atom at `s` containing ψ reaches a nontrivial SCC that
//! fulfils every until-obligation.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::Checker;
use crate::formula::Formula;
use crate::{Error, Kripke, Result, StateSet};

const MAX_TEMPORAL: usize = 16;

/// The infinite path `stem · cycle^ω`, as state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Lasso {
    pub fn state_at(&self, i: usize) -> usize {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Lit(usize),
    NotLit(usize),
    True,
    False,
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

struct Closure<'c, 'a> {
    checker: &'c Checker<'a>,
    nodes: Vec<Node>,
    ids: BTreeMap<Node, usize>,
    lits: Vec<StateSet>,
    lit_ids: BTreeMap<Formula, usize>,
}

impl Closure<'_, '_> {
    fn intern(&mut self, n: Node) -> usize {
        if let Some(&i) = self.ids.get(&n) {
            return i;
        }
        self.nodes.push(n.clone());
        self.ids.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn build(&mut self, f: &Formula, neg: bool) -> Result<usize> {
        use Formula::*;
        if f.is_state_formula() {
            let lit = match self.lit_ids.get(f) {
                Some(&i) => i,
                None => {
                    let set = self.checker.eval_rec(f)?;
                    self.lits.push(set);
                    self.lit_ids.insert(f.clone(), self.lits.len() - 1);
                    self.lits.len() - 1
                }
            };
            return Ok(self.intern(if neg { Node::NotLit(lit) } else { Node::Lit(lit) }));
        }
        let n = match f {
            Not(a) => return self.build(a, !neg),
            And(a, b) | Or(a, b) => {
                let (l, r) = (self.build(a, neg)?, self.build(b, neg)?);
                if matches!(f, And(..)) != neg { Node::And(l, r) } else { Node::Or(l, r) }
            }
            Implies(a, b) => {
                let (l, r) = (self.build(a, !neg)?, self.build(b, neg)?);
                if neg { Node::And(l, r) } else { Node::Or(l, r) }
            }
            Next(a) => Node::Next(self.build(a, neg)?),
            Until(a, b) | Release(a, b) => {
                let (l, r) = (self.build(a, neg)?, self.build(b, neg)?);
                if matches!(f, Until(..)) != neg { Node::Until(l, r) } else { Node::Release(l, r) }
            }
            Future(a) | Globally(a) => {
                let g = self.build(a, neg)?;
                if matches!(f, Future(_)) != neg {
                    let t = self.intern(Node::True);
                    Node::Until(t, g)
                } else {
                    let z = self.intern(Node::False);
                    Node::Release(z, g)
                }
            }
            Forall(..) | Exists(..) => return Err(Error::Quantified),
            _ => unreachable!("state formulas handled above"),
        };
        Ok(self.intern(n))
    }
}

pub(super) struct Graph<'k> {
    k: &'k Kripke,
    nodes: Vec<Node>,
    root: usize,
    state: Vec<usize>,
    vals: Vec<Vec<bool>>,
    succ: Vec<Vec<usize>>,
    comp: Vec<usize>,
    accepting: Vec<bool>,
    good: Vec<bool>,
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let (mut next, mut ncomp) = (0, 0);
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on[root] = true;
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos < succ[v].len() {
                call.last_mut().expect("nonempty").1 += 1;
                let w = succ[v][pos];
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on[w] = true;
                    call.push((w, 0));
                } else if on[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("on stack");
                        on[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

impl<'k> Graph<'k> {
    /// Product graph for `E ψ`, or for `E ¬ψ` when `negate`.
    pub(super) fn build(checker: &Checker<'k>, psi: &Formula, negate: bool) -> Result<Graph<'k>> {
        let k = checker.k;
        let mut cl = Closure { checker, nodes: Vec::new(), ids: BTreeMap::new(), lits: Vec::new(), lit_ids: BTreeMap::new() };
        let root = cl.build(psi, negate)?;
        let nodes = cl.nodes;
        let temporal: Vec<usize> = (0..nodes.len())
            .filter(|&i| matches!(nodes[i], Node::Next(_) | Node::Until(..) | Node::Release(..)))
            .collect();
        if temporal.len() > MAX_TEMPORAL {
            return Err(Error::BoundExceeded { what: "temporal closure", size: temporal.len(), bound: MAX_TEMPORAL });
        }

        let mut state = Vec::new();
        let mut vals: Vec<Vec<bool>> = Vec::new();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); k.num_states()];
        for s in 0..k.num_states() {
            'atoms: for mask in 0u32..1 << temporal.len() {
                let mut v = vec![false; nodes.len()];
                let mut bit = 0;
                for (i, n) in nodes.iter().enumerate() {
                    v[i] = match *n {
                        Node::Lit(l) => cl.lits[l].contains(s),
                        Node::NotLit(l) => !cl.lits[l].contains(s),
                        Node::True => true,
                        Node::False => false,
                        Node::And(a, b) => v[a] && v[b],
                        Node::Or(a, b) => v[a] || v[b],
                        Node::Next(_) | Node::Until(..) | Node::Release(..) => {
                            bit += 1;
                            mask >> (bit - 1) & 1 == 1
                        }
                    };
                    let consistent = match *n {
                        Node::Until(a, b) => if v[i] { v[a] || v[b] } else { !v[b] },
                        Node::Release(a, b) => if v[i] { v[b] } else { !(v[a] && v[b]) },
                        _ => true,
                    };
                    if !consistent {
                        continue 'atoms;
                    }
                }
                at[s].push(state.len());
                state.push(s);
                vals.push(v);
            }
        }

        let step_ok = |a: &[bool], b: &[bool]| {
            temporal.iter().all(|&i| match nodes[i] {
                Node::Next(x) => a[i] == b[x],
                Node::Until(x, y) => a[i] == (a[y] || (a[x] && b[i])),
                Node::Release(x, y) => a[i] == (a[y] && (a[x] || b[i])),
                _ => true,
            })
        };
        let mut succ = vec![Vec::new(); state.len()];
        for i in 0..state.len() {
            for &t in k.succ(state[i]) {
                for &j in &at[t] {
                    if step_ok(&vals[i], &vals[j]) {
                        succ[i].push(j);
                    }
                }
            }
        }

        let comp = tarjan(&succ);
        let ncomp = comp.iter().map(|c| c + 1).max().unwrap_or(0);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (i, &c) in comp.iter().enumerate() {
            members[c].push(i);
        }
        let untils: Vec<(usize, usize)> = temporal
            .iter()
            .filter_map(|&i| match nodes[i] {
                Node::Until(_, y) => Some((i, y)),
                _ => None,
            })
            .collect();
        let accepting: Vec<bool> = members
            .iter()
            .map(|m| {
                let nontrivial = m.len() > 1 || succ[m[0]].contains(&m[0]);
                nontrivial && untils.iter().all(|&(u, y)| m.iter().any(|&i| !vals[i][u] || vals[i][y]))
            })
            .collect();

        let mut pred = vec![Vec::new(); state.len()];
        for (i, out) in succ.iter().enumerate() {
            for &j in out {
                pred[j].push(i);
            }
        }
        let mut good = vec![false; state.len()];
        let mut queue: VecDeque<usize> = (0..state.len()).filter(|&i| accepting[comp[i]]).collect();
        for &i in &queue {
            good[i] = true;
        }
        while let Some(j) = queue.pop_front() {
            for &i in &pred[j] {
                if !good[i] {
                    good[i] = true;
                    queue.push_back(i);
                }
            }
        }
        Ok(Graph { k, nodes, root, state, vals, succ, comp, accepting, good })
    }

    pub(super) fn satisfiable_states(&self) -> StateSet {
        StateSet::from_indices(
            self.k.num_states(),
            (0..self.state.len()).filter(|&i| self.good[i] && self.vals[i][self.root]).map(|i| self.state[i]),
        )
    }

    // Shortest path `from -> .. -> hit`, excluding `from`; at least one step.
    fn bfs(&self, from: usize, within: Option<usize>, hit: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &j in &self.succ[from] {
            if within.is_none_or(|c| self.comp[j] == c) && !parent.contains_key(&j) {
                parent.insert(j, from);
                queue.push_back(j);
            }
        }
        while let Some(i) = queue.pop_front() {
            if hit(i) {
                let mut path = vec![i];
                let mut cur = i;
                while parent[&cur] != from {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &j in &self.succ[i] {
                if within.is_none_or(|c| self.comp[j] == c) && !parent.contains_key(&j) {
                    parent.insert(j, i);
                    queue.push_back(j);
                }
            }
        }
        None
    }

    pub(super) fn witness(&self, s: usize) -> Option<Lasso> {
        let start = (0..self.state.len()).find(|&i| self.state[i] == s && self.good[i] && self.vals[i][self.root])?;
        let mut stem_nodes = Vec::new();
        let entry = if self.accepting[self.comp[start]] {
            start
        } else {
            let path = self.bfs(start, None, &|i| self.accepting[self.comp[i]])?;
            stem_nodes.push(start);
            stem_nodes.extend_from_slice(&path[..path.len() - 1]);
            *path.last().expect("nonempty")
        };
        let c = self.comp[entry];
        let mut cycle = vec![entry];
        for u in 0..self.nodes.len() {
            let Node::Until(_, y) = self.nodes[u] else { continue };
            let fulfils = |i: usize| !self.vals[i][u] || self.vals[i][y];
            if cycle.iter().any(|&i| fulfils(i)) {
                continue;
            }
            let cur = *cycle.last().expect("nonempty");
            cycle.extend(self.bfs(cur, Some(c), &fulfils)?);
        }
        let cur = *cycle.last().expect("nonempty");
        let back = self.bfs(cur, Some(c), &|i| i == entry)?;
        cycle.extend_from_slice(&back[..back.len() - 1]);
        Some(Lasso {
            stem: stem_nodes.iter().map(|&i| self.state[i]).collect(),
            cycle: cycle.iter().map(|&i| self.state[i]).collect(),
        })
    }
}
