//! Reference evaluators that share no code with the checker: path formulas
//! are evaluated position by position on explicit lassos, and `E ψ` is
//! decided by enumerating lassos.

use vacmc_core::{Formula, Kripke, Truth};

/// A lasso `states[0..n]` whose last state steps back to `states[loop_at]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLasso {
    pub states: Vec<usize>,
    pub loop_at: usize,
}

impl RawLasso {
    fn next(&self, i: usize) -> usize {
        if i + 1 < self.states.len() {
            i + 1
        } else {
            self.loop_at
        }
    }

    pub fn from_stem_cycle(stem: &[usize], cycle: &[usize]) -> RawLasso {
        let mut states = stem.to_vec();
        states.extend_from_slice(cycle);
        RawLasso { states, loop_at: stem.len() }
    }
}

fn truth(k: &Kripke, s: usize, p: &str) -> bool {
    let i = k.prop_index(p).unwrap_or_else(|| panic!("unknown prop {}", p));
    k.label(s, i) == Truth::True
}

/// Truth of a quantifier-free path formula over atoms at every position of
/// the lasso. Path quantifiers are not supported.
pub fn eval_positions(k: &Kripke, f: &Formula, l: &RawLasso) -> Vec<bool> {
    use Formula::*;
    let n = l.states.len();
    match f {
        True => vec![true; n],
        False => vec![false; n],
        Prop(p) => l.states.iter().map(|&s| truth(k, s, p)).collect(),
        Not(a) => eval_positions(k, a, l).into_iter().map(|b| !b).collect(),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            let (x, y) = (eval_positions(k, a, l), eval_positions(k, b, l));
            (0..n)
                .map(|i| match f {
                    And(..) => x[i] && y[i],
                    Or(..) => x[i] || y[i],
                    _ => !x[i] || y[i],
                })
                .collect()
        }
        Next(a) => {
            let x = eval_positions(k, a, l);
            (0..n).map(|i| x[l.next(i)]).collect()
        }
        Until(a, b) => fix(l, &eval_positions(k, a, l), &eval_positions(k, b, l), false),
        Release(a, b) => fix(l, &eval_positions(k, a, l), &eval_positions(k, b, l), true),
        Future(a) => fix(l, &vec![true; n], &eval_positions(k, a, l), false),
        Globally(a) => fix(l, &vec![false; n], &eval_positions(k, a, l), true),
        _ => panic!("oracle evaluates atom-level path formulas only: {}", f),
    }
}

// Until: least solution of v = b ∨ (a ∧ v∘next); release: greatest solution
// of v = b ∧ (a ∨ v∘next).
fn fix(l: &RawLasso, a: &[bool], b: &[bool], release: bool) -> Vec<bool> {
    let n = a.len();
    let mut v = vec![release; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let nv = if release { b[i] && (a[i] || v[l.next(i)]) } else { b[i] || (a[i] && v[l.next(i)]) };
            if nv != v[i] {
                v[i] = nv;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

pub fn holds_on_lasso(k: &Kripke, f: &Formula, l: &RawLasso) -> bool {
    eval_positions(k, f, l)[0]
}

/// Every lasso from `start` with at most `max_len` listed states.
pub fn lassos(k: &Kripke, start: usize, max_len: usize) -> Vec<RawLasso> {
    let mut out = Vec::new();
    let mut path = vec![start];
    fn go(k: &Kripke, path: &mut Vec<usize>, max_len: usize, out: &mut Vec<RawLasso>) {
        let last = *path.last().unwrap();
        for (i, &s) in path.iter().enumerate() {
            if k.succ(last).contains(&s) {
                out.push(RawLasso { states: path.clone(), loop_at: i });
            }
        }
        if path.len() < max_len {
            for &t in k.succ(last) {
                path.push(t);
                go(k, path, max_len, out);
                path.pop();
            }
        }
    }
    go(k, &mut path, max_len, &mut out);
    out
}

/// `E f` at `start`, by enumeration of lassos up to `max_len` states.
pub fn exists_path(k: &Kripke, f: &Formula, start: usize, max_len: usize) -> bool {
    lassos(k, start, max_len).iter().any(|l| holds_on_lasso(k, f, l))
}
