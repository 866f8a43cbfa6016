#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vacmc_core::{parse, Formula, Kripke, Truth};

pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("VACMC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7u64);
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(stream))
}

pub fn f(s: &str) -> Formula {
    parse(s).unwrap_or_else(|e| panic!("{}: {}", s, e))
}

/// Random total structure; state 0 is initial.
pub fn kripke(rng: &mut ChaCha8Rng, name: &str, n: usize, props: &[&str], maybe: f64) -> Kripke {
    let states: Vec<String> = (0..n).map(|i| format!("s{}", i)).collect();
    let labels = (0..n)
        .map(|_| {
            props
                .iter()
                .map(|_| {
                    if rng.gen_bool(maybe) {
                        Truth::Maybe
                    } else {
                        Truth::from_bool(rng.gen_bool(0.5))
                    }
                })
                .collect()
        })
        .collect();
    let mut trans = Vec::new();
    for s in 0..n {
        let k = rng.gen_range(1..=n.min(3));
        let mut targets: Vec<usize> = (0..n).collect();
        targets.shuffle(rng);
        trans.extend(targets[..k].iter().map(|&t| (s, t)));
    }
    Kripke::new(name, props.iter().map(|p| p.to_string()).collect(), states, vec![0], trans, labels).unwrap()
}

pub fn atom(rng: &mut ChaCha8Rng, props: &[&str]) -> Formula {
    let p = Formula::prop(props[rng.gen_range(0..props.len())]);
    if rng.gen_bool(0.3) {
        Formula::not(p)
    } else {
        p
    }
}

/// Random CTL state formula with at most `budget` nodes.
pub fn ctl(rng: &mut ChaCha8Rng, props: &[&str], budget: usize) -> Formula {
    if budget <= 2 {
        return atom(rng, props);
    }
    match rng.gen_range(0..13) {
        0 => Formula::not(ctl(rng, props, budget - 1)),
        1 | 2 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::and(ctl(rng, props, l), ctl(rng, props, budget - 1 - l))
        }
        3 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::or(ctl(rng, props, l), ctl(rng, props, budget - 1 - l))
        }
        4 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::implies(ctl(rng, props, l), ctl(rng, props, budget - 1 - l))
        }
        k if budget >= 4 && k >= 11 => {
            let l = rng.gen_range(1..budget - 2);
            let (a, b) = (ctl(rng, props, l), ctl(rng, props, budget - 2 - l));
            match rng.gen_range(0..4) {
                0 => Formula::au(a, b),
                1 => Formula::eu(a, b),
                2 => Formula::ar(a, b),
                _ => Formula::er(a, b),
            }
        }
        _ => {
            let a = ctl(rng, props, budget - 2);
            match rng.gen_range(0..6) {
                0 => Formula::ax(a),
                1 => Formula::ex(a),
                2 => Formula::af(a),
                3 => Formula::ef(a),
                4 => Formula::ag(a),
                _ => Formula::eg(a),
            }
        }
    }
}

/// Random path formula over atoms only, at most `budget` nodes.
pub fn path(rng: &mut ChaCha8Rng, props: &[&str], budget: usize) -> Formula {
    if budget <= 2 {
        return atom(rng, props);
    }
    match rng.gen_range(0..10) {
        0 => Formula::not(path(rng, props, budget - 1)),
        1 | 2 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::and(path(rng, props, l), path(rng, props, budget - 1 - l))
        }
        3 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::or(path(rng, props, l), path(rng, props, budget - 1 - l))
        }
        4 | 5 => {
            let l = rng.gen_range(1..budget - 1);
            let (a, b) = (path(rng, props, l), path(rng, props, budget - 1 - l));
            if rng.gen_bool(0.5) {
                Formula::until(a, b)
            } else {
                Formula::release(a, b)
            }
        }
        _ => {
            let a = path(rng, props, budget - 1);
            match rng.gen_range(0..3) {
                0 => Formula::next(a),
                1 => Formula::future(a),
                _ => Formula::globally(a),
            }
        }
    }
}

/// Random CTL* state formula: CTL skeleton with occasional non-CTL path
/// bodies.
pub fn ctl_star(rng: &mut ChaCha8Rng, props: &[&str], budget: usize) -> Formula {
    if budget >= 4 && rng.gen_bool(0.35) {
        let body = path(rng, props, budget - 1);
        if rng.gen_bool(0.5) {
            Formula::a(body)
        } else {
            Formula::e(body)
        }
    } else {
        ctl(rng, props, budget)
    }
}

/// Random ACTL formula in negation normal form, positive in `hole` where
/// it occurs.
pub fn actl(rng: &mut ChaCha8Rng, props: &[&str], hole: &Formula, budget: usize) -> Formula {
    if budget <= 2 {
        return if rng.gen_bool(0.3) { hole.clone() } else { atom(rng, props) };
    }
    match rng.gen_range(0..8) {
        0 | 1 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::and(actl(rng, props, hole, l), actl(rng, props, hole, budget - 1 - l))
        }
        2 => {
            let l = rng.gen_range(1..budget - 1);
            Formula::or(actl(rng, props, hole, l), actl(rng, props, hole, budget - 1 - l))
        }
        3 if budget >= 4 => {
            let l = rng.gen_range(1..budget - 2);
            let (a, b) = (actl(rng, props, hole, l), actl(rng, props, hole, budget - 2 - l));
            if rng.gen_bool(0.5) {
                Formula::au(a, b)
            } else {
                Formula::ar(a, b)
            }
        }
        _ => {
            let a = actl(rng, props, hole, budget - 2);
            match rng.gen_range(0..3) {
                0 => Formula::ax(a),
                1 => Formula::af(a),
                _ => Formula::ag(a),
            }
        }
    }
}

/// Forty CTL formulas over the placeholders `p` and `q`.
pub const CTL_POOL: [&str; 40] = [
    "p",
    "!q",
    "p & q",
    "p | !q",
    "p -> q",
    "AX p",
    "EX q",
    "AX AX p",
    "EX !p",
    "AF q",
    "EF p",
    "AG p",
    "EG q",
    "AG (p -> AF q)",
    "EF (p & EX !q)",
    "A[p U q]",
    "E[p U !q]",
    "A[q R p]",
    "E[false R p]",
    "AG EF p",
    "EG AF q",
    "AF AG !p",
    "EF EG q",
    "AG ((AX p) | (AX !p))",
    "AG ((AX q) | (AX !q))",
    "AG (p -> AX q)",
    "AG (p | !p)",
    "(EX p) | (AX !p)",
    "AX (p & EX q)",
    "E[(p | q) U (AX !p)]",
    "A[p U (q & EX p)]",
    "!EF (p & q)",
    "AG AX q",
    "EX EX EX p",
    "AF (p & AX q)",
    "EG (p -> EX q)",
    "A[!q R (p | AX q)]",
    "E[EX p R q]",
    "AG (q -> EF !q)",
    "!(AX p) -> EX !p",
];

/// Maps the placeholders `p`, `q` onto the first (and second) proposition of
/// `k`.
pub fn instantiate(src: &str, k: &Kripke) -> Formula {
    let ps = k.props();
    let a = &ps[0];
    let b = ps.get(1).unwrap_or(a);
    let tmp_p = "zzp_tmp";
    let tmp_q = "zzq_tmp";
    let g = f(src);
    let g = g.substitute(&Formula::prop("p"), &Formula::prop(tmp_p)).0;
    let g = g.substitute(&Formula::prop("q"), &Formula::prop(tmp_q)).0;
    let g = g.substitute(&Formula::prop(tmp_p), &Formula::prop(a)).0;
    g.substitute(&Formula::prop(tmp_q), &Formula::prop(b)).0
}
