//! Finite Kripke structures with a set of initial states and total
//! transition relation, and the constructions used by the vacuity checks.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, StateSet, Truth};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kripke {
    name: String,
    props: Vec<String>,
    states: Vec<String>,
    init: Vec<usize>,
    succ: Vec<Vec<usize>>,
    labels: Vec<Vec<Truth>>,
}

impl Kripke {
    /// Validates and builds a structure from index-based parts.
    /// `labels[s][p]` is the value of `props[p]` in state `s`.
    pub fn new(
        name: impl Into<String>,
        props: Vec<String>,
        states: Vec<String>,
        init: Vec<usize>,
        trans: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<Vec<Truth>>,
    ) -> Result<Kripke> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Structure("no states".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s) {
                return Err(Error::Structure(format!("duplicate state `{}`", s)));
            }
        }
        let mut seen = BTreeSet::new();
        for p in &props {
            if !seen.insert(p) {
                return Err(Error::Structure(format!("duplicate proposition `{}`", p)));
            }
        }
        if labels.len() != n || labels.iter().any(|l| l.len() != props.len()) {
            return Err(Error::Structure("label table does not match states and props".into()));
        }
        let mut init: Vec<usize> = init;
        init.sort_unstable();
        init.dedup();
        if init.is_empty() {
            return Err(Error::Structure("no initial state".into()));
        }
        if init.iter().any(|&i| i >= n) {
            return Err(Error::Structure("initial state out of range".into()));
        }
        let mut succ = vec![Vec::new(); n];
        for (a, b) in trans {
            if a >= n || b >= n {
                return Err(Error::Structure("transition endpoint out of range".into()));
            }
            succ[a].push(b);
        }
        for (s, out) in succ.iter_mut().enumerate() {
            out.sort_unstable();
            out.dedup();
            if out.is_empty() {
                return Err(Error::Structure(format!(
                    "state `{}` has no successor (relation must be total)",
                    states[s]
                )));
            }
        }
        Ok(Kripke { name: name.into(), props, states, init, succ, labels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Kripke {
        self.name = name.into();
        self
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn init(&self) -> &[usize] {
        &self.init
    }

    pub fn succ(&self, s: usize) -> &[usize] {
        &self.succ[s]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
    }

    pub fn prop_index(&self, p: &str) -> Option<usize> {
        self.props.iter().position(|q| q == p)
    }

    pub fn state_index(&self, s: &str) -> Option<usize> {
        self.states.iter().position(|q| q == s)
    }

    pub fn label(&self, s: usize, p: usize) -> Truth {
        self.labels[s][p]
    }

    pub fn labels(&self, s: usize) -> &[Truth] {
        &self.labels[s]
    }

    pub fn is_classical(&self) -> bool {
        self.labels.iter().flatten().all(|&t| t != Truth::Maybe)
    }

    /// States where `p` is true.
    pub fn prop_set(&self, p: usize) -> StateSet {
        StateSet::from_indices(
            self.num_states(),
            (0..self.num_states()).filter(|&s| self.labels[s][p] == Truth::True),
        )
    }

    pub fn state_set(&self, names: &BTreeSet<String>) -> Result<StateSet> {
        let mut out = StateSet::empty(self.num_states());
        for n in names {
            out.insert(self.state_index(n).ok_or_else(|| Error::UnknownState(n.clone()))?);
        }
        Ok(out)
    }

    pub fn state_names(&self, set: &StateSet) -> Vec<String> {
        set.iter().map(|s| self.states[s].clone()).collect()
    }

    pub fn with_init(&self, init: Vec<usize>) -> Result<Kripke> {
        Kripke::new(
            self.name.clone(),
            self.props.clone(),
            self.states.clone(),
            init,
            self.transitions().collect::<Vec<_>>(),
            self.labels.clone(),
        )
    }

    /// Same structure with one initial state per element of `init`.
    pub fn rooted_at(&self) -> Vec<Kripke> {
        self.init.iter().map(|&s| self.with_init(vec![s]).expect("valid")).collect()
    }

    pub fn reachable(&self) -> StateSet {
        let mut seen = StateSet::empty(self.num_states());
        let mut q: VecDeque<usize> = self.init.iter().copied().collect();
        for &s in &self.init {
            seen.insert(s);
        }
        while let Some(s) = q.pop_front() {
            for &t in &self.succ[s] {
                if !seen.contains(t) {
                    seen.insert(t);
                    q.push_back(t);
                }
            }
        }
        seen
    }

    /// Unique initial state and exactly one successor for every reachable state.
    pub fn is_deterministic(&self) -> bool {
        self.init.len() == 1 && self.reachable().iter().all(|s| self.succ[s].len() == 1)
    }

    pub fn add_prop(&self, x: &str, values: &[Truth]) -> Result<Kripke> {
        if self.prop_index(x).is_some() {
            return Err(Error::PropClash(x.to_string()));
        }
        assert_eq!(values.len(), self.num_states());
        let mut props = self.props.clone();
        props.push(x.to_string());
        let labels = self
            .labels
            .iter()
            .zip(values)
            .map(|(l, &v)| {
                let mut l = l.clone();
                l.push(v);
                l
            })
            .collect();
        Kripke::new(
            self.name.clone(),
            props,
            self.states.clone(),
            self.init.clone(),
            self.transitions().collect::<Vec<_>>(),
            labels,
        )
    }

    /// The x-variant labelling `x` exactly on `ys`.
    pub fn x_variant(&self, x: &str, ys: &StateSet) -> Result<Kripke> {
        let vals: Vec<Truth> = (0..self.num_states()).map(|s| Truth::from_bool(ys.contains(s))).collect();
        self.add_prop(x, &vals)
    }

    /// All `2^|S|` x-variants; bit `i` of the enumeration index labels state `i`.
    pub fn x_variants<'a>(&'a self, x: &str, limit: usize) -> Result<impl Iterator<Item = (StateSet, Kripke)> + 'a> {
        if self.prop_index(x).is_some() {
            return Err(Error::PropClash(x.to_string()));
        }
        let n = self.num_states();
        if n > limit.min(63) {
            return Err(Error::BoundExceeded { what: "x-variant enumeration", size: n, bound: limit.min(63) });
        }
        let x = x.to_string();
        Ok((0..1u64 << n).map(move |m| {
            let ys = StateSet::from_mask(n, m);
            let k = self.x_variant(&x, &ys).expect("fresh prop");
            (ys, k)
        }))
    }

    pub fn remove_prop(&self, x: &str) -> Result<Kripke> {
        let i = self.prop_index(x).ok_or_else(|| Error::UnknownProp(x.to_string()))?;
        let mut props = self.props.clone();
        props.remove(i);
        let labels = self
            .labels
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.remove(i);
                l
            })
            .collect();
        Kripke::new(
            self.name.clone(),
            props,
            self.states.clone(),
            self.init.clone(),
            self.transitions().collect::<Vec<_>>(),
            labels,
        )
    }

    /// Same states and transitions with a new label table.
    pub fn relabel(&self, labels: Vec<Vec<Truth>>) -> Result<Kripke> {
        Kripke::new(
            self.name.clone(),
            self.props.clone(),
            self.states.clone(),
            self.init.clone(),
            self.transitions().collect::<Vec<_>>(),
            labels,
        )
    }

    /// Restriction of the labelling to `keep` (in the given order).
    pub fn project(&self, keep: &[String]) -> Result<Kripke> {
        let idx = keep
            .iter()
            .map(|p| self.prop_index(p).ok_or_else(|| Error::UnknownProp(p.clone())))
            .collect::<Result<Vec<_>>>()?;
        let labels = self.labels.iter().map(|l| idx.iter().map(|&i| l[i]).collect()).collect();
        Kripke::new(
            self.name.clone(),
            keep.to_vec(),
            self.states.clone(),
            self.init.clone(),
            self.transitions().collect::<Vec<_>>(),
            labels,
        )
    }
}

/// Name-based incremental construction.
#[derive(Debug, Clone, Default)]
pub struct KripkeBuilder {
    name: String,
    props: Vec<String>,
    states: Vec<String>,
    labels: Vec<Vec<Truth>>,
    init: Vec<String>,
    trans: Vec<(String, String)>,
}

impl KripkeBuilder {
    pub fn new(name: &str) -> Self {
        KripkeBuilder { name: name.to_string(), ..Default::default() }
    }

    pub fn prop(mut self, p: &str) -> Self {
        self.add_prop(p);
        self
    }

    pub fn add_prop(&mut self, p: &str) {
        self.props.push(p.to_string());
        for l in &mut self.labels {
            l.push(Truth::False);
        }
    }

    /// `true_props` are true, all others false.
    pub fn state(mut self, s: &str, true_props: &[&str]) -> Self {
        let vals: Vec<(String, Truth)> = true_props.iter().map(|p| (p.to_string(), Truth::True)).collect();
        self.add_state(s, &vals).expect("declared props");
        self
    }

    pub fn add_state(&mut self, s: &str, vals: &[(String, Truth)]) -> Result<()> {
        let mut l = vec![Truth::False; self.props.len()];
        for (p, v) in vals {
            let i = self.props.iter().position(|q| q == p).ok_or_else(|| Error::UnknownProp(p.clone()))?;
            l[i] = *v;
        }
        self.states.push(s.to_string());
        self.labels.push(l);
        Ok(())
    }

    pub fn init(mut self, s: &str) -> Self {
        self.init.push(s.to_string());
        self
    }

    pub fn add_init(&mut self, s: &str) {
        self.init.push(s.to_string());
    }

    pub fn trans(mut self, a: &str, b: &str) -> Self {
        self.add_trans(a, b);
        self
    }

    pub fn add_trans(&mut self, a: &str, b: &str) {
        self.trans.push((a.to_string(), b.to_string()));
    }

    pub fn build(self) -> Result<Kripke> {
        let idx = |s: &str| {
            self.states.iter().position(|q| q == s).ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        let init = self.init.iter().map(|s| idx(s)).collect::<Result<Vec<_>>>()?;
        let trans =
            self.trans.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        Kripke::new(self.name.clone(), self.props.clone(), self.states.clone(), init, trans, self.labels.clone())
    }
}

/// Synchronous product over disjoint propositions.
pub fn compose_sync(a: &Kripke, b: &Kripke) -> Result<Kripke> {
    for p in &b.props {
        if a.prop_index(p).is_some() {
            return Err(Error::PropClash(p.clone()));
        }
    }
    let (na, nb) = (a.num_states(), b.num_states());
    let id = |s: usize, t: usize| s * nb + t;
    let mut states = Vec::with_capacity(na * nb);
    let mut labels = Vec::with_capacity(na * nb);
    for s in 0..na {
        for t in 0..nb {
            states.push(format!("({},{})", a.states[s], b.states[t]));
            let mut l = a.labels[s].clone();
            l.extend_from_slice(&b.labels[t]);
            labels.push(l);
        }
    }
    let init = a.init.iter().flat_map(|&s| b.init.iter().map(move |&t| id(s, t))).collect();
    let mut trans = Vec::new();
    for s in 0..na {
        for t in 0..nb {
            for &s2 in &a.succ[s] {
                for &t2 in &b.succ[t] {
                    trans.push((id(s, t), id(s2, t2)));
                }
            }
        }
    }
    let mut props = a.props.clone();
    props.extend(b.props.iter().cloned());
    Kripke::new(format!("{}_{}", a.name, b.name), props, states, init, trans, labels)
}

/// Two states `x0`, `x1` over `{x}`, complete transitions, both initial.
pub fn chi() -> Kripke {
    chi_named("x")
}

pub fn chi_named(x: &str) -> Kripke {
    KripkeBuilder::new("chi")
        .prop(x)
        .state("x0", &[])
        .state("x1", &[x])
        .init("x0")
        .init("x1")
        .trans("x0", "x0")
        .trans("x0", "x1")
        .trans("x1", "x0")
        .trans("x1", "x1")
        .build()
        .expect("chi is well formed")
}

/// `K || chi` with `x` as the free proposition.
pub fn parallel_x(k: &Kripke, x: &str) -> Result<Kripke> {
    compose_sync(k, &chi_named(x))
}

/// `m` copies of every state; `(s,i) -> (t,j)` whenever `s -> t`.
pub fn duplicate(k: &Kripke, m: usize) -> Result<Kripke> {
    if m == 0 {
        return Err(Error::Structure("duplication factor must be positive".into()));
    }
    let n = k.num_states();
    let id = |s: usize, i: usize| s * m + i;
    let mut states = Vec::new();
    let mut labels = Vec::new();
    for s in 0..n {
        for i in 0..m {
            states.push(format!("({},{})", k.states[s], i));
            labels.push(k.labels[s].clone());
        }
    }
    let init = k.init.iter().flat_map(|&s| (0..m).map(move |i| id(s, i))).collect();
    let mut trans = Vec::new();
    for (s, t) in k.transitions() {
        for i in 0..m {
            for j in 0..m {
                trans.push((id(s, i), id(t, j)));
            }
        }
    }
    Kripke::new(format!("{}_dup{}", k.name, m), k.props.clone(), states, init, trans, labels)
}

/// Side-by-side union; state names get a `1:`/`2:` prefix.
pub fn disjoint_union(a: &Kripke, b: &Kripke) -> Result<Kripke> {
    if a.props != b.props {
        return Err(Error::Structure("union needs identical propositions".into()));
    }
    let off = a.num_states();
    let states = a
        .states
        .iter()
        .map(|s| format!("1:{}", s))
        .chain(b.states.iter().map(|s| format!("2:{}", s)))
        .collect();
    let labels = a.labels.iter().chain(&b.labels).cloned().collect();
    let init = a.init.iter().copied().chain(b.init.iter().map(|&s| s + off)).collect();
    let trans: Vec<_> = a.transitions().chain(b.transitions().map(|(s, t)| (s + off, t + off))).collect();
    Kripke::new(format!("{}_{}", a.name, b.name), a.props.clone(), states, init, trans, labels)
}

/// A state bijection `a -> b` preserving labels (by prop name), initial
/// states and transitions.
pub fn isomorphism(a: &Kripke, b: &Kripke) -> Option<Vec<usize>> {
    let n = a.num_states();
    if n != b.num_states() || a.init.len() != b.init.len() {
        return None;
    }
    let pa: BTreeSet<&String> = a.props.iter().collect();
    let pb: BTreeSet<&String> = b.props.iter().collect();
    if pa != pb {
        return None;
    }
    let to_a: Vec<usize> = b.props.iter().map(|p| a.prop_index(p).expect("same props")).collect();
    let sig = |k: &Kripke, s: usize, lab: Vec<Truth>| {
        let incoming = k.transitions().filter(|&(_, t)| t == s).count();
        (lab, k.init.contains(&s), k.succ[s].len(), incoming)
    };
    let sa: Vec<_> = (0..n).map(|s| sig(a, s, to_a.iter().map(|&i| a.labels[s][i]).collect())).collect();
    let sb: Vec<_> = (0..n).map(|s| sig(b, s, b.labels[s].clone())).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &Kripke,
        b: &Kripke,
        sa: &[(Vec<Truth>, bool, usize, usize)],
        sb: &[(Vec<Truth>, bool, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == a.num_states() {
            return true;
        }
        for c in 0..b.num_states() {
            if used[c] || sa[i] != sb[c] {
                continue;
            }
            map[i] = c;
            let ok = (0..i).all(|j| {
                a.succ[i].contains(&j) == b.succ[c].contains(&map[j])
                    && a.succ[j].contains(&i) == b.succ[map[j]].contains(&c)
            }) && a.succ[i].contains(&i) == b.succ[c].contains(&c);
            if ok {
                used[c] = true;
                if go(i + 1, a, b, sa, sb, map, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        map[i] = usize::MAX;
        false
    }
    if go(0, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Every classical structure with exactly `n` states over `props`
/// (state 0 initial), in a fixed order.
pub fn enumerate_all(props: &[String], n: usize) -> impl Iterator<Item = Kripke> + '_ {
    let k = props.len();
    let lab_count: u64 = 1 << (k * n);
    let succ_choices: u64 = (1u64 << n) - 1;
    let trans_count = succ_choices.pow(n as u32);
    (0..lab_count).flat_map(move |lm| {
        (0..trans_count).map(move |tm| {
            let states: Vec<String> = (0..n).map(|i| format!("s{}", i)).collect();
            let labels = (0..n)
                .map(|s| (0..k).map(|p| Truth::from_bool(lm >> (s * k + p) & 1 == 1)).collect())
                .collect();
            let mut trans = Vec::new();
            let mut rest = tm;
            for s in 0..n {
                let mask = rest % succ_choices + 1;
                rest /= succ_choices;
                for t in 0..n {
                    if mask >> t & 1 == 1 {
                        trans.push((s, t));
                    }
                }
            }
            Kripke::new("enum", props.to_vec(), states, vec![0], trans, labels).expect("total by construction")
        })
    })
}

/// A finite structure over `props(target) ∪ {x}` claimed to unroll into an
/// x-variant of the computation tree of `target` via `map`.
#[derive(Debug, Clone)]
pub struct UnrollingMap {
    pub source: Kripke,
    pub target: Kripke,
    pub map: Vec<usize>,
}

impl UnrollingMap {
    /// Checks the root, label and successor-bijection conditions.
    /// Errors only when the proposition sets do not fit together.
    pub fn validate(&self, x: &str) -> Result<bool> {
        let (src, tgt) = (&self.source, &self.target);
        let mut want: BTreeSet<&String> = tgt.props.iter().collect();
        let xs = x.to_string();
        if !want.insert(&xs) {
            return Err(Error::PropClash(xs));
        }
        let have: BTreeSet<&String> = src.props.iter().collect();
        if have != want {
            return Err(Error::Structure("source must carry exactly props(target) plus x".into()));
        }
        if self.map.len() != src.num_states() || self.map.iter().any(|&t| t >= tgt.num_states()) {
            return Ok(false);
        }
        if !src.init.iter().all(|s| tgt.init.contains(&self.map[*s])) {
            return Ok(false);
        }
        let idx: Vec<usize> = tgt.props.iter().map(|p| src.prop_index(p).expect("checked")).collect();
        for s in 0..src.num_states() {
            let h = self.map[s];
            if (0..tgt.props.len()).any(|p| src.labels[s][idx[p]] != tgt.labels[h][p]) {
                return Ok(false);
            }
            let mut image: Vec<usize> = src.succ[s].iter().map(|&t| self.map[t]).collect();
            image.sort_unstable();
            let n = image.len();
            image.dedup();
            if image.len() != n || image != tgt.succ[h] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Map from state names to indices.
pub fn name_index(k: &Kripke) -> BTreeMap<&str, usize> {
    k.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}
