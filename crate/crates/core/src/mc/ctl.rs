use crate::{Kripke, StateSet};

pub(super) fn pre_e(k: &Kripke, z: &StateSet) -> StateSet {
    StateSet::from_indices(k.num_states(), (0..k.num_states()).filter(|&s| k.succ(s).iter().any(|&t| z.contains(t))))
}

pub(super) fn pre_a(k: &Kripke, z: &StateSet) -> StateSet {
    StateSet::from_indices(k.num_states(), (0..k.num_states()).filter(|&s| k.succ(s).iter().all(|&t| z.contains(t))))
}

fn lfp(start: StateSet, step: impl Fn(&StateSet) -> StateSet) -> StateSet {
    let mut z = start;
    loop {
        let next = step(&z);
        if next == z {
            return z;
        }
        z = next;
    }
}

pub(super) fn eu(k: &Kripke, a: &StateSet, b: &StateSet) -> StateSet {
    lfp(StateSet::empty(k.num_states()), |z| b.union(&a.intersect(&pre_e(k, z))))
}

pub(super) fn au(k: &Kripke, a: &StateSet, b: &StateSet) -> StateSet {
    lfp(StateSet::empty(k.num_states()), |z| b.union(&a.intersect(&pre_a(k, z))))
}

pub(super) fn er(k: &Kripke, a: &StateSet, b: &StateSet) -> StateSet {
    lfp(StateSet::full(k.num_states()), |z| b.intersect(&a.union(&pre_e(k, z))))
}

pub(super) fn ar(k: &Kripke, a: &StateSet, b: &StateSet) -> StateSet {
    lfp(StateSet::full(k.num_states()), |z| b.intersect(&a.union(&pre_a(k, z))))
}
