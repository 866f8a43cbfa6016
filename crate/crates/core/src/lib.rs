//! Explicit-state CTL* model checking over finite Kripke structures, with
//! bisimulation-based vacuity detection, quantified CTL* evaluation,
//! three-valued checking and the reductions between them.
#![no_std]

extern crate alloc;

pub mod bisim;
pub mod error;
pub mod formula;
pub mod kripke;
pub mod mc;
pub mod qctl;
pub mod reductions;
pub mod stateset;
pub mod three_valued;
pub mod vacuity;

pub use error::{Error, Result};
pub use formula::{parse, Formula, SetAtom};
pub use kripke::{Kripke, KripkeBuilder};
pub use stateset::StateSet;
pub use three_valued::Truth;

/// Caps on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest state count for which `2^|S|` labelings are enumerated.
    pub states: usize,
    /// Largest number of `Maybe` labels resolved by completion enumeration.
    pub maybes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { states: 20, maybes: 20 }
    }
}
