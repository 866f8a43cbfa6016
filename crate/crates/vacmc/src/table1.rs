//! The grid of `forall x` formulas on `L` and `M` under the three semantics.

use vacmc_core::qctl::{eval, QRoute, Semantics};
use vacmc_core::{parse, Limits};

use crate::fixtures::fixture;

pub const FORMULAS: [(&str, &str); 3] = [
    ("P1", "forall x . AG (x -> AX x)"),
    ("P2", "forall x . AG ((AX x) | (AX !x))"),
    ("P3", "forall x . A((X x) | (X !x))"),
];

pub const SEMANTICS: [(Semantics, &str); 3] =
    [(Semantics::Structure, "structure"), (Semantics::Tree, "tree"), (Semantics::Bisimulation, "bisimulation")];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub model: &'static str,
    pub formula: &'static str,
    pub semantics: &'static str,
    pub value: Option<bool>,
    pub route: QRoute,
}

pub fn compute(limits: Limits) -> vacmc_core::Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for (label, src) in FORMULAS {
        let q = parse(src)?;
        for model in ["L", "M"] {
            let k = fixture(model).expect("shipped fixture");
            for (sem, name) in SEMANTICS {
                let r = eval(&k, &q, sem, limits)?;
                cells.push(Cell { model, formula: label, semantics: name, value: r.value, route: r.route });
            }
        }
    }
    Ok(cells)
}

fn cell_text(c: &Cell) -> String {
    let v = match c.value {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    };
    format!("{} ({})", v, c.route.name())
}

pub fn render(cells: &[Cell]) -> String {
    let mut out = String::new();
    for (label, src) in FORMULAS {
        out += &format!("{} = {}\n", label, &src["forall x . ".len()..]);
    }
    out.push('\n');
    let row = |a: &str, b: &str, c: &str, d: &str, e: &str| {
        format!("{:<6}{:<12}{:<24}{:<34}{}\n", a, b, c, d, e)
    };
    out += &row("model", "formula", "structure", "tree", "bisimulation");
    for chunk in cells.chunks(3) {
        let f = format!("forall x {}", chunk[0].formula);
        out += &row(chunk[0].model, &f, &cell_text(&chunk[0]), &cell_text(&chunk[1]), &cell_text(&chunk[2]));
    }
    out
}
