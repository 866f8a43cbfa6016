//! `vacmc` subcommands.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vacmc_core::bisim::{bisimilar_over, quotient, simulates_over, Relation};
use vacmc_core::mc::{check, path_evidence};
use vacmc_core::qctl::{self, QWitness, Semantics};
use vacmc_core::reductions::{decode_single_prop, ez_encode, f_translate, g_translate, PropOrdering};
use vacmc_core::three_valued::check_compositional;
use vacmc_core::vacuity::{decide_via, Options, Status, Verdict, Via};
use vacmc_core::{parse, Formula, Kripke, Limits};

use crate::fixtures;
use crate::kr;
use crate::report::{Inputs, Meta, Outcome, Report};
use crate::table1;

#[derive(Debug, Parser)]
#[command(name = "vacmc", version, about = "CTL* model checking and bisimulation vacuity")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest state count for 2^|S| enumerations.
    #[arg(long, default_value_t = 20, global = true)]
    pub bound: usize,
    /// Largest number of unknown labels resolved by enumeration.
    #[arg(long, default_value_t = 20, global = true)]
    pub maybe_bound: usize,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViaArg {
    Auto,
    Mono,
    Satx,
    Thorough,
    Structure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemArg {
    Structure,
    Tree,
    Bisim,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Model-check a state formula; unknown labels give a three-valued verdict.
    Check { model: String, formula: String },
    /// Decide whether FORMULA is vacuous in the subformula on MODEL.
    Vacuity {
        model: String,
        formula: String,
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum, default_value_t = ViaArg::Auto)]
        via: ViaArg,
        /// Also try validity over all structures up to N states.
        #[arg(long, value_name = "N")]
        bounded_validity: Option<usize>,
    },
    /// Greatest bisimulation between A and B over the listed propositions.
    Bisim {
        a: String,
        b: String,
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
    },
    /// Whether A simulates B over the listed propositions.
    Simulates {
        a: String,
        b: String,
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
    },
    /// Bisimulation quotient.
    Quotient {
        model: String,
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
    },
    /// Evaluate `forall x . F` or `exists x . F`.
    Qctl {
        model: String,
        formula: String,
        #[arg(long, value_enum, default_value_t = SemArg::Bisim)]
        semantics: SemArg,
    },
    /// Single-proposition encodings.
    Translate {
        #[command(subcommand)]
        what: Translate,
    },
    /// The grid of P1..P3 on L and M under all three semantics.
    Table1,
}

#[derive(Debug, Subcommand)]
pub enum Translate {
    Ez {
        model: String,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    F {
        formula: String,
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
    },
    G {
        formula: String,
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
    },
    Decode {
        model: String,
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<String>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Load(#[from] fixtures::LoadError),
    #[error("{context}: {source}")]
    Core { context: &'static str, source: vacmc_core::Error },
}

trait Context<T> {
    fn ctx(self, context: &'static str) -> Result<T, CliError>;
}

impl<T> Context<T> for vacmc_core::Result<T> {
    fn ctx(self, context: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core { context, source })
    }
}

pub fn seed() -> u64 {
    std::env::var("VACMC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok((command, inputs, result, code)) => {
            let report = Report {
                command,
                inputs,
                result,
                meta: Meta { seed: seed(), elapsed_ms: start.elapsed().as_millis() as u64 },
            };
            let stdout = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            Output { code, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: 1, stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

type Executed = (String, Inputs, Outcome, u8);

fn formula(src: &str) -> Result<Formula, CliError> {
    parse(src).ctx("formula")
}

fn props_or(k: &Kripke, other: Option<&Kripke>, props: &Option<Vec<String>>) -> Vec<String> {
    match props {
        Some(p) => p.clone(),
        None => k
            .props()
            .iter()
            .filter(|p| other.map_or(true, |o| o.prop_index(p).is_some()))
            .cloned()
            .collect(),
    }
}

fn relation_json(rel: &Relation, a: &Kripke, b: &Kripke) -> Value {
    json!(rel.named_pairs(a, b).into_iter().map(|(s, t)| [s, t]).collect::<Vec<_>>())
}

fn relation_text(rel: &Relation, a: &Kripke, b: &Kripke) -> String {
    rel.named_pairs(a, b).into_iter().map(|(s, t)| format!("{} ~ {}\n", s, t)).collect()
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    Outcome {
        status: Some(v.status.name().to_string()),
        route: Some(v.route.name()),
        witness: v.witness.as_ref().map(|w| {
            json!({
                "prop": w.prop,
                "formula": w.formula.to_string(),
                "satisfying": kr::render(&w.satisfying),
                "falsifying": kr::render(&w.falsifying),
            })
        }),
        bounds: v.bounds.map(|b| {
            let sym = |t: Option<vacmc_core::Truth>| t.map(|t| t.symbol().to_string());
            json!({ "compositional": sym(b.compositional), "labeling": sym(b.labeling) })
        }),
        ..Outcome::default()
    }
}

fn qwitness_json(w: &QWitness) -> Value {
    match w {
        QWitness::Labeling(names) => json!({ "labeling": names }),
        QWitness::Structure(k) => json!({ "structure": kr::render(k) }),
    }
}

fn execute(cli: &Cli) -> Result<Executed, CliError> {
    let limits = Limits { states: cli.bound, maybes: cli.maybe_bound };
    let inputs = |model: &str, f: Option<&str>| Inputs {
        model: Some(model.to_string()),
        formula: f.map(str::to_string),
        ..Inputs::default()
    };
    Ok(match &cli.cmd {
        Cmd::Check { model, formula: src } => {
            let k = fixtures::load(model)?;
            let f = formula(src)?;
            let mut out = Outcome::default();
            if k.is_classical() {
                let v = check(&k, &f).ctx("check")?;
                out.value = Some(json!(v));
                if let Some((s, l)) = path_evidence(&k, &f).ctx("check")? {
                    let names = |ids: &[usize]| ids.iter().map(|&i| k.states()[i].clone()).collect::<Vec<_>>();
                    let kind = if matches!(f, Formula::E(_)) { "path" } else { "counterexample" };
                    out.witness = Some(json!({
                        "kind": kind,
                        "from": k.states()[s],
                        "stem": names(&l.stem),
                        "cycle": names(&l.cycle),
                    }));
                }
            } else {
                let v = check_compositional(&k, &f).ctx("three-valued check")?;
                out.value = Some(json!(v.symbol().to_string()));
            }
            ("check".into(), inputs(model, Some(src)), out, 0)
        }
        Cmd::Vacuity { model, formula: src, sub, via, bounded_validity } => {
            let k = fixtures::load(model)?;
            let (f, psi) = (formula(src)?, formula(sub)?);
            let via = match via {
                ViaArg::Auto => Via::Auto,
                ViaArg::Mono => Via::Mono,
                ViaArg::Satx => Via::SatX,
                ViaArg::Thorough => Via::Thorough,
                ViaArg::Structure => Via::Structure,
            };
            let v = decide_via(&f, &psi, &k, via, Options { limits, bounded_validity: *bounded_validity })
                .ctx("vacuity")?;
            let code = if v.status == Status::Unknown { 2 } else { 0 };
            let mut ins = inputs(model, Some(src));
            ins.sub = Some(sub.clone());
            ("vacuity".into(), ins, verdict_outcome(&v), code)
        }
        Cmd::Bisim { a, b, props } | Cmd::Simulates { a, b, props } => {
            let (ka, kb) = (fixtures::load(a)?, fixtures::load(b)?);
            let ps = props_or(&ka, Some(&kb), props);
            let bisim = matches!(cli.cmd, Cmd::Bisim { .. });
            let rel = if bisim {
                bisimilar_over(&ka, &kb, &ps).ctx("bisimulation")?
            } else {
                simulates_over(&ka, &kb, &ps).ctx("simulation")?
            };
            let out = Outcome {
                value: Some(json!(rel.is_some())),
                witness: rel.as_ref().map(|r| relation_json(r, &ka, &kb)),
                output: rel.as_ref().map(|r| relation_text(r, &ka, &kb)),
                ..Outcome::default()
            };
            let mut ins = inputs(a, None);
            ins.other = Some(b.clone());
            ((if bisim { "bisim" } else { "simulates" }).into(), ins, out, 0)
        }
        Cmd::Quotient { model, props } => {
            let k = fixtures::load(model)?;
            let q = quotient(&k, &props_or(&k, None, props)).ctx("quotient")?;
            ("quotient".into(), inputs(model, None), Outcome { output: Some(kr::render(&q)), ..Outcome::default() }, 0)
        }
        Cmd::Qctl { model, formula: src, semantics } => {
            let k = fixtures::load(model)?;
            let q = formula(src)?;
            let sem = match semantics {
                SemArg::Structure => Semantics::Structure,
                SemArg::Tree => Semantics::Tree,
                SemArg::Bisim => Semantics::Bisimulation,
            };
            let r = qctl::eval(&k, &q, sem, limits).ctx("qctl")?;
            let out = Outcome {
                value: Some(r.value.map_or(json!("unknown"), |v| json!(v))),
                route: Some(r.route.name().to_string()),
                witness: r.witness.as_ref().map(qwitness_json),
                ..Outcome::default()
            };
            let code = if r.value.is_none() { 2 } else { 0 };
            ("qctl".into(), inputs(model, Some(src)), out, code)
        }
        Cmd::Translate { what } => {
            let order = |o: &[String]| PropOrdering::new(o.to_vec()).ctx("ordering");
            let (name, ins, text) = match what {
                Translate::Ez { model, order: o } => {
                    let k = fixtures::load(model)?;
                    let o = match o {
                        Some(o) => order(o)?,
                        None => PropOrdering::of(&k),
                    };
                    ("translate ez", inputs(model, None), kr::render(&ez_encode(&k, &o).ctx("ez")?))
                }
                Translate::F { formula: src, order: o } => {
                    let f = f_translate(&formula(src)?, &order(o)?).ctx("f")?;
                    ("translate f", Inputs { formula: Some(src.clone()), ..Inputs::default() }, format!("{}\n", f))
                }
                Translate::G { formula: src, order: o } => {
                    let f = g_translate(&formula(src)?, &order(o)?).ctx("g")?;
                    ("translate g", Inputs { formula: Some(src.clone()), ..Inputs::default() }, format!("{}\n", f))
                }
                Translate::Decode { model, order: o } => {
                    let k = fixtures::load(model)?;
                    ("translate decode", inputs(model, None), kr::render(&decode_single_prop(&k, &order(o)?).ctx("decode")?))
                }
            };
            (name.into(), ins, Outcome { output: Some(text), ..Outcome::default() }, 0)
        }
        Cmd::Table1 => {
            let cells = table1::compute(limits).ctx("table1")?;
            let value = cells
                .iter()
                .map(|c| {
                    json!({
                        "model": c.model,
                        "formula": c.formula,
                        "semantics": c.semantics,
                        "value": c.value,
                        "route": c.route.name(),
                    })
                })
                .collect::<Vec<_>>();
            let out = Outcome { value: Some(Value::Array(value)), output: Some(table1::render(&cells)), ..Outcome::default() };
            ("table1".into(), Inputs::default(), out, 0)
        }
    })
}
