//! The line-oriented `.kr` structure format.
//!
//! ```text
//! kripke L
//! props: p q
//! init: a0
//! state a0: p -q
//! trans: a0 a0
//! ```
//!
//! A bare name in a state line is true, `-name` is false and `name=M` is
//! unknown. Omitted propositions are false.

use std::fmt::Write;

use thiserror::Error;
use vacmc_core::{Kripke, KripkeBuilder, Truth};

#[derive(Debug, Error)]
pub enum KrError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Model(#[from] vacmc_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> KrError {
    KrError::Syntax { line, msg: msg.into() }
}

fn value(line: usize, v: &str) -> Result<Truth, KrError> {
    match v {
        "T" | "true" | "1" => Ok(Truth::True),
        "F" | "false" | "0" => Ok(Truth::False),
        "M" | "maybe" => Ok(Truth::Maybe),
        _ => Err(syntax(line, format!("bad truth value {:?}", v))),
    }
}

pub fn parse(src: &str) -> Result<Kripke, KrError> {
    let mut b: Option<KripkeBuilder> = None;
    let mut props: Vec<String> = Vec::new();
    let mut init = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(name) = text.strip_prefix("kripke ") {
            if b.is_some() {
                return Err(syntax(line, "second kripke header"));
            }
            b = Some(KripkeBuilder::new(name.trim()));
            continue;
        }
        let b = b.as_mut().ok_or_else(|| syntax(line, "missing kripke header"))?;
        let (key, rest) = text.split_once(':').ok_or_else(|| syntax(line, "expected `key: ...`"))?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "props" => {
                for p in words {
                    if props.iter().any(|q| q == p) {
                        return Err(syntax(line, format!("proposition {} declared twice", p)));
                    }
                    b.add_prop(p);
                    props.push(p.to_string());
                }
            }
            "init" => init.extend(words.iter().map(|s| s.to_string())),
            "trans" => {
                if words.len() != 2 {
                    return Err(syntax(line, "expected `trans: FROM TO`"));
                }
                b.add_trans(words[0], words[1]);
            }
            k if k.starts_with("state ") => {
                let name = k["state ".len()..].trim();
                let mut vals = Vec::new();
                for w in words {
                    let (p, v) = if let Some(p) = w.strip_prefix('-') {
                        (p, Truth::False)
                    } else if let Some((p, v)) = w.split_once('=') {
                        (p, value(line, v)?)
                    } else {
                        (w, Truth::True)
                    };
                    if !props.iter().any(|q| q == p) {
                        return Err(syntax(line, format!("undeclared proposition {}", p)));
                    }
                    vals.push((p.to_string(), v));
                }
                b.add_state(name, &vals)?;
            }
            other => return Err(syntax(line, format!("unknown key {:?}", other))),
        }
    }
    let mut b = b.ok_or_else(|| syntax(0, "missing kripke header"))?;
    for s in &init {
        b.add_init(s);
    }
    Ok(b.build()?)
}

pub fn render(k: &Kripke) -> String {
    let mut out = String::new();
    let names = |ids: &[usize]| ids.iter().map(|&s| k.states()[s].as_str()).collect::<Vec<_>>().join(" ");
    writeln!(out, "kripke {}", k.name()).unwrap();
    writeln!(out, "props: {}", k.props().join(" ")).unwrap();
    writeln!(out, "init: {}", names(k.init())).unwrap();
    for (s, name) in k.states().iter().enumerate() {
        let mut parts = Vec::new();
        for (p, prop) in k.props().iter().enumerate() {
            match k.label(s, p) {
                Truth::True => parts.push(prop.clone()),
                Truth::Maybe => parts.push(format!("{}=M", prop)),
                Truth::False => {}
            }
        }
        if parts.is_empty() {
            writeln!(out, "state {}:", name).unwrap();
        } else {
            writeln!(out, "state {}: {}", name, parts.join(" ")).unwrap();
        }
    }
    for (s, t) in k.transitions() {
        writeln!(out, "trans: {} {}", k.states()[s], k.states()[t]).unwrap();
    }
    out
}
