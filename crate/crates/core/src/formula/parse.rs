use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Formula, SetAtom};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Op(&'static str),
    Set(SetAtom),
    Not,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Dot,
    True,
    False,
    Forall,
    Exists,
}

const OPS: [&str; 13] = ["A", "E", "X", "F", "G", "U", "R", "AX", "EX", "AF", "EF", "AG", "EG"];

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '!' => out.push((start, Tok::Not)),
            '&' => out.push((start, Tok::And)),
            '|' => out.push((start, Tok::Or)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '[' => out.push((start, Tok::LBrack)),
            ']' => out.push((start, Tok::RBrack)),
            '.' => out.push((start, Tok::Dot)),
            '-' => {
                if b.get(i + 1) == Some(&b'>') {
                    out.push((start, Tok::Imp));
                    i += 1;
                } else {
                    return err(start, "expected `->`");
                }
            }
            '{' => {
                let (atom, next) = lex_set(src, i)?;
                out.push((start, Tok::Set(atom)));
                i = next;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                let w = &src[start..i];
                let tok = match w {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ if c.is_ascii_lowercase() => Tok::Ident(w.to_string()),
                    _ => match OPS.iter().find(|o| **o == w) {
                        Some(o) => Tok::Op(o),
                        None => return err(start, format!("unknown operator `{}`", w)),
                    },
                };
                out.push((start, tok));
                continue;
            }
            _ => return err(start, format!("unexpected character `{}`", c)),
        }
        i += 1;
    }
    Ok(out)
}

fn lex_set(src: &str, open: usize) -> Result<(SetAtom, usize)> {
    let b = src.as_bytes();
    let mut i = open + 1;
    let mut depth = 0usize;
    let mut names = BTreeSet::new();
    let mut cur = String::new();
    loop {
        let Some(&c) = b.get(i) else { return err(open, "unterminated set atom") };
        match c {
            b'(' => depth += 1,
            b')' => {
                if depth == 0 {
                    return err(i, "unbalanced `)` in set atom");
                }
                depth -= 1
            }
            b',' | b'}' if depth == 0 => {
                let name = cur.trim();
                if name.is_empty() {
                    if c == b'}' && names.is_empty() {
                        i += 1;
                        break;
                    }
                    return err(i, "empty state name in set atom");
                }
                names.insert(name.to_string());
                cur.clear();
                i += 1;
                if c == b'}' {
                    break;
                }
                continue;
            }
            _ => {}
        }
        cur.push(c as char);
        i += 1;
    }
    if b.get(i) != Some(&b'@') {
        return err(i, "expected `@MODEL` after set atom");
    }
    i += 1;
    let s = i;
    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
        i += 1;
    }
    if s == i {
        return err(s, "missing model name after `@`");
    }
    Ok((SetAtom { model: src[s..i].to_string(), states: names }, i))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.at(), format!("expected {}", what))
        }
    }

    // `no_ur` keeps a top-level U/R for the enclosing `A[..]`/`E[..]`.
    fn imp(&mut self, no_ur: bool) -> Result<Formula> {
        let l = self.or(no_ur)?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let r = self.imp(no_ur)?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn or(&mut self, no_ur: bool) -> Result<Formula> {
        let mut l = self.and(no_ur)?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            l = Formula::or(l, self.and(no_ur)?);
        }
        Ok(l)
    }

    fn and(&mut self, no_ur: bool) -> Result<Formula> {
        let mut l = self.until(no_ur)?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            l = Formula::and(l, self.until(no_ur)?);
        }
        Ok(l)
    }

    fn until(&mut self, no_ur: bool) -> Result<Formula> {
        let l = self.unary()?;
        if no_ur {
            return Ok(l);
        }
        match self.peek() {
            Some(Tok::Op("U")) => {
                self.pos += 1;
                Ok(Formula::until(l, self.until(false)?))
            }
            Some(Tok::Op("R")) => {
                self.pos += 1;
                Ok(Formula::release(l, self.until(false)?))
            }
            _ => Ok(l),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.at();
        let Some(t) = self.bump() else { return err(at, "unexpected end of formula") };
        Ok(match t {
            Tok::Not => Formula::not(self.unary()?),
            Tok::True => Formula::True,
            Tok::False => Formula::False,
            Tok::Ident(p) => Formula::Prop(p),
            Tok::Set(s) => Formula::Set(s),
            Tok::LParen => {
                let f = self.imp(false)?;
                self.expect(Tok::RParen, "`)`")?;
                f
            }
            Tok::Forall | Tok::Exists => return err(at, "quantifier only allowed at the root"),
            Tok::Op(op) => match op {
                "X" => Formula::next(self.unary()?),
                "F" => Formula::future(self.unary()?),
                "G" => Formula::globally(self.unary()?),
                "AX" => Formula::ax(self.unary()?),
                "EX" => Formula::ex(self.unary()?),
                "AF" => Formula::af(self.unary()?),
                "EF" => Formula::ef(self.unary()?),
                "AG" => Formula::ag(self.unary()?),
                "EG" => Formula::eg(self.unary()?),
                "A" | "E" => {
                    let inner = match self.bump() {
                        Some(Tok::LParen) => {
                            let f = self.imp(false)?;
                            self.expect(Tok::RParen, "`)`")?;
                            f
                        }
                        Some(Tok::LBrack) => {
                            let l = self.imp(true)?;
                            let at = self.at();
                            let f = match self.bump() {
                                Some(Tok::Op("U")) => Formula::until(l, self.imp(false)?),
                                Some(Tok::Op("R")) => Formula::release(l, self.imp(false)?),
                                _ => return err(at, "expected `U` or `R`"),
                            };
                            self.expect(Tok::RBrack, "`]`")?;
                            f
                        }
                        _ => return err(at, "expected `(` or `[` after path quantifier"),
                    };
                    if op == "A" {
                        Formula::a(inner)
                    } else {
                        Formula::e(inner)
                    }
                }
                _ => return err(at, format!("unexpected `{}`", op)),
            },
            _ => return err(at, "unexpected token"),
        })
    }
}

/// Parses the ASCII formula syntax.
pub fn parse(src: &str) -> Result<Formula> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let quant = match p.peek() {
        Some(Tok::Forall) | Some(Tok::Exists) => {
            let q = p.bump();
            let at = p.at();
            let x = match p.bump() {
                Some(Tok::Ident(x)) => x,
                _ => return err(at, "expected variable after quantifier"),
            };
            p.expect(Tok::Dot, "`.` after quantified variable")?;
            Some((q == Some(Tok::Forall), x))
        }
        _ => None,
    };
    let body = p.imp(false)?;
    if p.pos < p.toks.len() {
        return err(p.at(), "trailing input");
    }
    Ok(match quant {
        Some((true, x)) => Formula::forall(&x, body),
        Some((false, x)) => Formula::exists(&x, body),
        None => body,
    })
}
