use core::fmt::{self, Display, Formatter};

use super::{Formula, SetAtom};

impl Display for SetAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(s)?;
        }
        write!(f, "}}@{}", self.model)
    }
}

fn is_binary(g: &Formula) -> bool {
    use Formula::*;
    matches!(g, And(..) | Or(..) | Implies(..) | Until(..) | Release(..))
}

fn is_prefix_temporal(g: &Formula) -> bool {
    use Formula::*;
    matches!(g, A(_) | E(_) | Next(_) | Future(_) | Globally(_))
}

struct Operand<'a>(&'a Formula);

impl Display for Operand<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if is_binary(self.0) {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

struct BinOperand<'a>(&'a Formula, bool);

impl Display for BinOperand<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let bare_temporal = self.1 && is_prefix_temporal(self.0);
        if is_binary(self.0) || (is_prefix_temporal(self.0) && !bare_temporal) {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn prefix(f: &mut Formatter<'_>, op: &str, g: &Formula) -> fmt::Result {
    if is_binary(g) {
        write!(f, "{} ({})", op, g)
    } else {
        write!(f, "{} {}", op, g)
    }
}

fn bracket(f: &mut Formatter<'_>, q: char, l: &Formula, op: &str, r: &Formula) -> fmt::Result {
    if matches!(l, Formula::Until(..) | Formula::Release(..)) {
        write!(f, "{}[({}) {} {}]", q, l, op, r)
    } else {
        write!(f, "{}[{} {} {}]", q, l, op, r)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Prop(p) => f.write_str(p),
            Set(s) => write!(f, "{}", s),
            Not(g) => write!(f, "!{}", Operand(g)),
            And(a, b) => write!(f, "{} & {}", BinOperand(a, false), BinOperand(b, false)),
            Or(a, b) => write!(f, "{} | {}", BinOperand(a, false), BinOperand(b, false)),
            Implies(a, b) => write!(f, "{} -> {}", BinOperand(a, false), BinOperand(b, true)),
            Until(a, b) => write!(f, "{} U {}", BinOperand(a, false), BinOperand(b, false)),
            Release(a, b) => write!(f, "{} R {}", BinOperand(a, false), BinOperand(b, false)),
            Next(g) => prefix(f, "X", g),
            Future(g) => prefix(f, "F", g),
            Globally(g) => prefix(f, "G", g),
            A(p) | E(p) => {
                let q = if matches!(self, A(_)) { 'A' } else { 'E' };
                match &**p {
                    Next(g) => prefix(f, if q == 'A' { "AX" } else { "EX" }, g),
                    Future(g) => prefix(f, if q == 'A' { "AF" } else { "EF" }, g),
                    Globally(g) => prefix(f, if q == 'A' { "AG" } else { "EG" }, g),
                    Until(l, r) => bracket(f, q, l, "U", r),
                    Release(l, r) => bracket(f, q, l, "R", r),
                    g => write!(f, "{}({})", q, g),
                }
            }
            Forall(x, g) => write!(f, "forall {} . {}", x, g),
            Exists(x, g) => write!(f, "exists {} . {}", x, g),
        }
    }
}
