use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse { pos: usize, msg: String },
    Structure(String),
    UnknownProp(String),
    UnknownState(String),
    UnknownModel(String),
    PropClash(String),
    NonClassical,
    NotStateFormula(String),
    NotCtl(String),
    Quantified,
    NotQuantified,
    PathSubformula(String),
    BoundExceeded { what: &'static str, size: usize, bound: usize },
    Precondition(String),
    NotApplicable(String),
    Encoding(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at {}: {}", pos, msg),
            Error::Structure(m) => write!(f, "invalid structure: {}", m),
            Error::UnknownProp(p) => write!(f, "unknown proposition `{}`", p),
            Error::UnknownState(s) => write!(f, "unknown state `{}`", s),
            Error::UnknownModel(m) => write!(f, "set atom refers to unknown model `{}`", m),
            Error::PropClash(p) => write!(f, "proposition `{}` already present", p),
            Error::NonClassical => write!(f, "structure has Maybe labels"),
            Error::NotStateFormula(s) => write!(f, "not a state formula: {}", s),
            Error::NotCtl(s) => write!(f, "not a CTL formula: {}", s),
            Error::Quantified => write!(f, "quantified formula not allowed here"),
            Error::NotQuantified => write!(f, "expected a formula of the form forall x . f or exists x . f"),
            Error::PathSubformula(s) => write!(f, "subformula is not a state formula: {}", s),
            Error::BoundExceeded { what, size, bound } => {
                write!(f, "{} of size {} exceeds enumeration bound {}", what, size, bound)
            }
            Error::Precondition(m) => write!(f, "precondition violated: {}", m),
            Error::NotApplicable(m) => write!(f, "not applicable: {}", m),
            Error::Encoding(m) => write!(f, "encoding error: {}", m),
        }
    }
}

impl core::error::Error for Error {}
