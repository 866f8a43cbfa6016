//! Structures shipped with the tool, addressable by name.

use std::path::Path;

use vacmc_core::Kripke;

use crate::kr::{self, KrError};

pub const FIXTURES: [(&str, &str); 11] = [
    ("L", include_str!("../fixtures/L.kr")),
    ("M", include_str!("../fixtures/M.kr")),
    ("N", include_str!("../fixtures/N.kr")),
    ("O", include_str!("../fixtures/O.kr")),
    ("P", include_str!("../fixtures/P.kr")),
    ("Q", include_str!("../fixtures/Q.kr")),
    ("U", include_str!("../fixtures/U.kr")),
    ("ezU", include_str!("../fixtures/ezU.kr")),
    ("V", include_str!("../fixtures/V.kr")),
    ("Valpha", include_str!("../fixtures/Valpha.kr")),
    ("chi", include_str!("../fixtures/chi.kr")),
];

pub fn fixture(name: &str) -> Option<Kripke> {
    let name = name.strip_suffix(".kr").unwrap_or(name);
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| kr::parse(src).expect("shipped fixtures parse"))
}

pub fn all() -> Vec<Kripke> {
    FIXTURES.iter().map(|(_, src)| kr::parse(src).expect("shipped fixtures parse")).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: {1}")]
    Format(String, KrError),
}

/// A path to a `.kr` file, or the name of a shipped fixture when no such
/// file exists.
pub fn load(arg: &str) -> Result<Kripke, LoadError> {
    let path = Path::new(arg);
    if path.is_file() {
        let src = std::fs::read_to_string(path).map_err(|e| LoadError::Io(arg.to_string(), e))?;
        return kr::parse(&src).map_err(|e| LoadError::Format(arg.to_string(), e));
    }
    let base = path.file_name().and_then(|s| s.to_str()).unwrap_or(arg);
    fixture(base).ok_or_else(|| {
        LoadError::Io(arg.to_string(), std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or fixture"))
    })
}
