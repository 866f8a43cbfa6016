//! File formats, shipped fixtures and the command-line front end.

pub mod cli;
pub mod fixtures;
pub mod kr;
pub mod report;
pub mod table1;
