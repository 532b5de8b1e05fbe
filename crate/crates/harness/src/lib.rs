//! Instance suites, the claim registry, reports and ring-spec files for the
//! `trivext` command-line tool.

pub mod checks;
pub mod cli;
pub mod recipe;
pub mod report;
pub mod ringspec;
pub mod suite;
pub mod symtext;
