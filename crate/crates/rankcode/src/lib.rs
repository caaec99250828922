//! Command-line front end for `rankcode-core`: JSON code files, reports and
//! the acceptance suite.

pub mod cli;
pub mod codefile;
pub mod error;
pub mod report;
pub mod suite;
