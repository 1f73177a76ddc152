//! Instance files and reports for the `qnichols` command.

pub mod instance;
pub mod report;
