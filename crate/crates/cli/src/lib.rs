//! Command-line companion to the core library: resolve graph descriptions,
//! build coronas, print spectra, run the verification harness, and
//! manufacture certified cospectral pairs.
//!
//! Exit codes: 0 on success, 1 when a binding verification or certification
//! fails, 2 for usage problems (unparseable arguments, unresolvable graph
//! descriptions, unusable paths).

pub mod commands;
pub mod format;
pub mod report;
pub mod resolve;

pub use commands::run;
