//! Command-line front end for `hyperline-core`, plus the seeded law suites,
//! numeric oracles and SVG file output it drives.

pub mod app;
pub mod error;
pub mod gen;
pub mod laws;
pub mod oracle;
pub mod svg;

pub use app::run;
pub use error::CliError;
