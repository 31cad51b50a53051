//! File formats, reports and DOT export for the geometry engine, shared by
//! the `brucknet` binary and the test suites.

pub mod document;
pub mod dot;
pub mod mols;
pub mod report;

pub use document::{GeometryDocument, ParseError};
pub use report::RunReport;
