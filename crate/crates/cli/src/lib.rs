//! Library side of the `nilgeo` command: algebra loading, diagnostic reports,
//! the replication suite for the 9-dimensional pair, and oracle fuzzing.

pub mod fuzz;
pub mod render;
pub mod report;
pub mod source;
pub mod suite;

pub use fuzz::{fuzz, Discrepancy, FuzzSummary};
pub use report::{build_report, AlgebraIdentity, DiagnosticReport, OracleSummary};
pub use source::{load, parse_scales, CliError, Loaded, Source};
pub use suite::{paper_suite, SuiteRow};
