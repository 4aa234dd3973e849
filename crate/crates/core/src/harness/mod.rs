//! Seeded random-matrix ensembles, batch verification suites and report
//! emission.

mod ensemble;
mod report;
mod suite;

pub use ensemble::{generate_ensemble, Ensemble, EnsembleConfig};
pub use report::{emit_report, format_float, parse_report_json, to_json_string, write_csv, ReportFormat, CSV_HEADER};
pub use suite::{run_suite, BoundRow, ChainRow, SuiteOptions, SuiteReport, Tightness, DEFAULT_LAMBDA_GRID};
