//! Front end for `qzero-core`: coefficient parsing, report assembly, and
//! text/JSON rendering. The `qzero` binary is a thin wrapper over this.

pub mod error;
pub mod input;
pub mod report;

pub use error::CliError;
pub use input::{parse_bounds, parse_coefficients, Form, InputSpec};
pub use report::{emit, parse_json, run_report, Format, Report, SCHEMA};
