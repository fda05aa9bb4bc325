//! Library half of the `qreality` command: configuration, scenario dispatch,
//! randomised suites, the intensity sweep and report output.

pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod suites;
pub mod sweep;

pub use config::{FileConfig, Format, RunConfig};
pub use error::ConfigError;
pub use report::{Report, ReportRow};
pub use runner::run;

/// Exit status when every assertion passes.
pub const EXIT_PASS: i32 = 0;
/// Exit status when at least one assertion fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for configuration and parameter errors.
pub const EXIT_CONFIG: i32 = 2;
