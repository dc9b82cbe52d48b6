//! Library side of the verification CLI: check records, report
//! serialization, and the seeded suite registry. The `qaskey` binary and
//! the acceptance test target are thin shells over this.

pub mod report;
pub mod suite;

pub use report::{fmt_complex, fmt_f64, CheckRecord, Report};
pub use suite::{registry, run_suite, SuiteCheck};
