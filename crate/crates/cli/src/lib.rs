//! Problem files and report generation for the `tvar` command.
//!
//! A problem file is a JSON object with a `kind` field naming the
//! computation and kind-specific payload fields. [`load_problem`] validates
//! it and [`run`] dispatches to the engines in `tvar_core`.

pub mod problem;
pub mod run;

pub use problem::{load_problem, ParseError, Problem};
pub use run::{run, Check, Report, RunError, RunOptions};
