//! Problem files, command dispatch and the benchmark harness behind the
//! `lcsupport` binary.

pub mod bench;
pub mod commands;
pub mod problem;

pub use commands::{run_command, CliError, Flags, Report};
pub use problem::{parse_problem, ProblemError, ProblemFile};
