//! Experiment runner: configuration, dispatch, reports and the CLI.

pub mod cli;
pub mod config;
pub mod report;
pub mod run;
pub mod verify;

pub use cli::main_with;
pub use config::{ConfigPatch, ExperimentConfig, Mode, OutputFormat, SymbolChoice};
pub use report::{Cell, Check, ExperimentReport, Table};
pub use run::run;
