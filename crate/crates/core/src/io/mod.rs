//! Configuration parsing, initial-data profiles, and run-directory output.

mod config;
mod profiles;
mod rundir;

pub use config::{parse_config, Equation, RunConfig, PROFILES};
pub use profiles::{make_initial_data, InitialData};
pub use rundir::{read_snapshots, write_run_dir, RunDir};
