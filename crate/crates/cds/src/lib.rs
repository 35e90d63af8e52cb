//! File formats, generators, oracle cache, independent verifier and
//! benchmark harness around `cds-core`, plus the `cds` command-line tool.

pub mod bench;
pub mod cache;
pub mod error;
pub mod format;
pub mod instance;
pub mod profile;
pub mod run;
pub mod verify;

pub use error::CliError;
pub use format::{parse_instance, parse_solution, read_instance, serialize_instance, serialize_solution, SolutionFile};
pub use instance::{gen_gnp, gen_spider, gen_unit_disk, Instance};
pub use profile::Profile;
