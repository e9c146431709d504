//! Command line front end for `binormix`: JSON pair configs, JSON reports and
//! CSV plot data.

pub mod commands;
pub mod config;
pub mod contour;
pub mod error;
pub mod plot;
pub mod report;

pub use config::{load_config, parse_config, Component, PairConfig};
pub use error::{CliError, CliResult};
