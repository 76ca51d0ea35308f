//! Voltage covers, experiment runners, reports and the command line.

mod cli;
mod cover;
mod experiments;
mod report;

pub use cli::{forest_frequencies, run_cli};
pub use cover::{essential_girth, voltage_cover, MultiGraph, VoltageGraph};
pub use experiments::{cheeger_trend, elek_experiment, luck_experiment, mayer_vietoris_check, MayerVietoris};
pub use report::{ExpectedLimit, ExperimentReport, Value, SCHEMA_VERSION};
