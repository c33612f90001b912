//! Experiment harness around `ogp-core`: configuration files, a rayon trial
//! runner, result tables with provenance sidecars, plot data, and the
//! small-n overlap probe.

pub mod config;
pub mod error;
pub mod experiments;
pub mod instance_io;
pub mod plot;
pub mod probe;
pub mod record;
pub mod runner;
pub mod suite;
pub mod table;

pub use config::{AlgorithmConfig, Experiment, ExperimentConfig, OutputFormat};
pub use error::{LabError, Result};
pub use experiments::{run_experiment, DENSE_CAP_ENV};
pub use record::{ResultRecord, StreamSpan};
pub use runner::RayonRunner;
pub use table::{Cell, Table};
