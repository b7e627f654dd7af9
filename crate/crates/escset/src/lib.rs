//! File formats, worker pools and the command-line front end for
//! [`escset_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod parallel;

pub use format::{read_field_csv, render_ppm, report_json, write_field_csv, write_orbit_csv, CsvDefaults};
