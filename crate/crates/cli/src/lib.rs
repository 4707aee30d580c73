//! Front-end plumbing for the actuation simulator: config files, output
//! serialization, figure presets, and the commands the binary dispatches to.

pub mod commands;
pub mod config;
pub mod error;
pub mod heatmap;
pub mod output;
pub mod presets;
