//! Command-line front end for `twwt-core`: channel and scheme file formats,
//! subcommands, and run manifests.

pub mod commands;
pub mod error;
pub mod formats;
pub mod manifest;
