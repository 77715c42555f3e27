//! Configuration, file formats and subcommands of the `geomeans` tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod meanfile;
pub mod pgm;
pub mod reportfile;
pub mod verify;

pub use config::RunConfig;
