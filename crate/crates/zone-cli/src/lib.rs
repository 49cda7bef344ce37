//! Library surface of the CLI: file formats and command drivers.
//!
//! The binary in `main.rs` is a thin argument-parsing shell over
//! [`commands`]; tests exercise the same functions in-process.

pub mod commands;
pub mod format;
