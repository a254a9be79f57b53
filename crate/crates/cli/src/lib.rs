//! Command implementations behind the `anea` binary.

pub mod commands;
pub mod serve;
