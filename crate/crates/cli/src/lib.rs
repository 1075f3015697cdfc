//! Command implementations behind the `nielsen` binary.

pub mod args;
pub mod commands;
pub mod crosscheck;
pub mod input;
pub mod output;
