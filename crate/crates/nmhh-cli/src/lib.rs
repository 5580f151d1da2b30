//! Command runners, output emitters and verification suites behind the
//! `nmhh` binary.

pub mod commands;
pub mod output;
pub mod verify;
