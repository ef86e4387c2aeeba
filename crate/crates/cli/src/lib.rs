//! Command layer of the `tlq` binary: typed result tables, rendering and verification suites.

pub mod bignum;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;
