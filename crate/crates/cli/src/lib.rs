//! Library surface of the `cauchykit` command-line tool: the JSON document
//! codec shared by every subcommand and the benchmark runner. The binary in
//! `main.rs` is a thin argument-parsing layer over these modules, and the
//! integration tests use them to check that emitted documents reparse
//! bit-exactly.

pub mod bench;
pub mod document;
