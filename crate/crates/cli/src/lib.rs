//! File format, Graphviz export, random lassos, differential testing and
//! the `stairvpa` command line, on top of the `stairvpa` core crate.

pub mod commands;
pub mod diff;
pub mod dot;
pub mod format;
pub mod random;
