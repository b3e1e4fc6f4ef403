//! File formats and configuration handling for the `qae` command-line tool.
//!
//! The algorithms live in `qae-core`; this crate adds the text interchange
//! surfaces (QASM subset, CSV, SVG), the key=value config format, and the
//! binary itself.

pub mod config;
pub mod csvfmt;
pub mod qasm;
pub mod svg;
