//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Failure categories surfaced by the library.
///
/// The split matters to callers: `Domain` and `Structural` are caller bugs
/// (bad parameters, malformed circuits), while `Capability` and `Capacity`
/// mark requests that are well-formed but beyond what this implementation
/// (or the selected device) can handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameter outside its mathematical domain (e.g. a probability > 1).
    Domain(String),
    /// Malformed circuit, gate or matrix usage (bad index, dimension mismatch).
    Structural(String),
    /// Request exceeds an implementation cap (simulation width, oracle size).
    Capability(String),
    /// Circuit does not fit the selected device.
    Capacity(String),
    /// Unknown name in a registry lookup.
    Lookup(String),
    /// Least-squares fit on a rank-deficient design.
    Fit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::Capability(msg) => write!(f, "capability error: {msg}"),
            Error::Capacity(msg) => write!(f, "capacity error: {msg}"),
            Error::Lookup(msg) => write!(f, "lookup error: {msg}"),
            Error::Fit(msg) => write!(f, "fit error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
