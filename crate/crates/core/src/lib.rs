//! Gate-level toolkit for studying how amplitude-estimation circuits scale on
//! different quantum hardware.
//!
//! The crate covers the full pipeline for the single-period T-Bill valuation
//! benchmark: a small circuit IR with exact unitary semantics ([`circuit`],
//! [`unitary`]), the bond arithmetic the estimate feeds ([`bond`]), synthesis
//! of the amplitude-estimation circuit with a swapless inverse QFT ([`qae`]),
//! dense state-vector simulation and shot sampling ([`sim`]), lowering to the
//! superconducting and ion-trap native gate sets ([`transpile`]), SWAP-insertion
//! routing onto fixed coupling maps ([`route`]) and the two-qubit-gate scaling
//! experiment with quadratic fits ([`scaling`]).
//!
//! The crate is `no_std` (it allocates but performs no IO); file formats and
//! the command-line front end live in the companion `qae-cli` crate.
//!
//! Conventions used throughout: qubit 0 is the least-significant bit of a
//! basis-state index, angles are radians, and circuit equivalence is always
//! up to global phase.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bond;
pub mod circuit;
pub mod error;
mod math;
pub mod qae;
pub mod route;
pub mod scaling;
pub mod sim;
pub mod transpile;
pub mod unitary;

pub use circuit::{Circuit, GateInstance, GateKind};
pub use error::Error;
