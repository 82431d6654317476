//! Spectral reorganization of switched LANs.
//!
//! The crate takes directed traffic matrices between end devices, builds the
//! time-weighted communication graph, partitions the devices onto switches
//! with recursive spectral bisection on the Fiedler vector, and evaluates the
//! energy footprint of the resulting cabling plan (per-switch power states,
//! trunk provisioning, yearly energy, savings versus a baseline).
//!
//! The crate is `no_std` + `alloc`; all IO, file formats and the CLI live in
//! the companion `lancut-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod energy;
pub mod error;
pub mod fiedler;
pub mod graph;
pub mod partition;
pub mod spectrum;
pub mod traffic;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testdata;
