//! Crate-wide error type.
//!
//! Positions in messages are 1-based to match device numbering in reports
//! and input files.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix row count and column count disagree.
    NotSquare { rows: usize, cols: usize },
    /// A row has the wrong number of entries.
    RaggedRow { row: usize, len: usize, expected: usize },
    /// Negative weight in a traffic matrix or graph.
    NegativeWeight { row: usize, col: usize, value: f64 },
    /// Self-traffic: nonzero diagonal entry.
    NonzeroDiagonal { index: usize, value: f64 },
    /// Adjacency entry (i, j) differs from (j, i).
    NotSymmetric { row: usize, col: usize },
    /// combine() called with no profiles.
    EmptyProfiles,
    /// Period duration outside (0, 24].
    BadDuration { name: String, hours: f64 },
    /// Profiles disagree on device count or unit.
    ProfileMismatch { name: String },
    /// Matrices of different dimension where equal sizes are required.
    DimensionMismatch { expected: usize, found: usize },
    /// Operation needs a matrix in a specific unit.
    WrongUnit { expected: &'static str },
    /// Load symbol not present in the load class table.
    UnknownLoadSymbol { row: usize, col: usize, symbol: String },
    /// Eigensolver did not reach the target off-diagonal residual.
    NoConvergence { residual: f64 },
    /// Fiedler analysis needs at least two vertices.
    TooFewVertices { n: usize },
    /// Partition groups do not cover every vertex exactly once.
    BadCoverage { vertex: usize },
    /// A group exceeds the per-switch device capacity.
    GroupTooLarge { group: usize, size: usize, capacity: usize },
    /// More devices than the fabric can hold.
    InfeasibleCapacity { devices: usize, slots: usize },
    /// Partitioning parameters must be at least one.
    BadPartitionParams { n_ports: usize, d_switches: usize },
    /// Exhaustive search guard.
    TooLargeForBruteForce { n: usize, max: usize },
    /// Trunk capacity must be positive.
    NonpositiveCapacity { capacity_mbps: f64 },
    /// Power model has no entry for the requested link rate.
    UnknownRate { rate: String },
    /// Fabric config violates an invariant.
    BadFabric { reason: String },
    /// Power model violates an invariant.
    BadPowerModel { reason: String },
    /// Period durations of one report do not sum to a day.
    HoursNotFullDay { sum: f64 },
    /// Baseline and optimized reports describe different periods.
    PeriodMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows} rows x {cols} columns")
            }
            Error::RaggedRow { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            Error::NegativeWeight { row, col, value } => {
                write!(f, "negative weight {value} at ({row},{col})")
            }
            Error::NonzeroDiagonal { index, value } => {
                write!(f, "nonzero diagonal at ({index},{index}): {value}")
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "adjacency not symmetric at ({row},{col})")
            }
            Error::EmptyProfiles => write!(f, "no period profiles given"),
            Error::BadDuration { name, hours } => {
                write!(f, "period '{name}' duration {hours} h outside (0, 24]")
            }
            Error::ProfileMismatch { name } => {
                write!(f, "period '{name}' disagrees on device count or unit")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::WrongUnit { expected } => {
                write!(f, "matrix must be in {expected} units")
            }
            Error::UnknownLoadSymbol { row, col, symbol } => {
                write!(f, "unknown load symbol '{symbol}' at ({row},{col})")
            }
            Error::NoConvergence { residual } => {
                write!(f, "eigensolver failed to converge: off-diagonal residual {residual:e}")
            }
            Error::TooFewVertices { n } => {
                write!(f, "need at least 2 vertices, got {n}")
            }
            Error::BadCoverage { vertex } => {
                write!(f, "vertex {vertex} is not covered exactly once by the partition")
            }
            Error::GroupTooLarge { group, size, capacity } => {
                write!(f, "group {group} has {size} devices, capacity is {capacity}")
            }
            Error::InfeasibleCapacity { devices, slots } => {
                write!(f, "{devices} devices do not fit {slots} device ports")
            }
            Error::BadPartitionParams { n_ports, d_switches } => {
                write!(f, "need n_ports >= 1 and d_switches >= 1, got {n_ports} and {d_switches}")
            }
            Error::TooLargeForBruteForce { n, max } => {
                write!(f, "brute force limited to {max} vertices, got {n}")
            }
            Error::NonpositiveCapacity { capacity_mbps } => {
                write!(f, "trunk capacity must be positive, got {capacity_mbps} Mbps")
            }
            Error::UnknownRate { rate } => {
                write!(f, "power model has no port power for rate '{rate}'")
            }
            Error::BadFabric { reason } => write!(f, "invalid fabric: {reason}"),
            Error::BadPowerModel { reason } => write!(f, "invalid power model: {reason}"),
            Error::HoursNotFullDay { sum } => {
                write!(f, "period durations sum to {sum} h, expected 24")
            }
            Error::PeriodMismatch => {
                write!(f, "baseline and optimized reports cover different periods")
            }
        }
    }
}

impl core::error::Error for Error {}
