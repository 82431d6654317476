//! Shared test fixture: nine PCs on three switches, two daily periods.
//!
//! The working-hours matrix carries large flows (load 10) inside three
//! natural clusters plus a few small flows (load 1) across them; the
//! nonworking matrix keeps only the large flows among PCs 2, 5 and 9.
//! Combining with 16 h / 8 h durations yields entries 160, 240 and 16.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::graph::{symmetrize, SymmetricGraph};
use crate::traffic::{LoadClass, LoadClassTable, PeriodProfile, TrafficMatrix, Unit};

/// Directed working-hours loads (1-based device pairs, abstract units).
pub const WORKING_LOADS: &[(usize, usize, f64)] = &[
    (1, 4, 10.0),
    (1, 8, 10.0),
    (1, 9, 1.0),
    (2, 5, 10.0),
    (2, 9, 10.0),
    (3, 6, 10.0),
    (3, 7, 10.0),
    (4, 1, 10.0),
    (4, 8, 10.0),
    (5, 2, 10.0),
    (5, 6, 1.0),
    (5, 8, 1.0),
    (5, 9, 10.0),
    (6, 2, 1.0),
    (6, 3, 10.0),
    (6, 7, 10.0),
    (7, 3, 10.0),
    (7, 6, 10.0),
    (7, 8, 1.0),
    (8, 1, 10.0),
    (8, 4, 10.0),
    (8, 7, 1.0),
    (9, 2, 10.0),
    (9, 5, 10.0),
];

/// Directed nonworking-hours loads: only PCs 2, 5, 9 keep talking.
pub const NONWORKING_LOADS: &[(usize, usize, f64)] = &[
    (2, 5, 10.0),
    (2, 9, 10.0),
    (5, 2, 10.0),
    (5, 9, 10.0),
    (9, 2, 10.0),
    (9, 5, 10.0),
];

/// The known 16 h / 8 h combination of the two period matrices,
/// written out literally so tests do not depend on `combine`.
pub const COMBINED_ENTRIES: &[(usize, usize, f64)] = &[
    (1, 4, 160.0),
    (1, 8, 160.0),
    (1, 9, 16.0),
    (2, 5, 240.0),
    (2, 9, 240.0),
    (3, 6, 160.0),
    (3, 7, 160.0),
    (4, 1, 160.0),
    (4, 8, 160.0),
    (5, 2, 240.0),
    (5, 6, 16.0),
    (5, 8, 16.0),
    (5, 9, 240.0),
    (6, 2, 16.0),
    (6, 3, 160.0),
    (6, 7, 160.0),
    (7, 3, 160.0),
    (7, 6, 160.0),
    (7, 8, 16.0),
    (8, 1, 160.0),
    (8, 4, 160.0),
    (8, 7, 16.0),
    (9, 2, 240.0),
    (9, 5, 240.0),
];

/// Fiedler components of the combined graph, per vertex 1..9.
pub const FIEDLER_REFERENCE: [f64; 9] = [
    0.45919, -0.12275, -0.34744, 0.46906, -0.11657, -0.33986, -0.32144, 0.43358, -0.11378,
];

/// Vertices sorted by ascending Fiedler component (1-based).
pub const SORTED_VERTICES: [usize; 9] = [3, 6, 7, 2, 5, 9, 8, 1, 4];

/// Degrees of vertices 5..9 in the combined undirected graph.
pub const DEGREES_5_TO_9: [f64; 5] = [992.0, 672.0, 672.0, 688.0, 976.0];

fn matrix_from(entries: &[(usize, usize, f64)]) -> TrafficMatrix {
    let mut rows = alloc::vec![alloc::vec![0.0; 9]; 9];
    for &(i, j, w) in entries {
        rows[i - 1][j - 1] = w;
    }
    TrafficMatrix::from_rows(rows, Unit::AbstractLoad).unwrap()
}

pub fn working_matrix() -> TrafficMatrix {
    matrix_from(WORKING_LOADS)
}

pub fn nonworking_matrix() -> TrafficMatrix {
    matrix_from(NONWORKING_LOADS)
}

pub fn fixture_periods() -> Vec<PeriodProfile> {
    alloc::vec![
        PeriodProfile::new("working".to_string(), 16.0, working_matrix()).unwrap(),
        PeriodProfile::new("nonworking".to_string(), 8.0, nonworking_matrix()).unwrap(),
    ]
}

/// The combined matrix, from the literal entry table.
pub fn combined_matrix() -> TrafficMatrix {
    matrix_from(COMBINED_ENTRIES)
}

/// Undirected adjacency of the combined matrix.
pub fn combined_graph() -> SymmetricGraph {
    symmetrize(&combined_matrix())
}

pub fn load_table() -> LoadClassTable {
    let mut t = LoadClassTable::new();
    t.insert("10", LoadClass { frame_bytes: 1125, packets_per_second: 10_000 });
    t.insert("1", LoadClass { frame_bytes: 1125, packets_per_second: 1_000 });
    t
}
