//! Directed traffic matrices, time periods and load classes.
//!
//! A [`TrafficMatrix`] holds directed communication weights between `n` end
//! devices, either in abstract load units (the symbols of a
//! [`LoadClassTable`]) or directly in Mbps. [`combine`] folds several
//! [`PeriodProfile`]s into one time-weighted matrix; the spectral pipeline
//! runs on that combination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// What the weights of a matrix mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// Symbols from a load class table (e.g. 10 = large, 1 = small).
    AbstractLoad,
    /// Megabits per second.
    Mbps,
}

/// Directed n x n matrix of nonnegative weights with an empty diagonal.
///
/// Immutable after construction; indices are 0-based internally and 1-based
/// in every message and user-facing format.
#[derive(Debug, Clone, PartialEq)]
pub struct TrafficMatrix {
    n: usize,
    unit: Unit,
    weights: Vec<f64>,
}

impl TrafficMatrix {
    /// Validates squareness, nonnegativity and the empty diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>, unit: Unit) -> Result<Self> {
        let n = rows.len();
        let mut weights = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow { row: i + 1, len: row.len(), expected: n });
            }
            for (j, &w) in row.iter().enumerate() {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::NegativeWeight { row: i + 1, col: j + 1, value: w });
                }
                if i == j && w != 0.0 {
                    return Err(Error::NonzeroDiagonal { index: i + 1, value: w });
                }
                weights.push(w);
            }
        }
        Ok(Self { n, unit, weights })
    }

    pub fn zeros(n: usize, unit: Unit) -> Self {
        Self { n, unit, weights: alloc::vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Sum of all directed weights.
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Reorders devices so that position k holds `order[k]`.
    ///
    /// `order` must be a permutation of `0..n`; used to emit matrices in
    /// serialization order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: order.len() });
        }
        let mut weights = Vec::with_capacity(self.n * self.n);
        for &i in order {
            for &j in order {
                weights.push(self.get(i, j));
            }
        }
        Ok(Self { n: self.n, unit: self.unit, weights })
    }
}

/// A named time window bound to one traffic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodProfile {
    name: String,
    hours: f64,
    matrix: TrafficMatrix,
}

impl PeriodProfile {
    /// `hours` is the window length per day, in (0, 24].
    pub fn new(name: String, hours: f64, matrix: TrafficMatrix) -> Result<Self> {
        if !(hours > 0.0 && hours <= 24.0) {
            return Err(Error::BadDuration { name, hours });
        }
        Ok(Self { name, hours, matrix })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn hours(&self) -> f64 {
        self.hours
    }

    pub fn matrix(&self) -> &TrafficMatrix {
        &self.matrix
    }
}

/// Time-weighted combination: C[i][j] = sum_k hours_k * matrix_k[i][j].
///
/// All profiles must share device count and unit; the unit is preserved.
pub fn combine(profiles: &[PeriodProfile]) -> Result<TrafficMatrix> {
    let first = profiles.first().ok_or(Error::EmptyProfiles)?;
    let n = first.matrix.n();
    let unit = first.matrix.unit();
    let mut weights = alloc::vec![0.0; n * n];
    for p in profiles {
        if p.matrix.n() != n || p.matrix.unit() != unit {
            return Err(Error::ProfileMismatch { name: p.name.clone() });
        }
        for (acc, &w) in weights.iter_mut().zip(&p.matrix.weights) {
            *acc += p.hours * w;
        }
    }
    Ok(TrafficMatrix { n, unit, weights })
}

/// One row of the load model: frame size and packet rate for a load symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadClass {
    pub frame_bytes: u32,
    pub packets_per_second: u32,
}

impl LoadClass {
    /// Transmission size per second in Mbps: bytes * 8 * pps / 10^6.
    pub fn mbps(&self) -> f64 {
        self.frame_bytes as f64 * 8.0 * self.packets_per_second as f64 / 1e6
    }
}

/// Map from load symbol (the literal matrix entry, e.g. "10") to its class.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LoadClassTable {
    entries: BTreeMap<String, LoadClass>,
}

impl LoadClassTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: impl Into<String>, class: LoadClass) {
        self.entries.insert(symbol.into(), class);
    }

    pub fn get(&self, symbol: &str) -> Option<&LoadClass> {
        self.entries.get(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &LoadClass)> {
        self.entries.iter()
    }
}

/// Substitutes every nonzero abstract load by its class bandwidth in Mbps.
///
/// Zero entries stay zero. A nonzero entry whose shortest decimal form is
/// not a key of `table` is an error naming the 1-based position.
pub fn load_to_bandwidth(m: &TrafficMatrix, table: &LoadClassTable) -> Result<TrafficMatrix> {
    if m.unit != Unit::AbstractLoad {
        return Err(Error::WrongUnit { expected: "abstract-load" });
    }
    let n = m.n;
    let mut weights = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let w = m.get(i, j);
            if w == 0.0 {
                weights.push(0.0);
                continue;
            }
            let symbol = format!("{w}");
            match table.get(&symbol) {
                Some(class) => weights.push(class.mbps()),
                None => {
                    return Err(Error::UnknownLoadSymbol { row: i + 1, col: j + 1, symbol })
                }
            }
        }
    }
    Ok(TrafficMatrix { n, unit: Unit::Mbps, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;
    use proptest::prelude::*;

    fn ones_off_diagonal(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    #[test]
    fn rejects_nonzero_diagonal_with_position() {
        let err = TrafficMatrix::from_rows(
            alloc::vec![alloc::vec![0.0, 1.0], alloc::vec![2.0, 3.0]],
            Unit::AbstractLoad,
        )
        .unwrap_err();
        assert_eq!(err, Error::NonzeroDiagonal { index: 2, value: 3.0 });
        assert_eq!(alloc::format!("{err}"), "nonzero diagonal at (2,2): 3");
    }

    #[test]
    fn rejects_negative_and_ragged() {
        let err = TrafficMatrix::from_rows(
            alloc::vec![alloc::vec![0.0, -1.0], alloc::vec![2.0, 0.0]],
            Unit::Mbps,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { row: 1, col: 2, .. }));
        let err = TrafficMatrix::from_rows(
            alloc::vec![alloc::vec![0.0, 1.0], alloc::vec![2.0]],
            Unit::Mbps,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 2, .. }));
    }

    #[test]
    fn combine_reproduces_fixture_combined_matrix() {
        let c = combine(&testdata::fixture_periods()).unwrap();
        let want = testdata::combined_matrix();
        assert_eq!(c.n(), 9);
        // PC1 -> PC8 carries 16 h x load 10 = 160; PC5 -> PC9 = 240.
        assert_eq!(c.get(0, 7), 160.0);
        assert_eq!(c.get(4, 8), 240.0);
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(c.get(i, j), want.get(i, j), "entry ({},{})", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn combine_single_unit_period_is_identity() {
        let m = TrafficMatrix::from_rows(ones_off_diagonal(3), Unit::AbstractLoad).unwrap();
        let p = PeriodProfile::new("all".into(), 1.0, m.clone()).unwrap();
        assert_eq!(combine(&[p]).unwrap(), m);
    }

    #[test]
    fn combine_hand_sum() {
        let m = TrafficMatrix::from_rows(ones_off_diagonal(3), Unit::AbstractLoad).unwrap();
        let c = combine(&[
            PeriodProfile::new("a".into(), 2.0, m.clone()).unwrap(),
            PeriodProfile::new("b".into(), 3.0, m).unwrap(),
        ])
        .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 5.0 };
                assert_eq!(c.get(i, j), want);
            }
        }
    }

    #[test]
    fn combine_rejects_empty_and_mismatched() {
        assert_eq!(combine(&[]).unwrap_err(), Error::EmptyProfiles);
        let a = TrafficMatrix::zeros(2, Unit::AbstractLoad);
        let b = TrafficMatrix::zeros(3, Unit::AbstractLoad);
        let err = combine(&[
            PeriodProfile::new("a".into(), 12.0, a).unwrap(),
            PeriodProfile::new("b".into(), 12.0, b).unwrap(),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::ProfileMismatch { .. }));
    }

    #[test]
    fn load_table_rates_follow_frame_and_packet_counts() {
        let table = testdata::load_table();
        // 1125 B frames: 10000 pps -> 90 Mbps, 1000 pps -> 9 Mbps.
        assert_eq!(table.get("10").unwrap().mbps(), 90.0);
        assert_eq!(table.get("1").unwrap().mbps(), 9.0);
    }

    #[test]
    fn load_to_bandwidth_substitutes_classes() {
        let m = TrafficMatrix::from_rows(
            alloc::vec![alloc::vec![0.0, 10.0, 0.0], alloc::vec![1.0, 0.0, 0.0], alloc::vec![
                0.0, 0.0, 0.0
            ]],
            Unit::AbstractLoad,
        )
        .unwrap();
        let out = load_to_bandwidth(&m, &testdata::load_table()).unwrap();
        assert_eq!(out.unit(), Unit::Mbps);
        assert_eq!(out.get(0, 1), 90.0);
        assert_eq!(out.get(1, 0), 9.0);
        assert_eq!(out.get(2, 0), 0.0);
    }

    #[test]
    fn load_to_bandwidth_keeps_zero_matrix_zero() {
        let m = TrafficMatrix::zeros(4, Unit::AbstractLoad);
        let out = load_to_bandwidth(&m, &testdata::load_table()).unwrap();
        assert_eq!(out.total(), 0.0);
    }

    #[test]
    fn load_to_bandwidth_names_unknown_symbol_position() {
        let m = TrafficMatrix::from_rows(
            alloc::vec![alloc::vec![0.0, 7.0], alloc::vec![0.0, 0.0]],
            Unit::AbstractLoad,
        )
        .unwrap();
        let err = load_to_bandwidth(&m, &testdata::load_table()).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLoadSymbol { row: 1, col: 2, symbol: "7".into() }
        );
    }

    proptest! {
        /// combine is linear in the durations: scaling every duration by a
        /// scales every entry by a.
        #[test]
        fn combine_is_linear_in_durations(
            scale in 1u32..4,
            hours in prop::collection::vec(0.5f64..8.0, 1..4),
            seed in prop::collection::vec(0.0f64..50.0, 9),
        ) {
            let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| {
                if i == j { 0.0 } else { seed[i * 3 + j] }
            }).collect()).collect();
            let m = TrafficMatrix::from_rows(rows, Unit::Mbps).unwrap();
            let base: Vec<PeriodProfile> = hours.iter().enumerate().map(|(k, &h)| {
                PeriodProfile::new(alloc::format!("p{k}"), h, m.clone()).unwrap()
            }).collect();
            let scaled: Vec<PeriodProfile> = hours.iter().enumerate().map(|(k, &h)| {
                PeriodProfile::new(alloc::format!("p{k}"), h * scale as f64, m.clone()).unwrap()
            }).collect();
            let c = combine(&base).unwrap();
            let cs = combine(&scaled).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((cs.get(i, j) - scale as f64 * c.get(i, j)).abs() < 1e-9);
                }
            }
        }

        /// Identical matrices over a full day combine to 24x the matrix.
        #[test]
        fn combine_full_day_of_identical_matrices(parts in 1usize..5) {
            let m = TrafficMatrix::from_rows(ones_off_diagonal(4), Unit::AbstractLoad).unwrap();
            let h = 24.0 / parts as f64;
            let profiles: Vec<PeriodProfile> = (0..parts)
                .map(|k| PeriodProfile::new(alloc::format!("p{k}"), h, m.clone()).unwrap())
                .collect();
            let c = combine(&profiles).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((c.get(i, j) - 24.0 * m.get(i, j)).abs() < 1e-9);
                }
            }
        }
    }
}
