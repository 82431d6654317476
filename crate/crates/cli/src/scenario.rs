//! Scenario file: one JSON document bundling devices, period matrices,
//! load classes, fabric shape, power model and the baseline layout.
//!
//! Matrices may be inline (`"matrix": [[...]]`) or referenced
//! (`"matrix_csv": "path"`, resolved relative to the scenario file).
//! Device numbering is 1-based in the file and in every report.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use lancut_core::energy::{FabricConfig, LinkRate, PowerModel};
use lancut_core::partition::Partition;
use lancut_core::traffic::{
    combine, load_to_bandwidth, LoadClass, LoadClassTable, PeriodProfile, TrafficMatrix, Unit,
};

use crate::error::CliError;
use crate::matrixio::{parse_matrix, MatrixFormat};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    devices: Vec<String>,
    /// "abstract-load" (default when load_classes are given) or "mbps".
    #[serde(default)]
    unit: Option<String>,
    #[serde(default)]
    periods: Vec<PeriodFile>,
    /// Optional pre-combined matrix; replaces `combine(periods)` on the
    /// optimization path so a known combination can be loaded verbatim.
    #[serde(default)]
    combined_matrix: Option<MatrixField>,
    #[serde(default)]
    load_classes: Option<BTreeMap<String, LoadClassFile>>,
    fabric: FabricFile,
    #[serde(default)]
    power: Option<PowerFile>,
    /// 1-based device groups; defaults to consecutive index blocks of
    /// `device_ports_per_switch`.
    #[serde(default)]
    baseline_partition: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodFile {
    name: String,
    hours: f64,
    #[serde(default)]
    matrix: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    matrix_csv: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixField {
    #[serde(default)]
    matrix: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    matrix_csv: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoadClassFile {
    frame_bytes: u32,
    pps: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FabricFile {
    switches: usize,
    ports_per_switch: usize,
    device_ports_per_switch: usize,
    link_rates: Vec<LinkRateFile>,
    #[serde(default = "default_wake_hibernate")]
    wake_from_hibernate_s: f64,
    #[serde(default = "default_wake_off")]
    wake_from_off_s: f64,
}

fn default_wake_hibernate() -> f64 {
    260.0
}

fn default_wake_off() -> f64 {
    290.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkRateFile {
    name: String,
    capacity_mbps: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerFile {
    base_w: f64,
    port_w_by_rate: BTreeMap<String, f64>,
    #[serde(default = "default_hibernate_w")]
    hibernate_w: f64,
    #[serde(default)]
    off_w: f64,
    #[serde(default)]
    emission_kgco2_per_kwh: Option<f64>,
}

fn default_hibernate_w() -> f64 {
    20.0
}

/// A loaded, validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub devices: Vec<String>,
    pub unit: Unit,
    /// Periods in the scenario's native unit.
    pub periods: Vec<PeriodProfile>,
    pub combined_override: Option<TrafficMatrix>,
    pub load_classes: Option<LoadClassTable>,
    pub fabric: FabricConfig,
    pub power: PowerModel,
    pub baseline: Partition,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let file: ScenarioFile = serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(path, format!("scenario schema: {e}")))?;
        Self::from_file(file, path)
    }

    fn from_file(file: ScenarioFile, path: &Path) -> Result<Self, CliError> {
        let n = file.devices.len();
        if n == 0 {
            return Err(CliError::invalid(path, "no devices"));
        }

        let load_classes = file.load_classes.map(|classes| {
            let mut table = LoadClassTable::new();
            for (symbol, c) in classes {
                table.insert(symbol, LoadClass {
                    frame_bytes: c.frame_bytes,
                    packets_per_second: c.pps,
                });
            }
            table
        });

        let unit = match file.unit.as_deref() {
            Some("abstract-load") => Unit::AbstractLoad,
            Some("mbps") => Unit::Mbps,
            Some(other) => {
                return Err(CliError::invalid(path, format!("unknown unit '{other}'")))
            }
            None if load_classes.is_some() => Unit::AbstractLoad,
            None => Unit::Mbps,
        };

        let base = path.parent().unwrap_or(Path::new("."));
        let mut periods = Vec::new();
        for p in file.periods {
            let matrix =
                read_matrix(p.matrix, p.matrix_csv.as_deref(), unit, base, path, &p.name)?;
            if matrix.n() != n {
                return Err(CliError::invalid(
                    path,
                    format!("period '{}': matrix is {}x{} but {} devices are declared",
                        p.name, matrix.n(), matrix.n(), n),
                ));
            }
            periods.push(PeriodProfile::new(p.name, p.hours, matrix)?);
        }
        if !periods.is_empty() {
            let total: f64 = periods.iter().map(PeriodProfile::hours).sum();
            if (total - 24.0).abs() > 1e-9 {
                return Err(CliError::invalid(
                    path,
                    format!("period durations sum to {total} h, expected 24"),
                ));
            }
        }

        let combined_override = match file.combined_matrix {
            Some(f) => {
                let m = read_matrix(f.matrix, f.matrix_csv.as_deref(), unit, base, path, "combined")?;
                if m.n() != n {
                    return Err(CliError::invalid(path, "combined matrix size mismatch"));
                }
                Some(m)
            }
            None => None,
        };
        if periods.is_empty() && combined_override.is_none() {
            return Err(CliError::invalid(path, "need periods or a combined matrix"));
        }

        let fabric = FabricConfig {
            d_switches: file.fabric.switches,
            ports_per_switch: file.fabric.ports_per_switch,
            device_ports_per_switch: file.fabric.device_ports_per_switch,
            link_rates: file
                .fabric
                .link_rates
                .into_iter()
                .map(|r| LinkRate { name: r.name, capacity_mbps: r.capacity_mbps })
                .collect(),
            wake_from_hibernate_s: file.fabric.wake_from_hibernate_s,
            wake_from_off_s: file.fabric.wake_from_off_s,
        };
        fabric.validate()?;

        let power = match file.power {
            Some(p) => PowerModel {
                base_w: p.base_w,
                port_w_by_rate: p.port_w_by_rate,
                hibernate_w: p.hibernate_w,
                off_w: p.off_w,
                emission_kgco2_per_kwh: p.emission_kgco2_per_kwh,
            },
            None => PowerModel::calibrated_default(),
        };
        power.validate(&fabric)?;

        let baseline = match file.baseline_partition {
            Some(groups) => parse_partition_groups(groups, n, fabric.device_ports_per_switch)?,
            None => Partition::consecutive_blocks(n, fabric.device_ports_per_switch)?,
        };
        if baseline.groups().len() > fabric.d_switches {
            return Err(CliError::invalid(path, "baseline partition uses more switches than the fabric has"));
        }

        Ok(Scenario {
            devices: file.devices,
            unit,
            periods,
            combined_override,
            load_classes,
            fabric,
            power,
            baseline,
        })
    }

    /// Matrix the optimizer runs on: the explicit combined matrix when
    /// given, otherwise the time-weighted combination of the periods.
    pub fn combined(&self) -> Result<TrafficMatrix, CliError> {
        match &self.combined_override {
            Some(m) => Ok(m.clone()),
            None => Ok(combine(&self.periods)?),
        }
    }

    /// Periods converted to Mbps for the energy pipeline.
    pub fn mbps_periods(&self) -> Result<Vec<PeriodProfile>, CliError> {
        if self.periods.is_empty() {
            return Err(CliError::Usage(
                "scenario has no periods; energy evaluation needs per-period matrices".into(),
            ));
        }
        match self.unit {
            Unit::Mbps => Ok(self.periods.clone()),
            Unit::AbstractLoad => {
                let table = self.load_classes.as_ref().ok_or_else(|| {
                    CliError::Usage(
                        "abstract-load matrices need a load_classes table to price bandwidth"
                            .into(),
                    )
                })?;
                self.periods
                    .iter()
                    .map(|p| {
                        let m = load_to_bandwidth(p.matrix(), table)?;
                        Ok(PeriodProfile::new(p.name().into(), p.hours(), m)?)
                    })
                    .collect()
            }
        }
    }
}

fn read_matrix(
    inline: Option<Vec<Vec<f64>>>,
    csv: Option<&str>,
    unit: Unit,
    base: &Path,
    scenario_path: &Path,
    what: &str,
) -> Result<TrafficMatrix, CliError> {
    match (inline, csv) {
        (Some(rows), None) => Ok(TrafficMatrix::from_rows(rows, unit)?),
        (None, Some(rel)) => {
            let path = base.join(rel);
            let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            Ok(parse_matrix(&text, MatrixFormat::Csv, unit, &path)?.matrix)
        }
        _ => Err(CliError::invalid(
            scenario_path,
            format!("{what}: give exactly one of 'matrix' or 'matrix_csv'"),
        )),
    }
}

/// 1-based groups from a file into a validated partition.
pub fn parse_partition_groups(
    groups: Vec<Vec<usize>>,
    n: usize,
    capacity: usize,
) -> Result<Partition, CliError> {
    let zero_based: Result<Vec<Vec<usize>>, CliError> = groups
        .into_iter()
        .map(|g| {
            g.into_iter()
                .map(|v| {
                    v.checked_sub(1).ok_or_else(|| {
                        CliError::Usage("device numbers are 1-based; found 0".into())
                    })
                })
                .collect()
        })
        .collect();
    Ok(Partition::new(n, capacity, zero_based?)?)
}
