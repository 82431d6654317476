//! Report documents and rendering.
//!
//! Machine-readable output must be byte-identical across runs for the same
//! inputs: struct field order fixes key order, maps are BTreeMaps, and
//! every float is written with exactly four fractional digits.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use lancut_core::energy::{EnergyReport, SwitchState, WakeEvent};
use lancut_core::fiedler::FiedlerOutcome;
use lancut_core::partition::{CutReport, Partition};

use crate::error::CliError;

/// serde_json formatter printing every f64 with four fractional digits.
struct Fixed4;

impl serde_json::ser::Formatter for Fixed4 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.4}")
    }
}

/// Deterministic JSON with fixed key order and decimal formatting,
/// newline-terminated.
pub fn to_json_fixed4<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed4);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Usage(format!("serializing report: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Usage(format!("report not utf-8: {e}")))
}

fn one_based(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    groups.iter().map(|g| g.iter().map(|&v| v + 1).collect()).collect()
}

fn pair_key(a: usize, b: usize) -> String {
    format!("{}-{}", a + 1, b + 1)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub devices: Vec<String>,
    pub capacity: usize,
    /// 1-based device numbers, groups in serialization order.
    pub groups: Vec<Vec<usize>>,
    pub serialization: Vec<usize>,
    pub disconnected_components: bool,
}

impl PartitionDoc {
    pub fn new(p: &Partition, devices: &[String]) -> Self {
        PartitionDoc {
            devices: devices.to_vec(),
            capacity: p.capacity(),
            groups: one_based(p.groups()),
            serialization: p.serialization().iter().map(|&v| v + 1).collect(),
            disconnected_components: p.disconnected_input(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FiedlerDoc {
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<f64>,
    /// Per-vertex components, sign-normalized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
    /// 1-based vertices by ascending component.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<bool>,
    /// Present when the graph is disconnected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
}

impl FiedlerDoc {
    pub fn new(outcome: &FiedlerOutcome) -> Self {
        match outcome {
            FiedlerOutcome::Connected(r) => FiedlerDoc {
                connected: true,
                lambda2: Some(r.lambda2),
                vector: Some(r.vector.clone()),
                ordering: Some(r.ordering.iter().map(|&v| v + 1).collect()),
                degenerate: Some(r.degenerate),
                components: None,
            },
            FiedlerOutcome::Disconnected { components } => FiedlerDoc {
                connected: false,
                lambda2: None,
                vector: None,
                ordering: None,
                degenerate: None,
                components: Some(one_based(components)),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CutDoc {
    pub cut_size: f64,
    /// Crossing weight per group pair, keys like "1-2".
    pub pair_flows: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

impl CutDoc {
    pub fn new(cut: &CutReport) -> Self {
        CutDoc {
            cut_size: cut.cut_size,
            pair_flows: cut
                .pair_flows
                .iter()
                .map(|(&(a, b), &w)| (pair_key(a, b), w))
                .collect(),
            ratio: cut.ratio,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SwitchStateDoc {
    pub switch: usize,
    pub state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub active_ports: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PeriodDoc {
    pub period: String,
    pub hours: f64,
    pub switch_states: Vec<SwitchStateDoc>,
    /// Trunk ports the pairwise flows demand at this rate's capacity.
    pub trunk_demand: BTreeMap<String, u32>,
    /// Wired trunks powered on each chain link (switch i to i+1).
    pub active_trunk_links: Vec<u32>,
    pub power_w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WakeDoc {
    pub switch: usize,
    pub period: String,
    pub lead_s: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RateDoc {
    pub rate: String,
    pub per_period: Vec<PeriodDoc>,
    pub yearly_kwh: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub savings_vs_baseline_kwh: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emission_kgco2: Option<f64>,
    pub wake_schedule: Vec<WakeDoc>,
    pub warnings: Vec<String>,
}

impl RateDoc {
    pub fn new(report: &EnergyReport) -> Self {
        RateDoc {
            rate: report.rate.clone(),
            per_period: report
                .per_period
                .iter()
                .map(|p| PeriodDoc {
                    period: p.period.clone(),
                    hours: p.hours,
                    switch_states: p
                        .states
                        .iter()
                        .enumerate()
                        .map(|(s, state)| match state {
                            SwitchState::Active { active_ports, rate } => SwitchStateDoc {
                                switch: s + 1,
                                state: "active".into(),
                                active_ports: Some(*active_ports),
                                rate: Some(rate.clone()),
                            },
                            SwitchState::Hibernate => SwitchStateDoc {
                                switch: s + 1,
                                state: "hibernate".into(),
                                active_ports: None,
                                rate: None,
                            },
                            SwitchState::Off => SwitchStateDoc {
                                switch: s + 1,
                                state: "off".into(),
                                active_ports: None,
                                rate: None,
                            },
                        })
                        .collect(),
                    trunk_demand: p
                        .trunk_counts
                        .iter()
                        .map(|(&(a, b), &t)| (pair_key(a, b), t))
                        .collect(),
                    active_trunk_links: p.active_links.clone(),
                    power_w: p.power_w,
                })
                .collect(),
            yearly_kwh: report.yearly_kwh,
            savings_vs_baseline_kwh: report.savings_vs_baseline_kwh,
            emission_kgco2: report.emission_kgco2,
            wake_schedule: report
                .wake_events
                .iter()
                .map(|e: &WakeEvent| WakeDoc {
                    switch: e.switch + 1,
                    period: e.period.clone(),
                    lead_s: e.lead_s,
                })
                .collect(),
            warnings: report.warnings.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnergyDoc {
    pub policy: String,
    /// 1-based groups the evaluation ran on.
    pub partition: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<Vec<Vec<usize>>>,
    pub rates: Vec<RateDoc>,
}

impl EnergyDoc {
    pub fn new(
        policy: &str,
        partition: &Partition,
        baseline: Option<&Partition>,
        rates: Vec<RateDoc>,
    ) -> Self {
        EnergyDoc {
            policy: policy.into(),
            partition: one_based(partition.groups()),
            baseline: baseline.map(|b| one_based(b.groups())),
            rates,
        }
    }
}

/// Everything `report` can find in an output directory.
#[derive(Debug, Serialize)]
pub struct ReportBundle {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiedler: Option<FiedlerDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutDoc>,
    pub energy: Vec<EnergyDoc>,
}

impl ReportBundle {
    pub fn is_empty(&self) -> bool {
        self.partition.is_none()
            && self.fiedler.is_none()
            && self.cut.is_none()
            && self.energy.is_empty()
    }
}

/// Human-readable summary; the energy block is a policy x rate table of
/// yearly kWh, with savings in parentheses when present.
pub fn render_text(bundle: &ReportBundle) -> String {
    let mut out = String::new();
    if let Some(p) = &bundle.partition {
        out.push_str(&format!("Partition (capacity {} per switch)\n", p.capacity));
        for (i, group) in p.groups.iter().enumerate() {
            let names: Vec<&str> = group
                .iter()
                .map(|&v| p.devices.get(v - 1).map(String::as_str).unwrap_or("?"))
                .collect();
            out.push_str(&format!("  S{}: {}\n", i + 1, names.join(" ")));
        }
        if p.disconnected_components {
            out.push_str("  note: disconnected traffic graph, components packed separately\n");
        }
    }
    if let Some(f) = &bundle.fiedler {
        match (f.connected, f.lambda2, &f.ordering) {
            (true, Some(l2), Some(ord)) => {
                let ord: Vec<String> = ord.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(
                    "Fiedler: lambda2 {:.4}, order {}\n",
                    l2,
                    ord.join(" ")
                ));
            }
            _ => out.push_str("Fiedler: graph disconnected\n"),
        }
    }
    if let Some(c) = &bundle.cut {
        out.push_str(&format!("Cut size: {:.4}\n", c.cut_size));
    }
    if !bundle.energy.is_empty() {
        out.push('\n');
        out.push_str("Yearly energy (kWh/year), savings vs baseline in parentheses\n");
        let rates: Vec<String> = bundle.energy[0].rates.iter().map(|r| r.rate.clone()).collect();
        out.push_str(&format!("{:<16}", "policy"));
        for r in &rates {
            out.push_str(&format!("{r:>20}"));
        }
        out.push('\n');
        for doc in &bundle.energy {
            out.push_str(&format!("{:<16}", doc.policy));
            for r in &doc.rates {
                let cell = match r.savings_vs_baseline_kwh {
                    Some(s) => format!("{:.4} ({:+.4})", r.yearly_kwh, s),
                    None => format!("{:.4}", r.yearly_kwh),
                };
                out.push_str(&format!("{cell:>20}"));
            }
            out.push('\n');
        }
        for doc in &bundle.energy {
            for r in &doc.rates {
                for w in &r.wake_schedule {
                    out.push_str(&format!(
                        "wake: policy {}, rate {}: switch {} needs {:.0} s before '{}'\n",
                        doc.policy, r.rate, w.switch, w.lead_s, w.period
                    ));
                }
                for warn in &r.warnings {
                    out.push_str(&format!("warning ({} @ {}): {}\n", doc.policy, r.rate, warn));
                }
            }
        }
    }
    out
}

/// Flat CSV: one row per policy x rate.
pub fn render_csv(bundle: &ReportBundle) -> String {
    let mut out = String::from("policy,rate,yearly_kwh,savings_vs_baseline_kwh,emission_kgco2\n");
    for doc in &bundle.energy {
        for r in &doc.rates {
            let savings = r
                .savings_vs_baseline_kwh
                .map(|s| format!("{s:.4}"))
                .unwrap_or_default();
            let emission = r.emission_kgco2.map(|e| format!("{e:.4}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:.4},{},{}\n",
                doc.policy, r.rate, r.yearly_kwh, savings, emission
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed4_formats_floats_with_four_digits() {
        #[derive(Serialize)]
        struct Doc {
            x: f64,
            n: u32,
        }
        let s = to_json_fixed4(&Doc { x: 898.2, n: 3 }).unwrap();
        assert_eq!(s, "{\"x\":898.2000,\"n\":3}\n");
    }

    #[test]
    fn serialization_is_deterministic() {
        let doc = CutDoc {
            cut_size: 96.0,
            pair_flows: [("1-2".to_string(), 32.0), ("1-3".to_string(), 32.0)]
                .into_iter()
                .collect(),
            ratio: None,
        };
        assert_eq!(to_json_fixed4(&doc).unwrap(), to_json_fixed4(&doc).unwrap());
    }
}
