//! The three commands behind the binary: optimize, energy, report.

use std::fs;
use std::path::{Path, PathBuf};

use lancut_core::energy::{evaluate, savings, IdlePolicy};
use lancut_core::fiedler::{fiedler, FiedlerOutcome};
use lancut_core::graph::symmetrize;
use lancut_core::partition::{cut_size, rsb_optimized, Partition};
use lancut_core::spectrum::laplacian;
use lancut_core::traffic::TrafficMatrix;

use crate::error::CliError;
use crate::matrixio::matrix_to_csv;
use crate::report::{
    to_json_fixed4, CutDoc, EnergyDoc, FiedlerDoc, PartitionDoc, RateDoc, ReportBundle,
};
use crate::scenario::{parse_partition_groups, Scenario};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn safe_name(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
        .collect()
}

fn optimize_partition(scenario: &Scenario, combined: &TrafficMatrix) -> Result<Partition, CliError> {
    let graph = symmetrize(combined);
    Ok(rsb_optimized(
        &graph,
        scenario.fabric.device_ports_per_switch,
        scenario.fabric.d_switches,
    )?)
}

/// `optimize <scenario> --out DIR`: write the partition, Fiedler
/// diagnostics, cut report and the period matrices reordered by the
/// serialization.
pub fn cmd_optimize(scenario_path: &Path, out_dir: &Path) -> Result<(), CliError> {
    let scenario = Scenario::load(scenario_path)?;
    let combined = scenario.combined()?;
    let graph = symmetrize(&combined);
    let partition = optimize_partition(&scenario, &combined)?;

    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;

    let fiedler_doc = if graph.n() >= 2 {
        FiedlerDoc::new(&fiedler(&laplacian(&graph))?)
    } else {
        FiedlerDoc {
            connected: true,
            lambda2: None,
            vector: None,
            ordering: None,
            degenerate: None,
            components: None,
        }
    };
    write_file(out_dir, "fiedler.json", &to_json_fixed4(&fiedler_doc)?)?;

    let partition_doc = PartitionDoc::new(&partition, &scenario.devices);
    write_file(out_dir, "partition.json", &to_json_fixed4(&partition_doc)?)?;

    let cut_doc = CutDoc::new(&cut_size(&graph, &partition)?);
    write_file(out_dir, "cut_report.json", &to_json_fixed4(&cut_doc)?)?;

    let order = partition.serialization();
    let labels: Vec<String> =
        order.iter().map(|&v| scenario.devices[v].clone()).collect();
    for period in &scenario.periods {
        let reordered = period.matrix().permuted(&order)?;
        write_file(
            out_dir,
            &format!("matrix_{}.optimized.csv", safe_name(period.name())),
            &matrix_to_csv(&reordered, Some(&labels)),
        )?;
    }
    Ok(())
}

fn resolve_partition(
    scenario: &Scenario,
    arg: &str,
) -> Result<Partition, CliError> {
    if arg == "auto" {
        let combined = scenario.combined()?;
        return optimize_partition(scenario, &combined);
    }
    let path = Path::new(arg);
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc: PartitionDoc = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(path, format!("partition file: {e}")))?;
    parse_partition_groups(
        doc.groups,
        scenario.devices.len(),
        scenario.fabric.device_ports_per_switch,
    )
}

/// `energy <scenario> --partition <file|auto> --policy P [--baseline
/// <file|default>] --out DIR`: evaluate every configured link rate and, when
/// a baseline is given, the savings against it (baseline runs always
/// active, as an unoptimized network would).
pub fn cmd_energy(
    scenario_path: &Path,
    partition_arg: &str,
    policy: IdlePolicy,
    baseline_arg: Option<&str>,
    out_dir: &Path,
) -> Result<(), CliError> {
    let scenario = Scenario::load(scenario_path)?;
    let partition = resolve_partition(&scenario, partition_arg)?;
    let periods = scenario.mbps_periods()?;

    let baseline = match baseline_arg {
        None => None,
        Some("default") => Some(scenario.baseline.clone()),
        Some(path) => Some(resolve_partition(&scenario, path)?),
    };

    let mut rates = Vec::new();
    for rate in &scenario.fabric.link_rates {
        let mut report = evaluate(
            &partition,
            &periods,
            &scenario.fabric,
            &scenario.power,
            policy,
            &rate.name,
        )?;
        if let Some(base) = &baseline {
            let base_report = evaluate(
                base,
                &periods,
                &scenario.fabric,
                &scenario.power,
                IdlePolicy::AlwaysActive,
                &rate.name,
            )?;
            report.savings_vs_baseline_kwh = Some(savings(&base_report, &report)?);
        }
        rates.push(RateDoc::new(&report));
    }

    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let doc = EnergyDoc::new(policy.name(), &partition, baseline.as_ref(), rates);
    write_file(
        out_dir,
        &format!("energy_{}.json", policy.name()),
        &to_json_fixed4(&doc)?,
    )?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

fn read_optional<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Option<T>, CliError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CliError::invalid(path, format!("report file: {e}")))
}

/// `report <dir> --format F`: deterministic rendering of whatever
/// `optimize` and `energy` left in the directory.
pub fn cmd_report(dir: &Path, format: ReportFormat) -> Result<String, CliError> {
    let partition = read_optional::<PartitionDoc>(&dir.join("partition.json"))?;
    let fiedler = read_optional::<FiedlerDoc>(&dir.join("fiedler.json"))?;
    let cut = read_optional::<CutDoc>(&dir.join("cut_report.json"))?;

    let mut energy_files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .map(|n| n.starts_with("energy_") && n.ends_with(".json"))
                .unwrap_or(false)
        })
        .collect();
    energy_files.sort();

    let mut energy = Vec::new();
    for path in energy_files {
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let doc: EnergyDoc = serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(&path, format!("energy report: {e}")))?;
        energy.push(doc);
    }

    let bundle = ReportBundle { partition, fiedler, cut, energy };
    if bundle.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no optimize or energy outputs found",
            dir.display()
        )));
    }
    match format {
        ReportFormat::Text => Ok(crate::report::render_text(&bundle)),
        ReportFormat::Csv => Ok(crate::report::render_csv(&bundle)),
        ReportFormat::Json => to_json_fixed4(&bundle),
    }
}
