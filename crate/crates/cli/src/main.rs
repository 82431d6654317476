use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use lancut_cli::commands::{cmd_energy, cmd_optimize, cmd_report, ReportFormat};
use lancut_core::energy::IdlePolicy;

/// Reorganize LAN device-to-switch cabling by spectral partitioning of
/// traffic matrices and quantify the energy savings.
#[derive(Parser)]
#[command(name = "lancut", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partition end devices onto switches by recursive spectral bisection
    Optimize {
        /// Scenario JSON file
        scenario: PathBuf,
        /// Output directory for partition, Fiedler and cut reports
        #[arg(long, default_value = "lancut-out")]
        out: PathBuf,
    },
    /// Evaluate switch states, trunks and yearly energy of a partition
    Energy {
        /// Scenario JSON file
        scenario: PathBuf,
        /// Partition file written by `optimize`, or "auto" to optimize now
        #[arg(long, default_value = "auto")]
        partition: String,
        /// Idle-switch policy
        #[arg(long, value_enum)]
        policy: PolicyArg,
        /// Compute savings against this partition file (or "default" for
        /// the scenario baseline), evaluated always-active
        #[arg(long)]
        baseline: Option<String>,
        /// Output directory
        #[arg(long, default_value = "lancut-out")]
        out: PathBuf,
    },
    /// Render the reports found in an output directory to stdout
    Report {
        /// Directory with optimize/energy outputs
        dir: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    AlwaysActive,
    HibernateIdle,
    OffIdle,
}

impl From<PolicyArg> for IdlePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::AlwaysActive => IdlePolicy::AlwaysActive,
            PolicyArg::HibernateIdle => IdlePolicy::HibernateIdle,
            PolicyArg::OffIdle => IdlePolicy::OffIdle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // usage problems exit 1
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let result = match cli.cmd {
        Cmd::Optimize { scenario, out } => cmd_optimize(&scenario, &out),
        Cmd::Energy { scenario, partition, policy, baseline, out } => cmd_energy(
            &scenario,
            &partition,
            policy.into(),
            baseline.as_deref(),
            &out,
        ),
        Cmd::Report { dir, format } => match cmd_report(&dir, format.into()) {
            Ok(text) => {
                print!("{text}");
                Ok(())
            }
            Err(e) => Err(e),
        },
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lancut: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
