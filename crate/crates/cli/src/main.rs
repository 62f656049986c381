//! `permrun`: tables, theorem verification, and path drawings for the
//! run-statistics engine, with deterministic JSON/CSV/text output.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 a verified
//! guarantee actually failed, 2 bad parameters, 3 an enumeration guard
//! refused to run (lift with `--max-n` / `--max-pairs`).

mod output;
mod render;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use output::{EdgeRecord, Format, OutputRecord, Payload, TableRow};
use permrun_core::dist::{
    descent_distribution_with, half_ascending_descent_distribution_with, odd_t_distribution_with,
    run_distribution_with, t_distribution_with, DistributionTable, TableError,
    DEFAULT_TABLE_LIMIT,
};
use permrun_core::path::{
    Edge, LabeledPath, PathError, Restriction, DEFAULT_PATH_ENUMERATION_LIMIT,
};
use permrun_core::perm::{PermError, Permutation, DEFAULT_ENUMERATION_LIMIT};
use permrun_core::phi::{AuditError, DEFAULT_PAIR_LIMIT};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;
use verify::Target;

#[derive(Parser)]
#[command(name = "permrun", version, about, max_term_width = 100)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "PERMRUN_FORMAT", default_value = "text")]
    format: Format,
    /// Omit elapsed-time fields so identical invocations are byte-identical.
    #[arg(long, global = true)]
    no_elapsed: bool,
    /// Lift the permutation/path/table enumeration guards up to this n.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    /// Lift the audit's pair-comparison guard to this many pairs.
    #[arg(long, global = true, value_name = "PAIRS")]
    max_pairs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the distribution of a statistic as an exact table.
    Table {
        #[arg(value_enum)]
        statistic: StatisticArg,
        /// Permutation length.
        #[arg(long)]
        n: usize,
        /// Pair index for the t statistic.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Re-derive a family of guarantees and report pass/fail per check.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Permutation length / path edge count.
        #[arg(long)]
        n: usize,
        /// Restrict the audit to one vertical-edge count.
        #[arg(long)]
        k: Option<usize>,
        /// Restrict the audit to one path family.
        #[arg(long, value_enum)]
        restriction: Option<RestrictionArg>,
    },
    /// Draw a labeled path as an ASCII staircase.
    Draw {
        /// A permutation (e.g. 243165 or "2,4,3,1,6,5") to map through the
        /// bijection first.
        #[arg(long)]
        perm: Option<String>,
        /// A JSON edge list like [{"dir":"H","label":1},{"dir":"V","label":1}].
        #[arg(long, value_name = "JSON")]
        path: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatisticArg {
    /// Run counts over all permutations.
    Runs,
    /// Descent counts over all permutations.
    Descents,
    /// Descent counts over even-length permutations whose disjoint pairs all
    /// ascend.
    HalfAscending,
    /// The t statistic over pair-constrained permutations (needs --j).
    T,
    /// Doubled descent counts over odd-length pair-constrained permutations.
    OddT,
}

impl StatisticArg {
    fn name(&self) -> &'static str {
        match self {
            StatisticArg::Runs => "runs",
            StatisticArg::Descents => "descents",
            StatisticArg::HalfAscending => "half-ascending",
            StatisticArg::T => "t",
            StatisticArg::OddT => "odd-t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RestrictionArg {
    /// No restriction.
    All,
    /// Even-indexed edges horizontal.
    #[value(name = "V", alias = "v", alias = "even-horizontal")]
    V,
    /// Odd-indexed edges (from the third) horizontal.
    #[value(name = "V-prime", alias = "v-prime", alias = "odd-horizontal")]
    VPrime,
}

impl From<RestrictionArg> for Restriction {
    fn from(arg: RestrictionArg) -> Restriction {
        match arg {
            RestrictionArg::All => Restriction::All,
            RestrictionArg::V => Restriction::EvenHorizontal,
            RestrictionArg::VPrime => Restriction::OddHorizontal,
        }
    }
}

/// Guard settings, assembled from defaults and the override flags.
pub struct Limits {
    pub table: usize,
    pub enumeration: usize,
    pub pairs: u64,
    pub include_elapsed: bool,
}

/// A command failure that is not a theorem violation.
#[derive(Debug)]
pub enum CliError {
    /// Invalid parameters or malformed input (exit 2).
    Usage(String),
    /// A default guard refused the workload (exit 3).
    Guard(String),
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::TableLimit { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::EnumerationLimit { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::EnumerationLimit { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        match e {
            AuditError::PairLimit { .. } => CliError::Guard(e.to_string()),
            AuditError::Path(inner) => CliError::from(inner),
            AuditError::UnsupportedCell { .. } => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        table: cli.max_n.unwrap_or(DEFAULT_TABLE_LIMIT),
        enumeration: cli
            .max_n
            .unwrap_or(DEFAULT_ENUMERATION_LIMIT.min(DEFAULT_PATH_ENUMERATION_LIMIT)),
        pairs: cli.max_pairs.unwrap_or(DEFAULT_PAIR_LIMIT),
        include_elapsed: !cli.no_elapsed,
    };
    let started = Instant::now();
    match run(&cli.command, &limits) {
        Ok((mut record, pass)) => {
            if limits.include_elapsed {
                record.elapsed_ms = Some(started.elapsed().as_millis());
            }
            print!("{}", record.render(cli.format));
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Guard(message)) => {
            eprintln!("refused: {message} (lift with --max-n / --max-pairs)");
            ExitCode::from(3)
        }
    }
}

fn run(command: &Command, limits: &Limits) -> Result<(OutputRecord, bool), CliError> {
    match command {
        Command::Table { statistic, n, j } => cmd_table(*statistic, *n, *j, limits),
        Command::Verify { target, n, k, restriction } => {
            cmd_verify(*target, *n, *k, restriction.map(Restriction::from), limits)
        }
        Command::Draw { perm, path } => cmd_draw(perm.as_deref(), path.as_deref()),
    }
}

fn cmd_table(
    statistic: StatisticArg,
    n: usize,
    j: Option<usize>,
    limits: &Limits,
) -> Result<(OutputRecord, bool), CliError> {
    if statistic != StatisticArg::T && j.is_some() {
        return Err(CliError::Usage(format!(
            "--j only applies to the t statistic, not {}",
            statistic.name()
        )));
    }
    let table: DistributionTable = match statistic {
        StatisticArg::Runs => run_distribution_with(n, limits.table)?,
        StatisticArg::Descents => descent_distribution_with(n, limits.table)?,
        StatisticArg::HalfAscending => half_ascending_descent_distribution_with(n, limits.table)?,
        StatisticArg::T => {
            let j = j.ok_or_else(|| CliError::Usage("the t statistic needs --j".to_string()))?;
            t_distribution_with(n, j, limits.table)?
        }
        StatisticArg::OddT => odd_t_distribution_with(n, limits.table)?,
    };
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), n.to_string());
    parameters.insert("statistic".to_string(), statistic.name().to_string());
    if let Some(j) = j {
        parameters.insert("j".to_string(), j.to_string());
    }
    let rows = table
        .counts()
        .iter()
        .map(|(&k, count)| TableRow { k, count: count.to_string() })
        .collect();
    let payload = Payload::Table {
        n,
        statistic: table.statistic().to_string(),
        total: table.total().to_string(),
        rows,
    };
    Ok((record("table", parameters, payload), true))
}

fn cmd_verify(
    target: Target,
    n: usize,
    k: Option<usize>,
    restriction: Option<Restriction>,
    limits: &Limits,
) -> Result<(OutputRecord, bool), CliError> {
    if !matches!(target, Target::PhiAudit | Target::All) && (k.is_some() || restriction.is_some()) {
        return Err(CliError::Usage(format!(
            "--k/--restriction only apply to phi-audit, not {}",
            target.name()
        )));
    }
    let outcome = verify::run_target(target, n, k, restriction, limits)?;
    let pass = outcome.checks.iter().all(|c| c.passed());
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), n.to_string());
    parameters.insert("target".to_string(), target.name().to_string());
    if let Some(k) = k {
        parameters.insert("k".to_string(), k.to_string());
    }
    if let Some(restriction) = restriction {
        parameters.insert("restriction".to_string(), restriction.to_string());
    }
    let payload = Payload::Verification {
        target: target.name().to_string(),
        pass,
        checks: outcome.checks,
        audits: outcome.audits,
    };
    Ok((record("verify", parameters, payload), pass))
}

#[derive(Deserialize)]
struct EdgeSpec {
    dir: String,
    label: usize,
}

fn cmd_draw(perm: Option<&str>, path: Option<&str>) -> Result<(OutputRecord, bool), CliError> {
    let mut parameters = BTreeMap::new();
    let labeled = match (perm, path) {
        (Some(perm), None) => {
            let p: Permutation = perm.parse()?;
            parameters.insert("perm".to_string(), p.to_string());
            LabeledPath::from_permutation(&p)
        }
        (None, Some(path)) => {
            let specs: Vec<EdgeSpec> = serde_json::from_str(path)
                .map_err(|e| CliError::Usage(format!("bad path JSON: {e}")))?;
            let edges = specs
                .iter()
                .map(|spec| match spec.dir.as_str() {
                    "H" | "h" => Ok(Edge::horizontal(spec.label)),
                    "V" | "v" => Ok(Edge::vertical(spec.label)),
                    other => Err(CliError::Usage(format!(
                        "edge direction must be \"H\" or \"V\", got {other:?}"
                    ))),
                })
                .collect::<Result<Vec<Edge>, CliError>>()?;
            parameters.insert("path".to_string(), "json".to_string());
            LabeledPath::new(edges)?
        }
        _ => {
            return Err(CliError::Usage(
                "provide exactly one of --perm or --path".to_string(),
            ))
        }
    };
    let edges = labeled
        .edges()
        .iter()
        .map(|e| EdgeRecord { dir: e.direction.letter(), label: e.label })
        .collect();
    let payload = Payload::Render {
        path: labeled.to_string(),
        edges,
        lines: render::ascii_grid(&labeled),
    };
    Ok((record("draw", parameters, payload), true))
}

fn record(command: &str, parameters: BTreeMap<String, String>, payload: Payload) -> OutputRecord {
    OutputRecord {
        command: command.to_string(),
        parameters,
        payload,
        elapsed_ms: None,
    }
}
