use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use nilcoh_core::catalog::{self, scan_diagonal_grid};
use nilcoh_core::exterior::direct_sum;
use nilcoh_core::metrics::{check_condition, diagonal_metric, ConditionResult};
use nilcoh_core::report::{emit_report, TableKind};
use nilcoh_core::scalar::{parse_rational, Rational};
use nilcoh_core::{
    build_metric, obstruct, parse_structure_file, AlgebraSpec, Bicomplex, Condition, GaussianRational, MetricForm,
    Report,
};

mod pretty;

#[derive(Parser)]
#[command(name = "nilcoh", version, about = "Exact cohomology and metric checks for nilpotent structure equations")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check d² = 0 and nilpotency of the complex structure.
    Validate { file: PathBuf },
    /// Print one cohomology table.
    Table {
        file: PathBuf,
        #[arg(long, value_parser = parse_table_kind)]
        theory: TableKind,
        /// Emit the JSON report even with --pretty.
        #[arg(long)]
        json: bool,
    },
    /// Check a condition on an invariant Hermitian metric.
    Metric {
        file: PathBuf,
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long, value_parser = parse_condition)]
        check: Condition,
    },
    /// Run the obstruction tests, optionally with a metric.
    Obstruct {
        file: PathBuf,
        #[command(flatten)]
        metric: OptionalMetricArgs,
    },
    /// Write the direct sum of two specs.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a condition for every diagonal metric with entries from a grid.
    Scan {
        file: PathBuf,
        /// Comma-separated rationals.
        #[arg(long)]
        grid: String,
        #[arg(long, value_parser = parse_condition)]
        check: Condition,
    },
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show {
        key: String,
    },
    /// Recompute fixtures; all shipped entries when no key is given.
    Suite {
        keys: Vec<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MetricArgs {
    /// Diagonal entries t1,…,tn.
    #[arg(long)]
    diag: Option<String>,
    /// JSON file {"H": [[{"re","im"}, …], …]}.
    #[arg(long)]
    hmatrix: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalMetricArgs {
    #[arg(long)]
    diag: Option<String>,
    #[arg(long)]
    hmatrix: Option<PathBuf>,
}

fn parse_table_kind(s: &str) -> Result<TableKind, String> {
    s.parse()
}

fn parse_condition(s: &str) -> Result<Condition, String> {
    s.parse()
}

fn read_spec(path: &Path) -> anyhow::Result<AlgebraSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_structure_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_grid(s: &str) -> anyhow::Result<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim()).with_context(|| format!("bad rational `{}`", t.trim()))).collect()
}

#[derive(Deserialize)]
struct HFile {
    #[serde(rename = "H")]
    h: Vec<Vec<GaussianRational>>,
}

fn load_metric(spec: &AlgebraSpec, diag: Option<&str>, hmatrix: Option<&Path>) -> anyhow::Result<Option<MetricForm>> {
    match (diag, hmatrix) {
        (Some(d), _) => {
            let values = parse_grid(d)?;
            let m = diagonal_metric(spec, &values)?;
            if !m.positive {
                bail!("--diag entries must be positive");
            }
            Ok(Some(m))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file: HFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            Ok(Some(build_metric(spec, file.h)?))
        }
        (None, None) => Ok(None),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", emit_report(value));
}

#[derive(Serialize)]
struct MetricOutput<'a> {
    metric: &'a MetricForm,
    condition: String,
    #[serde(flatten)]
    result: &'a ConditionResult,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Validate { file } => {
            let spec = read_spec(&file)?;
            let report = Report::validation(&spec);
            let ok = report.valid.as_ref().is_some_and(|v| v.jacobi_ok);
            if pretty {
                print!("{}", pretty::validation(&report));
            } else {
                print_json(&report);
            }
            Ok(ok)
        }
        Command::Table { file, theory, json } => {
            let spec = read_spec(&file)?;
            let mut report = Report::validation(&spec);
            let Ok(bc) = Bicomplex::new(&spec) else {
                eprintln!("error: structure equations fail d^2 = 0");
                print_json(&report);
                return Ok(false);
            };
            report.add_table(&bc, theory)?;
            if pretty && !json {
                print!("{}", pretty::table(&report, theory));
            } else {
                print_json(&report);
            }
            Ok(true)
        }
        Command::Metric { file, metric, check } => {
            let spec = read_spec(&file)?;
            let m = load_metric(&spec, metric.diag.as_deref(), metric.hmatrix.as_deref())?.expect("clap requires one");
            let result = check_condition(&spec, &m, check)?;
            if pretty {
                print!("{}", pretty::metric(&m, check, &result));
            } else {
                let mut report = Report::new(&spec);
                report
                    .add_verdict("metric", MetricOutput { metric: &m, condition: check.to_string(), result: &result });
                print_json(&report);
            }
            Ok(result.holds)
        }
        Command::Obstruct { file, metric } => {
            let spec = read_spec(&file)?;
            let m = load_metric(&spec, metric.diag.as_deref(), metric.hmatrix.as_deref())?;
            let r = obstruct(&spec, m.as_ref())?;
            if pretty {
                print!("{}", pretty::obstruction(&spec, &r));
            } else {
                let mut report = Report::new(&spec);
                report.add_verdict("obstructions", &r);
                print_json(&report);
            }
            Ok(!r.obstructed())
        }
        Command::Product { first, second, output } => {
            let a = read_spec(&first)?;
            let b = read_spec(&second)?;
            let sum = direct_sum(&a, &b)?;
            fs::write(&output, sum.to_dsl()).with_context(|| format!("writing {}", output.display()))?;
            let report = Report::validation(&sum);
            if pretty {
                print!("{}", pretty::validation(&report));
            } else {
                print_json(&report);
            }
            Ok(true)
        }
        Command::Scan { file, grid, check } => {
            let spec = read_spec(&file)?;
            let rows = scan_diagonal_grid(&spec, &parse_grid(&grid)?, check)?;
            if pretty {
                print!("{}", pretty::scan(&rows));
            } else {
                let mut report = Report::new(&spec);
                report.add_verdict("scan", serde_json::json!({ "condition": check.to_string(), "rows": rows }));
                print_json(&report);
            }
            Ok(true)
        }
        Command::Catalog(CatalogCommand::List) => {
            let keys = catalog::list();
            if pretty {
                keys.iter().for_each(|k| println!("{k}"));
            } else {
                print_json(&keys);
            }
            Ok(true)
        }
        Command::Catalog(CatalogCommand::Show { key }) => {
            let entry = catalog::catalog_get(&key)?;
            if pretty {
                print!("{}", pretty::entry(&entry));
            } else {
                print_json(&entry);
            }
            Ok(true)
        }
        Command::Catalog(CatalogCommand::Suite { keys }) => {
            let summary = catalog::run_suite(&keys)?;
            if pretty {
                print!("{}", pretty::suite(&summary));
            } else {
                print_json(&summary);
            }
            Ok(summary.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let verdict =
                matches!(err.downcast_ref::<nilcoh_core::Error>(), Some(nilcoh_core::Error::InvalidSpec { .. }));
            ExitCode::from(if verdict { 1 } else { 2 })
        }
    }
}
