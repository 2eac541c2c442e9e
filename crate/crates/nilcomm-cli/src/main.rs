//! Command-line entry point: partition combinatorics, commuting-pair
//! analysis, and the seeded verification suites, with text/JSON/CSV output.
//!
//! Exit codes: 0 all good, 1 counterexamples found, 2 inconclusive sampling,
//! 64 usage or input errors.

use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nilcomm::algebra::{mcninch_pair, CommutingPair, PairAlgebra};
use nilcomm::commutant::estimate_qp_in;
use nilcomm::harness::{
    canonical_json, characteristic_sensitivity, combined_exit_status, qp_table, run_suite,
    verify_all, Config, ExperimentReport, QpTable, SUITE_ORDER,
};
use nilcomm::{HilbertFunction, Partition, PrimeField, Rng};

const USAGE_EXIT: i32 = 64;

#[derive(Parser)]
#[command(
    name = "nilcomm",
    version,
    about = "Exact computations with commuting nilpotent matrix pairs",
    disable_help_subcommand = true
)]
struct Cli {
    /// Field modulus (prime)
    #[arg(long, global = true, default_value_t = PrimeField::DEFAULT_MODULUS)]
    prime: u64,

    /// Sampling trials per partition
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,

    /// Master seed for all randomized computations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Exhaustive sweep bound for verify/table
    #[arg(long, global = true, default_value_t = 8)]
    nmax: usize,

    /// Output format (csv applies to `table` only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Permit moduli at or below the matrix sizes (characteristic studies)
    #[arg(long = "allow-small-char", global = true)]
    allow_small_char: bool,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the verification sweeps
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the generic commutator partition Q(P) by sampling
    Qp { partition: String },
    /// Test whether P is stable (Q(P) = P), by part gaps
    Stable { partition: String },
    /// Minimum string count, longest string, and minimal decompositions
    Strings { partition: String },
    /// Dual (conjugate) partition
    Dual { partition: String },
    /// Diagonal lengths of the Ferrers diagram
    Diag { partition: String },
    /// The partition P(H) with strictly decreasing parts and diagonal lengths H
    Ph { hilbert: String },
    /// The Hilbert function paired with a strictly decreasing partition
    Hofp { partition: String },
    /// Jordan partition of the i-th power of the Jordan matrix of P
    Power { partition: String, index: usize },
    /// Analyze a commuting pair read from a JSON file (or stdin)
    PairReport { file: Option<PathBuf> },
    /// The tensor-product pair A = J_d ⊗ I_2, B = I_d ⊗ J_2
    Mcninch { d: usize },
    /// Run one verification suite, or `all`
    Verify { suite: String },
    /// Summary table over all partitions up to nmax
    Table,
}

enum Failure {
    Usage(String),
    Inconclusive(String),
}

impl From<nilcomm::Error> for Failure {
    fn from(e: nilcomm::Error) -> Self {
        match e {
            nilcomm::Error::Inconclusive(msg) => Failure::Inconclusive(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE_EXIT,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((output, code)) => match emit(&cli.out, &output) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                USAGE_EXIT
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            USAGE_EXIT
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            2
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Comma-separated positive integers, canonicalized to descending order with
/// a warning when the input was reordered.
fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let nums: Vec<usize> = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("malformed partition entry {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    let partition =
        Partition::new(nums.clone()).map_err(|e| Failure::Usage(format!("bad partition: {e}")))?;
    if partition.parts() != nums.as_slice() {
        eprintln!("warning: partition reordered to {partition}");
    }
    Ok(partition)
}

fn parse_hilbert(s: &str) -> Result<HilbertFunction, Failure> {
    s.parse::<HilbertFunction>()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn field_for(cli: &Cli, n: usize) -> Result<PrimeField, Failure> {
    let field = PrimeField::new(cli.prime).map_err(|e| Failure::Usage(e.to_string()))?;
    if !cli.allow_small_char && cli.prime <= n as u64 {
        return Err(Failure::Usage(format!(
            "modulus {} is not larger than n = {n}; pass --allow-small-char to override",
            cli.prime
        )));
    }
    Ok(field)
}

fn config_for(cli: &Cli) -> Config {
    Config {
        modulus: cli.prime,
        trials: cli.trials,
        seed: cli.seed,
        nmax: cli.nmax,
        allow_small_characteristic: cli.allow_small_char,
    }
}

fn require_not_csv(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        Err(Failure::Usage(
            "csv output is only available for `table`".into(),
        ))
    } else {
        Ok(())
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    if cli.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    PrimeField::new(cli.prime).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Qp { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let field = field_for(cli, p.sum())?;
            let mut rng = Rng::new(cli.seed);
            let est = estimate_qp_in(&p, field, cli.trials, &mut rng)?;
            let out = match cli.format {
                Format::Json => canonical_json(&est),
                _ => {
                    let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
                    for o in &est.observed {
                        *tally.entry(o.to_string()).or_default() += 1;
                    }
                    let observed: Vec<String> =
                        tally.iter().map(|(k, v)| format!("{k} x{v}")).collect();
                    format!(
                        "P: {}\nQP: {}\ntrials: {}\nseed: {}\nobserved: {}\nnote: {}\n",
                        est.input,
                        est.partition,
                        est.trials,
                        est.seed,
                        observed.join(" | "),
                        est.note()
                    )
                }
            };
            Ok((out, 0))
        }
        Command::Stable { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"P": p, "stable": p.is_stable()})),
                _ => format!("P: {p}\nstable: {}\n", p.is_stable()),
            };
            Ok((out, 0))
        }
        Command::Strings { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let stats = p.string_stats();
            let out = match cli.format {
                Format::Json => canonical_json(&json!({
                    "P": p,
                    "rP": stats.min_strings,
                    "sP": stats.longest_string,
                    "decompositions": stats.decompositions.iter()
                        .map(|d| d.blocks().to_vec()).collect::<Vec<_>>(),
                })),
                _ => {
                    let decomps: Vec<String> = stats
                        .decompositions
                        .iter()
                        .map(|d| {
                            d.blocks()
                                .iter()
                                .map(|b| format!("({b})"))
                                .collect::<String>()
                        })
                        .collect();
                    format!(
                        "P: {p}\nrP: {}\nsP: {}\ndecompositions: {}\n",
                        stats.min_strings,
                        stats.longest_string,
                        decomps.join(" | ")
                    )
                }
            };
            Ok((out, 0))
        }
        Command::Dual { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"P": p, "dual": p.dual()})),
                _ => format!("P: {p}\ndual: {}\n", p.dual()),
            };
            Ok((out, 0))
        }
        Command::Diag { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let diag = p.diagonal_lengths();
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"P": p, "diag": diag})),
                _ => format!(
                    "P: {p}\ndiag: {}\n",
                    diag.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            };
            Ok((out, 0))
        }
        Command::Ph { hilbert } => {
            require_not_csv(cli)?;
            let h = parse_hilbert(hilbert)?;
            let ph = h.to_partition();
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"H": h, "PH": ph})),
                _ => format!("H: {h}\nP(H): {ph}\n"),
            };
            Ok((out, 0))
        }
        Command::Hofp { partition } => {
            require_not_csv(cli)?;
            let p = parse_partition(partition)?;
            let h = p.to_hilbert().map_err(|e| Failure::Usage(e.to_string()))?;
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"P": p, "H": h})),
                _ => format!("P: {p}\nH: {h}\n"),
            };
            Ok((out, 0))
        }
        Command::Power { partition, index } => {
            require_not_csv(cli)?;
            if *index == 0 {
                return Err(Failure::Usage("power index must be at least 1".into()));
            }
            let p = parse_partition(partition)?;
            let power = p.power(*index);
            let out = match cli.format {
                Format::Json => canonical_json(&json!({"P": p, "i": index, "power": power})),
                _ => format!("P: {p}\ni: {index}\npower: {power}\n"),
            };
            Ok((out, 0))
        }
        Command::PairReport { file } => {
            require_not_csv(cli)?;
            let raw = read_input(file)?;
            let pair: CommutingPair = serde_json::from_str(&raw)
                .map_err(|e| Failure::Usage(format!("bad pair JSON: {e}")))?;
            let alg = PairAlgebra::new(pair);
            let mut rng = Rng::new(cli.seed);
            let report = alg.report(cli.trials, &mut rng);
            let out = match cli.format {
                Format::Json => canonical_json(&report),
                _ => format!(
                    "dim: {}\nH: {}\nsocle: {}\ngenericPencil: {}\ncyclic: {}\n",
                    report.dim,
                    join(&report.h),
                    report.socle,
                    report
                        .generic_pencil
                        .as_ref()
                        .map(|p| p.to_string())
                        .unwrap_or_else(|| "inconclusive".into()),
                    report.cyclic
                ),
            };
            Ok((out, 0))
        }
        Command::Mcninch { d } => {
            require_not_csv(cli)?;
            if *d == 0 {
                return Err(Failure::Usage("d must be at least 1".into()));
            }
            // small prime dividing d: report the characteristic contrast
            if cli.allow_small_char
                && cli.prime <= 2 * *d as u64
                && (*d as u64).is_multiple_of(cli.prime)
            {
                let report = characteristic_sensitivity(*d, cli.prime, &config_for(cli))?;
                let code = report.exit_status();
                return Ok((render_reports(cli, std::slice::from_ref(&report)), code));
            }
            let field = field_for(cli, 2 * d)?;
            let pair = mcninch_pair(*d, field)?;
            let a_partition = pair.a().jordan_partition()?;
            let b_partition = pair.b().jordan_partition()?;
            let alg = PairAlgebra::new(pair);
            let mut rng = Rng::new(cli.seed);
            let report = alg.report(cli.trials, &mut rng);
            let out = match cli.format {
                Format::Json => canonical_json(&json!({
                    "d": d,
                    "A": a_partition,
                    "B": b_partition,
                    "dim": report.dim,
                    "H": report.h,
                    "socle": report.socle,
                    "genericPencil": report.generic_pencil,
                    "cyclic": report.cyclic,
                })),
                _ => format!(
                    "d: {d}\nA: {a_partition}\nB: {b_partition}\ndim: {}\nH: {}\nsocle: {}\ngenericPencil: {}\ncyclic: {}\n",
                    report.dim,
                    join(&report.h),
                    report.socle,
                    report
                        .generic_pencil
                        .as_ref()
                        .map(|p| p.to_string())
                        .unwrap_or_else(|| "inconclusive".into()),
                    report.cyclic
                ),
            };
            Ok((out, 0))
        }
        Command::Verify { suite } => {
            require_not_csv(cli)?;
            let cfg = config_for(cli);
            let reports: Vec<ExperimentReport> = if suite == "all" {
                verify_all(&cfg, cli.jobs)?
            } else if SUITE_ORDER.contains(&suite.as_str()) {
                vec![run_suite(suite, &cfg, cli.jobs)?]
            } else {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of {} or all",
                    SUITE_ORDER.join(", ")
                )));
            };
            let code = combined_exit_status(&reports);
            Ok((render_reports(cli, &reports), code))
        }
        Command::Table => {
            let cfg = config_for(cli);
            let table = qp_table(&cfg, cli.jobs)?;
            let code = table.exit_status();
            let out = match cli.format {
                Format::Json => canonical_json(&table),
                Format::Csv => table.to_csv(),
                Format::Text => render_table(&table),
            };
            Ok((out, code))
        }
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn render_reports(cli: &Cli, reports: &[ExperimentReport]) -> String {
    if cli.format == Format::Json {
        return if reports.len() == 1 {
            canonical_json(&reports[0])
        } else {
            canonical_json(&reports)
        };
    }
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!(
            "suite: {}\nstatus: {}\npartitions: {} passed: {} failed: {} inconclusive: {}\n",
            report.suite,
            match report.exit_status() {
                0 => "pass",
                1 => "fail",
                _ => "inconclusive",
            },
            report.total,
            report.passed,
            report.failed,
            report.inconclusive,
        ));
        for ce in &report.counterexamples {
            out.push_str(&format!(
                "counterexample: P={} check={} expected={} observed={}\n",
                ce.partition, ce.check, ce.expected, ce.observed
            ));
        }
        out.push('\n');
    }
    out
}

fn render_table(table: &QpTable) -> String {
    let mut out = String::new();
    let opt = |p: &Option<String>| p.clone().unwrap_or_else(|| "-".into());
    for row in &table.rows {
        out.push_str(&format!(
            "P={} n={} r={} s={} stable={} predicted={} qp={} h_min={} qp_diag={} nu={}\n",
            row.partition,
            row.n,
            row.r,
            row.s,
            row.stable,
            opt(&row.predicted.as_ref().map(|p| p.to_string())),
            opt(&row.qp.as_ref().map(|p| p.to_string())),
            opt(&row.h_min.as_ref().map(|h| h.to_string())),
            opt(&row.qp_diagonal.as_ref().map(|d| join(d))),
            opt(&row.nu.as_ref().map(|v| v.to_string())),
        ));
    }
    out
}
