use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use defect_forge::cache;
use defect_forge::checks::{run_all, DEFAULT_SEED};
use defect_forge::export::{format_defect, query, write_defects_csv};
use defect_forge::json::{cover_from_json, cover_to_json, to_pretty, ExprJson, PairJson, ReportJson};
use defect_forge::{ForgeError, Result};
use defect_forge_core::defect::{enumerate_b_r, sorted_defects, DefectFilters};
use defect_forge_core::ldp::format_tuple;
use defect_forge_core::ordinal::compare_ordinals;
use defect_forge_core::{
    build_s_r, verify_cover, BuildMode, ComplexityTable, DefectThreshold, Form, LdpExpr, OrdinalCnf,
};
use num_bigint::BigUint;

const TABLE_ENV: &str = "DEFECT_FORGE_TABLE";

#[derive(Parser)]
#[command(name = "defect-forge", version, about = "Integer complexity tables, defects and covering sets")]
struct Cli {
    /// Table cache to read; DEFECT_FORGE_TABLE takes precedence.
    #[arg(long, global = true, default_value = "table.ict")]
    table: PathBuf,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
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
    /// Build a table and write it as an ICT1 cache.
    Build {
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long)]
        out: PathBuf,
        /// Scan every addition split instead of the pruned range.
        #[arg(long)]
        paranoid: bool,
    },
    /// Complexity, defect, class, leader flag and stability of n.
    Query {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Distinct defects up to a bound, by leader, in increasing order.
    Defects(DefectArgs),
    /// Leaders up to a bound with defect below a threshold.
    Leaders {
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "1")]
        max_defect: DefectThreshold,
    },
    /// Build the covering set for a threshold r.
    Cover {
        #[arg(long)]
        r: DefectThreshold,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a covering set against the table; exit 1 on any failure.
    VerifyCover {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        bound: u64,
    },
    /// Evaluate or search low-defect polynomials given as JSON.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Natural sum, product and comparison of ordinals below ω^ω.
    #[command(subcommand)]
    Ordinal(OrdinalCommand),
    /// Run the verification suite against the table.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct DefectArgs {
    #[arg(long)]
    bound: u64,
    /// Keep only leaders with ||n|| = a (mod 3).
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..3))]
    class: Option<u8>,
    /// Keep only chains verified stable within the table.
    #[arg(long)]
    stable: bool,
    #[arg(long)]
    max_defect: Option<DefectThreshold>,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Value at 3^e for an exponent tuple such as 1,2.
    Eval {
        /// Expression or pair JSON, or @path to read it from a file.
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        at: Vec<u32>,
        /// Multiply by one more power of 3 (last exponent).
        #[arg(long)]
        augmented: bool,
    },
    /// Exponent tuples at which the polynomial equals n.
    Represent {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = parse_big)]
        n: BigUint,
        #[arg(long)]
        augmented: bool,
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Subcommand)]
enum OrdinalCommand {
    Sum { a: OrdinalCnf, b: OrdinalCnf },
    Prod { a: OrdinalCnf, b: OrdinalCnf },
    Cmp { a: OrdinalCnf, b: OrdinalCnf },
}

enum Failure {
    Check(String),
    Usage(String),
    Error(ForgeError),
}

impl From<ForgeError> for Failure {
    fn from(e: ForgeError) -> Self {
        Failure::Error(e)
    }
}

impl From<defect_forge_core::Error> for Failure {
    fn from(e: defect_forge_core::Error) -> Self {
        Failure::Error(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_range() { 3 } else { 1 })
        }
    }
}

fn parse_big(s: &str) -> std::result::Result<BigUint, String> {
    s.parse().map_err(|_| format!("not a nonnegative integer: {s:?}"))
}

fn table_path(cli: &Cli) -> PathBuf {
    match std::env::var_os(TABLE_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => cli.table.clone(),
    }
}

fn load_table(cli: &Cli) -> Result<ComplexityTable> {
    cache::load(&table_path(cli))
}

fn emit(text: &str) -> std::result::Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Error(ForgeError::io("<stdout>", e)))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| ForgeError::io(path, e))
}

fn read_poly(arg: &str) -> std::result::Result<LdpExpr, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| ForgeError::io(path, e))?,
        None => arg.to_string(),
    };
    if let Ok(pair) = serde_json::from_str::<PairJson>(&text) {
        return Ok(pair.to_pair()?.expr);
    }
    let expr: ExprJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("poly: {e}")))?;
    Ok(expr.to_expr()?)
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Build { limit, out, paranoid } => {
            let mode = if *paranoid { BuildMode::Paranoid } else { BuildMode::Pruned };
            let start = Instant::now();
            let table = ComplexityTable::build_with(*limit, mode)?;
            let secs = start.elapsed().as_secs_f64();
            let bytes = cache::save(out, &table)?;
            emit(&format!(
                "built limit {limit} in {secs:.3}s\nsha256 {}\nwrote {} ({} bytes)\n",
                cache::checksum(&bytes),
                out.display(),
                bytes.len()
            ))
        }
        Command::Query { n } => {
            let table = load_table(cli)?;
            let rec = query(&table, *n)?;
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string(&rec).expect("record"))),
                _ => emit(&format!("{}\n", rec.text())),
            }
        }
        Command::Defects(args) => {
            let table = load_table(cli)?;
            let filters = DefectFilters {
                class: args.class,
                stable_only: args.stable,
                threshold: args.max_defect,
            };
            let list = sorted_defects(&table, args.bound, filters)?;
            match cli.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_defects_csv(&mut buf, &list)?;
                    emit(&String::from_utf8(buf).expect("csv is utf-8"))
                }
                Format::Json => {
                    let rows: Vec<_> = list
                        .iter()
                        .map(|e| {
                            serde_json::json!({
                                "n": e.leader,
                                "complexity": e.key.complexity,
                                "defect": format_defect(e.key.to_f64()),
                                "class": e.class.to_string(),
                                "stable_status": e.status.verdict.to_string(),
                            })
                        })
                        .collect();
                    emit(&to_pretty(&rows))
                }
                Format::Text => {
                    let mut s = String::new();
                    for e in &list {
                        s.push_str(&format!(
                            "{} {} {} {} {}\n",
                            e.leader,
                            e.key.complexity,
                            format_defect(e.key.to_f64()),
                            e.class,
                            e.status.verdict
                        ));
                    }
                    emit(&s)
                }
            }
        }
        Command::Leaders { bound, max_defect } => {
            let table = load_table(cli)?;
            let list = enumerate_b_r(&table, *max_defect, *bound)?;
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string(&list).expect("list"))),
                _ => emit(&list.iter().map(|n| format!("{n}\n")).collect::<String>()),
            }
        }
        Command::Cover { r, out } => {
            let table = load_table(cli)?;
            let cover = build_s_r(&table, *r)?;
            write_file(out, &cover_to_json(&cover))?;
            emit(&format!(
                "S_{r}: k = {}, alpha = {}, {} pairs, max degree {}, base bound {}\n",
                cover.k,
                cover.alpha,
                cover.entries.len(),
                cover.max_degree(),
                cover.base_bound
            ))
        }
        Command::VerifyCover { cover, bound } => {
            let table = load_table(cli)?;
            let text = fs::read_to_string(cover).map_err(|e| ForgeError::io(cover, e))?;
            let cover = cover_from_json(&text)?;
            let report = verify_cover(&table, &cover, *bound)?;
            emit(&to_pretty(&ReportJson::from(&report)))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} coverage failures", report.failures.len())))
            }
        }
        Command::Poly(PolyCommand::Eval { poly, at, augmented }) => {
            let expr = read_poly(poly)?;
            let v = if *augmented {
                expr.augment_evaluate(at)?
            } else {
                expr.evaluate(at)?
            };
            emit(&format!("{v}\n"))
        }
        Command::Poly(PolyCommand::Represent { poly, n, augmented, cap }) => {
            let expr = read_poly(poly)?;
            let form = if *augmented { Form::Augmented } else { Form::Plain };
            let found = expr.find_3_representations(n, *cap, form);
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string(&found).expect("tuples"))),
                _ => emit(&found.iter().map(|t| format!("{}\n", format_tuple(t))).collect::<String>()),
            }
        }
        Command::Ordinal(op) => {
            let line = match op {
                OrdinalCommand::Sum { a, b } => a.nat_sum(b).to_string(),
                OrdinalCommand::Prod { a, b } => a.nat_prod(b).to_string(),
                OrdinalCommand::Cmp { a, b } => match compare_ordinals(a, b) {
                    std::cmp::Ordering::Less => "<".to_string(),
                    std::cmp::Ordering::Equal => "=".to_string(),
                    std::cmp::Ordering::Greater => ">".to_string(),
                },
            };
            emit(&format!("{line}\n"))
        }
        Command::Selftest { seed } => {
            let table = load_table(cli)?;
            let summary = run_all(&table, *seed);
            emit(&to_pretty(&summary))?;
            if summary.failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} of {} checks failed", summary.failed, summary.checks_run)))
            }
        }
    }
}
