mod input;
mod record;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use powerconn::cutset::{build, expand, DEFAULT_EXPAND_LIMIT};
use powerconn::graph::DEFAULT_ORACLE_LIMIT;
use powerconn::kappa::{all_x, all_z};
use powerconn::sample::{random_factored, SampleConfig};
use powerconn::{bound, candidates, check_instance, kappa, CutSetDescriptor, ExplicitGraph, OrderClassGraph};

use crate::input::{parse_n, parse_spec};
use crate::record::{
    BoundsRecord, CandidateRecord, CheckRecord, CutsetRecord, OutputRecord, SweepRow, Timing,
    VerifyRecord, VerifySummary,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<powerconn::Error> for CliError {
    fn from(e: powerconn::Error) -> Self {
        match e {
            powerconn::Error::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            powerconn::Error::NotIntegral(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Vertex connectivity and minimum cut-sets of power graphs of cyclic groups.
///
/// Wherever `N` is expected, a decimal integer or a factored literal such as
/// `2^3*3*5^2` is accepted.
#[derive(Debug, Parser)]
#[command(name = "powerconn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex connectivity of P(C_n) with the minimizing cut-sets.
    Kappa {
        n: String,
        #[arg(long)]
        json: bool,
    },
    /// Build one candidate cut-set, e.g. `Z:3:1` or `X:4:5:1:1`.
    Cutset {
        n: String,
        descriptor: String,
        /// List the residues in the set.
        #[arg(long)]
        list_elements: bool,
        /// Delete the set and report the surviving components.
        #[arg(long)]
        check: bool,
        /// Largest set `--list-elements` will expand.
        #[arg(long, default_value_t = DEFAULT_EXPAND_LIMIT)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Table of candidate sizes with their inner terms.
    Bounds {
        n: String,
        /// List every Z and X descriptor, not only the candidate table.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Self-check a range or list of n (`2..300`, `12,30,4290`).
    Verify {
        /// Values to check; may be omitted with `--random`.
        spec: Option<String>,
        /// Run the max-flow oracle for n up to this value.
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: u64,
        /// Also check this many seeded random factored integers.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_r: usize,
        #[arg(long, default_value_t = 7)]
        max_r: usize,
        #[arg(long, default_value_t = 200)]
        max_prime: u64,
        #[arg(long, default_value_t = 5)]
        max_exponent: u32,
        #[arg(long)]
        json: bool,
    },
    /// kappa over a range, as CSV or JSON.
    Sweep {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Edge list of P(C_n), one `u v` pair per line.
    Edges {
        n: String,
        #[arg(long, default_value_t = 5000)]
        limit: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Kappa { n, json } => cmd_kappa(&n, json, out),
        Command::Cutset {
            n,
            descriptor,
            list_elements,
            check,
            limit,
            json,
        } => cmd_cutset(&n, &descriptor, list_elements, check, limit, json, out),
        Command::Bounds { n, all, json } => cmd_bounds(&n, all, json, out),
        Command::Verify {
            spec,
            oracle_limit,
            random,
            seed,
            min_r,
            max_r,
            max_prime,
            max_exponent,
            json,
        } => {
            let mut items = match &spec {
                Some(s) => parse_spec(s)?,
                None if random > 0 => Vec::new(),
                None => return Err(CliError::Usage("give a range or list, or --random K".into())),
            };
            let cfg = SampleConfig {
                min_r,
                max_r,
                max_prime,
                max_exponent,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..random {
                items.push(random_factored(&mut rng, &cfg)?);
            }
            cmd_verify(&items, oracle_limit, json, out)
        }
        Command::Sweep { spec, format } => cmd_sweep(&spec, format, out),
        Command::Edges { n, limit } => {
            let f = parse_n(&n)?;
            ExplicitGraph::new(&f, limit)?.write_edge_list(out)?;
            Ok(())
        }
    }
}

fn cmd_kappa(n: &str, json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let f = parse_n(n)?;
    let start = Instant::now();
    let res = kappa(&f)?;
    let rec = OutputRecord::new(&res, Timing::since(start));
    if json {
        return print_json(out, &rec);
    }
    writeln!(out, "n           {} = {}", rec.n, rec.factorization)?;
    writeln!(out, "kappa       {}", rec.kappa)?;
    writeln!(out, "rule        {}", rec.rule)?;
    if !rec.minimizers.is_empty() {
        writeln!(out, "minimizers  {}", rec.minimizers.join(" "))?;
    }
    writeln!(out, "uniqueness  {}", rec.uniqueness)?;
    Ok(())
}

fn cmd_cutset(
    n: &str,
    descriptor: &str,
    list_elements: bool,
    check: bool,
    limit: u64,
    json: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let f = parse_n(n)?;
    let desc: CutSetDescriptor = descriptor.parse()?;
    let set = build(&f, &desc)?;
    let mut rec = CutsetRecord::new(&f, desc.to_string(), &set);
    if list_elements {
        let elems = expand(&set, limit)?;
        rec.elements = Some(elems.iter().map(|x| x.to_string()).collect());
    }
    if check {
        let g = OrderClassGraph::new(&f)?;
        rec.check = Some(CheckRecord::new(&f, &g.is_cutset(&set)?));
    }
    if json {
        return print_json(out, &rec);
    }
    writeln!(out, "n           {} = {}", rec.n, rec.factorization)?;
    writeln!(out, "cut-set     {}", rec.descriptor)?;
    writeln!(out, "size        {}", rec.size)?;
    writeln!(out, "classes     {}", rec.classes.join(" "))?;
    if let Some(el) = &rec.elements {
        writeln!(out, "elements    {}", el.join(" "))?;
    }
    if let Some(c) = &rec.check {
        let parts: Vec<String> = c.components.iter().map(|p| format!("{{{}}}", p.join(","))).collect();
        writeln!(out, "disconnects {}", c.disconnected)?;
        writeln!(out, "components  {}", parts.join(" | "))?;
    }
    Ok(())
}

fn cmd_bounds(n: &str, all: bool, json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let f = parse_n(n)?;
    if f.is_prime_power() {
        return Err(CliError::Usage(format!("{f} is a prime power; P(C_n) has no cut-sets")));
    }
    let table = if all {
        all_z(&f)
            .into_iter()
            .chain(all_x(&f))
            .map(|d| bound(&f, &d))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        candidates(&f)?
    };
    let rec = BoundsRecord {
        n: f.value().to_string(),
        factorization: f.to_string(),
        totient: f.totient().to_string(),
        cofactor: f.cofactor().to_string(),
        candidates: table.iter().map(CandidateRecord::from).collect(),
    };
    if json {
        return print_json(out, &rec);
    }
    writeln!(out, "n = {} = {}", rec.n, rec.factorization)?;
    writeln!(out, "size = phi(n) + (n/rad(n)) * inner, phi(n) = {}, n/rad(n) = {}", rec.totient, rec.cofactor)?;
    let w = rec.candidates.iter().map(|c| c.descriptor.len()).max().unwrap_or(0).max(10);
    let ws = rec.candidates.iter().map(|c| c.size.len()).max().unwrap_or(0).max(4);
    writeln!(out, "{:<w$}  {:>ws$}  inner", "descriptor", "size")?;
    for c in &rec.candidates {
        writeln!(out, "{:<w$}  {:>ws$}  {}", c.descriptor, c.size, c.inner)?;
    }
    Ok(())
}

fn cmd_verify(
    items: &[powerconn::FactoredInteger],
    oracle_limit: u64,
    json: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let start = Instant::now();
    let reports: Vec<VerifyRecord> = items
        .par_iter()
        .map(|f| check_instance(f, oracle_limit).map(|r| VerifyRecord::from(&r)))
        .collect::<Result<_, _>>()?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    let summary = VerifySummary {
        checked: reports.len().to_string(),
        failed: failed.to_string(),
        results: reports,
        timing: Timing::since(start),
    };
    if json {
        print_json(out, &summary)?;
    } else {
        for r in &summary.results {
            let oracle = r.oracle_kappa.as_deref().map_or("skipped".to_string(), |k| k.to_string());
            writeln!(
                out,
                "{} n={} kappa={} rule={} descriptors={} oracle={}",
                if r.passed { "PASS" } else { "FAIL" },
                r.factorization,
                r.kappa,
                r.rule,
                r.descriptors_checked,
                oracle
            )?;
            for msg in &r.failures {
                writeln!(out, "    {msg}")?;
            }
        }
        writeln!(out, "{} checked, {} failed", summary.checked, summary.failed)?;
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} instances", summary.checked)));
    }
    Ok(())
}

fn cmd_sweep(spec: &str, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let items = parse_spec(spec)?;
    let rows: Vec<SweepRow> = items
        .par_iter()
        .map(|f| kappa(f).map(|r| SweepRow::from(&r)))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Json => print_json(out, &rows),
        Format::Csv => {
            writeln!(out, "n,factorization,kappa,rule,minimizers,uniqueness")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    r.factorization,
                    r.kappa,
                    r.rule,
                    r.minimizers.join(";"),
                    r.uniqueness
                )?;
            }
            Ok(())
        }
    }
}
