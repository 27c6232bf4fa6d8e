use anyhow::{bail, Context, Result};
use cftorsion::igusa::{distinguish_families, DistinguishOptions, Family};
use cftorsion::rational::{format_rational, parse_rational};
use cftorsion::search::{concrete_record, run_search, SearchConfig};
use cftorsion::symbolic::{build_system, eliminate_with_budget, instantiate_curve, parse_assignment, EliminationTrace, PivotPolicy};
use cftorsion::{cf_expand, digest, enumerate_partitions, igusa_abcd, record_curve, run_fixtures, torsion_order, CfStatus, PartitionSpec, Poly};
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cftorsion", version, about = "Continued fractions of sqrt(f) and torsion of the divisor at infinity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand sqrt(f) as a continued fraction.
    Expand {
        f: String,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Torsion order of the divisor at infinity.
    Order {
        f: String,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// Admissible degree partitions for (g, N).
    Partitions {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
    },
    /// Build and eliminate the symbolic system of one partition.
    Solve {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
        /// Interior degrees, comma separated.
        #[arg(long, value_delimiter = ',')]
        partition: Vec<usize>,
        /// Preferred pivots, comma separated (canonical names or aliases).
        #[arg(long, value_delimiter = ',')]
        prefer: Vec<String>,
        #[arg(long)]
        max_terms: Option<usize>,
        /// Write the trace as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Substitute values into a FAMILY trace and verify the curve.
    Instantiate {
        #[arg(long)]
        trace: PathBuf,
        /// var=value pairs, comma separated.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
    /// Igusa-Clebsch invariants and absolute invariants of a sextic.
    Igusa { f: String },
    /// Compare two one-parameter sextic families by absolute invariants.
    Distinguish {
        first: String,
        second: String,
        /// Also run the resultant computation in both parameters.
        #[arg(long)]
        full_symbolic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the search pipeline and append verified records to a catalog.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Run the built-in fixture suite.
    Fixtures,
}

fn parse_poly(s: &str) -> Result<Poly> {
    s.parse::<Poly>().with_context(|| format!("cannot parse polynomial {s:?}"))
}

/// Writes to stdout, exiting quietly when the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(e.into());
        }
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        out!("{}\n", format_args!($($arg)*))
    };
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Expand { f, max_steps, json } => {
            let e = cf_expand(&parse_poly(&f)?, max_steps)?;
            if json {
                outln!("{}", e.to_json());
            } else {
                out!("{e}");
            }
        }
        Cmd::Order { f, genus, max_steps } => {
            let e = cf_expand(&parse_poly(&f)?, max_steps)?;
            if e.status == CfStatus::BudgetExceeded {
                outln!("BudgetExceeded after {max_steps} steps");
                return Ok(ExitCode::from(1));
            }
            outln!("{}", torsion_order(&e, genus)?);
        }
        Cmd::Partitions { genus, order } => {
            for p in enumerate_partitions(genus, order)? {
                outln!("{p}");
            }
        }
        Cmd::Solve { genus, order, partition, prefer, max_terms, out, json } => {
            let spec = PartitionSpec::new(genus, partition)?;
            if spec.n != order {
                bail!("partition {spec} has N = {}, not {order}", spec.n);
            }
            let policy = if prefer.is_empty() { PivotPolicy::RoleRanked } else { PivotPolicy::Explicit(prefer) };
            let sys = build_system(&spec)?;
            let trace = eliminate_with_budget(&sys, &policy, max_terms)?;
            if let Some(path) = out {
                std::fs::write(&path, trace.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                outln!("{}", trace.to_json());
            } else {
                out!("{trace}");
            }
        }
        Cmd::Instantiate { trace, assign } => {
            let text = std::fs::read_to_string(&trace).with_context(|| format!("reading {}", trace.display()))?;
            let trace = EliminationTrace::from_json(&text)?;
            let mut pairs = Vec::new();
            for a in &assign {
                let (k, v) = a.split_once('=').with_context(|| format!("expected var=value, got {a:?}"))?;
                pairs.push((k.trim().to_string(), parse_rational(v.trim())?));
            }
            let values = parse_assignment(&trace, &pairs)?;
            let inst = instantiate_curve(&trace, &values)?;
            let rec = concrete_record(&trace, &inst);
            outln!("f = {}", inst.f);
            outln!("kappa = {}", format_rational(&inst.kappa));
            out!("{}", rec.verification);
            if !rec.verified {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Igusa { f } => {
            let inv = igusa_abcd(&parse_poly(&f)?)?;
            outln!("{inv}");
            match inv.j() {
                Ok(j) => outln!("{j}"),
                Err(e) => outln!("j: {e}"),
            }
        }
        Cmd::Distinguish { first, second, full_symbolic, json } => {
            let f = Family::parse(&first)?;
            let g = Family::parse(&second)?;
            let opts = DistinguishOptions { full: full_symbolic, ..DistinguishOptions::default() };
            let d = distinguish_families(&f, &g, &opts)?;
            if json {
                outln!("{}", serde_json::to_string_pretty(&d)?);
            } else {
                out!("{d}");
            }
        }
        Cmd::Search { config, catalog } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg: SearchConfig = toml::from_str(&text).context("parsing search config")?;
            let path = catalog
                .or_else(|| cfg.catalog.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("catalog.jsonl"));
            let records = run_search(&cfg)?;
            let mut written = 0;
            for r in &records {
                outln!("{}", r.summary());
                if r.verified && record_curve(r, &path)? {
                    written += 1;
                }
            }
            outln!("{} records, {written} new in {}", records.len(), path.display());
            outln!("digest {}", digest(&records));
        }
        Cmd::Fixtures => {
            let rep = run_fixtures()?;
            out!("{rep}");
            if !rep.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
