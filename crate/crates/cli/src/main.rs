// SPDX-License-Identifier: MIT OR Apache-2.0
use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use howe::actions::{apply_word, parse_word};
use howe::canonical::canonical_json;
use howe::characters::tilting_weyl_matrix;
use howe::crystal::crystal_graph;
use howe::diffalg::{normalize_diff, parse_diff_word};
use howe::extalg::{normalize, ExtVec, Subset};
use howe::howeverify::{run_all, run_check_bounded, CheckReport};
use howe::qarith::{padic_expand, parse_inf, qbinom_nonzero, Specialization};

#[derive(Parser)]
#[command(name = "howe", version, about = "Quantum exterior algebra of type C: actions, canonical bases, tilting data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word: signed indices like "-1 1", or a
    /// differential-operator word like "d1 v1".
    Normalize {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Applies a generator word (right to left) to an element.
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        /// Element JSON file, `-` for stdin.
        #[arg(long, conflicts_with = "subset")]
        on: Option<String>,
        /// Basis vector given as a subset literal.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Canonical basis vector b_S with its rainbow arcs.
    Canonical {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// The crystal of the k-th fundamental representation.
    Crystal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tilting:Weyl multiplicities of the fundamental tilting modules.
    Tilting {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Digits of m and i and whether [m; i] survives the specialization.
    Qbinom {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        i: u64,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Runs exhaustive certificates; prints one JSON report per line.
    Verify {
        #[arg(long)]
        n: usize,
        /// Specialization `P,L` (repeatable), e.g. `7,3` or `inf,4`.
        #[arg(long = "spec")]
        specs: Vec<String>,
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Characteristic, or `inf`.
    #[arg(long, default_value = "inf")]
    p: String,
    /// Quantum characteristic, or `inf`.
    #[arg(long, default_value = "inf")]
    ell: String,
}

impl SpecArgs {
    fn parse(&self) -> Result<Specialization> {
        Ok(Specialization::new(parse_inf(&self.p)?, parse_inf(&self.ell)?)?)
    }
}

fn parse_subset(n: usize, s: &str) -> Result<Subset> {
    let members = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("bad subset entry {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subset::new(n, &members)?)
}

fn read_element(path: &str) -> Result<ExtVec> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    serde_json::from_str(&text).context("parsing element JSON")
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

/// Whether the error comes from a closed stdout, as with `howe ... | head`.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>()
                .is_some_and(|ce| matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe))
    })
}

fn max_rank() -> Result<Option<usize>> {
    match std::env::var("HOWE_MAX_RANK") {
        Ok(v) => Ok(Some(v.parse().with_context(|| format!("HOWE_MAX_RANK={v:?}"))?)),
        Err(_) => Ok(None),
    }
}

/// Runs a subcommand; `Ok(false)` means a verification failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Normalize { n, word } => {
            if word.contains(['v', 'd']) {
                let w = parse_diff_word(&word, n)?;
                print_json(&serde_json::to_value(normalize_diff(&w, n)?)?)?;
            } else {
                let w = word
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().with_context(|| format!("bad index {t:?}")))
                    .collect::<Result<Vec<_>>>()?;
                print_json(&serde_json::to_value(normalize(&w, n)?)?)?;
            }
        }
        Command::Act { n, word, on, subset } => {
            let x = match (on, subset) {
                (Some(path), _) => read_element(&path)?,
                (None, Some(s)) => ExtVec::basis(parse_subset(n, &s)?),
                (None, None) => bail!("one of --on or --subset is required"),
            };
            if x.n() != n {
                bail!("element has rank {} but --n is {n}", x.n());
            }
            let w = parse_word(&word, n)?;
            print_json(&serde_json::to_value(apply_word(&w, &x)?)?)?;
        }
        Command::Canonical { n, subset } => {
            print_json(&canonical_json(&parse_subset(n, &subset)?))?;
        }
        Command::Crystal { n, k, dot, .. } => {
            if k > n {
                bail!("k = {k} exceeds n = {n}");
            }
            let g = crystal_graph(n, k);
            if dot {
                write!(std::io::stdout().lock(), "{}", g.to_dot())?;
            } else {
                print_json(&g.to_json())?;
            }
        }
        Command::Tilting { n, spec, json, .. } => {
            let m = tilting_weyl_matrix(n, spec.parse()?)?;
            if json {
                print_json(&m.to_json())?;
            } else {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                for row in m.table() {
                    w.write_record(&row)?;
                }
                w.flush()?;
            }
        }
        Command::Qbinom { m, i, spec } => {
            let s = spec.parse()?;
            print_json(&json!({
                "m": m,
                "i": i,
                "spec": s.to_string(),
                "digits_m": padic_expand(m, s).0,
                "digits_i": padic_expand(i, s).0,
                "nonzero": qbinom_nonzero(m, i, s),
            }))?;
        }
        Command::Verify { n, specs, check } => {
            let specs = specs.iter().map(|s| Specialization::parse(s)).collect::<Result<Vec<_>, _>>()?;
            let bound = max_rank()?;
            let reports: Vec<CheckReport> = match check {
                Some(name) => {
                    let list: Vec<Option<Specialization>> =
                        if specs.is_empty() { vec![None] } else { specs.into_iter().map(Some).collect() };
                    list.into_iter()
                        .map(|s| run_check_bounded(&name, n, s, bound))
                        .collect::<Result<_, _>>()?
                }
                None => run_all(n, &specs, bound)?,
            };
            for r in &reports {
                print_json(&r.to_json())?;
            }
            return Ok(reports.iter().all(CheckReport::passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
