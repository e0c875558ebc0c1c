//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 degrees admit no tree,
//! 3 request exceeds the exhaustive enumeration bound.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{
    decode_prefix, render_expression, to_dot, to_json, to_sexpr, ExpressionStyle, OperatorAlphabet,
};
use crate::degree::{DegreeMultiset, DegreeSequence};
use crate::error::{Error, Result};
use crate::oracle::{count_trees, enumerate_trees_bounded, DEFAULT_EXHAUSTIVE_BOUND};
use crate::random::SeededRandom;
use crate::sampler::sample_tree;
use crate::stats::uniformity_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

/// User-facing degree constraint: either every node's degree listed
/// (`0,0,0,0,1,2,3`) or `degree:multiplicity` pairs (`0:4,1:1,2:1,3:1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSpec {
    List(Vec<usize>),
    Counts(Vec<(usize, usize)>),
}

impl DegreeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
        if tokens.iter().all(|t| t.is_empty()) {
            return Err(Error::InvalidSpec("no degrees given".into()));
        }
        let num = |s: &str| -> Result<usize> {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("{s:?} is not a non-negative integer")))
        };
        if tokens.iter().any(|t| t.contains(':')) {
            tokens
                .iter()
                .map(|t| {
                    let (d, m) = t.split_once(':').ok_or_else(|| {
                        Error::InvalidSpec(format!("{t:?} is not a degree:count pair"))
                    })?;
                    Ok((num(d)?, num(m)?))
                })
                .collect::<Result<_>>()
                .map(DegreeSpec::Counts)
        } else {
            tokens
                .iter()
                .map(|t| num(t))
                .collect::<Result<_>>()
                .map(DegreeSpec::List)
        }
    }

    pub fn to_multiset(&self) -> Result<DegreeMultiset> {
        match self {
            DegreeSpec::List(v) => DegreeMultiset::from_degrees(v),
            DegreeSpec::Counts(c) => DegreeMultiset::from_counts(c.iter().copied()),
        }
    }
}

pub fn parse_degree_spec(text: &str) -> Result<DegreeMultiset> {
    DegreeSpec::parse(text)?.to_multiset()
}

#[derive(Debug, Parser)]
#[command(
    name = "degree-trees",
    version,
    about = "Uniformly random ordered trees with prescribed node outdegrees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TreeFormat {
    Prefix,
    Sexpr,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Prefix,
    Infix,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the charge of the degrees and whether any tree uses them.
    Check {
        #[arg(long)]
        degrees: String,
    },
    /// Sample uniformly random trees.
    Sample {
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = TreeFormat::Prefix)]
        format: TreeFormat,
    },
    /// Print the exact number of trees.
    Count {
        #[arg(long)]
        degrees: String,
    },
    /// Print every tree, sorted by prefix code.
    Enumerate {
        #[arg(long)]
        degrees: String,
        #[arg(long, value_enum, default_value_t = TreeFormat::Prefix)]
        format: TreeFormat,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        max_nodes: usize,
    },
    /// Sample repeatedly and report frequencies and chi-square as JSON.
    Stats {
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        max_nodes: usize,
    },
    /// Sample trees and render them as random expressions.
    FuzzExpr {
        #[arg(long)]
        degrees: String,
        /// JSON object mapping arity to a list of symbols.
        #[arg(long)]
        alphabet: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Style::Infix)]
        style: Style,
    },
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotConstructible { .. } | Error::ChargeNotOne { .. } => EXIT_INFEASIBLE,
                Error::TooLarge { .. } => EXIT_TOO_LARGE,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> std::io::Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            let s = SeededRandom::entropy_seed();
            writeln!(err, "seed={s}")?;
            Ok(s)
        }
    }
}

fn format_tree(code: &DegreeSequence, format: TreeFormat) -> Result<String> {
    Ok(match format {
        TreeFormat::Prefix => format!("{code}\n"),
        TreeFormat::Sexpr => format!("{}\n", to_sexpr(&decode_prefix(code)?)),
        TreeFormat::Json => format!("{}\n", to_json(&decode_prefix(code)?)),
        TreeFormat::Dot => to_dot(&decode_prefix(code)?),
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Check { degrees } => {
            let m = parse_degree_spec(&degrees)?;
            let charge = m.charge()?;
            let ok = m.is_constructible();
            writeln!(out, "charge={charge} constructible={ok}")?;
            Ok(if ok { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Sample {
            degrees,
            seed,
            count,
            format,
        } => {
            let m = parse_degree_spec(&degrees)?;
            let mut rng = SeededRandom::new(resolve_seed(seed, err)?);
            for _ in 0..count {
                let code = sample_tree(&m, &mut rng)?;
                out.write_all(format_tree(&code, format)?.as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::Count { degrees } => {
            let m = parse_degree_spec(&degrees)?;
            writeln!(out, "{}", count_trees(&m)?)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            degrees,
            format,
            max_nodes,
        } => {
            let m = parse_degree_spec(&degrees)?;
            if !m.is_constructible() {
                return Err(Error::NotConstructible {
                    charge: m.charge()?.value(),
                }
                .into());
            }
            for code in enumerate_trees_bounded(&m, max_nodes)? {
                out.write_all(format_tree(&code, format)?.as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        Command::Stats {
            degrees,
            samples,
            seed,
            max_nodes,
        } => {
            if samples == 0 {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let m = parse_degree_spec(&degrees)?;
            let mut rng = SeededRandom::new(resolve_seed(seed, err)?);
            let report = uniformity_report(&m, samples, max_nodes, &mut rng)?;
            writeln!(out, "{}", report.to_json())?;
            Ok(EXIT_OK)
        }
        Command::FuzzExpr {
            degrees,
            alphabet,
            seed,
            count,
            style,
        } => {
            let m = parse_degree_spec(&degrees)?;
            let text = std::fs::read_to_string(&alphabet)
                .map_err(|e| Failure::Usage(format!("{}: {e}", alphabet.display())))?;
            let alphabet = OperatorAlphabet::from_json(&text)?;
            let style = match style {
                Style::Prefix => ExpressionStyle::Prefix,
                Style::Infix => ExpressionStyle::Infix,
            };
            let seed = resolve_seed(seed, err)?;
            // Tree shapes and symbol labels come from separate streams.
            let mut shape_rng = SeededRandom::with_stream(seed, 0);
            let mut label_rng = SeededRandom::with_stream(seed, 1);
            for _ in 0..count {
                let tree = decode_prefix(&sample_tree(&m, &mut shape_rng)?)?;
                let expr = render_expression(&tree, &alphabet, &mut label_rng, style)?;
                writeln!(out, "{expr}")?;
            }
            Ok(EXIT_OK)
        }
    }
}
