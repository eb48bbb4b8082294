//! Command-line front end. `run` returns the exit code and the captured output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fixture::{Fixture, RawFixture};

mod commands;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "hdeform", version, about = "Deformations of A-infinity algebras with infinity inner products")]
pub struct Cli {
    /// Truncation weight (drops fixture components above it).
    #[arg(long, global = true)]
    pub weight: Option<usize>,
    /// Coefficient ring: `k[t]/t^N`, `t:N[:deg]`, `sq:d1,d2,...` or `field`.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// h-degrees, `n` or `a..b` (inclusive).
    #[arg(long, global = true)]
    pub degree: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the structure is an A-infinity algebra with an inner product.
    Check { fixture: PathBuf },
    /// List the insertion terms of a (k, l) form; `--weight` bounds the arity.
    Terms { k: usize, l: usize },
    /// Bracket of two named elements.
    Bracket { fixture: PathBuf, x: String, y: String },
    /// `[P, x]` for a named element.
    Differential { fixture: PathBuf, x: String },
    /// Maurer-Cartan residual of the perturbation.
    Mc { fixture: PathBuf },
    /// Gauge the perturbation by the generator and check the trivialization witness.
    Gauge {
        fixture: PathBuf,
        /// Write the gauged fixture here instead of printing it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cohomology of the weight-truncated complex.
    Tangent { fixture: PathBuf },
    /// Cyclic coderivations and the inclusion into the full complex.
    Cyclic { fixture: PathBuf },
    /// Cross-check the engines against the brute-force oracles.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, stdout: e.to_string() };
        }
    };
    match commands::dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: 2, stdout: format!("error: {e}\n") },
    }
}

pub(crate) fn load(cli: &Cli, path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Structural(format!("cannot read {}: {e}", path.display())))?;
    let mut raw = RawFixture::parse(&text)?;
    if let Some(r) = &cli.ring {
        raw.ring = Some(r.clone());
    }
    if let Some(w) = cli.weight {
        raw.truncate(w);
    }
    Fixture::from_raw(&raw)
}

pub(crate) fn degree_range(spec: Option<&str>, default: (i64, i64)) -> Result<Vec<i64>> {
    let bad = || Error::Structural(format!("cannot parse degree range `{}`", spec.unwrap_or_default()));
    let (a, b) = match spec {
        None => default,
        Some(s) => match s.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?),
            None => {
                let n = s.trim().parse().map_err(|_| bad())?;
                (n, n)
            }
        },
    };
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}
