use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ggs_core::{Claim, DefiningVector, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "ggs", version, about = "GGS groups on the p-adic tree and Beauville structures on their quotients")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Odd prime.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// Defining vector, comma separated and reduced mod p (e.g. `1,-1`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Level n of the quotient G_n = G / st_G(n).
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// Maximum number of elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Certificate cache.
    #[arg(long, global = true, env = "GGS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Periodicity, symmetry, α and circulant rank of the defining vector.
    Classify,
    /// Enumerate G_n and report its size and order statistics.
    Enumerate {
        /// Print every element in canonical encoding.
        #[arg(long)]
        dump: bool,
        /// Print the Cayley graph in DOT format.
        #[arg(long)]
        cayley: bool,
    },
    /// Verify a claim and emit a certificate.
    Verify {
        claim: String,
        /// Target level for `lifting`.
        #[arg(long)]
        to: Option<u32>,
        /// First element of the triple for `lifting`.
        #[arg(long)]
        x: Option<String>,
        /// Second element of the triple for `lifting`.
        #[arg(long)]
        y: Option<String>,
        /// Ignore and do not update the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Σ(x, y) for a generating pair given as words.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Membership queries.
        #[arg(long, allow_hyphen_values = true)]
        member: Vec<String>,
        /// List the members.
        #[arg(long)]
        dump: bool,
    },
    /// Re-check a certificate file.
    Replay { file: PathBuf },
    /// List the claim ids accepted by `verify`.
    Claims,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u32,
    pub e: Option<DefiningVector>,
    pub level: Option<u32>,
    pub budget: usize,
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<Self> {
        let e = match &g.e {
            Some(s) => Some(DefiningVector::parse(g.p, s)?),
            None => None,
        };
        if g.level == Some(0) {
            bail!("level must be at least 1");
        }
        if g.budget == 0 {
            bail!("budget must be at least 1");
        }
        if g.workers == Some(0) {
            bail!("workers must be at least 1");
        }
        Ok(Self {
            p: g.p,
            e,
            level: g.level,
            budget: g.budget,
            workers: g.workers,
            format: g.format,
            out: g.out.clone(),
            cache_dir: g.cache_dir.clone(),
        })
    }

    /// The given vector, or the alternating one.
    pub fn vector(&self) -> Result<DefiningVector> {
        match &self.e {
            Some(v) => Ok(v.clone()),
            None => Ok(DefiningVector::alternating(self.p)?),
        }
    }

    pub fn vector_for(&self, claim: Claim) -> Result<DefiningVector> {
        match &self.e {
            Some(v) => Ok(v.clone()),
            None => Ok(claim.default_vector(self.p)?),
        }
    }

    pub fn level_or(&self, default: u32) -> u32 {
        self.level.unwrap_or(default)
    }
}
