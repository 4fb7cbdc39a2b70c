mod cache;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use commands::{Outcome, SigmaArgs, VerifyArgs, EXIT_ERROR};
use config::{Cli, Command, RunConfig};

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cfg = RunConfig::from_args(&cli.global)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build()?;
    let outcome = pool.install(|| match &cli.command {
        Command::Classify => commands::classify(&cfg),
        Command::Enumerate { dump, cayley } => commands::enumerate(&cfg, *dump, *cayley),
        Command::Verify {
            claim,
            to,
            x,
            y,
            no_cache,
        } => commands::verify(
            &cfg,
            &VerifyArgs {
                claim: claim.clone(),
                to: *to,
                x: x.clone(),
                y: y.clone(),
                no_cache: *no_cache,
            },
        ),
        Command::Sigma { x, y, member, dump } => commands::sigma(
            &cfg,
            &SigmaArgs {
                x: x.clone(),
                y: y.clone(),
                member: member.clone(),
                dump: *dump,
            },
        ),
        Command::Replay { file } => commands::replay(&cfg, file),
        Command::Claims => commands::claims(&cfg),
    })?;
    if let Some(path) = &cfg.out {
        cache::write_atomic(path, outcome.output.as_bytes())?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
