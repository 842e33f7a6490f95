//! `quartic`: command-line front end over `quartic-core`.
//!
//! Exit codes: 0 on success, 2 for invalid input, 1 when a computation
//! cannot complete within its limits.

mod args;
mod cache;
mod commands;
mod config;
mod exit;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

use args::{Cli, GlobalArgs};
use cache::{request_key, Cache};
use config::{RunConfig, CACHE_ENV};
use exit::Failure;
use output::{render, ReportEnvelope};

fn resolve_config(g: &GlobalArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &g.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = g.exponent_bound {
        cfg.exponent_bound = v;
    }
    if let Some(v) = g.enumeration_ceiling {
        cfg.enumeration_ceiling = v;
    }
    if let Some(v) = g.discriminant_bound {
        cfg.discriminant_bound = v;
    }
    if let Some(v) = g.sieve_cutoff {
        cfg.sieve_cutoff = v;
    }
    if let Some(v) = g.format {
        cfg.output_format = v;
    }
    if let Some(path) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        cfg.cache_path = Some(path.into());
    }
    if let Some(path) = &g.cache {
        cfg.cache_path = Some(path.clone());
    }
    if g.no_cache {
        cfg.cache_path = None;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let cfg = resolve_config(&cli.global)?;
    let name = cli.command.name();
    let params = serde_json::to_value(&cli.command).map_err(|e| Failure::input(e.to_string()))?;
    let key = request_key(&name, &params, &cfg.semantic_key());
    let cache = cfg.cache_path.as_ref().map(Cache::new);
    let cached = match &cache {
        Some(c) => c.lookup(&key).unwrap_or_else(|e| {
            eprintln!("warning: cache {} unreadable: {e}", c.path().display());
            None
        }),
        None => None,
    };
    let outcome = match cached {
        Some(o) => o,
        None => {
            let o = commands::execute(&cli.command, &cfg)?;
            if let Some(c) = &cache {
                if let Err(e) = c.store(&key, &name, &o) {
                    eprintln!("warning: cache {} not written: {e}", c.path().display());
                }
            }
            o
        }
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let env = ReportEnvelope {
        command: &name,
        config: &cfg,
        timestamp,
        payload: &outcome.payload,
        discrepancy_notices: &outcome.discrepancy_notices,
    };
    Ok(render(&env, cfg.output_format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
