mod cache;
mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use coha_core::{Error, ErrorKind};

use crate::cache::{Cache, CacheKey};
use crate::config::{Cli, JobConfig};

const EXIT_IDENTITY: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INPUT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Identity => EXIT_IDENTITY,
        ErrorKind::Budget => EXIT_BUDGET,
        ErrorKind::Input => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let config = JobConfig::from_args(&cli.job)?;
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    let quiver_hash = config
        .quiver
        .as_ref()
        .map_or_else(|| "none".to_string(), |q| q.canonical_hash());
    let name = cli.command.name();
    let key = CacheKey::new(name, &quiver_hash, &config.params(&cli.command));
    let cache = match &config.cache_dir {
        Some(dir) => match Cache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                log::warn!("cache disabled, cannot open {}: {e}", dir.display());
                None
            }
        },
        None => None,
    };

    let cached = cache.as_ref().and_then(|c| c.get(&key, name, &quiver_hash));
    let report = match cached {
        Some(r) => {
            log::info!("cache hit {}", key.digest());
            r
        }
        None => {
            let r = commands::run(&cli.command, &config, &quiver_hash)?;
            if let Some(c) = &cache {
                if let Err(e) = c.put(&key, &r) {
                    log::warn!("could not write cache entry: {e}");
                }
            }
            r
        }
    };

    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(report.render(config.format).as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Error::InvalidArgument(format!("writing output: {e}")))?;
    Ok(if report.passed() { 0 } else { EXIT_IDENTITY })
}
