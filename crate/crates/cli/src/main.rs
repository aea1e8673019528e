use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kantor_cli::cache::ResultCache;
use kantor_cli::{execute_cached, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = ResultCache::from_env();
    match execute_cached(&cli, cache.as_ref()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
