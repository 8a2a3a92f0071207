use std::io::Write;
use std::process::ExitCode;

use framekit_cli::{run, RunConfig, SEED_ENV};

fn main() -> ExitCode {
    let env_seed = std::env::var(SEED_ENV).ok();
    let config = match RunConfig::parse_from(std::env::args_os(), env_seed.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&config);
    if !outcome.written {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.report.as_bytes());
    }
    ExitCode::from(outcome.exit_code as u8)
}
