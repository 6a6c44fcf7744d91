use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match std::panic::catch_unwind(|| kconn_cli::run(std::env::args_os())) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
            ExitCode::from(outcome.exit as u8)
        }
        // Exit codes stay within 0..=3 even on an internal fault.
        Err(_) => ExitCode::from(kconn_cli::Exit::InputError as u8),
    }
}
