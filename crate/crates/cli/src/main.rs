//! Binary entry point: parse arguments, run the command, map errors to the
//! documented exit codes (0 success, 1 golden mismatch, 2 input error,
//! 3 numerical degeneracy).

use std::process::ExitCode;

fn main() -> ExitCode {
    match retcalc_cli::commands::run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
