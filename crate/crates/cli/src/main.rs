use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = phasebell_cli::run(std::env::args_os().skip(1), &mut stdout().lock(), &mut stderr().lock());
    ExitCode::from(code as u8)
}
