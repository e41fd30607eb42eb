use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cliffordian_cli::run(std::env::args()) as u8)
}
