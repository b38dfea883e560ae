use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(grinv::cli::run(std::env::args_os()))
}
