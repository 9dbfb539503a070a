use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(percentile_fit::cli::run(std::env::args_os()))
}
