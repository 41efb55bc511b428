use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(meanlab_cli::run(std::env::args_os()))
}
