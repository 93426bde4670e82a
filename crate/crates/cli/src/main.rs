use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ehrlab_cli::run(std::env::args_os()))
}
