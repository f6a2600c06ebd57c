use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ut2dos_cli::main_with_args(std::env::args_os()))
}
