use std::process::ExitCode;

fn main() -> ExitCode {
    relmod::cli::main_with_args(std::env::args_os())
}
