use std::process::ExitCode;

fn main() -> ExitCode {
    hyperseed::bench::cli::main_from(std::env::args_os())
}
