use std::process::ExitCode;

fn main() -> ExitCode {
    matrixf5::cli::main()
}
