use std::process::ExitCode;

fn main() -> ExitCode {
    erpg::cli::main()
}
