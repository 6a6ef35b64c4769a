use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = faircheck_cli::run(std::env::args().skip(1));
    print!("{out}");
    ExitCode::from(code as u8)
}
