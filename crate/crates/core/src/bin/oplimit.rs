use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out, err) = oplimit::cli::run(std::env::args_os());
    print!("{out}");
    let _ = std::io::stdout().flush();
    if !err.is_empty() {
        eprint!("{err}");
    }
    ExitCode::from(code as u8)
}
