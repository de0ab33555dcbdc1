use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = blobshift_cli::run(std::env::args_os());
    std::io::stdout().write_all(&out.stdout).ok();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
