use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    rmq_lab::configure_threads();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = rmq_lab::run_from_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
