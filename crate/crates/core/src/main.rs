use std::io;
use std::process::ExitCode;

use qc_css::cli;
use qc_css::par::with_thread_cap;

fn main() -> ExitCode {
    let threads = std::env::var("QC_CSS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    let code = with_thread_cap(threads, || {
        let stdin = io::stdin();
        let stdout = io::stdout();
        let stderr = io::stderr();
        cli::run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
    });
    ExitCode::from(code as u8)
}
