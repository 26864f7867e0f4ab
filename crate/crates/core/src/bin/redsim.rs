use std::process::ExitCode;

use redsim::cli::{run_with, thread_cap, THREADS_ENV};

fn main() -> ExitCode {
    let cap = std::env::var(THREADS_ENV).ok();
    match thread_cap(cap.as_deref()) {
        Ok(Some(threads)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
            {
                eprintln!("error: {e}");
                return ExitCode::from(redsim::cli::EXIT_USAGE as u8);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    }
    let code = run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
