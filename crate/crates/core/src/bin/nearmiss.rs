use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = io::BufWriter::new(io::stdout());
    let mut err = io::stderr();
    let code = nearmiss_core::cli::run(std::env::args_os(), &mut out, &mut err);
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe && code == nearmiss_core::cli::EXIT_OK {
            let _ = writeln!(err, "error: i/o: {e}");
            return ExitCode::from(nearmiss_core::cli::EXIT_ERROR as u8);
        }
    }
    ExitCode::from(code as u8)
}
