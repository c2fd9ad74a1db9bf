use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = quadrics_cli::run(std::env::args().collect());
    if let Some(s) = &out.stdout {
        let mut h = std::io::stdout().lock();
        let _ = h.write_all(s.as_bytes());
        let _ = h.flush();
    }
    if let Some(s) = &out.stderr {
        eprint!("{s}");
    }
    ExitCode::from(out.code)
}
