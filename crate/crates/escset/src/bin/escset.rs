use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = escset::cli::run(&args, &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
