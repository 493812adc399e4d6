use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = bezier_spline_cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut out,
        &mut io::stderr().lock(),
    );
    drop(out);
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
