use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use polystrata_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(out) => (out.text, out.code),
        Err(e) => {
            let mut s = serde_json::to_string(&e.to_json()).expect("serializable");
            s.push('\n');
            (s, e.exit_code())
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
