use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use wss_cli::{destination, exit_code, run, Cli, Command, OUT_DIR_VAR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rendered = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let body = match cli.command {
        Command::Gen(_) => rendered.text.clone(),
        _ => rendered.body(cli.format),
    };
    let out_dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
    match destination(&cli, &rendered, out_dir.as_deref()) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: {}: {e}", parent.display());
                    return ExitCode::from(2);
                }
            }
            if let Err(e) = std::fs::write(&path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
        }
    }
    if rendered.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
