use std::io::Write;

use clap::Parser;
use curvelim::cli::{read_input, run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let text = match read_input(&cli) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    let out = run(&cli, &text);
    let text = serde_json::to_string_pretty(&out.output).expect("JSON values serialize");
    // a closed pipe on stdout is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(err) = out.output.get("error").and_then(|e| e.as_str()) {
        eprintln!("error: {err}");
    }
    std::process::exit(out.status);
}
