mod args;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{Cli, Format, RunConfig};
use input::{resolve, CliError, CliResult, Source};
use report::Render;

const SCHEMA_VERSION: u32 = 1;
const EXIT_USAGE: u8 = 64;

/// Only the size of the worker pool is read from the environment.
fn configure_threads() {
    if let Some(n) = std::env::var("NILCOH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a Source>,
    warnings: &'a [String],
    report: &'a R,
}

fn emit<R: Serialize + Render>(
    config: &RunConfig,
    source: Option<&Source>,
    warnings: &[String],
    report: &R,
) -> String {
    match config.format {
        Format::Json => {
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: config.command,
                input: source,
                warnings,
                report,
            };
            let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            if let Some(src) = source {
                s.push_str(&format!("{}: {}\n", config.command, src.label()));
            }
            for w in warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            report.render(&mut s);
            s
        }
    }
}

fn run(config: &RunConfig) -> CliResult<String> {
    let Some(input) = &config.input else {
        return Ok(emit(config, None, &[], &report::catalog_list()));
    };
    let resolved = resolve(input, config.allow_non_integrable)?;
    let (src, warn) = (Some(&resolved.source), resolved.warnings.as_slice());
    Ok(match config.command {
        "check" => emit(config, src, warn, &report::check(&resolved)?),
        "betti" => emit(config, src, warn, &report::betti(&resolved.algebra)?),
        "hodge" => emit(config, src, warn, &report::hodge(&resolved)?),
        "froelicher" => emit(config, src, warn, &report::froelicher(&resolved, config.pages)?),
        "hochschild-serre" => {
            let ideal = config.ideal.as_deref().unwrap_or("center");
            let r = report::hochschild_serre_report(&resolved.algebra, ideal, config.pages)?;
            emit(config, src, warn, &r)
        }
        "series" => emit(config, src, warn, &report::series(&resolved, config)?),
        "classify" => emit(config, src, warn, &report::classify(&resolved)?),
        "status" => emit(config, src, warn, &report::status(&resolved, config)?),
        other => unreachable!("command {other} has no handler"),
    })
}

fn error_output(config: &RunConfig, err: &CliError) {
    match config.format {
        Format::Json => {
            let mut error = json!({
                "kind": err.kind(),
                "message": err.to_string(),
                "exit_code": err.exit_code(),
            });
            if let Some(t) = err.triple() {
                error["triple"] = json!(t);
            }
            let body = json!({
                "schema_version": SCHEMA_VERSION,
                "command": config.command,
                "error": error,
            });
            let text = serde_json::to_string_pretty(&body).expect("serialisable");
            println!("{text}");
        }
        Format::Table => eprintln!("error: {err}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    configure_threads();
    let config = RunConfig::from_cli(cli);
    match run(&config) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(err) => {
            error_output(&config, &err);
            ExitCode::from(err.exit_code())
        }
    }
}
