//! Library side of the `hazpot` command-line tool.
//!
//! Commands write a CSV or JSON artifact to `--out` (or stdout) and, for file
//! outputs, a `<out>.manifest.json` sidecar recording the command, its
//! parameters, the seed and the tool version.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod artifact;
pub mod commands;
pub mod error;
pub mod table;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use artifact::{PosteriorFile, RunManifest};
pub use error::{CliError, CliResult};

use args::Command;

fn parameters(cli: &Cli) -> BTreeMap<String, serde_json::Value> {
    let mut map = BTreeMap::new();
    if let Ok(serde_json::Value::Object(common)) = serde_json::to_value(&cli.common) {
        map.extend(
            common
                .into_iter()
                .filter(|(k, _)| k != "out" && k != "quiet"),
        );
    }
    if let Ok(serde_json::Value::Object(outer)) = serde_json::to_value(&cli.command) {
        for (_, inner) in outer {
            if let serde_json::Value::Object(fields) = inner {
                map.extend(fields);
            }
        }
    }
    map
}

fn execute(cli: &Cli) -> CliResult<commands::Output> {
    match &cli.command {
        Command::Survival(a) => commands::survival(a),
        Command::Simulate(a) => commands::simulate(&cli.common, a),
        Command::Fit(a) => commands::fit(a),
        Command::Predict(a) => commands::predict(a),
        Command::Figure1(a) => commands::figure1(a),
    }
}

/// Runs a parsed command line, writing its artifact and manifest.
pub fn run(cli: &Cli) -> CliResult<()> {
    let output = match cli.common.workers {
        Some(0) => return Err(CliError::Usage("--workers must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?
            .install(|| execute(cli))?,
        None => execute(cli)?,
    };
    match &cli.common.out {
        Some(path) => {
            fs::write(path, &output.body)
                .map_err(|e| CliError::io(format!("cannot write {}", path.display()), e))?;
            let manifest = RunManifest::new(cli.command.name(), parameters(cli), cli.common.seed);
            let sidecar = RunManifest::sidecar_path(path);
            fs::write(&sidecar, manifest.render())
                .map_err(|e| CliError::io(format!("cannot write {}", sidecar.display()), e))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("cannot write to stdout", e))?;
        }
    }
    if !cli.common.quiet {
        eprintln!("{}", output.summary);
    }
    Ok(())
}

/// Parses `args` (program name first) and runs, returning the exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hazpot: {e}");
            e.exit_code()
        }
    }
}
