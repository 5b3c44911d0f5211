use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tomofid::experiments::{self, Experiment, RunConfig};
use tomofid::{Error, Result};

/// Reproduce one table or figure as CSV/JSON data.
#[derive(Debug, Parser)]
#[command(name = "tomofid", version)]
struct Args {
    #[arg(long)]
    seed: Option<u64>,

    /// table1, fig2, fig3, fig5, table2, fig4, fig6 or fig7.
    #[arg(long)]
    experiment: Option<String>,

    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long = "n-mc")]
    n_mc: Option<usize>,

    #[arg(long = "m-samples")]
    m_samples: Option<usize>,

    #[arg(long = "n-scale")]
    n_scale: Option<f64>,

    /// Balloon fidelity threshold(s), comma separated.
    #[arg(long, value_delimiter = ',')]
    threshold: Option<Vec<f64>>,

    /// 1-based state indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    states: Option<Vec<usize>>,

    /// JSON file whose fields override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(args: Args) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    if let Some(v) = args.seed {
        c.seed = v;
    }
    if let Some(e) = &args.experiment {
        c.experiment = Experiment::parse(e)?;
    }
    if let Some(v) = args.out {
        c.out_dir = v;
    }
    if let Some(v) = args.n_mc {
        c.n_mc = v;
    }
    if let Some(v) = args.m_samples {
        c.m_samples = v;
    }
    if let Some(v) = args.n_scale {
        c.n_scale = v;
    }
    if args.threshold.is_some() {
        c.threshold = args.threshold;
    }
    if args.states.is_some() {
        c.states = args.states;
    }
    if let Some(path) = &args.config {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        c = c.merge_json(&value)?;
    }
    if args.experiment.is_none() && args.config.is_none() {
        return Err(Error::Config("--experiment is required".into()));
    }
    Ok(c)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = build_config(args).and_then(|c| experiments::run(&c));
    match result {
        Ok(out) => {
            for f in out.files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 3 })
        }
    }
}
