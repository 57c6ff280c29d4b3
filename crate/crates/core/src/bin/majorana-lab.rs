use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use majorana_lab::sweep::{self, Format, Mode, NumList, PartialSpec};
use majorana_lab::Error;

/// Run a parameter sweep and write the resulting table.
#[derive(Debug, Parser)]
#[command(name = "majorana-lab", version)]
struct Args {
    /// nm-scan, corr-series, qfi-series or state-dump
    mode: String,
    /// JSON spec file; flags override its fields
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Ohmicity values: "1,3" or "start:stop:step"
    #[arg(long = "q")]
    q: Option<String>,
    /// Cutoff values, same syntax as --q
    #[arg(long)]
    gamma0: Option<String>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    n_grid: Option<usize>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    parallel: Option<usize>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Spec { .. } | Error::Parameter(_) | Error::Domain(_) | Error::InvalidState(_) => 2,
        Error::Convergence { .. } | Error::NonFinite { .. } | Error::Pole(_) | Error::Degenerate(_) => 3,
        Error::Io { .. } => 4,
    }
}

fn run(args: Args) -> majorana_lab::Result<()> {
    let overrides = PartialSpec {
        mode: Some(Mode::parse(&args.mode)?),
        q_values: args.q.map(NumList::Text),
        gamma0_values: args.gamma0.map(NumList::Text),
        b: args.b,
        theta: args.theta,
        t_max: args.t_max,
        n_grid: args.n_grid,
        output_path: args.out,
        format: args.format.as_deref().map(Format::parse).transpose()?,
        parallel: args.parallel,
    };
    let spec = sweep::parse_spec(args.spec.as_deref(), overrides)?;
    let table = sweep::run(&spec)?;
    if let Some(s) = table.meta.wall_time_s {
        log::info!("{} rows in {s:.3} s", table.rows.len());
    }
    table.write(spec.output_path.as_deref(), spec.format)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
