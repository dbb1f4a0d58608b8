use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsogda::stepsizes::SelectOverrides;
use dsogda::Regime;
use dsogda_harness::params_report::{params_report, parse_instance_arg};
use dsogda_harness::{compare, run_experiment, tightness, ExperimentConfig, HarnessError, RunStatus};

#[derive(Parser)]
#[command(name = "dsogda", version, about = "Run and compare minimax solver experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its trace and summary.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record the Lyapunov potential.
        #[arg(long)]
        lyapunov: bool,
        #[arg(long)]
        stride: Option<usize>,
        /// Emit SVG log-log charts.
        #[arg(long)]
        plot: bool,
        /// Fill the elapsed_ms column.
        #[arg(long)]
        timing: bool,
    },
    /// Print resolved parameters and their validation report as JSON.
    Params {
        #[arg(long)]
        regime: Regime,
        /// `family=...,key=value,...` or a TOML file.
        #[arg(long)]
        instance: String,
        #[arg(long = "T")]
        horizon: usize,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        c_r: Option<f64>,
        #[arg(long)]
        c_beta: Option<f64>,
    },
    /// Run several configs on one instance and tabulate fitted slopes.
    Compare {
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// GDA lower-bound experiment on x^2 y / 2.
    Tightness {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long = "T")]
        horizon: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn emit(line: impl std::fmt::Display) {
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn dispatch(command: Command) -> Result<u8, HarnessError> {
    match command {
        Command::Run { config, out, lyapunov, stride, plot, timing } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(dir) = out {
                cfg.output.dir = dir;
            }
            if let Some(k) = stride {
                cfg.measures.stride = k;
            }
            cfg.measures.lyapunov |= lyapunov;
            cfg.output.plot |= plot;
            cfg.output.timing |= timing;
            cfg.validate()?;
            let (result, paths) = run_experiment(&cfg)?;
            emit(paths.trace.display());
            emit(paths.summary.display());
            for p in &paths.plots {
                emit(p.display());
            }
            match (result.summary.status, result.failure) {
                (RunStatus::Ok, _) => Ok(0),
                (_, Some(e)) => {
                    eprintln!("error: {e}");
                    Ok(HarnessError::from(e).exit_code() as u8)
                }
                (_, None) => Ok(1),
            }
        }
        Command::Params { regime, instance, horizon, r, c_r, c_beta } => {
            let spec = parse_instance_arg(&instance)?;
            let report = params_report(regime, &spec, horizon, &SelectOverrides { r, c_r, c_beta })?;
            emit(serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Compare { configs, out } => {
            let configs = configs.iter().map(|p| ExperimentConfig::load(p)).collect::<Result<Vec<_>, _>>()?;
            let table = compare(&configs)?;
            table.write(&out)?;
            emit(table.render().trim_end());
            Ok(0)
        }
        Command::Tightness { eta, eps, horizon } => {
            let report = tightness(eta, eps, horizon)?;
            emit("t,gap,bound");
            for r in &report.rows {
                emit(format_args!("{},{:.16e},{:.16e}", r.t, r.gap, r.bound));
            }
            if report.holds() {
                Ok(0)
            } else {
                let e = HarnessError::Assertion(format!(
                    "bound holds: {}, recurrence holds: {}",
                    report.bound_holds, report.recurrence_holds
                ));
                eprintln!("error: {e}");
                Ok(e.exit_code() as u8)
            }
        }
    }
}
