use std::path::PathBuf;

use dsogda::problems::{initial_point, make_instance};
use dsogda::{run, Error as SolverError, IterationRecord, MeasureSchedule, SolverState};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::fit::{fit_rate, last_decade, min_so_far, RateFit};
use crate::plot::render_loglog;
use crate::summary::{PerMeasure, RunStatus, Summary, SCHEMA_VERSION};
use crate::trace::write_trace;
use crate::io::write_atomic;

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub records: Vec<IterationRecord>,
    pub summary: Summary,
    pub final_state: Option<SolverState>,
    /// The solver error behind a non-ok status.
    pub failure: Option<SolverError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputPaths {
    pub trace: PathBuf,
    pub summary: PathBuf,
    pub plots: Vec<PathBuf>,
}

type Column = fn(&IterationRecord) -> Option<f64>;

const COLUMNS: [(&str, Column); 4] = [
    ("gap", |r| r.gap),
    ("gs", IterationRecord::gs),
    ("os", |r| r.os_res),
    ("lyapunov", |r| r.lyapunov),
];

fn envelope(records: &[IterationRecord], key: Column) -> Vec<(f64, f64)> {
    min_so_far(records.iter().map(|r| (r.t as f64, key(r))))
}

fn per_measure<T>(mut f: impl FnMut(&str, Column) -> Option<T>) -> PerMeasure<T> {
    let [gap, gs, os, lyapunov] = COLUMNS.map(|(name, key)| f(name, key));
    PerMeasure { gap, gs, os, lyapunov }
}

/// Runs the experiment in memory.
///
/// Divergence and failing measures are not errors here: they yield a summary
/// with a non-ok status and the partial trace.
pub fn execute(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let problem = make_instance(&config.instance)?;
    let params = config.params.resolve(&problem, config.horizon)?;
    let (x0, y0) = match (&config.init.x, &config.init.y) {
        (Some(x), Some(y)) => (x.clone(), y.clone()),
        (None, None) => {
            let (x, y) = initial_point(&problem, config.init.seed);
            (x.into_inner(), y.into_inner())
        }
        _ => return Err(HarnessError::Config("init.x and init.y go together".into())),
    };
    let m = &config.measures;
    let os_weight = m.os.then(|| m.os_weight.unwrap_or(2.0 * problem.lipschitz()));
    let schedule = MeasureSchedule {
        stride: m.stride,
        gap: m.gap,
        gs: m.gs,
        os_weight,
        lyapunov: m.lyapunov,
        tol: m.tol,
    };
    let kind = config.algorithm;
    let (records, final_state, failure) = match run(kind, &problem, &params, &x0, &y0, config.horizon, &schedule) {
        Ok(out) => (out.records, Some(out.final_state), None),
        Err(f) => match f.error {
            // Bad inputs are a config problem, not a run outcome.
            e @ (SolverError::InvalidInput(_) | SolverError::Infeasible { .. } | SolverError::DimensionMismatch { .. })
                if f.partial.is_empty() =>
            {
                return Err(e.into())
            }
            e => {
                log::warn!("{}: {e}", config.name());
                (f.partial, None, Some(e))
            }
        },
    };
    let status = match &failure {
        None => RunStatus::Ok,
        Some(SolverError::Diverged { .. } | SolverError::NonFinite { .. }) => RunStatus::Diverged,
        Some(_) => RunStatus::Failed,
    };
    let window = last_decade(config.horizon);
    let fits = per_measure(|name, key| -> Option<RateFit> {
        if name == "lyapunov" {
            return None;
        }
        let env = envelope(&records, key);
        if env.is_empty() {
            return None;
        }
        fit_rate(&env, window).map_err(|e| log::warn!("no {name} fit: {e}")).ok()
    });
    let argmins = dsogda::runner::argmins(&records);
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        name: config.name(),
        status,
        error: failure.as_ref().map(ToString::to_string),
        algorithm: kind,
        instance: config.instance.clone(),
        instance_name: problem.name().to_string(),
        instance_seed: config.instance.seed(),
        init_seed: config.init.seed,
        horizon: config.horizon,
        lipschitz: problem.lipschitz(),
        params,
        effective_params: kind.effective_params(&params),
        os_weight,
        rows: records.len(),
        last_t: records.last().map_or(0, |r| r.t),
        min_so_far: per_measure(|_, key| envelope(&records, key).last().map(|p| p.1)),
        argmin: PerMeasure { gap: argmins.gap, gs: argmins.gs, os: argmins.os, lyapunov: argmins.lyapunov },
        fits,
        final_x: final_state.as_ref().map(|s| s.x().to_vec()),
        final_y: final_state.as_ref().map(|s| s.y().to_vec()),
        config: config.clone(),
    };
    Ok(ExperimentResult { records, summary, final_state, failure })
}

/// Runs the experiment and writes `<name>.csv`, `<name>.summary.json` and,
/// when asked, one `<name>.<measure>.svg` per recorded measure.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(ExperimentResult, OutputPaths)> {
    let result = execute(config)?;
    let dir = &config.output.dir;
    let name = config.name();
    let trace = dir.join(format!("{name}.csv"));
    let summary = dir.join(format!("{name}.summary.json"));
    write_trace(&trace, &result.records, config.output.timing)?;
    result.summary.write(&summary)?;
    let mut plots = Vec::new();
    if config.output.plot {
        for (measure, key) in COLUMNS {
            let raw: Vec<(f64, f64)> =
                result.records.iter().filter_map(|r| Some((r.t as f64, key(r)?))).collect();
            if raw.is_empty() || measure == "lyapunov" {
                continue;
            }
            let env = envelope(&result.records, key);
            let svg = render_loglog(&format!("{name}: {measure}"), &[(measure, &raw), ("min so far", &env)]);
            let path = dir.join(format!("{name}.{measure}.svg"));
            write_atomic(&path, svg.as_bytes())?;
            plots.push(path);
        }
    }
    Ok((result, OutputPaths { trace, summary, plots }))
}
