use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ScenarioConfig, Solver};
use crate::dynamics::{
    analytic_preconditions, analytic_zero_t, integrate, stationary_state, uniform_grid,
    IntegratorOptions, Trajectory,
};
use crate::entanglement::{build_initial, concurrence_series};
use crate::error::{Error, Result};
use crate::model::diagonalize;
use crate::rates::lindblad_rates;

pub const CSV_HEADER: &str = "t,rho_aa,rho_bb,rho_cc,rho_dd,concurrence,trace_error,min_eig";

/// Largest tolerated `|tr(rho) - 1|` in emitted rows.
const MAX_TRACE_ERROR: f64 = 1e-9;
/// Smallest tolerated eigenvalue in emitted rows.
const MIN_EIGENVALUE: f64 = -1e-8;
/// Rates above this fraction of `omega_I` break the weak-damping assumption.
const WEAK_DAMPING_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Also write a gnuplot script next to each CSV.
    pub emit_gnuplot: bool,
}

/// Outcome of one scenario (one sweep point).
#[derive(Debug, Clone)]
pub struct PointReport {
    pub csv_path: PathBuf,
    pub gnuplot_path: Option<PathBuf>,
    pub solver_used: Solver,
    /// `None` when a channel is undamped and no unique stationary state exists.
    pub stationary: Option<[f64; 4]>,
    pub final_concurrence: f64,
    pub t_end: f64,
    pub warnings: Vec<String>,
}

impl PointReport {
    pub fn summary(&self) -> String {
        let stationary = match self.stationary {
            Some(p) => format!(
                "stationary(aa,bb,cc,dd)=({:.6e},{:.6e},{:.6e},{:.6e})",
                p[0], p[1], p[2], p[3]
            ),
            None => "stationary=none".to_string(),
        };
        format!(
            "{}: solver={} t_end={} {} final_concurrence={:.6e}",
            self.csv_path.display(),
            self.solver_used,
            self.t_end,
            stationary,
            self.final_concurrence
        )
    }
}

fn csv_path(output: &Path, sweep: Option<(&str, f64)>) -> PathBuf {
    let stem = match output.extension() {
        Some(ext) if ext == "csv" => output.with_extension(""),
        _ => output.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    if let Some((param, value)) = sweep {
        name.push(format!("_{param}={value}"));
    }
    name.push(".csv");
    PathBuf::from(name)
}

fn format_csv(traj: &Trajectory) -> Result<String> {
    let mut out = String::with_capacity(traj.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for ((t, state), obs) in traj.times.iter().zip(&traj.states).zip(&traj.observables) {
        let trace_error = state.trace().re - 1.0;
        let min_eig = state.min_eigenvalue();
        if !(trace_error.abs() <= MAX_TRACE_ERROR) {
            return Err(Error::Physicality {
                t: *t,
                reason: format!("trace error {trace_error:e}"),
            });
        }
        if !(min_eig >= MIN_EIGENVALUE) {
            return Err(Error::Physicality {
                t: *t,
                reason: format!("negative eigenvalue {min_eig:e}"),
            });
        }
        let c = obs.concurrence.ok_or_else(|| Error::Physicality {
            t: *t,
            reason: "concurrence missing".into(),
        })?;
        let p = obs.populations;
        // 12 significant digits.
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            t, p[0], p[1], p[2], p[3], c, trace_error, min_eig
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

fn gnuplot_script(csv: &Path) -> String {
    let name = csv.file_name().map(|n| n.to_string_lossy()).unwrap_or_default();
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 't'\n\
         set ylabel 'concurrence'\n\
         plot '{name}' using 1:6 with lines title 'C(t)'\n"
    )
}

/// Runs a single (non-sweep) scenario and writes its CSV to `csv_path`.
pub fn run_point(cfg: &ScenarioConfig, csv_path: &Path, opts: &RunOptions) -> Result<PointReport> {
    cfg.validate_point()?;
    let basis = diagonalize(&cfg.model)?;
    let rates = lindblad_rates(&basis, &cfg.model.bath1, &cfg.model.bath2)?;

    let mut warnings = Vec::new();
    if rates.max_rate() > WEAK_DAMPING_FRACTION * basis.omega_i {
        warnings.push(format!(
            "largest rate {:.3e} exceeds {WEAK_DAMPING_FRACTION} * omega_I = {:.3e}; \
             the weak-damping master equation may not apply",
            rates.max_rate(),
            WEAK_DAMPING_FRACTION * basis.omega_i
        ));
    }

    let t_end = match cfg.t_end {
        Some(t) => t,
        None => match rates.min_decay_rate() {
            Some(c) => 10.0 / c,
            None => {
                return Err(Error::param(
                    "t_end",
                    "required when every decay rate is zero",
                ))
            }
        },
    };

    let solver_used = match cfg.solver {
        Solver::Auto if analytic_preconditions(&rates).is_ok() => Solver::Analytic,
        Solver::Auto => Solver::Numeric,
        s => s,
    };

    let rho0 = build_initial(&cfg.initial, &basis)?;
    let mut traj = match solver_used {
        Solver::Analytic => {
            let grid = uniform_grid(t_end, cfg.samples)?;
            analytic_zero_t(&basis, &rates, &rho0, &grid)?
        }
        _ => integrate(
            &basis,
            &rates,
            &rho0,
            t_end,
            &IntegratorOptions::with_samples(cfg.samples),
        )?,
    };
    let series = concurrence_series(&mut traj, &basis)?;
    let csv = format_csv(&traj)?;

    if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut file = BufWriter::new(fs::File::create(csv_path)?);
    file.write_all(csv.as_bytes())?;
    file.flush()?;

    let gnuplot_path = if opts.emit_gnuplot {
        let gp = csv_path.with_extension("gp");
        fs::write(&gp, gnuplot_script(csv_path))?;
        Some(gp)
    } else {
        None
    };

    Ok(PointReport {
        csv_path: csv_path.to_path_buf(),
        gnuplot_path,
        solver_used,
        stationary: stationary_state(&rates).ok(),
        final_concurrence: *series.last().expect("grid has at least two samples"),
        t_end,
        warnings,
    })
}

/// Runs a scenario, fanning sweep points out across threads.
pub fn run(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Vec<PointReport>> {
    let param = cfg.sweep.as_ref().map(|s| s.param.key());
    cfg.points()?
        .par_iter()
        .map(|(value, point)| {
            let sweep = param.zip(*value);
            run_point(point, &csv_path(&cfg.output_path, sweep), opts)
        })
        .collect()
}
