//! Scenario files, sweeps and CSV output.
//!
//! A scenario is a flat JSON document:
//!
//! ```json
//! {
//!   "omega1": 10, "omega2": 10, "lambda": 1,
//!   "gamma1_I": 0.01, "gamma1_II": 0.01, "gamma2_I": 0.01, "gamma2_II": 0.01,
//!   "T1": 0, "T2": 0,
//!   "initial_family": "one_excitation", "p": 1, "phi": 0,
//!   "t_end": 2000, "samples": 20001, "solver": "auto",
//!   "output": "fig2.csv",
//!   "sweep": { "param": "lambda", "values": [0.5, 1, 2] }
//! }
//! ```
//!
//! `gammaL_I` / `gammaL_II` are the decay rates of reservoir `L` sampled at
//! the two Bohr frequencies, `TL` its temperature. `phi`, `solver`, `t_end`,
//! `samples` and `sweep` are optional.

mod config;
mod run;

pub use config::{load_config, parse_config, preset, ScenarioConfig, Solver, Sweep, SweepParam};
pub use run::{run, run_point, PointReport, RunOptions, CSV_HEADER};
