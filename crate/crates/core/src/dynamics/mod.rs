//! Time evolution in the dressed basis.
//!
//! Indices `0..4` stand for the dressed levels `a, b, c, d`.

mod analytic;
mod generator;
mod integrator;
mod stationary;

pub use analytic::{analytic_preconditions, analytic_zero_t};
pub use generator::generator_apply;
pub(crate) use generator::{dissipator_matrix, generator_matrix};
pub use integrator::{integrate, Frame, IntegratorOptions};
pub use stationary::stationary_state;

use crate::error::{Error, Result};
use crate::state::DensityMatrix;

/// Per-sample derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    /// Dressed populations `rho_aa, rho_bb, rho_cc, rho_dd`.
    pub populations: [f64; 4],
    /// Filled in by [`crate::entanglement::concurrence_series`].
    pub concurrence: Option<f64>,
}

/// Sampled solution of the master equation.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub observables: Vec<Observables>,
}

impl Trajectory {
    pub(crate) fn from_states(times: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidState(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidState("times must be strictly increasing".into()));
        }
        let observables = states
            .iter()
            .map(|s| Observables {
                populations: s.populations(),
                concurrence: None,
            })
            .collect();
        Ok(Self {
            times,
            states,
            observables,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &DensityMatrix)> {
        Some((*self.times.last()?, self.states.last()?))
    }

    /// Concurrence values, if they have been computed.
    pub fn concurrences(&self) -> Option<Vec<f64>> {
        self.observables.iter().map(|o| o.concurrence).collect()
    }
}

/// `samples` equally spaced times from 0 to `t_end` inclusive.
pub fn uniform_grid(t_end: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::param("t_end", format!("{t_end} must be finite and > 0")));
    }
    if samples < 2 {
        return Err(Error::param("samples", format!("{samples} must be >= 2")));
    }
    let n = (samples - 1) as f64;
    Ok((0..samples)
        .map(|k| if k == samples - 1 { t_end } else { t_end * k as f64 / n })
        .collect())
}
