//! Adaptive Dormand-Prince 5(4) integration of the master equation.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::{dissipator_matrix, generator_matrix, uniform_grid, Trajectory};
use crate::error::{Error, Result};
use crate::model::DressedBasis;
use crate::rates::LindbladRates;
use crate::state::{Basis, DensityMatrix};

type M4 = Matrix4<Complex64>;

/// Reference frame for the numerical integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Frame {
    /// Integrate `rho~ = e^{iHt} rho e^{-iHt}` under the dissipator only and
    /// apply the free phases exactly at each output time. The stepper then
    /// only resolves the slow damping time scales.
    #[default]
    Interaction,
    /// Integrate the full generator, including `-i[H, rho]`, directly.
    Lab,
}

/// Tolerances and output density for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    /// Per-step relative tolerance.
    pub rtol: f64,
    /// Per-step absolute tolerance.
    pub atol: f64,
    /// Upper bound on the internal step.
    pub dt_max: f64,
    /// Number of uniformly spaced output samples, endpoints included.
    pub samples: usize,
    pub frame: Frame,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            dt_max: f64::INFINITY,
            samples: 1001,
            frame: Frame::Interaction,
        }
    }
}

impl IntegratorOptions {
    pub fn with_samples(samples: usize) -> Self {
        Self {
            samples,
            ..Self::default()
        }
    }
}

// Dormand-Prince tableau. The generator is autonomous, so the stage nodes
// c_i are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

fn lincomb(y: &M4, h: f64, terms: &[(f64, &M4)]) -> M4 {
    let mut out = *y;
    for &(w, k) in terms {
        if w != 0.0 {
            out += k * Complex64::new(h * w, 0.0);
        }
    }
    out
}

fn is_finite(m: &M4) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

struct Stepper<'a> {
    basis: &'a DressedBasis,
    rates: &'a LindbladRates,
    opts: IntegratorOptions,
}

impl Stepper<'_> {
    fn f(&self, y: &M4) -> M4 {
        match self.opts.frame {
            Frame::Interaction => dissipator_matrix(self.rates, y),
            Frame::Lab => generator_matrix(self.basis, self.rates, y),
        }
    }

    /// Maps the integrated variable at time `t` back to the lab frame.
    fn to_lab(&self, y: &M4, t: f64) -> M4 {
        match self.opts.frame {
            Frame::Interaction => M4::from_fn(|i, j| {
                y[(i, j)] * Complex64::from_polar(1.0, -self.basis.bohr(i, j) * t)
            }),
            Frame::Lab => *y,
        }
    }

    /// RMS of the scaled error over the 32 real components.
    fn error_norm(&self, y: &M4, y_new: &M4, err: &M4) -> f64 {
        let mut acc = 0.0;
        for ((a, b), e) in y.iter().zip(y_new.iter()).zip(err.iter()) {
            for (ya, yb, ye) in [(a.re, b.re, e.re), (a.im, b.im, e.im)] {
                let sc = self.opts.atol + self.opts.rtol * ya.abs().max(yb.abs());
                acc += (ye / sc).powi(2);
            }
        }
        (acc / 32.0).sqrt()
    }

    /// Hairer's starting step estimate.
    fn initial_step(&self, y: &M4, f0: &M4) -> f64 {
        let scale = |m: &M4| -> f64 {
            let mut acc = 0.0;
            for (z, s) in m.iter().zip(y.iter()) {
                for (v, r) in [(z.re, s.re), (z.im, s.im)] {
                    let sc = self.opts.atol + self.opts.rtol * r.abs();
                    acc += (v / sc).powi(2);
                }
            }
            (acc / 32.0).sqrt()
        };
        let d0 = scale(y);
        let d1 = scale(f0);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1 = lincomb(y, h0, &[(1.0, f0)]);
        let f1 = self.f(&y1);
        let d2 = scale(&(f1 - f0)) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(self.opts.dt_max)
    }
}

/// Integrates `d rho / dt = L(rho)` from `t = 0` to `t_end`, sampling on a
/// uniform grid of `opts.samples` points. Each accepted step is followed by
/// projection onto the Hermitian part.
///
/// Steps are clipped to land on the output times, so no interpolation is
/// involved.
pub fn integrate(
    basis: &DressedBasis,
    rates: &LindbladRates,
    rho0: &DensityMatrix,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    rho0.expect_basis(Basis::Dressed)?;
    if !(opts.dt_max > 0.0) {
        return Err(Error::param("dt_max", "must be > 0"));
    }
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(Error::param("rtol/atol", "tolerances must be > 0"));
    }
    let grid = uniform_grid(t_end, opts.samples)?;
    let stepper = Stepper {
        basis,
        rates,
        opts: *opts,
    };
    let h_min = 1e-12 * t_end;

    let mut y = *rho0.entries();
    let mut t = 0.0;
    let mut k1 = stepper.f(&y);
    let mut h = stepper.initial_step(&y, &k1).max(h_min);
    let mut states = Vec::with_capacity(grid.len());
    states.push(rho0.clone());

    for &t_out in &grid[1..] {
        while t < t_out {
            let remaining = t_out - t;
            let last = h >= remaining;
            let h_try = if last { remaining } else { h };

            let k2 = stepper.f(&lincomb(&y, h_try, &[(A21, &k1)]));
            let k3 = stepper.f(&lincomb(&y, h_try, &[(A31, &k1), (A32, &k2)]));
            let k4 = stepper.f(&lincomb(&y, h_try, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = stepper.f(&lincomb(
                &y,
                h_try,
                &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
            ));
            let k6 = stepper.f(&lincomb(
                &y,
                h_try,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ));
            let y_new = lincomb(
                &y,
                h_try,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            if !is_finite(&y_new) {
                return Err(Error::Integration {
                    t,
                    reason: "non-finite state".into(),
                });
            }
            let k7 = stepper.f(&y_new);
            let err = lincomb(
                &M4::zeros(),
                h_try,
                &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
            );
            let en = stepper.error_norm(&y, &y_new, &err);

            if en <= 1.0 {
                t = if last { t_out } else { t + h_try };
                y = (y_new + y_new.adjoint()) * Complex64::new(0.5, 0.0);
                k1 = k7;
                let factor = if en == 0.0 {
                    MAX_FACTOR
                } else {
                    (SAFETY * en.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                };
                // A step shortened to land on an output time says nothing
                // about the natural step size.
                if !last || h_try >= h {
                    h = (h_try * factor).min(opts.dt_max);
                }
            } else {
                let factor = (SAFETY * en.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
                h = h_try * factor;
                if h < h_min {
                    return Err(Error::Integration {
                        t,
                        reason: format!("step size {h:e} below {h_min:e}; problem too stiff"),
                    });
                }
            }
        }
        states.push(DensityMatrix::from_raw(stepper.to_lab(&y, t), Basis::Dressed));
    }

    Trajectory::from_states(grid, states)
}
