//! Closed-form zero-temperature solution for resonant qubits with equal
//! flat reservoirs. In that regime every cross coefficient vanishes, so
//! each coherence decays on its own and the populations cascade
//! `d -> {b, c} -> a`.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::Trajectory;
use crate::error::{Error, Result};
use crate::model::DressedBasis;
use crate::rates::LindbladRates;
use crate::state::{Basis, DensityMatrix};

/// Relative size below which a cross coefficient counts as zero.
const CROSS_TOL: f64 = 1e-12;

/// Checks that the rates fall in the regime covered by [`analytic_zero_t`].
pub fn analytic_preconditions(rates: &LindbladRates) -> Result<()> {
    let barred = [rates.cbar_i, rates.cbar_ii, rates.cbar_cr_i, rates.cbar_cr_ii];
    if barred.iter().any(|&c| c != 0.0) {
        return Err(Error::Precondition(
            "excitation rates are nonzero (reservoir temperature > 0)".into(),
        ));
    }
    let scale = rates.c_i.abs() + rates.c_ii.abs();
    for (name, c) in [("c_cr_I", rates.c_cr_i), ("c_cr_II", rates.c_cr_ii)] {
        if c.abs() > CROSS_TOL * scale {
            return Err(Error::Precondition(format!(
                "cross coefficient {name} = {c:e} is nonzero (requires omega1 = omega2 and equal flat spectra)"
            )));
        }
    }
    Ok(())
}

fn evolve(basis: &DressedBasis, r: &LindbladRates, rho0: &Matrix4<Complex64>, t: f64) -> Matrix4<Complex64> {
    let p0 = [0, 1, 2, 3].map(|i| rho0[(i, i)].re);
    let e_i = (-r.c_i * t).exp();
    let e_ii = (-r.c_ii * t).exp();
    let e_both = (-(r.c_i + r.c_ii) * t).exp();

    let dd = p0[3] * e_both;
    let bb = p0[1] * e_i + p0[3] * (e_i - e_both);
    let cc = p0[2] * e_ii + p0[3] * (e_ii - e_both);
    // Whatever leaves b, c, d lands in a.
    let aa = p0[0] + (p0[1] - bb) + (p0[2] - cc) + (p0[3] - dd);

    let mut out = Matrix4::zeros();
    for (i, p) in [aa, bb, cc, dd].into_iter().enumerate() {
        out[(i, i)] = Complex64::new(p, 0.0);
    }

    // Damping of rho_ij for i < j (dressed order a, b, c, d).
    let damping = [
        ((0, 1), (r.c_i + r.cbar_i + 2.0 * r.cbar_ii) / 2.0),
        ((0, 2), (r.c_ii + 2.0 * r.cbar_i + r.cbar_ii) / 2.0),
        ((0, 3), (r.c_i + r.c_ii + r.cbar_i + r.cbar_ii) / 2.0),
        ((1, 2), (r.c_i + r.c_ii + r.cbar_i + r.cbar_ii) / 2.0),
        ((1, 3), (2.0 * r.c_i + r.c_ii + r.cbar_ii) / 2.0),
        ((2, 3), (r.c_i + 2.0 * r.c_ii + r.cbar_i) / 2.0),
    ];
    for ((i, j), gamma) in damping {
        let omega = basis.bohr(j, i);
        let z = Complex64::new(-gamma * t, omega * t).exp() * rho0[(i, j)];
        out[(i, j)] = z;
        out[(j, i)] = z.conj();
    }
    out
}

/// Evaluates the closed-form solution at each of `times`.
pub fn analytic_zero_t(
    basis: &DressedBasis,
    rates: &LindbladRates,
    rho0: &DensityMatrix,
    times: &[f64],
) -> Result<Trajectory> {
    rho0.expect_basis(Basis::Dressed)?;
    analytic_preconditions(rates)?;
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::param("times", format!("{t} must be finite and >= 0")));
    }
    let states = times
        .iter()
        .map(|&t| {
            if t == 0.0 {
                rho0.clone()
            } else {
                DensityMatrix::from_raw(evolve(basis, rates, rho0.entries(), t), Basis::Dressed)
            }
        })
        .collect();
    Trajectory::from_states(times.to_vec(), states)
}
