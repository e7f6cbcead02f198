use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::Result;
use crate::model::DressedBasis;
use crate::rates::LindbladRates;
use crate::state::{Basis, DensityMatrix};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

/// Adds `rate * (|to><from| rho |from><to| - 1/2 {|from><from|, rho})`.
fn jump(out: &mut Matrix4<Complex64>, rho: &Matrix4<Complex64>, rate: f64, from: usize, to: usize) {
    if rate == 0.0 {
        return;
    }
    out[(to, to)] += rho[(from, from)] * rate;
    let half = 0.5 * rate;
    for m in 0..4 {
        out[(from, m)] -= rho[(from, m)] * half;
        out[(m, from)] -= rho[(m, from)] * half;
    }
}

/// Adds `rate * |i><j| rho |k><l|`.
#[inline]
fn dyad(out: &mut Matrix4<Complex64>, rho: &Matrix4<Complex64>, rate: f64, i: usize, j: usize, k: usize, l: usize) {
    out[(i, l)] += rho[(j, k)] * rate;
}

pub(crate) fn generator_matrix(
    basis: &DressedBasis,
    rates: &LindbladRates,
    rho: &Matrix4<Complex64>,
) -> Matrix4<Complex64> {
    let e = &basis.energies;
    // -i [H, rho] with H = diag(E)
    let commutator = Matrix4::from_fn(|i, j| rho[(i, j)] * Complex64::new(0.0, e[j] - e[i]));
    commutator + dissipator_matrix(rates, rho)
}

/// Dissipative part alone. Every term maps `rho_jk` onto an entry `(i, l)`
/// with `E_i - E_l = E_j - E_k`, so it commutes with the free evolution and
/// also serves as the generator in the interaction picture.
pub(crate) fn dissipator_matrix(rates: &LindbladRates, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let mut out = Matrix4::zeros();

    // Decay at omega_I: b -> a, d -> c. At omega_II: c -> a, d -> b.
    jump(&mut out, rho, rates.c_i, B, A);
    jump(&mut out, rho, rates.c_ii, C, A);
    jump(&mut out, rho, rates.c_i, D, C);
    jump(&mut out, rho, rates.c_ii, D, B);
    // Thermal excitation, reversed transitions.
    jump(&mut out, rho, rates.cbar_i, A, B);
    jump(&mut out, rho, rates.cbar_ii, A, C);
    jump(&mut out, rho, rates.cbar_i, C, D);
    jump(&mut out, rho, rates.cbar_ii, B, D);

    // Cross terms between the two transitions sharing a Bohr frequency.
    dyad(&mut out, rho, rates.c_cr_i, A, B, D, C);
    dyad(&mut out, rho, rates.c_cr_i, C, D, B, A);
    dyad(&mut out, rho, rates.c_cr_ii, A, C, D, B);
    dyad(&mut out, rho, rates.c_cr_ii, B, D, C, A);
    dyad(&mut out, rho, rates.cbar_cr_i, D, C, A, B);
    dyad(&mut out, rho, rates.cbar_cr_i, B, A, C, D);
    dyad(&mut out, rho, rates.cbar_cr_ii, D, B, A, C);
    dyad(&mut out, rho, rates.cbar_cr_ii, C, A, B, D);

    out
}

/// Right-hand side `d rho / dt` of the master equation.
pub fn generator_apply(
    basis: &DressedBasis,
    rates: &LindbladRates,
    rho: &DensityMatrix,
) -> Result<Matrix4<Complex64>> {
    rho.expect_basis(Basis::Dressed)?;
    Ok(generator_matrix(basis, rates, rho.entries()))
}
