//! Density matrices tagged with the basis they are written in.

use std::fmt;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance for a valid density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Unit-trace tolerance for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue tolerated as numerical noise.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Which orthonormal basis the matrix entries refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Eigenbasis of the system Hamiltonian, ordered `a, b, c, d`.
    Dressed,
    /// Product basis ordered `|00>, |01>, |10>, |11>`.
    Computational,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Dressed => f.write_str("dressed"),
            Basis::Computational => f.write_str("computational"),
        }
    }
}

/// A 4x4 two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix4<Complex64>,
    basis: Basis,
}

impl DensityMatrix {
    /// Wraps `entries` after checking Hermiticity, unit trace and positivity.
    pub fn new(entries: Matrix4<Complex64>, basis: Basis) -> Result<Self> {
        let rho = Self { entries, basis };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps `entries` without any check. Used for intermediate integrator
    /// states and for tests that need deliberately unphysical input.
    pub fn from_raw(entries: Matrix4<Complex64>, basis: Basis) -> Self {
        Self { entries, basis }
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn pure(psi: &Vector4<Complex64>, basis: Basis) -> Result<Self> {
        let norm = psi.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "state vector norm is {norm}, expected 1"
            )));
        }
        Self::new(psi * psi.adjoint(), basis)
    }

    /// Diagonal matrix with the given populations.
    pub fn diagonal(populations: [f64; 4], basis: Basis) -> Result<Self> {
        let d = Vector4::from_iterator(populations.iter().map(|&p| Complex64::new(p, 0.0)));
        Self::new(Matrix4::from_diagonal(&d), basis)
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        Self::from_raw(Matrix4::identity() * Complex64::new(0.25, 0.0), basis)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix4<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Diagonal entries (real parts).
    pub fn populations(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.entries[(i, i)].re)
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (self.entries * self.entries).trace().re
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let herm = (self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Replaces the matrix by its Hermitian part `(rho + rho^dagger) / 2`.
    pub fn hermitize(&mut self) {
        self.entries = (self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub(crate) fn expect_basis(&self, expected: Basis) -> Result<()> {
        if self.basis != expected {
            return Err(Error::BasisMismatch {
                expected,
                found: self.basis,
            });
        }
        Ok(())
    }
}
