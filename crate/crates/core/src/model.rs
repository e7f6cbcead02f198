//! System Hamiltonian and its exact diagonalization.
//!
//! Computational basis order is `|00>, |01>, |10>, |11>` where `|q1 q2>`
//! lists qubit 1 first. The Hamiltonian splits into the two-excitation
//! block `{|00>, |11>}` and the one-excitation block `{|01>, |10>}`, each
//! diagonalized by a single rotation angle.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rates::BathSpectrum;
use crate::state::{Basis, DensityMatrix};

/// Hamiltonian parameters and the two reservoirs (units with hbar = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Transition frequency of qubit 1.
    pub omega1: f64,
    /// Transition frequency of qubit 2; must satisfy `omega2 >= omega1`.
    pub omega2: f64,
    /// Coupling strength; the `sigma_x sigma_x` coefficient is `lambda / 2`.
    pub lambda: f64,
    /// Reservoir damping qubit 1.
    pub bath1: BathSpectrum,
    /// Reservoir damping qubit 2.
    pub bath2: BathSpectrum,
}

impl ModelParams {
    pub fn new(
        omega1: f64,
        omega2: f64,
        lambda: f64,
        bath1: BathSpectrum,
        bath2: BathSpectrum,
    ) -> Result<Self> {
        let params = Self {
            omega1,
            omega2,
            lambda,
            bath1,
            bath2,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_hamiltonian()?;
        self.bath1.validate("bath1")?;
        self.bath2.validate("bath2")
    }

    fn validate_hamiltonian(&self) -> Result<()> {
        for (name, v) in [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("lambda", self.lambda),
        ] {
            if !v.is_finite() {
                return Err(Error::param(name, format!("{v} is not finite")));
            }
        }
        if self.omega1 <= 0.0 {
            return Err(Error::param("omega1", "must be > 0"));
        }
        if self.omega2 <= 0.0 {
            return Err(Error::param("omega2", "must be > 0"));
        }
        if self.omega2 < self.omega1 {
            return Err(Error::param(
                "omega2",
                format!(
                    "must be >= omega1 ({} < {}); relabel the qubits and their baths",
                    self.omega2, self.omega1
                ),
            ));
        }
        if self.lambda < 0.0 {
            return Err(Error::param("lambda", "must be >= 0"));
        }
        Ok(())
    }
}

/// Eigen-structure of the system Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedBasis {
    /// `E_a <= E_b <= E_c <= E_d`.
    pub energies: [f64; 4],
    /// Mixing angle of the `{|00>, |11>}` block, in `[0, pi/2]`.
    pub theta_i: f64,
    /// Mixing angle of the `{|01>, |10>}` block, in `[0, pi/2]`.
    pub theta_ii: f64,
    /// `E_b - E_a = E_d - E_c`.
    pub omega_i: f64,
    /// `E_c - E_a = E_d - E_b`.
    pub omega_ii: f64,
    /// `E_d - E_a`.
    pub omega_da: f64,
    /// `E_c - E_b`.
    pub omega_cb: f64,
    /// Columns are `|a>, |b>, |c>, |d>` in computational coordinates.
    pub u: Matrix4<f64>,
}

impl DressedBasis {
    /// `(cos, sin)` of `theta_i / 2`.
    pub fn half_angles_i(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta_i).sin_cos();
        (c, s)
    }

    /// `(cos, sin)` of `theta_ii / 2`.
    pub fn half_angles_ii(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta_ii).sin_cos();
        (c, s)
    }

    /// Transition frequency `E_i - E_j` between dressed levels.
    pub fn bohr(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            _ if i == j => 0.0,
            (1, 0) | (3, 2) => self.omega_i,
            (2, 0) | (3, 1) => self.omega_ii,
            (3, 0) => self.omega_da,
            (2, 1) => self.omega_cb,
            _ => -self.bohr(j, i),
        }
    }
}

/// `H_S` in the computational basis.
pub fn hamiltonian_matrix(params: &ModelParams) -> Result<Matrix4<f64>> {
    params.validate_hamiltonian()?;
    let ModelParams {
        omega1,
        omega2,
        lambda,
        ..
    } = *params;
    let g = 0.5 * lambda;
    #[rustfmt::skip]
    let h = Matrix4::new(
        0.0, 0.0,    0.0,    g,
        0.0, omega2, g,      0.0,
        0.0, g,      omega1, 0.0,
        g,   0.0,    0.0,    omega1 + omega2,
    );
    Ok(h)
}

/// Closed-form diagonalization of `H_S`.
pub fn diagonalize(params: &ModelParams) -> Result<DressedBasis> {
    params.validate_hamiltonian()?;
    let sum = params.omega1 + params.omega2;
    let diff = params.omega2 - params.omega1;
    let lambda = params.lambda;

    let r_outer = sum.hypot(lambda);
    let r_inner = diff.hypot(lambda);
    let mean = 0.5 * sum;
    let energies = [
        mean - 0.5 * r_outer,
        mean - 0.5 * r_inner,
        mean + 0.5 * r_inner,
        mean + 0.5 * r_outer,
    ];

    let theta_i = lambda.atan2(sum);
    // 0/0 at exact resonance without coupling: take the lambda -> 0+ limit.
    let theta_ii = if lambda == 0.0 && diff == 0.0 {
        FRAC_PI_2
    } else {
        lambda.atan2(diff)
    };

    let (si, ci) = (0.5 * theta_i).sin_cos();
    let (sii, cii) = (0.5 * theta_ii).sin_cos();
    // |a> = cos|00> - sin|11>, |b> = cos|10> - sin|01>,
    // |c> = sin|10> + cos|01>,  |d> = sin|00> + cos|11>.
    #[rustfmt::skip]
    let u = Matrix4::new(
        ci,  0.0,  0.0, si,
        0.0, -sii, cii, 0.0,
        0.0, cii,  sii, 0.0,
        -si, 0.0,  0.0, ci,
    );

    Ok(DressedBasis {
        energies,
        theta_i,
        theta_ii,
        omega_i: 0.5 * (r_outer - r_inner),
        omega_ii: 0.5 * (r_outer + r_inner),
        omega_da: r_outer,
        omega_cb: r_inner,
        u,
    })
}

fn rotate(u: &Matrix4<f64>, m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let uc = u.map(|x| Complex64::new(x, 0.0));
    uc * m * uc.transpose()
}

/// `U rho U^T`: dressed-basis matrix to computational coordinates.
pub fn dressed_to_computational(
    basis: &DressedBasis,
    rho: &DensityMatrix,
) -> Result<DensityMatrix> {
    rho.expect_basis(Basis::Dressed)?;
    Ok(DensityMatrix::from_raw(
        rotate(&basis.u, rho.entries()),
        Basis::Computational,
    ))
}

/// `U^T rho U`: computational-basis matrix to dressed coordinates.
pub fn computational_to_dressed(
    basis: &DressedBasis,
    rho: &DensityMatrix,
) -> Result<DensityMatrix> {
    rho.expect_basis(Basis::Computational)?;
    Ok(DensityMatrix::from_raw(
        rotate(&basis.u.transpose(), rho.entries()),
        Basis::Dressed,
    ))
}
