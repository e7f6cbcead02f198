//! Initial states and the Wootters concurrence.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::model::{dressed_to_computational, DressedBasis};
use crate::state::{Basis, DensityMatrix};

/// Eigenvalues of `rho` down to this value are clamped to zero.
const CLAMP_TOL: f64 = 1e-10;
/// Eigenvalues below this mark the input as unphysical.
const REJECT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialFamily {
    /// `sqrt(p)|01> + e^{i phi} sqrt(1-p)|10>`
    OneExcitation,
    /// `sqrt(p)|00> + e^{i phi} sqrt(1-p)|11>`
    TwoExcitation,
}

/// A pure two-qubit initial state within one excitation-parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialStateSpec {
    pub family: InitialFamily,
    pub p: f64,
    pub phi: f64,
}

impl InitialStateSpec {
    pub fn new(family: InitialFamily, p: f64, phi: f64) -> Result<Self> {
        let spec = Self { family, p, phi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && (0.0..=1.0).contains(&self.p)) {
            return Err(Error::param("initial.p", format!("{} must lie in [0, 1]", self.p)));
        }
        if !self.phi.is_finite() {
            return Err(Error::param("initial.phi", format!("{} is not finite", self.phi)));
        }
        Ok(())
    }

    /// State vector in the computational basis.
    pub fn state_vector(&self) -> nalgebra::Vector4<Complex64> {
        let first = Complex64::new(self.p.sqrt(), 0.0);
        let second = Complex64::from_polar((1.0 - self.p).sqrt(), self.phi);
        let zero = Complex64::new(0.0, 0.0);
        match self.family {
            InitialFamily::OneExcitation => [zero, first, second, zero].into(),
            InitialFamily::TwoExcitation => [first, zero, zero, second].into(),
        }
    }
}

/// Dressed-basis density matrix of the initial state.
pub fn build_initial(spec: &InitialStateSpec, basis: &DressedBasis) -> Result<DensityMatrix> {
    spec.validate()?;
    let x = Complex64::from_polar((1.0 - spec.p).sqrt(), spec.phi);
    let y = spec.p.sqrt();
    let mut m = Matrix4::zeros();
    match spec.family {
        InitialFamily::OneExcitation => {
            let (c, s) = basis.half_angles_ii();
            let on_b = x * c - y * s;
            let on_c = x * s + y * c;
            m[(1, 1)] = Complex64::new(on_b.norm_sqr(), 0.0);
            m[(2, 2)] = Complex64::new(on_c.norm_sqr(), 0.0);
            m[(1, 2)] = on_b * on_c.conj();
            m[(2, 1)] = on_b.conj() * on_c;
        }
        InitialFamily::TwoExcitation => {
            let (c, s) = basis.half_angles_i();
            let on_a = y * c - x * s;
            let on_d = y * s + x * c;
            m[(0, 0)] = Complex64::new(on_a.norm_sqr(), 0.0);
            m[(3, 3)] = Complex64::new(on_d.norm_sqr(), 0.0);
            m[(0, 3)] = on_a * on_d.conj();
            m[(3, 0)] = on_a.conj() * on_d;
        }
    }
    DensityMatrix::new(m, Basis::Dressed)
}

/// `sigma_y (x) sigma_y` in the computational basis.
fn spin_flip() -> Matrix4<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut y = Matrix4::zeros();
    y[(0, 3)] = -one;
    y[(3, 0)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y
}

/// Square roots of the eigenvalues of `rho * rho_tilde`, descending.
///
/// With `rho = W W^dagger`, these are the singular values of the complex
/// symmetric matrix `W^T (sigma_y (x) sigma_y) W`. Taking singular values
/// directly keeps the small ones accurate to machine precision, which a
/// square root of near-zero eigenvalues would not.
pub fn wootters_roots(rho: &DensityMatrix) -> Result<[f64; 4]> {
    rho.expect_basis(Basis::Computational)?;
    let m = rho.entries();
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("non-finite entry".into()));
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut w = eig.eigenvectors;
    for (k, &mu) in eig.eigenvalues.iter().enumerate() {
        if mu < -REJECT_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {mu:e}; concurrence undefined"
            )));
        }
        let mu = if (-CLAMP_TOL..0.0).contains(&mu) { 0.0 } else { mu.max(0.0) };
        w.column_mut(k).scale_mut(mu.sqrt());
    }
    let tau = w.transpose() * spin_flip() * w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok([sv[0], sv[1], sv[2], sv[3]])
}

/// Wootters concurrence of a computational-basis two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let [l1, l2, l3, l4] = wootters_roots(rho)?;
    Ok((l1 - l2 - l3 - l4).max(0.0))
}

/// Concurrence at every sample of a dressed-basis trajectory; also stored
/// in `traj.observables`.
pub fn concurrence_series(traj: &mut Trajectory, basis: &DressedBasis) -> Result<Vec<f64>> {
    let values = traj
        .states
        .iter()
        .map(|s| concurrence(&dressed_to_computational(basis, s)?))
        .collect::<Result<Vec<_>>>()?;
    for (obs, &c) in traj.observables.iter_mut().zip(&values) {
        obs.concurrence = Some(c);
    }
    Ok(values)
}
