//! Reservoir spectra and the Lindblad coefficients of the dressed-state
//! master equation.
//!
//! Qubit `l` couples to its reservoir through `sigma_x^(l)`. In the dressed
//! basis this operator only connects levels separated by `omega_I`
//! (`b -> a`, `d -> c`) or `omega_II` (`c -> a`, `d -> b`). The squared
//! matrix elements weighted by the reservoir rates give the decay rates;
//! their signed combinations give the cross coefficients that couple
//! coherence pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DressedBasis;

/// Beyond this `omega / T` the Boltzmann factor is treated as zero.
const MAX_BOLTZMANN_EXPONENT: f64 = 700.0;

/// A thermal reservoir sampled at the two Bohr frequencies of the system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathSpectrum {
    /// Decay rate at `omega_I`.
    pub gamma_at_omega_i: f64,
    /// Decay rate at `omega_II`.
    pub gamma_at_omega_ii: f64,
    /// Temperature in energy units.
    pub temperature: f64,
}

impl BathSpectrum {
    pub fn new(gamma_at_omega_i: f64, gamma_at_omega_ii: f64, temperature: f64) -> Self {
        Self {
            gamma_at_omega_i,
            gamma_at_omega_ii,
            temperature,
        }
    }

    /// Frequency-independent spectral density.
    pub fn flat(gamma: f64, temperature: f64) -> Self {
        Self::new(gamma, gamma, temperature)
    }

    pub(crate) fn validate(&self, name: &str) -> Result<()> {
        for (field, v) in [
            ("gamma_at_omega_i", self.gamma_at_omega_i),
            ("gamma_at_omega_ii", self.gamma_at_omega_ii),
            ("temperature", self.temperature),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::param(
                    format!("{name}.{field}"),
                    format!("{v} must be finite and >= 0"),
                ));
            }
        }
        Ok(())
    }
}

/// The eight scalar coefficients of the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LindbladRates {
    pub c_i: f64,
    pub c_ii: f64,
    pub c_cr_i: f64,
    pub c_cr_ii: f64,
    pub cbar_i: f64,
    pub cbar_ii: f64,
    pub cbar_cr_i: f64,
    pub cbar_cr_ii: f64,
}

impl LindbladRates {
    pub fn max_rate(&self) -> f64 {
        [
            self.c_i,
            self.c_ii,
            self.c_cr_i,
            self.c_cr_ii,
            self.cbar_i,
            self.cbar_ii,
            self.cbar_cr_i,
            self.cbar_cr_ii,
        ]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
    }

    /// Smallest nonzero decay rate among `c_I`, `c_II`.
    pub fn min_decay_rate(&self) -> Option<f64> {
        [self.c_i, self.c_ii]
            .into_iter()
            .filter(|&c| c > 0.0)
            .min_by(f64::total_cmp)
    }
}

/// Thermal excitation rate `gamma * exp(-omega / T)`.
pub fn kms_rate(gamma: f64, omega: f64, temperature: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::param("gamma", format!("{gamma} must be finite and >= 0")));
    }
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::param("omega", format!("{omega} must be finite and > 0")));
    }
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(Error::param(
            "temperature",
            format!("{temperature} must be finite and >= 0"),
        ));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = omega / temperature;
    if x > MAX_BOLTZMANN_EXPONENT {
        return Ok(0.0);
    }
    Ok(gamma * (-x).exp())
}

/// Squared dressed-basis matrix elements of `sigma_x^(1)` and
/// `sigma_x^(2)` for the two transition families.
struct Overlaps {
    /// `|<a|sx1|b>|^2 = |<c|sx1|d>|^2`
    i_q1: f64,
    /// `|<a|sx2|b>|^2 = |<c|sx2|d>|^2`
    i_q2: f64,
    /// `|<a|sx1|c>|^2 = |<b|sx1|d>|^2`
    ii_q1: f64,
    /// `|<a|sx2|c>|^2 = |<b|sx2|d>|^2`
    ii_q2: f64,
}

impl Overlaps {
    fn new(basis: &DressedBasis) -> Self {
        let (ci, si) = basis.half_angles_i();
        let (cii, sii) = basis.half_angles_ii();
        let sq = |x: f64| x * x;
        Self {
            i_q1: sq(ci * cii + si * sii),
            i_q2: sq(ci * sii + si * cii),
            ii_q1: sq(ci * sii - si * cii),
            ii_q2: sq(ci * cii - si * sii),
        }
    }
}

fn coefficients(
    ov: &Overlaps,
    (g_i_1, g_ii_1): (f64, f64),
    (g_i_2, g_ii_2): (f64, f64),
) -> [f64; 4] {
    [
        g_i_1 * ov.i_q1 + g_i_2 * ov.i_q2,
        g_ii_1 * ov.ii_q1 + g_ii_2 * ov.ii_q2,
        g_i_1 * ov.i_q1 - g_i_2 * ov.i_q2,
        -g_ii_1 * ov.ii_q1 + g_ii_2 * ov.ii_q2,
    ]
}

/// Decay, excitation and cross coefficients for the given reservoirs.
pub fn lindblad_rates(
    basis: &DressedBasis,
    bath1: &BathSpectrum,
    bath2: &BathSpectrum,
) -> Result<LindbladRates> {
    bath1.validate("bath1")?;
    bath2.validate("bath2")?;
    let ov = Overlaps::new(basis);

    let [c_i, c_ii, c_cr_i, c_cr_ii] = coefficients(
        &ov,
        (bath1.gamma_at_omega_i, bath1.gamma_at_omega_ii),
        (bath2.gamma_at_omega_i, bath2.gamma_at_omega_ii),
    );

    let excite = |bath: &BathSpectrum| -> Result<(f64, f64)> {
        Ok((
            kms_rate(bath.gamma_at_omega_i, basis.omega_i, bath.temperature)?,
            kms_rate(bath.gamma_at_omega_ii, basis.omega_ii, bath.temperature)?,
        ))
    };
    let [cbar_i, cbar_ii, cbar_cr_i, cbar_cr_ii] =
        coefficients(&ov, excite(bath1)?, excite(bath2)?);

    Ok(LindbladRates {
        c_i,
        c_ii,
        c_cr_i,
        c_cr_ii,
        cbar_i,
        cbar_ii,
        cbar_cr_i,
        cbar_cr_ii,
    })
}
