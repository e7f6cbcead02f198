use crate::error::{Error, Result};
use crate::rates::LindbladRates;

/// Stationary dressed populations `[rho_aa, rho_bb, rho_cc, rho_dd]`.
/// The stationary coherences are all zero.
pub fn stationary_state(rates: &LindbladRates) -> Result<[f64; 4]> {
    let LindbladRates {
        c_i,
        c_ii,
        cbar_i,
        cbar_ii,
        ..
    } = *rates;
    let total_i = c_i + cbar_i;
    let total_ii = c_ii + cbar_ii;
    if !(total_i > 0.0) {
        return Err(Error::NoStationaryState(
            "c_I + cbar_I is zero; the omega_I channel is undamped".into(),
        ));
    }
    if !(total_ii > 0.0) {
        return Err(Error::NoStationaryState(
            "c_II + cbar_II is zero; the omega_II channel is undamped".into(),
        ));
    }
    let norm = total_i * total_ii;
    Ok([
        c_i * c_ii / norm,
        cbar_i * c_ii / norm,
        c_i * cbar_ii / norm,
        cbar_i * cbar_ii / norm,
    ])
}
