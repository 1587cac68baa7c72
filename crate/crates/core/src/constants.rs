//! Physical constants (CODATA 2018, SI).

use std::f64::consts::PI;

pub const C: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Angular frequency [rad/s] of a vacuum wavelength given in micrometres.
#[inline]
pub fn omega_from_um(lambda_um: f64) -> f64 {
    2.0 * PI * C / (lambda_um * 1e-6)
}

/// Vacuum wavelength [µm] of an angular frequency [rad/s].
#[inline]
pub fn um_from_omega(omega: f64) -> f64 {
    2.0 * PI * C / omega * 1e6
}

/// Angular-frequency FWHM of a band whose wavelength FWHM `fwhm_nm` is centred
/// on `center_um`, i.e. ω(λ−Δλ/2) − ω(λ+Δλ/2).
pub fn omega_fwhm_from_nm(center_um: f64, fwhm_nm: f64) -> f64 {
    let half = 0.5 * fwhm_nm * 1e-3;
    omega_from_um(center_um - half) - omega_from_um(center_um + half)
}

/// Standard deviation of a Gaussian from its full width at half maximum.
#[inline]
pub fn sigma_from_fwhm(fwhm: f64) -> f64 {
    fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt())
}
