//! Field descriptions, spectral amplitudes and uniform frequency grids.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{omega_from_um, omega_fwhm_from_nm, sigma_from_fwhm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
    Pump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    #[default]
    Gaussian,
    /// Spectral intensity samples given as (wavelength nm, intensity) pairs.
    Tabulated,
}

/// Spectral description of one field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub role: Role,
    /// Carrier wavelength [µm].
    pub lambda0_um: f64,
    /// FWHM of the spectral intensity [nm].
    pub fwhm_nm: f64,
    #[serde(default)]
    pub shape: Shape,
    /// Group-delay dispersion [s²].
    #[serde(default)]
    pub gdd_s2: f64,
    /// Pulse energy [J].
    #[serde(default)]
    pub energy_j: f64,
    /// Standard-deviation beam radius [m].
    #[serde(default)]
    pub beam_sigma_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<[f64; 2]>>,
}

impl FieldSpec {
    pub fn gaussian(role: Role, lambda0_um: f64, fwhm_nm: f64) -> Self {
        FieldSpec {
            role,
            lambda0_um,
            fwhm_nm,
            shape: Shape::Gaussian,
            gdd_s2: 0.0,
            energy_j: 0.0,
            beam_sigma_m: 0.0,
            table: None,
        }
    }

    pub fn with_gdd(mut self, gdd_s2: f64) -> Self {
        self.gdd_s2 = gdd_s2;
        self
    }

    pub fn with_energy(mut self, energy_j: f64) -> Self {
        self.energy_j = energy_j;
        self
    }

    pub fn with_beam_sigma(mut self, sigma_m: f64) -> Self {
        self.beam_sigma_m = sigma_m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fwhm_nm > 0.0) {
            return Err(Error::InvalidParameter(format!("fwhm_nm must be positive, got {}", self.fwhm_nm)));
        }
        if !(self.lambda0_um > 0.0) || 0.5 * self.fwhm_nm * 1e-3 >= self.lambda0_um {
            return Err(Error::InvalidParameter(format!(
                "carrier {} µm incompatible with {} nm bandwidth",
                self.lambda0_um, self.fwhm_nm
            )));
        }
        if !(self.energy_j >= 0.0) || !self.energy_j.is_finite() {
            return Err(Error::InvalidParameter(format!("energy must be ≥ 0, got {}", self.energy_j)));
        }
        if !(self.beam_sigma_m >= 0.0) || !self.gdd_s2.is_finite() {
            return Err(Error::InvalidParameter("beam radius must be ≥ 0 and GDD finite".into()));
        }
        if self.shape == Shape::Tabulated && self.table.as_ref().is_none_or(|t| t.len() < 2) {
            return Err(Error::UnsupportedShape("tabulated shape needs at least two table rows".into()));
        }
        Ok(())
    }

    pub fn omega0(&self) -> f64 {
        omega_from_um(self.lambda0_um)
    }

    /// FWHM of the spectral intensity in angular frequency [rad/s].
    pub fn omega_fwhm(&self) -> f64 {
        omega_fwhm_from_nm(self.lambda0_um, self.fwhm_nm)
    }

    /// Transform-limited intensity FWHM [s] of a Gaussian with this bandwidth.
    pub fn tl_duration(&self) -> f64 {
        4.0 * std::f64::consts::LN_2 / self.omega_fwhm()
    }

    /// Intensity FWHM [s] after the field's GDD is applied.
    pub fn chirped_duration(&self) -> f64 {
        let t0 = self.tl_duration();
        let r = 4.0 * std::f64::consts::LN_2 * self.gdd_s2 / (t0 * t0);
        t0 * (1.0 + r * r).sqrt()
    }
}

/// Unit-L2-norm spectral amplitude (∫|s|²dω = 1) with the GDD phase
/// exp(i·gdd·Ω²/2), Ω = ω − ω̄.
#[derive(Debug, Clone)]
pub struct SpectralAmplitude {
    center: f64,
    gdd: f64,
    kind: AmplitudeKind,
}

#[derive(Debug, Clone)]
enum AmplitudeKind {
    Gaussian { sigma: f64, scale: f64 },
    /// ascending ω with normalized intensity
    Table { omega: Vec<f64>, intensity: Vec<f64> },
}

impl SpectralAmplitude {
    pub fn new(field: &FieldSpec) -> Result<Self> {
        field.validate()?;
        let center = field.omega0();
        let kind = match field.shape {
            Shape::Gaussian => {
                let sigma = sigma_from_fwhm(field.omega_fwhm());
                AmplitudeKind::Gaussian { sigma, scale: (2.0 * PI * sigma * sigma).powf(-0.25) }
            }
            Shape::Tabulated => {
                let table = field.table.as_deref().unwrap_or_default();
                let mut pts: Vec<(f64, f64)> =
                    table.iter().map(|&[nm, i]| (omega_from_um(nm * 1e-3), i.max(0.0))).collect();
                pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                if pts.windows(2).any(|w| w[1].0 <= w[0].0) || pts.iter().any(|p| !p.0.is_finite()) {
                    return Err(Error::UnsupportedShape("table wavelengths must be distinct and positive".into()));
                }
                let area: f64 = pts.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum();
                if !(area > 0.0) {
                    return Err(Error::UnsupportedShape("tabulated intensity integrates to zero".into()));
                }
                AmplitudeKind::Table {
                    omega: pts.iter().map(|p| p.0).collect(),
                    intensity: pts.iter().map(|p| p.1 / area).collect(),
                }
            }
        };
        Ok(SpectralAmplitude { center, gdd: field.gdd_s2, kind })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn eval(&self, omega: f64) -> Complex64 {
        let d = omega - self.center;
        let magnitude = match &self.kind {
            AmplitudeKind::Gaussian { sigma, scale } => scale * (-d * d / (4.0 * sigma * sigma)).exp(),
            AmplitudeKind::Table { omega: w, intensity } => {
                if omega < w[0] || omega > w[w.len() - 1] {
                    0.0
                } else {
                    let k = w.partition_point(|&x| x <= omega).clamp(1, w.len() - 1);
                    let t = (omega - w[k - 1]) / (w[k] - w[k - 1]);
                    ((1.0 - t) * intensity[k - 1] + t * intensity[k]).sqrt()
                }
            }
        };
        if self.gdd == 0.0 {
            Complex64::new(magnitude, 0.0)
        } else {
            Complex64::from_polar(magnitude, 0.5 * self.gdd * d * d)
        }
    }
}

/// Spectral amplitude of the pump at angular frequency `omega_p`.
pub fn pump_spectral_amplitude(pump: &FieldSpec, omega_p: f64) -> Result<Complex64> {
    Ok(SpectralAmplitude::new(pump)?.eval(omega_p))
}

/// Uniform angular-frequency grid of `n_points` samples spanning
/// [center − span/2, center + span/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub center: f64,
    pub span: f64,
    pub n_points: usize,
}

pub const MIN_GRID_POINTS: usize = 256;

impl SpectralGrid {
    pub fn new(center: f64, span: f64, n_points: usize) -> Result<Self> {
        if !n_points.is_power_of_two() || n_points < MIN_GRID_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid size must be a power of two ≥ {MIN_GRID_POINTS}, got {n_points}"
            )));
        }
        if !(span > 0.0) || !center.is_finite() {
            return Err(Error::InvalidParameter(format!("grid span must be positive, got {span}")));
        }
        Ok(SpectralGrid { center, span, n_points })
    }

    pub fn step(&self) -> f64 {
        self.span / (self.n_points - 1) as f64
    }

    pub fn value(&self, k: usize) -> f64 {
        self.center - 0.5 * self.span + k as f64 * self.step()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.value(k)).collect()
    }

    /// Errors unless the span is at least four times `width`.
    pub fn check_covers(&self, width: f64, what: &str) -> Result<()> {
        if self.span < 4.0 * width {
            Err(Error::GridTooCoarse(format!(
                "span {:.4e} rad/s is below 4× the {what} width {:.4e} rad/s",
                self.span, width
            )))
        } else {
            Ok(())
        }
    }

    /// Samples a spectral amplitude on the grid.
    pub fn sample(&self, amp: &SpectralAmplitude) -> Vec<Complex64> {
        (0..self.n_points).map(|k| amp.eval(self.value(k))).collect()
    }

    /// Σ|a|²Δω
    pub fn norm_sqr(&self, a: &[Complex64]) -> f64 {
        a.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.step()
    }

    /// Σ a*·b·Δω
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() * self.step()
    }
}
