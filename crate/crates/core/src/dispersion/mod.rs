//! Refractive, group and group-velocity-dispersion indices of crystals.

mod crystal;
mod database;
mod sellmeier;

pub use crystal::{AxisDispersion, Axes, CrystalModel, OpticalAxisSpec, Polarization, PrincipalPlane, Symmetry};
pub use database::{CrystalDatabase, CRYSTAL_DIR_ENV};
pub use sellmeier::{CubicSpline, IndexJet, SellmeierForm, Variant};

use crate::constants::C;
use crate::error::Result;

/// Central-difference step [µm] of the finite-difference derivative path.
pub const FD_STEP_UM: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMethod {
    #[default]
    Analytic,
    FiniteDifference,
}

/// Index, group index, inverse group velocity [s/m] and GVD [s²/m] at one
/// wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierDispersion {
    pub n: f64,
    pub group_index: f64,
    pub v_inv: f64,
    pub gvd: f64,
}

fn combine(model: &CrystalModel, spec: &OpticalAxisSpec, jets: &[IndexJet]) -> IndexJet {
    use Polarization::*;
    let theta = spec.theta_deg.to_radians();
    match (&model.axes, spec.polarization) {
        (Axes::Uniaxial { .. }, Ordinary) => jets[0],
        (Axes::Uniaxial { .. }, Extraordinary) => IndexJet::ellipse(jets[0], jets[1], theta),
        (Axes::Biaxial { .. }, pol) => {
            let [x, y, z] = [jets[0], jets[1], jets[2]];
            let (o, a, b, angle) = match spec.principal_plane.unwrap_or(PrincipalPlane::XZ) {
                PrincipalPlane::XZ => (y, x, z, theta),
                PrincipalPlane::YZ => (x, y, z, theta),
                PrincipalPlane::XY => (z, y, x, spec.phi_deg.to_radians()),
            };
            match pol {
                Ordinary => o,
                Extraordinary => IndexJet::ellipse(a, b, angle),
            }
        }
    }
}

/// Index and wavelength derivatives for a polarization and direction,
/// derivatives taken analytically from the dispersion formula.
pub fn index_jet(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<IndexJet> {
    spec.validate(model.symmetry())?;
    model.check_lambda(lambda_um, false)?;
    Ok(combine(model, spec, &model.axis_jets(lambda_um)))
}

/// As [`index_jet`] but with derivatives from central differences of the index
/// with step [`FD_STEP_UM`].
pub fn index_jet_fd(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<IndexJet> {
    let h = FD_STEP_UM;
    model.check_lambda(lambda_um - h, false)?;
    model.check_lambda(lambda_um + h, false)?;
    let n0 = refractive_index(model, spec, lambda_um)?;
    let nm = refractive_index(model, spec, lambda_um - h)?;
    let np = refractive_index(model, spec, lambda_um + h)?;
    Ok(IndexJet { n: n0, dn: (np - nm) / (2.0 * h), d2n: (np - 2.0 * n0 + nm) / (h * h) })
}

pub fn refractive_index(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<f64> {
    Ok(index_jet(model, spec, lambda_um)?.n)
}

pub fn dispersion_at(
    model: &CrystalModel,
    spec: &OpticalAxisSpec,
    lambda_um: f64,
    method: DerivativeMethod,
) -> Result<CarrierDispersion> {
    model.check_lambda(lambda_um, true)?;
    let j = match method {
        DerivativeMethod::Analytic => index_jet(model, spec, lambda_um)?,
        DerivativeMethod::FiniteDifference => index_jet_fd(model, spec, lambda_um)?,
    };
    let group_index = j.n - lambda_um * j.dn;
    let lambda_m = lambda_um * 1e-6;
    let gvd = lambda_m.powi(3) / (2.0 * std::f64::consts::PI * C * C) * j.d2n * 1e12;
    Ok(CarrierDispersion { n: j.n, group_index, v_inv: group_index / C, gvd })
}

pub fn group_index(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<f64> {
    Ok(dispersion_at(model, spec, lambda_um, DerivativeMethod::Analytic)?.group_index)
}

/// Inverse group velocity [s/m].
pub fn group_velocity_inverse(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<f64> {
    Ok(dispersion_at(model, spec, lambda_um, DerivativeMethod::Analytic)?.v_inv)
}

/// Group-velocity dispersion d²k/dω² [s²/m].
pub fn gvd(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<f64> {
    Ok(dispersion_at(model, spec, lambda_um, DerivativeMethod::Analytic)?.gvd)
}

/// Wavenumber n·ω/c [1/m].
pub fn wavenumber(model: &CrystalModel, spec: &OpticalAxisSpec, lambda_um: f64) -> Result<f64> {
    Ok(2.0 * std::f64::consts::PI * refractive_index(model, spec, lambda_um)? / (lambda_um * 1e-6))
}
