//! The bulk-KTP group-velocity-matched device and its default drive.

use crate::dispersion::{CrystalDatabase, Polarization, PrincipalPlane};
use crate::error::{Error, Result};
use crate::phasematch::{solve_gvm_fixed_angle, InteractionConfig, Scheme};
use crate::propagation::{InputEnergy, Scenario, StepperConfig, DEFAULT_TIME_POINTS};
use crate::spectral::{FieldSpec, Role};

pub const KTP_ID: &str = "ktp_kato2002";
pub const OUTPUT_LAMBDA_UM: f64 = 1.55;
pub const LENGTH_M: f64 = 2.5e-3;
pub const PUMP_FWHM_NM: f64 = 50.0;
pub const INPUT_FWHM_NM: f64 = 1.0;
/// (σ_i, σ_o, σ_p) [m]; input and output beams are half the pump's.
pub const BEAM_SIGMAS: [f64; 3] = [1.5e-6, 1.5e-6, 3.0e-6];
/// m/V
pub const D_EFF: f64 = 3e-12;
pub const CALIBRATION_TARGET: f64 = 0.466;
/// Chirped pump duration of the calibration scenario [s].
pub const CALIBRATION_DURATION_S: f64 = 10e-12;

/// Propagation along X, o/o/e in the XZ plane at θ = 90°, first-order QPM.
pub fn ktp_scheme() -> Scheme {
    Scheme::new(Some(PrincipalPlane::XZ), Polarization::Ordinary, Polarization::Ordinary, Polarization::Extraordinary)
}

/// The QPM device whose input and pump are group-velocity matched for a
/// 1550-nm output.
pub fn ktp_gvm_device(db: &CrystalDatabase) -> Result<InteractionConfig> {
    let ktp = db.get(KTP_ID)?;
    let scheme = ktp_scheme();
    let roots = solve_gvm_fixed_angle(ktp, &scheme, 90.0, OUTPUT_LAMBDA_UM)?;
    let lambda_i = *roots
        .first()
        .ok_or_else(|| Error::NoBracket("no group-velocity match for bulk KTP".into()))?;
    InteractionConfig::new(ktp.clone(), scheme, 90.0, lambda_i, OUTPUT_LAMBDA_UM, LENGTH_M)?.with_qpm(1)
}

/// 50-nm TL pump at the device pump wavelength.
pub fn default_pump(cfg: &InteractionConfig) -> FieldSpec {
    FieldSpec::gaussian(Role::Pump, cfg.lambda_p, PUMP_FWHM_NM).with_beam_sigma(BEAM_SIGMAS[2])
}

/// 1-nm single-photon input at the GVM wavelength.
pub fn default_input(cfg: &InteractionConfig) -> FieldSpec {
    FieldSpec::gaussian(Role::Input, cfg.lambda_i, INPUT_FWHM_NM).with_beam_sigma(BEAM_SIGMAS[0])
}

/// Default propagation scenario with zero pump energy.
pub fn default_scenario(cfg: &InteractionConfig) -> Scenario {
    Scenario {
        device: cfg.clone(),
        input: default_input(cfg),
        pump: default_pump(cfg),
        beam_sigmas: BEAM_SIGMAS,
        d_eff: D_EFF,
        stepper: StepperConfig::default(),
        input_energy: InputEnergy::SinglePhoton,
        min_time_points: DEFAULT_TIME_POINTS,
    }
}
