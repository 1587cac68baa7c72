//! Run configuration. Every section is optional; unknown keys are rejected.
//!
//! Units: wavelengths and bandwidths in nm, lengths in mm, beam radii in µm,
//! GDD in ps², d_eff in pm/V, powers in W, energies in nJ.

use std::path::{Path, PathBuf};

use autohom_core::dispersion::{CrystalDatabase, CRYSTAL_DIR_ENV};
use autohom_core::metrics::VisibilitySource;
use autohom_core::phasematch::{
    solve_carrier_phasematch, solve_gvm_fixed_angle, solve_gvm_operating_point, InteractionConfig, Scheme,
};
use autohom_core::presets;
use autohom_core::propagation::{
    gdd_for_duration, DispersionOrder, InputEnergy, Scenario, StepperConfig, DEFAULT_STEPS, DEFAULT_TIME_POINTS,
};
use autohom_core::spectral::{FieldSpec, Role};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Directory of crystal JSON files; the bundled set when absent.
    pub crystal_dir: Option<PathBuf>,
    pub device: DeviceConfig,
    pub pump: PumpConfig,
    pub input: InputConfig,
    pub coupling: CouplingConfig,
    pub numerics: NumericsConfig,
    pub gvm_search: GvmSearchConfig,
    pub pm_table: PmTableConfig,
    pub propagate: PropagateConfig,
    pub visibility_scan: VisibilityScanConfig,
    pub efficiency_scan: EfficiencyScanConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceConfig {
    pub crystal: String,
    pub scheme: Scheme,
    /// Tuning angle θ (φ in the XY plane). Absent: solved for.
    pub angle_deg: Option<f64>,
    pub lambda_o_nm: f64,
    /// Absent: the group-velocity-matched input wavelength.
    pub lambda_i_nm: Option<f64>,
    pub length_mm: f64,
    /// Odd QPM order; absent for birefringent phase matching.
    pub qpm_order: Option<i32>,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        DeviceConfig {
            crystal: presets::KTP_ID.into(),
            scheme: presets::ktp_scheme(),
            angle_deg: Some(90.0),
            lambda_o_nm: presets::OUTPUT_LAMBDA_UM * 1e3,
            lambda_i_nm: None,
            length_mm: presets::LENGTH_M * 1e3,
            qpm_order: Some(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PumpDrive {
    PeakPowerW(f64),
    EnergyNj(f64),
    /// Peak power at which the input reaches `target_efficiency` with the
    /// pump chirped to `chirped_duration_ps`.
    Calibrate { target_efficiency: f64, chirped_duration_ps: f64 },
}

impl Default for PumpDrive {
    fn default() -> Self {
        PumpDrive::Calibrate {
            target_efficiency: presets::CALIBRATION_TARGET,
            chirped_duration_ps: presets::CALIBRATION_DURATION_S * 1e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PumpConfig {
    pub fwhm_nm: f64,
    pub gdd_ps2: f64,
    pub beam_sigma_um: f64,
    pub drive: PumpDrive,
}

impl Default for PumpConfig {
    fn default() -> Self {
        PumpConfig {
            fwhm_nm: presets::PUMP_FWHM_NM,
            gdd_ps2: 0.0,
            beam_sigma_um: presets::BEAM_SIGMAS[2] * 1e6,
            drive: PumpDrive::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputConfig {
    pub fwhm_nm: f64,
    /// Absent: the device input wavelength.
    pub lambda_nm: Option<f64>,
    pub beam_sigma_um: f64,
    /// Absent: a single photon.
    pub energy_nj: Option<f64>,
}

impl Default for InputConfig {
    fn default() -> Self {
        InputConfig {
            fwhm_nm: presets::INPUT_FWHM_NM,
            lambda_nm: None,
            beam_sigma_um: presets::BEAM_SIGMAS[0] * 1e6,
            energy_nj: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingConfig {
    pub d_eff_pm_per_v: f64,
    pub output_beam_sigma_um: f64,
}

impl Default for CouplingConfig {
    fn default() -> Self {
        CouplingConfig { d_eff_pm_per_v: presets::D_EFF * 1e12, output_beam_sigma_um: presets::BEAM_SIGMAS[1] * 1e6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    pub time_points: usize,
    pub steps: usize,
    pub dispersion: DispersionOrder,
    pub jca_points: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            time_points: DEFAULT_TIME_POINTS,
            steps: DEFAULT_STEPS,
            dispersion: DispersionOrder::Gvd,
            jca_points: autohom_core::jca::DEFAULT_JCA_POINTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GvmSearchConfig {
    pub lambda_o_nm: f64,
    /// Database keys; every crystal when absent.
    pub crystals: Option<Vec<String>>,
}

impl Default for GvmSearchConfig {
    fn default() -> Self {
        GvmSearchConfig { lambda_o_nm: presets::OUTPUT_LAMBDA_UM * 1e3, crystals: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PmTableConfig {
    /// Input wavelengths; every nm from 600 to 1200 when absent.
    pub lambda_i_nm: Option<Sweep>,
}

/// An explicit list, or `n` evenly spaced values from `start` to `stop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Sweep {
    List(Vec<f64>),
    Range { start: f64, stop: f64, n: usize },
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Sweep::List(v) => v.clone(),
            Sweep::Range { n: 0, .. } => Vec::new(),
            Sweep::Range { start, n: 1, .. } => vec![*start],
            Sweep::Range { start, stop, n } => {
                (0..*n).map(|k| start + (stop - start) * k as f64 / (*n - 1) as f64).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagateConfig {
    /// Input carriers; the device input wavelength when absent.
    pub input_lambdas_nm: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VisibilityScanConfig {
    pub source: VisibilitySource,
    /// Offsets from the device input wavelength.
    pub offsets_nm: Sweep,
    pub input_bandwidths_nm: Vec<f64>,
    pub thresholds: Vec<f64>,
}

impl Default for VisibilityScanConfig {
    fn default() -> Self {
        VisibilityScanConfig {
            source: VisibilitySource::FromJcaMap,
            offsets_nm: Sweep::Range { start: -20.0, stop: 20.0, n: 41 },
            input_bandwidths_nm: vec![presets::INPUT_FWHM_NM],
            thresholds: vec![0.9, 0.99],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EfficiencyScanConfig {
    pub gdd_ps2: Sweep,
    pub input_bandwidths_nm: Vec<f64>,
}

impl Default for EfficiencyScanConfig {
    fn default() -> Self {
        EfficiencyScanConfig {
            gdd_ps2: Sweep::Range { start: 0.0, stop: 0.15, n: 13 },
            input_bandwidths_nm: vec![0.1, 1.0, 5.0],
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(RunConfig::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::ConfigInvalid(m));
        let d = &self.device;
        if !(d.length_mm > 0.0) {
            return bad(format!("device.length_mm must be positive, got {}", d.length_mm));
        }
        if let Some(m) = d.qpm_order {
            if m % 2 == 0 {
                return bad(format!("device.qpm_order must be odd, got {m}"));
            }
        }
        if d.qpm_order.is_some() && d.angle_deg.is_none() {
            return bad("device.angle_deg is required with device.qpm_order".into());
        }
        for (name, v) in [
            ("pump.fwhm_nm", self.pump.fwhm_nm),
            ("pump.beam_sigma_um", self.pump.beam_sigma_um),
            ("input.fwhm_nm", self.input.fwhm_nm),
            ("input.beam_sigma_um", self.input.beam_sigma_um),
            ("coupling.d_eff_pm_per_v", self.coupling.d_eff_pm_per_v),
            ("coupling.output_beam_sigma_um", self.coupling.output_beam_sigma_um),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.pump.gdd_ps2 >= 0.0) {
            return bad(format!("pump.gdd_ps2 must be non-negative, got {}", self.pump.gdd_ps2));
        }
        match self.pump.drive {
            PumpDrive::PeakPowerW(p) | PumpDrive::EnergyNj(p) if !(p >= 0.0 && p.is_finite()) => {
                return bad(format!("pump.drive must be non-negative, got {p}"))
            }
            PumpDrive::Calibrate { target_efficiency: t, chirped_duration_ps: d } if !(t > 0.0 && t < 0.99 && d > 0.0) => {
                return bad(format!("pump.drive.calibrate needs 0 < target < 0.99 and a positive duration, got {t}, {d}"))
            }
            _ => {}
        }
        let n = &self.numerics;
        if !n.time_points.is_power_of_two() || n.time_points < 256 {
            return bad(format!("numerics.time_points must be a power of two ≥ 256, got {}", n.time_points));
        }
        if n.steps < autohom_core::propagation::MIN_STEPS {
            return bad(format!("numerics.steps must be ≥ {}, got {}", autohom_core::propagation::MIN_STEPS, n.steps));
        }
        if !n.jca_points.is_power_of_two() || n.jca_points < autohom_core::spectral::MIN_GRID_POINTS {
            return bad(format!("numerics.jca_points must be a power of two ≥ 256, got {}", n.jca_points));
        }
        for (name, s) in [
            ("visibility_scan.offsets_nm", &self.visibility_scan.offsets_nm),
            ("efficiency_scan.gdd_ps2", &self.efficiency_scan.gdd_ps2),
        ] {
            if s.values().iter().any(|v| !v.is_finite()) {
                return bad(format!("{name} must be finite"));
            }
        }
        if self.efficiency_scan.gdd_ps2.values().iter().any(|&g| g < 0.0) {
            return bad("efficiency_scan.gdd_ps2 must be non-negative".into());
        }
        for (name, v) in [
            ("visibility_scan.input_bandwidths_nm", &self.visibility_scan.input_bandwidths_nm),
            ("efficiency_scan.input_bandwidths_nm", &self.efficiency_scan.input_bandwidths_nm),
        ] {
            if v.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
                return bad(format!("{name} must be positive"));
            }
        }
        if self.visibility_scan.thresholds.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
            return bad("visibility_scan.thresholds must lie in (0, 1]".into());
        }
        Ok(())
    }

    /// The crystal set: the environment override, then `crystal_dir`, then
    /// the bundled files.
    pub fn database(&self) -> Result<CrystalDatabase, CliError> {
        let env = std::env::var_os(CRYSTAL_DIR_ENV).filter(|v| !v.is_empty());
        let dir = env.map(PathBuf::from).or_else(|| self.crystal_dir.clone());
        match dir {
            Some(d) => CrystalDatabase::from_dir(&d).map_err(|e| CliError::ConfigInvalid(e.to_string())),
            None => Ok(CrystalDatabase::bundled()),
        }
    }

    pub fn interaction(&self, db: &CrystalDatabase) -> Result<InteractionConfig, CliError> {
        let d = &self.device;
        let crystal = db.get(&d.crystal).map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
        let lo = d.lambda_o_nm * 1e-3;
        let length = d.length_mm * 1e-3;
        let cfg = match (d.angle_deg, d.lambda_i_nm) {
            (None, None) => solve_gvm_operating_point(crystal, &d.scheme, lo)?.config(crystal, length)?,
            (None, Some(li)) => {
                let angle = solve_carrier_phasematch(crystal, &d.scheme, li * 1e-3, lo)?;
                InteractionConfig::new(crystal.clone(), d.scheme, angle, li * 1e-3, lo, length)?
            }
            (Some(angle), li) => {
                let li = match li {
                    Some(li) => li * 1e-3,
                    None => *solve_gvm_fixed_angle(crystal, &d.scheme, angle, lo)?.first().ok_or_else(|| {
                        CliError::ComputeFailed(format!("no group-velocity match at {angle}° for {}", d.crystal))
                    })?,
                };
                InteractionConfig::new(crystal.clone(), d.scheme, angle, li, lo, length)?
            }
        };
        Ok(match d.qpm_order {
            Some(m) => cfg.with_qpm(m)?,
            None => cfg,
        })
    }

    pub fn pump_field(&self, device: &InteractionConfig) -> FieldSpec {
        FieldSpec::gaussian(Role::Pump, device.lambda_p, self.pump.fwhm_nm)
            .with_gdd(self.pump.gdd_ps2 * 1e-24)
            .with_beam_sigma(self.pump.beam_sigma_um * 1e-6)
    }

    pub fn input_field(&self, device: &InteractionConfig) -> FieldSpec {
        let lambda = self.input.lambda_nm.map_or(device.lambda_i, |l| l * 1e-3);
        let f = FieldSpec::gaussian(Role::Input, lambda, self.input.fwhm_nm)
            .with_beam_sigma(self.input.beam_sigma_um * 1e-6);
        match self.input.energy_nj {
            Some(e) => f.with_energy(e * 1e-9),
            None => f,
        }
    }

    /// Scenario with zero pump energy; see [`RunConfig::pump_peak_power`].
    pub fn scenario(&self, device: &InteractionConfig) -> Scenario {
        Scenario {
            device: device.clone(),
            input: self.input_field(device),
            pump: self.pump_field(device),
            beam_sigmas: [
                self.input.beam_sigma_um * 1e-6,
                self.coupling.output_beam_sigma_um * 1e-6,
                self.pump.beam_sigma_um * 1e-6,
            ],
            d_eff: self.coupling.d_eff_pm_per_v * 1e-12,
            stepper: StepperConfig {
                n_steps: self.numerics.steps,
                dispersion: self.numerics.dispersion,
                v_ref_inv: None,
            },
            input_energy: if self.input.energy_nj.is_some() { InputEnergy::FromSpec } else { InputEnergy::SinglePhoton },
            min_time_points: self.numerics.time_points,
        }
    }

    /// Pump peak power [W] for `scenario`'s pump shape.
    pub fn pump_peak_power(&self, scenario: &Scenario) -> Result<f64, CliError> {
        Ok(match self.pump.drive {
            PumpDrive::PeakPowerW(p) => p,
            PumpDrive::EnergyNj(e) => autohom_core::propagation::peak_power_for_energy(&scenario.pump, e * 1e-9),
            PumpDrive::Calibrate { target_efficiency, chirped_duration_ps } => {
                let mut reference = scenario.clone();
                reference.pump.gdd_s2 = gdd_for_duration(&reference.pump, chirped_duration_ps * 1e-12)?;
                autohom_core::propagation::calibrate_pump_peak_power(&reference, target_efficiency)?
            }
        })
    }
}

pub fn default_pm_lambdas_nm() -> Vec<f64> {
    (600..=1200).map(f64::from).collect()
}

/// Schemes written as "XZ o/o/e" or "e/o/e".
pub fn scheme_label(s: &Scheme) -> String {
    match s.plane {
        Some(p) => format!("{p} {}", s.polarization_label()),
        None => s.polarization_label(),
    }
}
