//! Wave-vector mismatch, phase-matching function and group-velocity-matched
//! operating points for collinear difference-frequency generation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{omega_from_um, um_from_omega};
use crate::dispersion::{
    dispersion_at, refractive_index, CarrierDispersion, CrystalModel, DerivativeMethod, OpticalAxisSpec,
    Polarization, PrincipalPlane, Symmetry,
};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::roots::{brent, linspace, sign_changes};

/// Carrier mismatch tolerance [1/m] of the angle solver.
pub const DELTA_K_TOL: f64 = 1.0;
/// Input/pump inverse group velocity tolerance [s/m] of the GVM solver.
pub const GVM_TOL: f64 = 1e-15;
const ANGLE_STEP_DEG: f64 = 1.0;
const LAMBDA_SAMPLES: usize = 200;

/// Polarizations of (input, output, pump) and, for biaxial crystals, the
/// principal plane containing the propagation direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scheme {
    #[serde(default)]
    pub plane: Option<PrincipalPlane>,
    pub input: Polarization,
    pub output: Polarization,
    pub pump: Polarization,
}

impl Scheme {
    pub fn new(plane: Option<PrincipalPlane>, input: Polarization, output: Polarization, pump: Polarization) -> Self {
        Scheme { plane, input, output, pump }
    }

    /// Every polarization triple, times every principal plane for biaxial
    /// crystals.
    pub fn enumerate(symmetry: Symmetry) -> Vec<Scheme> {
        use Polarization::*;
        let planes: Vec<Option<PrincipalPlane>> = match symmetry {
            Symmetry::Uniaxial => vec![None],
            Symmetry::Biaxial => PrincipalPlane::ALL.iter().copied().map(Some).collect(),
        };
        let mut out = Vec::new();
        for plane in planes {
            for i in [Ordinary, Extraordinary] {
                for o in [Ordinary, Extraordinary] {
                    for p in [Ordinary, Extraordinary] {
                        out.push(Scheme::new(plane, i, o, p));
                    }
                }
            }
        }
        out
    }

    /// Axis specs of (input, output, pump) for a tuning angle (θ, or φ in XY).
    pub fn specs(&self, angle_deg: f64) -> [OpticalAxisSpec; 3] {
        let spec = |pol| match self.plane {
            Some(plane) => OpticalAxisSpec::biaxial(pol, plane, angle_deg),
            None => OpticalAxisSpec::uniaxial(pol, angle_deg),
        };
        [spec(self.input), spec(self.output), spec(self.pump)]
    }

    /// Polarization label such as "e/o/e".
    pub fn polarization_label(&self) -> String {
        format!("{}/{}/{}", self.input.short(), self.output.short(), self.pump.short())
    }
}

/// Pump wavelength [µm] fixed by energy conservation, 1/λp = 1/λi − 1/λo.
pub fn pump_wavelength(lambda_i_um: f64, lambda_o_um: f64) -> Result<f64> {
    let inv = 1.0 / lambda_i_um - 1.0 / lambda_o_um;
    if inv > 0.0 && inv.is_finite() {
        Ok(1.0 / inv)
    } else {
        Err(Error::NonpositivePumpFrequency(omega_from_um(lambda_i_um) - omega_from_um(lambda_o_um)))
    }
}

/// Crystal, per-field geometry, carriers and length of one interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionConfig {
    pub crystal: CrystalModel,
    pub input: OpticalAxisSpec,
    pub output: OpticalAxisSpec,
    pub pump: OpticalAxisSpec,
    pub lambda_i: f64,
    pub lambda_o: f64,
    pub lambda_p: f64,
    pub length_m: f64,
    /// Poling period [µm].
    pub poling_period_um: Option<f64>,
    /// Odd grating order m; the grating contributes m·2π/Λ to the mismatch,
    /// so a negative order reverses the grating vector.
    pub qpm_order: Option<i32>,
}

impl InteractionConfig {
    /// Birefringently matched configuration (no grating) with λp from energy
    /// conservation.
    pub fn new(
        crystal: CrystalModel,
        scheme: Scheme,
        angle_deg: f64,
        lambda_i: f64,
        lambda_o: f64,
        length_m: f64,
    ) -> Result<Self> {
        let [input, output, pump] = scheme.specs(angle_deg);
        let cfg = InteractionConfig {
            crystal,
            input,
            output,
            pump,
            lambda_i,
            lambda_o,
            lambda_p: pump_wavelength(lambda_i, lambda_o)?,
            length_m,
            poling_period_um: None,
            qpm_order: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Adds a grating of order |`order`| whose period cancels the carrier
    /// mismatch of the current geometry. The stored order carries the sign
    /// of the mismatch.
    pub fn with_qpm(mut self, order: i32) -> Result<Self> {
        self.poling_period_um = None;
        self.qpm_order = None;
        let dk = material_mismatch(&self, self.omega_i(), self.omega_o())?;
        let period = qpm_period(&self, order)?;
        self.poling_period_um = Some(period);
        self.qpm_order = Some(if dk < 0.0 { -order.abs() } else { order.abs() });
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let sym = self.crystal.symmetry();
        for s in [&self.input, &self.output, &self.pump] {
            s.validate(sym)?;
        }
        let lhs = 1.0 / self.lambda_p;
        let rhs = 1.0 / self.lambda_i - 1.0 / self.lambda_o;
        if !(rhs > 0.0) || ((lhs - rhs) / rhs).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "carriers violate 1/λp = 1/λi − 1/λo: λi={} λo={} λp={}",
                self.lambda_i, self.lambda_o, self.lambda_p
            )));
        }
        if !(self.length_m > 0.0) {
            return Err(Error::InvalidParameter(format!("crystal length must be positive, got {}", self.length_m)));
        }
        if let Some(p) = self.poling_period_um {
            if !(p > 0.0) {
                return Err(Error::InvalidParameter(format!("poling period must be positive, got {p}")));
            }
        }
        if let Some(m) = self.qpm_order {
            if m % 2 == 0 {
                return Err(Error::InvalidParameter(format!("QPM order must be odd, got {m}")));
            }
        }
        Ok(())
    }

    pub fn omega_i(&self) -> f64 {
        omega_from_um(self.lambda_i)
    }

    pub fn omega_o(&self) -> f64 {
        omega_from_um(self.lambda_o)
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_i() - self.omega_o()
    }

    /// Grating wave vector m·2π/Λ [1/m], zero without poling.
    pub fn grating_k(&self) -> f64 {
        match self.poling_period_um {
            Some(p) => self.qpm_order.unwrap_or(1) as f64 * 2.0 * PI / (p * 1e-6),
            None => 0.0,
        }
    }

    /// Dispersion of (input, output, pump) at the carriers.
    pub fn carrier_dispersion(&self) -> Result<[CarrierDispersion; 3]> {
        let m = &self.crystal;
        let a = DerivativeMethod::Analytic;
        Ok([
            dispersion_at(m, &self.input, self.lambda_i, a)?,
            dispersion_at(m, &self.output, self.lambda_o, a)?,
            dispersion_at(m, &self.pump, self.lambda_p, a)?,
        ])
    }
}

fn k_of(model: &CrystalModel, spec: &OpticalAxisSpec, omega: f64) -> Result<f64> {
    let l = um_from_omega(omega);
    Ok(refractive_index(model, spec, l)? * omega / crate::constants::C)
}

fn material_mismatch(cfg: &InteractionConfig, omega_i: f64, omega_o: f64) -> Result<f64> {
    let omega_p = omega_i - omega_o;
    if !(omega_p > 0.0) {
        return Err(Error::NonpositivePumpFrequency(omega_p));
    }
    let m = &cfg.crystal;
    Ok(k_of(m, &cfg.input, omega_i)? - k_of(m, &cfg.output, omega_o)? - k_of(m, &cfg.pump, omega_p)?)
}

/// Δk = k_i(ω_i) − k_o(ω_o) − k_p(ω_i − ω_o) − m·2π/Λ [1/m], exact dispersion.
pub fn delta_k(cfg: &InteractionConfig, omega_i: f64, omega_o: f64) -> Result<f64> {
    Ok(material_mismatch(cfg, omega_i, omega_o)? - cfg.grating_k())
}

/// Carrier mismatch Δk₀.
pub fn delta_k0(cfg: &InteractionConfig) -> Result<f64> {
    delta_k(cfg, cfg.omega_i(), cfg.omega_o())
}

/// First-order expansion Δk₀ + (v_i⁻¹ − v_p⁻¹)Ω_i + (v_p⁻¹ − v_o⁻¹)Ω_o.
pub fn delta_k_linearized(cfg: &InteractionConfig, big_omega_i: f64, big_omega_o: f64) -> Result<f64> {
    let [i, o, p] = cfg.carrier_dispersion()?;
    Ok(delta_k0(cfg)? + (i.v_inv - p.v_inv) * big_omega_i + (p.v_inv - o.v_inv) * big_omega_o)
}

/// sin(x)/x with the removable singularity filled.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Phase-matching function sinc(ΔkL/2); its normalization is left to the
/// joint amplitude.
pub fn pmf(cfg: &InteractionConfig, omega_i: f64, omega_o: f64) -> Result<Complex64> {
    let dk = delta_k(cfg, omega_i, omega_o)?;
    Ok(Complex64::new(sinc(dk * cfg.length_m / 2.0), 0.0))
}

/// Orientation [deg] of the PMF ridge in the (ω_i, ω_o) plane, in (−90, 90].
pub fn pmf_angle(cfg: &InteractionConfig) -> Result<f64> {
    let [i, o, p] = cfg.carrier_dispersion()?;
    pmf_angle_from(i.v_inv, o.v_inv, p.v_inv)
}

pub fn pmf_angle_from(v_inv_i: f64, v_inv_o: f64, v_inv_p: f64) -> Result<f64> {
    let num = v_inv_i - v_inv_p;
    let den = v_inv_p - v_inv_o;
    if den.abs() < 1e-18 {
        return Err(Error::DegenerateDenominator(den.abs()));
    }
    let mut a = num.atan2(den).to_degrees();
    if a > 90.0 {
        a -= 180.0;
    } else if a <= -90.0 {
        a += 180.0;
    }
    Ok(a)
}

/// Grating period [µm] of odd order `order` that cancels the carrier mismatch
/// of `cfg`'s geometry: Λ = |m|·2π/|k_i − k_o − k_p|.
pub fn qpm_period(cfg: &InteractionConfig, order: i32) -> Result<f64> {
    if order % 2 == 0 {
        return Err(Error::InvalidParameter(format!("QPM order must be odd, got {order}")));
    }
    let dk = material_mismatch(cfg, cfg.omega_i(), cfg.omega_o())?;
    let period_m = order.abs() as f64 * 2.0 * PI / dk.abs();
    if !(period_m > 0.0) || !period_m.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "order {order} cannot cancel a carrier mismatch of {dk} 1/m"
        )));
    }
    Ok(period_m * 1e6)
}

fn carrier_mismatch(crystal: &CrystalModel, scheme: &Scheme, angle: f64, li: f64, lo: f64, lp: f64) -> Result<f64> {
    let [si, so, sp] = scheme.specs(angle);
    let k = |s: &OpticalAxisSpec, l: f64| -> Result<f64> { Ok(2.0 * PI * refractive_index(crystal, s, l)? / (l * 1e-6)) };
    Ok(k(&si, li)? - k(&so, lo)? - k(&sp, lp)?)
}

/// Every tuning angle in [0°, 90°] where the carrier mismatch vanishes,
/// ascending.
pub fn phasematch_angles(crystal: &CrystalModel, scheme: &Scheme, lambda_i: f64, lambda_o: f64) -> Result<Vec<f64>> {
    let lp = pump_wavelength(lambda_i, lambda_o)?;
    for l in [lambda_i, lambda_o, lp] {
        crystal.check_lambda(l, false)?;
    }
    let f = |a: f64| carrier_mismatch(crystal, scheme, a, lambda_i, lambda_o, lp);
    let n = (90.0 / ANGLE_STEP_DEG).round() as usize + 1;
    let grid = linspace(0.0, 90.0, n);
    let mut roots = Vec::new();
    for (a, b) in sign_changes(&grid, |x| f(x).ok()) {
        let r = if a == b { a } else { brent(f, a, b, 1e-13, 200)? };
        if f(r)?.abs() < DELTA_K_TOL && roots.last().is_none_or(|&x: &f64| (r - x).abs() > 1e-9) {
            roots.push(r);
        }
    }
    Ok(roots)
}

/// Lowest tuning angle [deg] at which the carriers phase-match.
pub fn solve_carrier_phasematch(crystal: &CrystalModel, scheme: &Scheme, lambda_i: f64, lambda_o: f64) -> Result<f64> {
    phasematch_angles(crystal, scheme, lambda_i, lambda_o)?.first().copied().ok_or_else(|| {
        Error::NoBracket(format!(
            "{} {} {}: no phase-matching angle for λi={lambda_i} µm, λo={lambda_o} µm",
            crystal.label(),
            scheme.plane.map(|p| p.to_string()).unwrap_or_default(),
            scheme.polarization_label()
        ))
    })
}

/// A phase-matched, input/pump group-velocity-matched operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GvmSolution {
    pub crystal: String,
    pub lambda_i: f64,
    pub lambda_o: f64,
    pub lambda_p: f64,
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub scheme: Scheme,
    /// Δk₀ [1/m]
    pub delta_k0: f64,
    /// v_i⁻¹ − v_p⁻¹ [s/m]
    pub delta_v_inv: f64,
}

impl GvmSolution {
    pub fn config(&self, crystal: &CrystalModel, length_m: f64) -> Result<InteractionConfig> {
        let angle = match self.scheme.plane {
            Some(PrincipalPlane::XY) => self.phi_deg,
            _ => self.theta_deg,
        };
        InteractionConfig::new(crystal.clone(), self.scheme, angle, self.lambda_i, self.lambda_o, length_m)
    }
}

fn gvm_residual(crystal: &CrystalModel, scheme: &Scheme, li: f64, lo: f64) -> Result<(f64, f64)> {
    let angle = solve_carrier_phasematch(crystal, scheme, li, lo)?;
    let lp = pump_wavelength(li, lo)?;
    let [si, _, sp] = scheme.specs(angle);
    let a = DerivativeMethod::Analytic;
    let vi = dispersion_at(crystal, &si, li, a)?.v_inv;
    let vp = dispersion_at(crystal, &sp, lp, a)?.v_inv;
    Ok((vi - vp, angle))
}

/// Input wavelengths [µm] for which input, output and pump all lie strictly
/// inside the model's validity range.
fn input_search_range(crystal: &CrystalModel, lambda_o: f64) -> Result<(f64, f64)> {
    let (lo, hi) = crystal.validity();
    let margin = 1e-4;
    crystal.check_lambda(lambda_o, true)?;
    let a = lo + margin;
    let b = (1.0 / (1.0 / (hi - margin) + 1.0 / lambda_o)).min(lambda_o - margin);
    if !(b > a) {
        return Err(Error::NoBracket(format!("{}: no admissible input wavelengths", crystal.label())));
    }
    Ok((a, b))
}

/// All GVM operating points of one scheme at output wavelength `lambda_o`,
/// ordered by input wavelength.
pub fn solve_gvm_operating_points(crystal: &CrystalModel, scheme: &Scheme, lambda_o: f64) -> Result<Vec<GvmSolution>> {
    let (a, b) = input_search_range(crystal, lambda_o)?;
    let grid = linspace(a, b, LAMBDA_SAMPLES);
    let residual = |li: f64| gvm_residual(crystal, scheme, li, lambda_o).map(|r| r.0);
    let brackets = sign_changes(&grid, |li| residual(li).ok());
    let mut out = Vec::new();
    for (x0, x1) in brackets {
        let li = if x0 == x1 {
            x0
        } else {
            match brent(residual, x0, x1, 1e-13, 200) {
                Ok(li) => li,
                Err(_) => continue,
            }
        };
        let Ok((dv, angle)) = gvm_residual(crystal, scheme, li, lambda_o) else { continue };
        // a sign change across a jump between angle branches is not a root
        if dv.abs() >= GVM_TOL {
            continue;
        }
        let cfg = InteractionConfig::new(crystal.clone(), *scheme, angle, li, lambda_o, 1.0)?;
        let [si, ..] = scheme.specs(angle);
        out.push(GvmSolution {
            crystal: crystal.label(),
            lambda_i: li,
            lambda_o,
            lambda_p: cfg.lambda_p,
            theta_deg: si.theta_deg,
            phi_deg: si.phi_deg,
            scheme: *scheme,
            delta_k0: delta_k0(&cfg)?,
            delta_v_inv: dv,
        });
    }
    Ok(out)
}

/// First GVM operating point of one scheme (lowest input wavelength).
pub fn solve_gvm_operating_point(crystal: &CrystalModel, scheme: &Scheme, lambda_o: f64) -> Result<GvmSolution> {
    solve_gvm_operating_points(crystal, scheme, lambda_o)?.into_iter().next().ok_or_else(|| {
        Error::NoBracket(format!(
            "{} {} {}: no group-velocity-matched point for λo={lambda_o} µm",
            crystal.label(),
            scheme.plane.map(|p| p.to_string()).unwrap_or_default(),
            scheme.polarization_label()
        ))
    })
}

/// Input wavelengths [µm] at which input and pump group velocities match for
/// a fixed direction, as used with quasi-phase matching where the grating
/// rather than the angle cancels Δk₀. Ascending.
pub fn solve_gvm_fixed_angle(crystal: &CrystalModel, scheme: &Scheme, angle_deg: f64, lambda_o: f64) -> Result<Vec<f64>> {
    let (a, b) = input_search_range(crystal, lambda_o)?;
    let [si, _, sp] = scheme.specs(angle_deg);
    let residual = |li: f64| -> Result<f64> {
        let lp = pump_wavelength(li, lambda_o)?;
        let d = DerivativeMethod::Analytic;
        Ok(dispersion_at(crystal, &si, li, d)?.v_inv - dispersion_at(crystal, &sp, lp, d)?.v_inv)
    };
    let grid = linspace(a, b, LAMBDA_SAMPLES);
    let mut out = Vec::new();
    for (x0, x1) in sign_changes(&grid, |l| residual(l).ok()) {
        let li = if x0 == x1 { x0 } else { brent(residual, x0, x1, 1e-13, 200)? };
        if residual(li)?.abs() < GVM_TOL {
            out.push(li);
        }
    }
    Ok(out)
}

/// Outcome of one (crystal, scheme) combination of a table search.
#[derive(Debug, Clone, PartialEq)]
pub struct GvmTableEntry {
    pub crystal_id: String,
    pub scheme: Scheme,
    pub outcome: Result<Vec<GvmSolution>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GvmTable {
    pub entries: Vec<GvmTableEntry>,
}

impl GvmTable {
    /// Converged solutions in enumeration order.
    pub fn rows(&self) -> Vec<&GvmSolution> {
        self.entries.iter().filter_map(|e| e.outcome.as_ref().ok()).flatten().collect()
    }
}

/// Searches every scheme of every crystal for GVM points at `lambda_o`.
pub fn gvm_table(lambda_o: f64, crystals: &[(&str, &CrystalModel)]) -> GvmTable {
    gvm_table_with(Execution::default(), lambda_o, crystals)
}

pub fn gvm_table_with(exec: Execution, lambda_o: f64, crystals: &[(&str, &CrystalModel)]) -> GvmTable {
    let jobs: Vec<(&str, &CrystalModel, Scheme)> = crystals
        .iter()
        .flat_map(|&(id, m)| Scheme::enumerate(m.symmetry()).into_iter().map(move |s| (id, m, s)))
        .collect();
    let entries = par::map(exec, &jobs, |&(id, m, scheme)| GvmTableEntry {
        crystal_id: id.to_string(),
        scheme,
        outcome: solve_gvm_operating_points(m, &scheme, lambda_o),
    });
    GvmTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::CrystalDatabase;
    use Polarization::*;

    fn db() -> CrystalDatabase {
        CrystalDatabase::bundled()
    }

    #[test]
    fn pump_wavelength_from_energy_conservation() {
        let lp = pump_wavelength(0.745, 1.55).unwrap();
        assert!((1.0 / lp - (1.0 / 0.745 - 1.0 / 1.55)).abs() < 1e-15);
        assert!(matches!(pump_wavelength(1.6, 1.55), Err(Error::NonpositivePumpFrequency(_))));
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-16);
        assert!((sinc(1e-9) - 1.0).abs() < 1e-16);
        assert!((sinc(0.5) - 0.5f64.sin() / 0.5).abs() < 1e-16);
    }

    #[test]
    fn pmf_angle_special_cases() {
        assert_eq!(pmf_angle_from(2.0, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(pmf_angle_from(2.0, 3.0, 2.0).unwrap(), 0.0);
        assert!((pmf_angle_from(3.0, 1.0, 2.0).unwrap() - 45.0).abs() < 1e-12);
        assert!(matches!(pmf_angle_from(3.0, 2.0, 2.0), Err(Error::DegenerateDenominator(_))));
        let a = pmf_angle_from(1.0, 3.0, 2.0).unwrap();
        assert!(a > -90.0 && a <= 90.0);
    }

    #[test]
    fn delta_k_recomposes_from_indices() {
        let db = db();
        let bbo = db.get("bbo_tamosauskas2018").unwrap();
        let scheme = Scheme::new(None, Extraordinary, Ordinary, Extraordinary);
        let cfg = InteractionConfig::new(bbo.clone(), scheme, 26.7, 0.908, 1.55, 2.5e-3).unwrap();
        let k = |s, l: f64| 2.0 * PI * refractive_index(bbo, s, l).unwrap() / (l * 1e-6);
        let hand = k(&cfg.input, 0.908) - k(&cfg.output, 1.55) - k(&cfg.pump, cfg.lambda_p);
        let dk = delta_k0(&cfg).unwrap();
        assert!((dk - hand).abs() <= 1e-9 * hand.abs().max(1.0));
    }

    #[test]
    fn qpm_period_cancels_mismatch() {
        let db = db();
        let ktp = db.get("ktp_kato2002").unwrap();
        let scheme = Scheme::new(Some(PrincipalPlane::XZ), Ordinary, Ordinary, Extraordinary);
        let cfg = InteractionConfig::new(ktp.clone(), scheme, 90.0, 0.545, 1.55, 2.5e-3).unwrap().with_qpm(1).unwrap();
        assert!(delta_k0(&cfg).unwrap().abs() < 1e-6);
        assert!(cfg.poling_period_um.unwrap() > 0.0);
        assert_eq!(cfg.qpm_order, Some(-1));
        assert!(qpm_period(&cfg, 2).is_err());
    }

    #[test]
    fn config_rejects_bad_inputs() {
        let ktp = db().get("ktp_kato2002").unwrap().clone();
        let s = Scheme::new(Some(PrincipalPlane::XZ), Ordinary, Ordinary, Extraordinary);
        assert!(InteractionConfig::new(ktp.clone(), s, 90.0, 0.545, 1.55, 0.0).is_err());
        assert!(InteractionConfig::new(ktp.clone(), s, 90.0, 1.7, 1.55, 1e-3).is_err());
        let mut cfg = InteractionConfig::new(ktp, s, 90.0, 0.545, 1.55, 1e-3).unwrap();
        cfg.lambda_p *= 1.0 + 1e-6;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn uniaxial_ooo_has_no_angle() {
        let db = db();
        let bbo = db.get("bbo_tamosauskas2018").unwrap();
        let s = Scheme::new(None, Ordinary, Ordinary, Ordinary);
        assert!(matches!(solve_carrier_phasematch(bbo, &s, 0.9, 1.55), Err(Error::NoBracket(_))));
    }

    #[test]
    fn scheme_enumeration_sizes() {
        assert_eq!(Scheme::enumerate(Symmetry::Uniaxial).len(), 8);
        assert_eq!(Scheme::enumerate(Symmetry::Biaxial).len(), 24);
    }

    #[test]
    fn empty_table() {
        assert!(gvm_table(1.55, &[]).rows().is_empty());
    }
}
