//! Split-step Fourier propagation of the three coupled DFG envelopes.
//!
//! Envelopes are in √W with Σ|A|²dt equal to the pulse energy. Spectra use
//! the e^{−iωt} convention: a forward FFT sample at frequency ν holds the
//! component at relative angular frequency Ω = −2πν.

use std::f64::consts::{LN_2, PI};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::constants::{um_from_omega, C, EPSILON_0, HBAR};
use crate::dispersion::dispersion_at;
use crate::dispersion::DerivativeMethod;
use crate::error::{Error, Result};
use crate::jca::beam_overlap;
use crate::par::{self, Execution};
use crate::phasematch::{delta_k, InteractionConfig};
use crate::roots::bisect_predicate;
use crate::spectral::FieldSpec;

pub const DEFAULT_TIME_POINTS: usize = 1 << 14;
pub const DEFAULT_STEPS: usize = 256;
pub const MIN_STEPS: usize = 100;
const MIN_WINDOW: f64 = 40e-12;
const WINDOW_PER_DURATION: f64 = 8.0;
const SAMPLES_PER_PERIOD: f64 = 8.0;

/// Uniform time grid t_k = (k − N/2)·dt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub n_points: usize,
    pub dt: f64,
}

impl TimeGrid {
    pub fn new(n_points: usize, window: f64) -> Result<Self> {
        if !n_points.is_power_of_two() || n_points < 2 {
            return Err(Error::InvalidParameter(format!("time grid size must be a power of two, got {n_points}")));
        }
        if !(window > 0.0) {
            return Err(Error::InvalidParameter(format!("time window must be positive, got {window}")));
        }
        Ok(TimeGrid { n_points, dt: window / n_points as f64 })
    }

    /// Default grid for a run: window max(8× chirped pump, 8× input, 40 ps),
    /// at least `min_points` samples and more if needed to resolve the
    /// widest bandwidth.
    pub fn for_fields(input: &FieldSpec, pump: &FieldSpec, min_points: usize) -> Result<Self> {
        let window = (WINDOW_PER_DURATION * pump.chirped_duration())
            .max(WINDOW_PER_DURATION * input.chirped_duration())
            .max(MIN_WINDOW);
        let dt_max = 2.0 * PI / (SAMPLES_PER_PERIOD * widest_bandwidth(input, pump));
        let needed = (window / dt_max).ceil() as usize;
        TimeGrid::new(needed.max(min_points).next_power_of_two(), window)
    }

    pub fn window(&self) -> f64 {
        self.dt * self.n_points as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        (k as f64 - (self.n_points / 2) as f64) * self.dt
    }

    /// Relative angular frequency Ω of each FFT bin.
    pub fn omega_axis(&self) -> Vec<f64> {
        let n = self.n_points as i64;
        (0..n)
            .map(|k| {
                let m = if k < (n + 1) / 2 { k } else { k - n };
                -2.0 * PI * m as f64 / (n as f64 * self.dt)
            })
            .collect()
    }

    pub fn check(&self, input: &FieldSpec, pump: &FieldSpec) -> Result<()> {
        let longest = pump.chirped_duration().max(input.chirped_duration());
        if self.window() < 4.0 * longest {
            return Err(Error::WindowTooSmall(format!(
                "window {:.3e} s is below 4× the longest pulse {:.3e} s",
                self.window(),
                longest
            )));
        }
        let dt_max = 2.0 * PI / (SAMPLES_PER_PERIOD * widest_bandwidth(input, pump));
        if self.dt > dt_max {
            return Err(Error::WindowTooSmall(format!(
                "time step {:.3e} s does not resolve the bandwidth (need ≤ {:.3e} s)",
                self.dt, dt_max
            )));
        }
        Ok(())
    }

    pub fn energy(&self, a: &[Complex64]) -> f64 {
        a.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dt
    }
}

fn widest_bandwidth(input: &FieldSpec, pump: &FieldSpec) -> f64 {
    input.omega_fwhm().max(pump.omega_fwhm())
}

/// Carrier angular frequencies with ω̄_p = ω̄_i − ω̄_o.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Carriers {
    pub omega_i: f64,
    pub omega_o: f64,
    pub omega_p: f64,
}

impl Carriers {
    /// Input and pump fixed; output by energy conservation.
    pub fn from_input_pump(omega_i: f64, omega_p: f64) -> Result<Self> {
        let omega_o = omega_i - omega_p;
        if !(omega_o > 0.0) || !(omega_p > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "input carrier {omega_i:e} must exceed pump carrier {omega_p:e} rad/s"
            )));
        }
        Ok(Carriers { omega_i, omega_o, omega_p })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.omega_i, self.omega_o, self.omega_p]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseState {
    pub grid: TimeGrid,
    pub a_i: Vec<Complex64>,
    pub a_o: Vec<Complex64>,
    pub a_p: Vec<Complex64>,
    pub carriers: Carriers,
    pub z: f64,
}

impl PulseState {
    /// Photon numbers (N_i, N_o, N_p).
    pub fn photon_numbers(&self) -> [f64; 3] {
        let w = self.carriers.as_array();
        let e = [self.grid.energy(&self.a_i), self.grid.energy(&self.a_o), self.grid.energy(&self.a_p)];
        [e[0] / (HBAR * w[0]), e[1] / (HBAR * w[1]), e[2] / (HBAR * w[2])]
    }

    fn fields_mut(&mut self) -> [&mut Vec<Complex64>; 3] {
        [&mut self.a_i, &mut self.a_o, &mut self.a_p]
    }
}

/// Whether the input pulse carries exactly one photon's energy ħω̄_i or the
/// energy in its FieldSpec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputEnergy {
    #[default]
    SinglePhoton,
    FromSpec,
}

fn gaussian_pulse(grid: &TimeGrid, fft: &Arc<dyn Fft<f64>>, omega: &[f64], field: &FieldSpec, energy: f64) -> Vec<Complex64> {
    let sigma = crate::constants::sigma_from_fwhm(field.omega_fwhm());
    let mut spec: Vec<Complex64> = omega
        .iter()
        .map(|&w| Complex64::from_polar((-w * w / (4.0 * sigma * sigma)).exp(), 0.5 * field.gdd_s2 * w * w))
        .collect();
    fft.process(&mut spec);
    let n = grid.n_points;
    spec.rotate_right(n / 2);
    let e = grid.energy(&spec);
    let scale = if e > 0.0 { (energy / e).sqrt() } else { 0.0 };
    spec.iter_mut().for_each(|z| *z *= scale);
    spec
}

/// Transform-limited Gaussian input and pump centred at t = 0, each chirped by
/// its GDD, with zero output field.
pub fn init_fields(input: &FieldSpec, pump: &FieldSpec, grid: TimeGrid, input_energy: InputEnergy) -> Result<PulseState> {
    input.validate()?;
    pump.validate()?;
    if input.shape != crate::spectral::Shape::Gaussian || pump.shape != crate::spectral::Shape::Gaussian {
        return Err(Error::UnsupportedShape("propagation supports Gaussian fields only".into()));
    }
    grid.check(input, pump)?;
    let carriers = Carriers::from_input_pump(input.omega0(), pump.omega0())?;
    let e_i = match input_energy {
        InputEnergy::SinglePhoton => HBAR * carriers.omega_i,
        InputEnergy::FromSpec => input.energy_j,
    };
    let inverse = FftPlanner::new().plan_fft_inverse(grid.n_points);
    let omega = grid.omega_axis();
    Ok(PulseState {
        grid,
        a_i: gaussian_pulse(&grid, &inverse, &omega, input, e_i),
        a_o: vec![Complex64::new(0.0, 0.0); grid.n_points],
        a_p: gaussian_pulse(&grid, &inverse, &omega, pump, pump.energy_j),
        carriers,
        z: 0.0,
    })
}

/// Pulse energy [J] of a Gaussian with peak power `peak_w` and the field's
/// chirped duration.
pub fn energy_for_peak_power(field: &FieldSpec, peak_w: f64) -> f64 {
    peak_w * field.chirped_duration() * (PI / (4.0 * LN_2)).sqrt()
}

pub fn peak_power_for_energy(field: &FieldSpec, energy_j: f64) -> f64 {
    energy_j / (field.chirped_duration() * (PI / (4.0 * LN_2)).sqrt())
}

/// Group delay and GVD of each field and the nonlinear couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledModeParams {
    /// Inverse group velocities (v_i⁻¹, v_o⁻¹, v_p⁻¹) [s/m].
    pub beta1: [f64; 3],
    /// GVD [s²/m].
    pub beta2: [f64; 3],
    /// γ_i, γ_o, γ_p [1/(m·√W)].
    pub gamma: [f64; 3],
    /// Carrier mismatch including the grating [1/m].
    pub delta_k0: f64,
    pub length_m: f64,
}

impl CoupledModeParams {
    /// Parameters of `cfg`'s crystal and grating at the given carriers.
    /// γ_j = ω̄_j·d_eff·√(2/(ε₀c³n_in_on_p))·√(2/π)·overlap(σ).
    pub fn from_config(cfg: &InteractionConfig, carriers: &Carriers, d_eff: f64, sigmas: [f64; 3]) -> Result<Self> {
        let specs = [&cfg.input, &cfg.output, &cfg.pump];
        let w = carriers.as_array();
        let mut n = [0.0; 3];
        let mut beta1 = [0.0; 3];
        let mut beta2 = [0.0; 3];
        for j in 0..3 {
            let d = dispersion_at(&cfg.crystal, specs[j], um_from_omega(w[j]), DerivativeMethod::Analytic)?;
            n[j] = d.n;
            beta1[j] = d.v_inv;
            beta2[j] = d.gvd;
        }
        if sigmas.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::InvalidParameter("beam radii must be positive".into()));
        }
        let overlap = (2.0 / PI).sqrt() * beam_overlap(sigmas);
        let kappa = d_eff * (2.0 / (EPSILON_0 * C.powi(3) * n[0] * n[1] * n[2])).sqrt() * overlap;
        Ok(CoupledModeParams {
            beta1,
            beta2,
            gamma: [kappa * w[0], kappa * w[1], kappa * w[2]],
            delta_k0: delta_k(cfg, carriers.omega_i, carriers.omega_o)?,
            length_m: cfg.length_m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DispersionOrder {
    GroupDelay,
    #[default]
    Gvd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepperConfig {
    pub n_steps: usize,
    #[serde(default)]
    pub dispersion: DispersionOrder,
    /// Inverse velocity [s/m] of the co-moving frame; the input's when absent.
    #[serde(default)]
    pub v_ref_inv: Option<f64>,
}

impl Default for StepperConfig {
    fn default() -> Self {
        StepperConfig { n_steps: DEFAULT_STEPS, dispersion: DispersionOrder::Gvd, v_ref_inv: None }
    }
}

/// Photon-number bookkeeping along a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// (z, N_i, N_o, N_p) after each step, starting with z = 0.
    pub photon_numbers: Vec<[f64; 4]>,
    /// max over z of |ΔN_o + ΔN_i|/N_i(0)
    pub manley_rowe_output: f64,
    /// max over z of |ΔN_p + ΔN_i|/max(N_p(0), N_i(0))
    pub manley_rowe_pump: f64,
}

impl Diagnostics {
    pub fn max_manley_rowe(&self) -> f64 {
        self.manley_rowe_output.max(self.manley_rowe_pump)
    }
}

/// Symmetrized split-step integrator: half linear step, RK4 nonlinear step,
/// half linear step.
pub struct Propagator {
    params: CoupledModeParams,
    n_steps: usize,
    dz: f64,
    half_linear: [Vec<Complex64>; 3],
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Propagator {
    pub fn new(params: CoupledModeParams, stepper: &StepperConfig, grid: &TimeGrid) -> Result<Self> {
        if stepper.n_steps < MIN_STEPS {
            return Err(Error::InvalidParameter(format!("need at least {MIN_STEPS} steps, got {}", stepper.n_steps)));
        }
        if !(params.length_m > 0.0) {
            return Err(Error::InvalidParameter("crystal length must be positive".into()));
        }
        let dz = params.length_m / stepper.n_steps as f64;
        let v_ref = stepper.v_ref_inv.unwrap_or(params.beta1[0]);
        let omega = grid.omega_axis();
        let gvd_on = stepper.dispersion == DispersionOrder::Gvd;
        let n = grid.n_points as f64;
        let half_linear = std::array::from_fn(|j| {
            let (b1, b2) = (params.beta1[j] - v_ref, if gvd_on { params.beta2[j] } else { 0.0 });
            omega
                .iter()
                // the 1/N of the inverse transform is folded in here
                .map(|&w| Complex64::from_polar(1.0 / n, (b1 * w + 0.5 * b2 * w * w) * 0.5 * dz))
                .collect()
        });
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid.n_points);
        let inverse = planner.plan_fft_inverse(grid.n_points);
        let scratch_len = forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len());
        Ok(Propagator {
            params,
            n_steps: stepper.n_steps,
            dz,
            half_linear,
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        })
    }

    pub fn params(&self) -> &CoupledModeParams {
        &self.params
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    fn linear_half(&mut self, state: &mut PulseState) {
        let (fwd, inv) = (self.forward.clone(), self.inverse.clone());
        for (field, op) in state.fields_mut().into_iter().zip(&self.half_linear) {
            fwd.process_with_scratch(field, &mut self.scratch);
            field.iter_mut().zip(op).for_each(|(a, d)| *a *= d);
            inv.process_with_scratch(field, &mut self.scratch);
        }
    }

    fn nonlinear(&self, state: &mut PulseState) {
        let [gi, go, gp] = self.params.gamma;
        if gi == 0.0 && go == 0.0 && gp == 0.0 {
            return;
        }
        let dk = self.params.delta_k0;
        let h = self.dz;
        let z0 = state.z;
        let i = Complex64::i();
        let rhs = |z: f64, a: [Complex64; 3]| -> [Complex64; 3] {
            let ph = Complex64::from_polar(1.0, dk * z);
            [
                i * gi * a[1] * a[2] * ph.conj(),
                i * go * a[0] * a[2].conj() * ph,
                i * gp * a[0] * a[1].conj() * ph,
            ]
        };
        let add = |a: [Complex64; 3], k: [Complex64; 3], s: f64| [a[0] + k[0] * s, a[1] + k[1] * s, a[2] + k[2] * s];
        for idx in 0..state.grid.n_points {
            let a = [state.a_i[idx], state.a_o[idx], state.a_p[idx]];
            let k1 = rhs(z0, a);
            let k2 = rhs(z0 + 0.5 * h, add(a, k1, 0.5 * h));
            let k3 = rhs(z0 + 0.5 * h, add(a, k2, 0.5 * h));
            let k4 = rhs(z0 + h, add(a, k3, h));
            let next: [Complex64; 3] =
                std::array::from_fn(|j| a[j] + (k1[j] + k2[j] * 2.0 + k3[j] * 2.0 + k4[j]) * (h / 6.0));
            state.a_i[idx] = next[0];
            state.a_o[idx] = next[1];
            state.a_p[idx] = next[2];
        }
    }

    /// Advances `state` by one step Δz = L/n_steps.
    pub fn step(&mut self, state: &mut PulseState) -> Result<()> {
        if state.z + self.dz > self.params.length_m * (1.0 + 1e-9) {
            return Err(Error::InvalidParameter(format!("step would pass the crystal end at z = {}", state.z)));
        }
        self.linear_half(state);
        self.nonlinear(state);
        self.linear_half(state);
        state.z += self.dz;
        Ok(())
    }

    /// Runs all steps from z = 0.
    pub fn propagate(&mut self, mut state: PulseState) -> Result<(PulseState, Diagnostics)> {
        if state.z != 0.0 {
            return Err(Error::InvalidParameter("propagation must start at z = 0".into()));
        }
        let n0 = state.photon_numbers();
        let mut record = Vec::with_capacity(self.n_steps + 1);
        record.push([0.0, n0[0], n0[1], n0[2]]);
        let (mut mr_o, mut mr_p) = (0.0_f64, 0.0_f64);
        for k in 0..self.n_steps {
            self.step(&mut state)?;
            if k + 1 == self.n_steps {
                state.z = self.params.length_m;
            }
            let n = state.photon_numbers();
            record.push([state.z, n[0], n[1], n[2]]);
            if n0[0] > 0.0 {
                let d_i = n[0] - n0[0];
                mr_o = mr_o.max(((n[1] - n0[1]) + d_i).abs() / n0[0]);
                mr_p = mr_p.max(((n[2] - n0[2]) + d_i).abs() / n0[2].max(n0[0]));
            }
            if n.iter().any(|x| !x.is_finite()) {
                return Err(Error::NumericalFailure(format!("field diverged at z = {}", state.z)));
            }
        }
        Ok((state, Diagnostics { photon_numbers: record, manley_rowe_output: mr_o, manley_rowe_pump: mr_p }))
    }
}

/// One-call propagation through the device described by `cfg`.
pub fn propagate(state: PulseState, stepper: &StepperConfig, params: CoupledModeParams) -> Result<(PulseState, Diagnostics)> {
    let mut p = Propagator::new(params, stepper, &state.grid)?;
    p.propagate(state)
}

/// Photon-number conversion efficiency N_o(final)/N_i(initial).
pub fn conversion_efficiency(initial: &PulseState, final_state: &PulseState) -> Result<f64> {
    if initial.grid != final_state.grid {
        return Err(Error::GridMismatch("initial and final states use different time grids".into()));
    }
    let n_i = initial.photon_numbers()[0];
    if !(n_i > 0.0) {
        return Err(Error::ZeroInput);
    }
    Ok(final_state.photon_numbers()[1] / n_i)
}

/// Output spectral intensity on an ascending frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Absolute angular frequency [rad/s], ascending.
    pub omega: Vec<f64>,
    /// |Ã(Ω)|²·dt² (so that Σ intensity·Δω/2π equals the pulse energy).
    pub intensity: Vec<f64>,
}

impl Spectrum {
    pub fn wavelength_nm(&self) -> Vec<f64> {
        self.omega.iter().map(|&w| if w > 0.0 { um_from_omega(w) * 1e3 } else { f64::INFINITY }).collect()
    }

    /// Intensity scaled to a unit maximum.
    pub fn normalized(&self) -> Vec<f64> {
        let max = self.intensity.iter().copied().fold(0.0, f64::max);
        self.intensity.iter().map(|x| if max > 0.0 { x / max } else { 0.0 }).collect()
    }

    pub fn step(&self) -> f64 {
        if self.omega.len() > 1 {
            self.omega[1] - self.omega[0]
        } else {
            0.0
        }
    }
}

/// Spectrum of an envelope with carrier `omega0`.
pub fn envelope_spectrum(grid: &TimeGrid, a: &[Complex64], omega0: f64) -> Spectrum {
    let mut buf = a.to_vec();
    FftPlanner::new().plan_fft_forward(grid.n_points).process(&mut buf);
    let omega = grid.omega_axis();
    let mut pairs: Vec<(f64, f64)> =
        omega.iter().zip(&buf).map(|(&w, z)| (omega0 + w, z.norm_sqr() * grid.dt * grid.dt)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Spectrum { omega: pairs.iter().map(|p| p.0).collect(), intensity: pairs.iter().map(|p| p.1).collect() }
}

/// |FFT(A_o)|² about the output carrier.
pub fn output_spectrum(state: &PulseState) -> Spectrum {
    envelope_spectrum(&state.grid, &state.a_o, state.carriers.omega_o)
}

/// A complete propagation scenario: device, fields and numerics.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub device: InteractionConfig,
    pub input: FieldSpec,
    pub pump: FieldSpec,
    /// (σ_i, σ_o, σ_p) [m]
    pub beam_sigmas: [f64; 3],
    pub d_eff: f64,
    pub stepper: StepperConfig,
    pub input_energy: InputEnergy,
    pub min_time_points: usize,
}

/// Result of one scenario run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub initial: PulseState,
    pub state: PulseState,
    pub diagnostics: Diagnostics,
    pub efficiency: f64,
}

impl Scenario {
    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::for_fields(&self.input, &self.pump, self.min_time_points)
    }

    pub fn params(&self, carriers: &Carriers) -> Result<CoupledModeParams> {
        CoupledModeParams::from_config(&self.device, carriers, self.d_eff, self.beam_sigmas)
    }

    pub fn run(&self) -> Result<RunResult> {
        let grid = self.grid()?;
        let initial = init_fields(&self.input, &self.pump, grid, self.input_energy)?;
        let params = self.params(&initial.carriers)?;
        let (state, diagnostics) = propagate(initial.clone(), &self.stepper, params)?;
        let efficiency = conversion_efficiency(&initial, &state)?;
        Ok(RunResult { initial, state, diagnostics, efficiency })
    }

    /// The same scenario with the pump energy set for a peak power.
    pub fn with_peak_power(&self, peak_w: f64) -> Scenario {
        let mut s = self.clone();
        s.pump.energy_j = energy_for_peak_power(&s.pump, peak_w);
        s
    }
}

/// Pump peak power [W] at which `reference` first reaches `target`
/// efficiency, found by geometric bracketing then bisection to 1e-5
/// relative in power. The returned power is reused across scans; the
/// reference scenario's pump energy follows from [`energy_for_peak_power`].
pub fn calibrate_pump_peak_power(reference: &Scenario, target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 0.99) {
        return Err(Error::InvalidParameter(format!("target efficiency must lie in (0, 0.99), got {target}")));
    }
    let eff = |p: f64| -> Result<f64> { Ok(reference.with_peak_power(p).run()?.efficiency) };
    // start from the small-signal estimate η ≈ a·P
    let p0 = 1.0;
    let e0 = eff(p0)?;
    let mut lo = if e0 > 0.0 && e0 < target { p0 } else { 1e-12 };
    let mut hi = if e0 > 0.0 { (target / e0).max(1.0) * p0 } else { 1e3 };
    let mut found = false;
    for _ in 0..80 {
        if eff(hi)? >= target {
            found = true;
            break;
        }
        lo = hi;
        hi *= 1.25;
    }
    if !found {
        return Err(Error::NotBracketed(format!("efficiency {target} not reached up to peak power {hi:e} W")));
    }
    bisect_predicate(|p| Ok(eff(p)? >= target), lo, hi, hi * 1e-5)
}

/// One point of an η-vs-GDD scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyPoint {
    pub input_bandwidth_nm: f64,
    pub gdd_s2: f64,
    pub efficiency: f64,
    pub manley_rowe: f64,
}

/// Efficiency over input bandwidths × pump GDDs at a fixed pump peak power
/// and bandwidth. Rows are ordered by bandwidth, then GDD.
pub fn efficiency_scan(
    base: &Scenario,
    bandwidths_nm: &[f64],
    gdds_s2: &[f64],
    peak_w: f64,
    exec: Execution,
) -> Result<Vec<EfficiencyPoint>> {
    let cases: Vec<(f64, f64)> =
        bandwidths_nm.iter().flat_map(|&b| gdds_s2.iter().map(move |&g| (b, g))).collect();
    par::map(exec, &cases, |&(bw, gdd)| {
        let mut s = base.clone();
        s.input.fwhm_nm = bw;
        s.pump.gdd_s2 = gdd;
        let r = s.with_peak_power(peak_w).run()?;
        Ok(EfficiencyPoint {
            input_bandwidth_nm: bw,
            gdd_s2: gdd,
            efficiency: r.efficiency,
            manley_rowe: r.diagnostics.max_manley_rowe(),
        })
    })
    .into_iter()
    .collect()
}

/// Pump GDD [s²] that stretches `pump` to an intensity FWHM of `duration_s`.
pub fn gdd_for_duration(pump: &FieldSpec, duration_s: f64) -> Result<f64> {
    let tau0 = pump.tl_duration();
    if !(duration_s >= tau0) {
        return Err(Error::InvalidParameter(format!(
            "duration {duration_s:e} s is shorter than the transform limit {tau0:e} s"
        )));
    }
    Ok(((duration_s / tau0).powi(2) - 1.0).sqrt() * tau0 * tau0 / (4.0 * LN_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Role;

    #[test]
    fn omega_axis_matches_fft_convention() {
        let g = TimeGrid::new(8, 8.0).unwrap();
        let w = g.omega_axis();
        assert_eq!(w[0], 0.0);
        assert!((w[1] + 2.0 * PI / 8.0).abs() < 1e-15);
        assert!((w[7] - 2.0 * PI / 8.0).abs() < 1e-15);
        assert_eq!(g.time(4), 0.0);
    }

    #[test]
    fn peak_power_round_trip() {
        let p = FieldSpec::gaussian(Role::Pump, 0.84, 50.0).with_gdd(7e-26);
        let e = energy_for_peak_power(&p, 123.0);
        assert!((peak_power_for_energy(&p, e) - 123.0).abs() < 1e-12);
    }

    #[test]
    fn carriers_require_ordering() {
        assert!(Carriers::from_input_pump(2.0, 3.0).is_err());
        let c = Carriers::from_input_pump(3.0, 1.0).unwrap();
        assert_eq!(c.omega_o, 2.0);
    }

    #[test]
    fn default_grid_covers_chirped_pump() {
        let input = FieldSpec::gaussian(Role::Input, 0.545, 1.0);
        let pump = FieldSpec::gaussian(Role::Pump, 0.84, 50.0).with_gdd(7.5e-26);
        let g = TimeGrid::for_fields(&input, &pump, DEFAULT_TIME_POINTS).unwrap();
        assert!(g.window() >= 8.0 * pump.chirped_duration());
        assert!(g.check(&input, &pump).is_ok());
        let small = TimeGrid::new(1 << 10, 1e-12).unwrap();
        assert!(matches!(small.check(&input, &pump), Err(Error::WindowTooSmall(_))));
    }
}
