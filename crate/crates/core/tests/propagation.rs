use std::f64::consts::{LN_2, PI};

use autohom_core::constants::HBAR;
use autohom_core::dispersion::CrystalDatabase;
use autohom_core::presets;
use autohom_core::propagation::*;
use autohom_core::spectral::{FieldSpec, Role};
use autohom_core::Error;
use num_complex::Complex64;
use rustfft::FftPlanner;

fn fwhm(xs: &[f64], ys: &[f64]) -> f64 {
    let max = ys.iter().copied().fold(0.0, f64::max);
    let half = 0.5 * max;
    let k = ys.iter().position(|&y| y == max).unwrap();
    let mut lo = k;
    while ys[lo] > half {
        lo -= 1;
    }
    let mut hi = k;
    while ys[hi] > half {
        hi += 1;
    }
    let left = xs[lo] + (half - ys[lo]) * (xs[lo + 1] - xs[lo]) / (ys[lo + 1] - ys[lo]);
    let right = xs[hi - 1] + (half - ys[hi - 1]) * (xs[hi] - xs[hi - 1]) / (ys[hi] - ys[hi - 1]);
    right - left
}

fn cw_state(n: usize, a_i: f64, a_p: f64) -> PulseState {
    let c = |v: f64| vec![Complex64::new(v, 0.0); n];
    PulseState {
        grid: TimeGrid::new(n, 1e-12).unwrap(),
        a_i: c(a_i),
        a_o: c(0.0),
        a_p: c(a_p),
        carriers: Carriers::from_input_pump(3.4e15, 2.2e15).unwrap(),
        z: 0.0,
    }
}

fn cw_params(gamma: [f64; 3], delta_k0: f64, length_m: f64) -> CoupledModeParams {
    CoupledModeParams { beta1: [0.0; 3], beta2: [0.0; 3], gamma, delta_k0, length_m }
}

/// |A_o|²/|A_i0|² for an undepleted pump: (γ_o/γ_i)·g²/g'²·sin²(g'z),
/// g = √(γ_iγ_o)|A_p|, g'² = g² + Δk²/4.
fn cw_oracle(gamma: [f64; 3], a_p: f64, dk: f64, z: f64) -> f64 {
    let g2 = gamma[0] * gamma[1] * a_p * a_p;
    let gp = (g2 + 0.25 * dk * dk).sqrt();
    gamma[1] / gamma[0] * g2 / (gp * gp) * (gp * z).sin().powi(2)
}

#[test]
fn cw_undepleted_conversion_follows_closed_form() {
    // γ_j ∝ ω̄_j of cw_state's carriers
    let gamma: [f64; 3] = [3.4, 1.2, 2.2];
    let (a_i, a_p): (f64, f64) = (1e-4, 1.0);
    let g = (gamma[0] * gamma[1]).sqrt() * a_p;
    for dk in [0.0, 1.5 * g] {
        // one and a half Rabi periods
        let length = 1.5 * PI / g;
        let stepper = StepperConfig { n_steps: 400, ..StepperConfig::default() };
        let (_, diag) = propagate(cw_state(4, a_i, a_p), &stepper, cw_params(gamma, dk, length)).unwrap();
        let w = cw_state(4, a_i, a_p).carriers;
        let scale = gamma[1] / gamma[0];
        for row in &diag.photon_numbers {
            let z = row[0];
            let a_o_sq = row[2] * HBAR * w.omega_o / 1e-12;
            let oracle = cw_oracle(gamma, a_p, dk, z) * a_i * a_i;
            assert!((a_o_sq - oracle).abs() < 1e-4 * scale * a_i * a_i, "dk {dk} z {z}: {a_o_sq} vs {oracle}");
        }
        // RK4 does not conserve the quadratic invariant exactly: O((g·dz)⁴) per unit length
        assert!(diag.max_manley_rowe() < 1e-6, "{}", diag.max_manley_rowe());
    }
}

#[test]
fn linear_run_equals_dispersion_applied_once() {
    let input = FieldSpec::gaussian(Role::Input, 0.565, 5.0).with_gdd(2e-27);
    let pump = FieldSpec::gaussian(Role::Pump, 0.85, 20.0).with_energy(1e-9);
    let grid = TimeGrid::for_fields(&input, &pump, 1 << 12).unwrap();
    let state = init_fields(&input, &pump, grid, InputEnergy::SinglePhoton).unwrap();
    let params = CoupledModeParams {
        beta1: [5.6e-9, 5.0e-9, 5.7e-9],
        beta2: [3e-25, 1e-25, 2e-25],
        gamma: [0.0; 3],
        delta_k0: 10.0,
        length_m: 3e-3,
    };
    let stepper = StepperConfig { n_steps: 128, ..StepperConfig::default() };
    let (out, diag) = propagate(state.clone(), &stepper, params).unwrap();
    let n = grid.n_points;
    let omega = grid.omega_axis();
    let mut planner = FftPlanner::new();
    let (fwd, inv) = (planner.plan_fft_forward(n), planner.plan_fft_inverse(n));
    let once = |a: &[Complex64], j: usize| -> Vec<Complex64> {
        let mut b = a.to_vec();
        fwd.process(&mut b);
        for (z, w) in b.iter_mut().zip(&omega) {
            let phase = ((params.beta1[j] - params.beta1[0]) * w + 0.5 * params.beta2[j] * w * w) * params.length_m;
            *z *= Complex64::from_polar(1.0 / n as f64, phase);
        }
        inv.process(&mut b);
        b
    };
    for (j, (a0, a1)) in [(&state.a_i, &out.a_i), (&state.a_p, &out.a_p)].into_iter().enumerate() {
        let j = if j == 0 { 0 } else { 2 };
        let expect = once(a0, j);
        let err: f64 = expect.iter().zip(a1.iter()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        let norm: f64 = expect.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        assert!(err / norm < 1e-12, "field {j}: {}", err / norm);
    }
    let e0 = [grid.energy(&state.a_i), grid.energy(&state.a_p)];
    assert!((grid.energy(&out.a_i) / e0[0] - 1.0).abs() < 1e-12);
    assert!((grid.energy(&out.a_p) / e0[1] - 1.0).abs() < 1e-12);
    assert!(out.a_o.iter().all(|z| z.norm() == 0.0));
    assert_eq!(diag.photon_numbers.len(), 129);
}

#[test]
fn envelopes_do_not_depend_on_the_frame() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let mut s = presets::default_scenario(&cfg).with_peak_power(3e3);
    s.min_time_points = 1 << 13;
    s.stepper.n_steps = 128;
    let grid = s.grid().unwrap();
    let state = init_fields(&s.input, &s.pump, grid, s.input_energy).unwrap();
    let params = s.params(&state.carriers).unwrap();
    let shift = 40;
    let v_ref = params.beta1[0];
    let moved = StepperConfig { v_ref_inv: Some(v_ref + shift as f64 * grid.dt / params.length_m), ..s.stepper };
    let (a, da) = propagate(state.clone(), &s.stepper, params).unwrap();
    let (b, _) = propagate(state, &moved, params).unwrap();
    assert!(da.efficiency_sanity());
    for (x, y) in [(&a.a_i, &b.a_i), (&a.a_o, &b.a_o), (&a.a_p, &b.a_p)] {
        let peak = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let n = x.len();
        for k in 0..n {
            // a slower frame sees the pulses earlier
            let diff = (x[k].norm() - y[(k + n - shift) % n].norm()).abs();
            assert!(diff < 1e-8 * peak, "{k}: {diff} {peak}");
        }
    }
}

trait Sanity {
    fn efficiency_sanity(&self) -> bool;
}

impl Sanity for Diagnostics {
    fn efficiency_sanity(&self) -> bool {
        let last = self.photon_numbers.last().unwrap();
        last[2] > 1e-4 && self.max_manley_rowe() < 1e-3
    }
}

#[test]
fn initial_pulses_have_requested_energy_and_duration() {
    let input = FieldSpec::gaussian(Role::Input, 0.565, 1.0);
    let pump = FieldSpec::gaussian(Role::Pump, 0.89, 50.0).with_energy(2e-10);
    let grid = TimeGrid::new(1 << 16, 40e-12).unwrap();
    let s = init_fields(&input, &pump, grid, InputEnergy::SinglePhoton).unwrap();
    let e_i = HBAR * s.carriers.omega_i;
    assert!((grid.energy(&s.a_i) / e_i - 1.0).abs() < 1e-12);
    assert!((grid.energy(&s.a_p) / 2e-10 - 1.0).abs() < 1e-12);
    let t: Vec<f64> = (0..grid.n_points).map(|k| grid.time(k)).collect();
    let ii: Vec<f64> = s.a_i.iter().map(|z| z.norm_sqr()).collect();
    let ip: Vec<f64> = s.a_p.iter().map(|z| z.norm_sqr()).collect();
    let (ti, tp) = (fwhm(&t, &ii), fwhm(&t, &ip));
    assert!((ti - 0.47e-12).abs() < 0.02e-12, "{ti}");
    // 50 nm at 0.89 µm: 4ln2·λ²/(2πcΔλ) = 23.3 fs
    assert!((tp - 23.3e-15).abs() < 0.2e-15, "{tp}");
    assert!((ti / input.tl_duration() - 1.0).abs() < 1e-3);

    let chirped = pump.clone().with_gdd(gdd_for_duration(&pump, 2e-12).unwrap());
    let s = init_fields(&input, &chirped, grid, InputEnergy::SinglePhoton).unwrap();
    let ip: Vec<f64> = s.a_p.iter().map(|z| z.norm_sqr()).collect();
    assert!((fwhm(&t, &ip) / 2e-12 - 1.0).abs() < 1e-3);
    // peak power of a Gaussian: E·√(4ln2/π)/τ
    let peak = ip.iter().copied().fold(0.0, f64::max);
    assert!((peak / peak_power_for_energy(&chirped, 2e-10) - 1.0).abs() < 1e-4);
}

#[test]
fn spectrum_obeys_parseval_and_time_bandwidth() {
    let input = FieldSpec::gaussian(Role::Input, 0.565, 2.0).with_energy(1e-12);
    let pump = FieldSpec::gaussian(Role::Pump, 0.85, 20.0);
    let grid = TimeGrid::new(1 << 14, 20e-12).unwrap();
    let s = init_fields(&input, &pump, grid, InputEnergy::FromSpec).unwrap();
    let spec = envelope_spectrum(&grid, &s.a_i, s.carriers.omega_i);
    let e_spec: f64 = spec.intensity.iter().sum::<f64>() * spec.step() / (2.0 * PI);
    assert!((e_spec / 1e-12 - 1.0).abs() < 1e-10, "{e_spec}");
    let t: Vec<f64> = (0..grid.n_points).map(|k| grid.time(k)).collect();
    let it: Vec<f64> = s.a_i.iter().map(|z| z.norm_sqr()).collect();
    let nu: Vec<f64> = spec.omega.iter().map(|w| w / (2.0 * PI)).collect();
    let tbp = fwhm(&t, &it) * fwhm(&nu, &spec.intensity);
    assert!((tbp - 2.0 * LN_2 / PI).abs() < 1e-3, "{tbp}");
    let wl = spec.wavelength_nm();
    let k = spec.intensity.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!((wl[k] - 565.0).abs() < 0.01);
}

#[test]
fn invalid_runs_are_reported() {
    let input = FieldSpec::gaussian(Role::Input, 0.565, 1.0);
    let pump = FieldSpec::gaussian(Role::Pump, 0.85, 50.0).with_gdd(1e-25);
    let small = TimeGrid::new(1 << 12, 5e-12).unwrap();
    assert!(matches!(init_fields(&input, &pump, small, InputEnergy::SinglePhoton), Err(Error::WindowTooSmall(_))));
    let grid = TimeGrid::new(1 << 12, 8e-12).unwrap();
    let zero = init_fields(&input.clone().with_energy(0.0), &FieldSpec::gaussian(Role::Pump, 0.85, 5.0), grid, InputEnergy::FromSpec)
        .unwrap();
    assert_eq!(conversion_efficiency(&zero, &zero), Err(Error::ZeroInput));
    let s = cw_state(4, 1.0, 1.0);
    let params = cw_params([0.0; 3], 0.0, 1e-3);
    let mut p = Propagator::new(params, &StepperConfig { n_steps: 100, ..StepperConfig::default() }, &s.grid).unwrap();
    let mut st = s.clone();
    for _ in 0..100 {
        p.step(&mut st).unwrap();
    }
    assert!(p.step(&mut st).is_err());
    assert_eq!(conversion_efficiency(&s, &st).unwrap(), 0.0);
    assert!(Propagator::new(params, &StepperConfig { n_steps: 10, ..StepperConfig::default() }, &s.grid).is_err());
}

#[test]
fn calibrated_power_scales_as_inverse_length_squared() {
    // long narrowband pulses approach the CW small-gain limit η ∝ P·L²
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let mut base = presets::default_scenario(&cfg);
    base.pump.fwhm_nm = 0.1;
    base.input.fwhm_nm = 0.1;
    base.stepper.n_steps = 100;
    base.min_time_points = 1 << 12;
    base.device.length_m = 1e-3;
    let p1 = calibrate_pump_peak_power(&base, 1e-3).unwrap();
    let e1 = base.with_peak_power(p1).run().unwrap().efficiency;
    assert!((e1 / 1e-3 - 1.0).abs() < 0.01);
    let mut long = base.clone();
    long.device.length_m = 2e-3;
    let p2 = calibrate_pump_peak_power(&long, 1e-3).unwrap();
    assert!((p2 / p1 - 0.25).abs() < 0.01, "{}", p2 / p1);
    let lower = calibrate_pump_peak_power(&base, 1e-4).unwrap();
    assert!(lower < p1);
    assert!(calibrate_pump_peak_power(&base, 1.5).is_err());
}
