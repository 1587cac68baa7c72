//! Interferometric visibility of output fields and homogenization bandwidth.
//!
//! Γ(τ) = Σ E₁*(t)E₂(t+τ)dt is evaluated through the frequency-domain
//! product, and V = 2·max_τ|Γ(τ)|/(‖E₁‖² + ‖E₂‖²) is the fringe visibility
//! of the interferogram ∫|E₁(t) + E₂(t+τ)|²dt.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jca::{apply_jca_map, build_jca_with, default_grids, DEFAULT_JCA_POINTS};
use crate::par::{self, Execution};
use crate::phasematch::InteractionConfig;
use crate::propagation::{Scenario, Spectrum, TimeGrid};
use crate::spectral::{FieldSpec, SpectralAmplitude, SpectralGrid};

/// Points in the per-carrier input grid of a JCA-map scan.
pub const SCAN_INPUT_POINTS: usize = 256;
/// Half-span of that grid in input ω-FWHM.
pub const SCAN_INPUT_HALF_SPAN: f64 = 4.0;
const SPECTRAL_PAD: usize = 8;

/// Time-domain envelope with its carrier angular frequency.
#[derive(Debug, Clone, Copy)]
pub struct Envelope<'a> {
    pub samples: &'a [Complex64],
    pub carrier: f64,
}

fn energy(samples: &[Complex64], step: f64) -> f64 {
    samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * step
}

/// Γ(τ_k) on the lags τ_k = (k − N/2)·dt of `grid`, with the
/// carrier-difference phase included. The full fields are E_j = A_j e^{−iω̄_j t}.
pub fn cross_correlation_envelope(grid: &TimeGrid, e1: Envelope, e2: Envelope) -> Result<Vec<Complex64>> {
    let n = grid.n_points;
    if e1.samples.len() != n || e2.samples.len() != n {
        return Err(Error::GridMismatch(format!(
            "envelopes have {} and {} samples, grid has {n}",
            e1.samples.len(),
            e2.samples.len()
        )));
    }
    // E₁*(t)E₂(t+τ) = e^{−iω̄₂τ}·A₁*(t)·[A₂(t+τ)e^{−iΔω̄(t+τ)}]·e^{iΔω̄τ}, Δω̄ = ω̄₂ − ω̄₁
    let dw = e2.carrier - e1.carrier;
    let m = 2 * n;
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![zero; m];
    let mut b = vec![zero; m];
    for k in 0..n {
        let t = grid.time(k);
        a[k] = e1.samples[k];
        b[k] = e2.samples[k] * Complex64::from_polar(1.0, -dw * t);
    }
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    fwd.process(&mut a);
    fwd.process(&mut b);
    let mut g: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x.conj() * y).collect();
    inv.process(&mut g);
    // g[j] = M·Σ_k a_k* b_{k+j}; lag j wraps for negative τ
    let scale = grid.dt / m as f64;
    Ok((0..n)
        .map(|k| {
            let lag = k as i64 - (n / 2) as i64;
            let idx = lag.rem_euclid(m as i64) as usize;
            let tau = lag as f64 * grid.dt;
            g[idx] * scale * Complex64::from_polar(1.0, -e2.carrier * tau)
        })
        .collect())
}

fn visibility_from(gamma_max: f64, p1: f64, p2: f64) -> Result<f64> {
    if !(p1 > 0.0) || !(p2 > 0.0) {
        return Err(Error::ZeroField);
    }
    Ok((2.0 * gamma_max / (p1 + p2)).min(1.0))
}

/// Fringe visibility of two time-domain envelopes.
pub fn visibility(grid: &TimeGrid, e1: Envelope, e2: Envelope) -> Result<f64> {
    let gamma = cross_correlation_envelope(grid, e1, e2)?;
    let max = gamma.iter().map(|z| z.norm()).fold(0.0, f64::max);
    visibility_from(max, energy(e1.samples, grid.dt), energy(e2.samples, grid.dt))
}

/// Γ for spectral amplitudes sampled on one uniform frequency grid with
/// spacing `d_omega`, zero-padded 8× for a fine lag axis. Lags are returned
/// in FFT order, τ_j = 2πj/(M·Δω).
pub fn spectral_cross_correlation(d_omega: f64, b1: &[Complex64], b2: &[Complex64]) -> Result<Vec<Complex64>> {
    if b1.len() != b2.len() {
        return Err(Error::GridMismatch(format!("spectra have {} and {} samples", b1.len(), b2.len())));
    }
    let m = SPECTRAL_PAD * b1.len().max(1);
    let mut g = vec![Complex64::new(0.0, 0.0); m];
    for (k, (x, y)) in b1.iter().zip(b2).enumerate() {
        g[k] = x.conj() * y;
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut g);
    g.iter_mut().for_each(|z| *z *= d_omega);
    Ok(g)
}

/// Fringe visibility of two spectral amplitudes on a common grid.
pub fn spectral_visibility(d_omega: f64, b1: &[Complex64], b2: &[Complex64]) -> Result<f64> {
    let gamma = spectral_cross_correlation(d_omega, b1, b2)?;
    let max = gamma.iter().map(|z| z.norm()).fold(0.0, f64::max);
    visibility_from(max, energy(b1, d_omega), energy(b2, d_omega))
}

fn unit_energy(samples: &[Complex64], step: f64) -> Result<Vec<Complex64>> {
    let e = energy(samples, step);
    if !(e > 0.0) {
        return Err(Error::ZeroField);
    }
    let s = e.sqrt().recip();
    Ok(samples.iter().map(|z| z * s).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VisibilitySource {
    FromJcaMap,
    FromPropagation,
}

impl VisibilitySource {
    pub fn label(&self) -> &'static str {
        match self {
            VisibilitySource::FromJcaMap => "from_jca_map",
            VisibilitySource::FromPropagation => "from_propagation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityScan {
    /// µm
    pub reference_lambda: f64,
    /// (λ_i0 [µm], V)
    pub points: Vec<(f64, f64)>,
    pub source: VisibilitySource,
}

/// Output amplitude of the JCA map for an input centred at `lambda_um`, on
/// the fixed output grid.
pub fn jca_map_output(
    cfg: &InteractionConfig,
    pump: &SpectralAmplitude,
    input: &FieldSpec,
    lambda_um: f64,
    grid_o: &SpectralGrid,
) -> Result<Vec<Complex64>> {
    let mut field = input.clone();
    field.lambda0_um = lambda_um;
    let span = 2.0 * SCAN_INPUT_HALF_SPAN * field.omega_fwhm();
    let grid_i = SpectralGrid::new(field.omega0(), span, SCAN_INPUT_POINTS)?;
    let alpha = grid_i.sample(&SpectralAmplitude::new(&field)?);
    let jca = build_jca_with(cfg, pump, grid_i, *grid_o)?;
    apply_jca_map(&jca, &alpha)
}

/// Visibility of the JCA-map output for each input carrier against the
/// output for `cfg.lambda_i`. Fields are scaled to unit energy first.
pub fn visibility_scan_jca(
    cfg: &InteractionConfig,
    pump: &FieldSpec,
    input: &FieldSpec,
    lambdas_um: &[f64],
    exec: Execution,
) -> Result<VisibilityScan> {
    let amp = SpectralAmplitude::new(pump)?;
    let (_, grid_o) = default_grids(cfg, pump, DEFAULT_JCA_POINTS)?;
    let d = grid_o.step();
    let reference = unit_energy(&jca_map_output(cfg, &amp, input, cfg.lambda_i, &grid_o)?, d)?;
    let values = par::map(exec, lambdas_um, |&l| -> Result<f64> {
        let b = unit_energy(&jca_map_output(cfg, &amp, input, l, &grid_o)?, d)?;
        spectral_visibility(d, &reference, &b)
    });
    collect_scan(cfg.lambda_i, lambdas_um, values, VisibilitySource::FromJcaMap)
}

/// Visibility of split-step outputs against the output for the scenario's
/// device input wavelength.
pub fn visibility_scan_propagation(base: &Scenario, lambdas_um: &[f64], exec: Execution) -> Result<VisibilityScan> {
    let reference_lambda = base.device.lambda_i;
    let run = |l: f64| -> Result<(TimeGrid, Vec<Complex64>, f64)> {
        let mut s = base.clone();
        s.input.lambda0_um = l;
        let r = s.run()?;
        let a = unit_energy(&r.state.a_o, r.state.grid.dt)?;
        Ok((r.state.grid, a, r.state.carriers.omega_o))
    };
    let (grid, a_ref, w_ref) = run(reference_lambda)?;
    let values = par::map(exec, lambdas_um, |&l| -> Result<f64> {
        let (g, a, w) = run(l)?;
        if g != grid {
            return Err(Error::GridMismatch("scan runs use different time grids".into()));
        }
        visibility(&grid, Envelope { samples: &a_ref, carrier: w_ref }, Envelope { samples: &a, carrier: w })
    });
    collect_scan(reference_lambda, lambdas_um, values, VisibilitySource::FromPropagation)
}

/// Dispatches on `source`.
pub fn visibility_scan(
    base: &Scenario,
    lambdas_um: &[f64],
    source: VisibilitySource,
    exec: Execution,
) -> Result<VisibilityScan> {
    match source {
        VisibilitySource::FromJcaMap => visibility_scan_jca(&base.device, &base.pump, &base.input, lambdas_um, exec),
        VisibilitySource::FromPropagation => visibility_scan_propagation(base, lambdas_um, exec),
    }
}

fn collect_scan(
    reference_lambda: f64,
    lambdas: &[f64],
    values: Vec<Result<f64>>,
    source: VisibilitySource,
) -> Result<VisibilityScan> {
    let points = lambdas.iter().zip(values).map(|(&l, v)| Ok((l, v?))).collect::<Result<Vec<_>>>()?;
    Ok(VisibilityScan { reference_lambda, points, source })
}

/// Contiguous interval around the reference where V ≥ threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogenizationInterval {
    pub threshold: f64,
    /// µm
    pub lower: f64,
    /// µm
    pub upper: f64,
    /// false when the scan ends before V drops below the threshold
    pub lower_crossed: bool,
    pub upper_crossed: bool,
}

impl HomogenizationInterval {
    pub fn width_nm(&self) -> f64 {
        (self.upper - self.lower) * 1e3
    }
}

/// Interval with linear interpolation at the crossings; open ends stop at
/// the scan limits.
pub fn homogenization_interval(scan: &VisibilityScan, threshold: f64) -> Result<HomogenizationInterval> {
    let mut pts = scan.points.clone();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.is_empty() {
        return Err(Error::InvalidParameter("empty visibility scan".into()));
    }
    let r = pts
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 .0 - scan.reference_lambda).abs().total_cmp(&(b.1 .0 - scan.reference_lambda).abs()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    if pts[r].1 < threshold {
        return Err(Error::InvalidParameter(format!(
            "visibility at the reference carrier {} is below {threshold}",
            pts[r].1
        )));
    }
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 + (threshold - a.1) * (b.0 - a.0) / (b.1 - a.1);
    let mut hi = r;
    while hi + 1 < pts.len() && pts[hi + 1].1 >= threshold {
        hi += 1;
    }
    let (upper, upper_crossed) =
        if hi + 1 < pts.len() { (cross(pts[hi], pts[hi + 1]), true) } else { (pts[hi].0, false) };
    let mut lo = r;
    while lo > 0 && pts[lo - 1].1 >= threshold {
        lo -= 1;
    }
    let (lower, lower_crossed) = if lo > 0 { (cross(pts[lo], pts[lo - 1]), true) } else { (pts[lo].0, false) };
    Ok(HomogenizationInterval { threshold, lower, upper, lower_crossed, upper_crossed })
}

/// Width [nm] of the homogenization interval; errors when either side stays
/// above the threshold to the end of the scan.
pub fn homogenization_bandwidth(scan: &VisibilityScan, threshold: f64) -> Result<f64> {
    let iv = homogenization_interval(scan, threshold)?;
    if !iv.lower_crossed {
        return Err(Error::ThresholdNotCrossed { threshold, side: "lower" });
    }
    if !iv.upper_crossed {
        return Err(Error::ThresholdNotCrossed { threshold, side: "upper" });
    }
    Ok(iv.width_nm())
}

/// Relative L2 distance between two intensity profiles after scaling each
/// to unit L2 norm.
pub fn relative_l2_error(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!("profiles have {} and {} samples", a.len(), b.len())));
    }
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(na > 0.0) || !(nb > 0.0) {
        return Err(Error::ZeroField);
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x / na - y / nb).powi(2)).sum::<f64>().sqrt())
}

/// Linear interpolation of a spectrum's intensity at `omegas` (zero outside).
pub fn resample_spectrum(spectrum: &Spectrum, omegas: &[f64]) -> Vec<f64> {
    let w = &spectrum.omega;
    omegas
        .iter()
        .map(|&x| {
            if w.len() < 2 || x < w[0] || x > w[w.len() - 1] {
                return 0.0;
            }
            let k = w.partition_point(|&v| v <= x).clamp(1, w.len() - 1);
            let t = (x - w[k - 1]) / (w[k] - w[k - 1]);
            spectrum.intensity[k - 1] * (1.0 - t) + spectrum.intensity[k] * t
        })
        .collect()
}

/// Evenly spaced input wavelengths [µm] centred on `center_um` with spacing
/// `step_nm` and half-width `half_span_nm`.
pub fn carrier_list(center_um: f64, half_span_nm: f64, step_nm: f64) -> Vec<f64> {
    let n = (half_span_nm / step_nm).round() as i64;
    (-n..=n).map(|k| center_um + k as f64 * step_nm * 1e-3).collect()
}

/// Analytic visibility of equal-energy Gaussian spectra of rms width σ_ω
/// offset by δω.
pub fn gaussian_visibility(sigma_omega: f64, delta_omega: f64) -> f64 {
    (-delta_omega * delta_omega / (8.0 * sigma_omega * sigma_omega)).exp()
}
