//! Joint coupling amplitude, its Schmidt decomposition, the input→output
//! spectral map and Schmidt-mode conversion probabilities.

use std::f64::consts::PI;

use faer::complex_native::c64;
use faer::Mat;
use num_complex::Complex64;

use crate::constants::{omega_from_um, C, EPSILON_0, HBAR};
use crate::dispersion::{refractive_index, OpticalAxisSpec};
use crate::error::{Error, Result};
use crate::phasematch::{sinc, InteractionConfig};
use crate::spectral::{FieldSpec, SpectralAmplitude, SpectralGrid};

/// Default number of samples per JCA axis.
pub const DEFAULT_JCA_POINTS: usize = 1024;
/// Schmidt modes with κ above this are reported.
pub const KAPPA_REPORT_FLOOR: f64 = 1e-12;
/// Modes with κ above this are kept for reconstruction.
const KAPPA_KEEP_FLOOR: f64 = 1e-24;
const MIN_LOBE_SAMPLES: f64 = 8.0;

/// Sampled f(ω_i, ω_o), row-major with ω_i as the row index.
#[derive(Debug, Clone)]
pub struct JcaGrid {
    pub grid_i: SpectralGrid,
    pub grid_o: SpectralGrid,
    pub f: Vec<Complex64>,
    pub normalized: bool,
    /// √(Σ|s*·sinc|²Δω_iΔω_o) before normalization, i.e. the PMF
    /// normalization constant for a unit-norm pump amplitude.
    pub raw_norm: f64,
}

impl JcaGrid {
    pub fn at(&self, i: usize, o: usize) -> Complex64 {
        self.f[i * self.grid_o.n_points + o]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid_o.n_points;
        &self.f[i * n..(i + 1) * n]
    }

    /// Σ|f|²Δω_iΔω_o
    pub fn norm_sqr(&self) -> f64 {
        self.f.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid_i.step() * self.grid_o.step()
    }

    /// |f| scaled to a unit maximum.
    pub fn magnitude_normalized(&self) -> Vec<f64> {
        let max = self.f.iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.f.iter().map(|z| if max > 0.0 { z.norm() / max } else { 0.0 }).collect()
    }
}

/// Full widths [rad/s] of the PMF main lobe along ω_i, 4π/(L|v_i⁻¹ − v_p⁻¹|),
/// and along ω_o, 4π/(L|v_p⁻¹ − v_o⁻¹|).
pub fn pmf_lobe_widths(cfg: &InteractionConfig) -> Result<(f64, f64)> {
    let [i, o, p] = cfg.carrier_dispersion()?;
    let w = |slope: f64| 4.0 * PI / (cfg.length_m * slope.abs());
    Ok((w(i.v_inv - p.v_inv), w(p.v_inv - o.v_inv)))
}

/// Default grids: 1024 points; ω_i spans ±2.5 pump FWHM around ω̄_i and ω_o
/// spans ±6 PMF half-widths 2π/(L|v_p⁻¹ − v_o⁻¹|) around ω̄_o.
pub fn default_grids(cfg: &InteractionConfig, pump: &FieldSpec, n_points: usize) -> Result<(SpectralGrid, SpectralGrid)> {
    let (_, lobe_o) = pmf_lobe_widths(cfg)?;
    let gi = SpectralGrid::new(cfg.omega_i(), 5.0 * pump.omega_fwhm(), n_points)?;
    let go = SpectralGrid::new(cfg.omega_o(), 6.0 * lobe_o, n_points)?;
    Ok((gi, go))
}

fn k_row(cfg: &InteractionConfig, spec: &OpticalAxisSpec, omegas: &[f64]) -> Result<Vec<f64>> {
    omegas
        .iter()
        .map(|&w| Ok(refractive_index(&cfg.crystal, spec, crate::constants::um_from_omega(w))? * w / C))
        .collect()
}

/// Samples s*(ω_i − ω_o)·sinc(Δk(ω_i, ω_o)L/2) and normalizes it to unit
/// norm on the grid.
pub fn build_jca(cfg: &InteractionConfig, pump: &FieldSpec, grid_i: SpectralGrid, grid_o: SpectralGrid) -> Result<JcaGrid> {
    let mut jca = build_jca_with(cfg, &SpectralAmplitude::new(pump)?, grid_i, grid_o)?;
    normalize(&mut jca)?;
    Ok(jca)
}

/// Unnormalized JCA for an arbitrary pump amplitude.
pub fn build_jca_with(
    cfg: &InteractionConfig,
    pump: &SpectralAmplitude,
    grid_i: SpectralGrid,
    grid_o: SpectralGrid,
) -> Result<JcaGrid> {
    cfg.validate()?;
    let (lobe_i, lobe_o) = pmf_lobe_widths(cfg)?;
    let samples = (lobe_i / grid_i.step()).min(lobe_o / grid_o.step());
    if samples < MIN_LOBE_SAMPLES {
        return Err(Error::GridTooCoarse(format!(
            "PMF main lobe spans only {samples:.1} grid points (need {MIN_LOBE_SAMPLES})"
        )));
    }
    let wi = grid_i.values();
    let wo = grid_o.values();
    let lowest_pump = wi[0] - wo[wo.len() - 1];
    if !(lowest_pump > 0.0) {
        return Err(Error::NonpositivePumpFrequency(lowest_pump));
    }
    let ki = k_row(cfg, &cfg.input, &wi)?;
    let ko = k_row(cfg, &cfg.output, &wo)?;
    let grating = cfg.grating_k();
    let half_l = 0.5 * cfg.length_m;
    let mut f = Vec::with_capacity(wi.len() * wo.len());
    for (a, &w_i) in wi.iter().enumerate() {
        for (b, &w_o) in wo.iter().enumerate() {
            let wp = w_i - w_o;
            let kp = refractive_index(&cfg.crystal, &cfg.pump, crate::constants::um_from_omega(wp))? * wp / C;
            let dk = ki[a] - ko[b] - kp - grating;
            f.push(pump.eval(wp).conj() * sinc(dk * half_l));
        }
    }
    let mut jca = JcaGrid { grid_i, grid_o, f, normalized: false, raw_norm: 0.0 };
    jca.raw_norm = jca.norm_sqr().sqrt();
    Ok(jca)
}

fn normalize(jca: &mut JcaGrid) -> Result<()> {
    let norm = jca.norm_sqr().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::ZeroField);
    }
    jca.f.iter_mut().for_each(|z| *z /= norm);
    jca.normalized = true;
    Ok(())
}

/// Schmidt decomposition f = Σ √κₙ gₙ(ω_i) hₙ*(ω_o).
#[derive(Debug, Clone)]
pub struct SchmidtData {
    pub grid_i: SpectralGrid,
    pub grid_o: SpectralGrid,
    /// Every κₙ, descending.
    pub kappas: Vec<f64>,
    /// Input modes gₙ, unit norm under Σ|g|²Δω_i, for the numerically
    /// nonzero κₙ.
    pub input_modes: Vec<Vec<Complex64>>,
    /// Output modes hₙ, unit norm under Σ|h|²Δω_o.
    pub output_modes: Vec<Vec<Complex64>>,
    pub schmidt_number: f64,
    pub purity: f64,
}

impl SchmidtData {
    pub fn singular_values(&self) -> Vec<f64> {
        self.kappas.iter().map(|k| k.sqrt()).collect()
    }

    /// Number of modes with κₙ > 1e−12.
    pub fn retained(&self) -> usize {
        self.kappas.iter().take_while(|&&k| k > KAPPA_REPORT_FLOOR).count()
    }

    /// Σₙ √κₙ gₙ hₙ* over the first `n_modes` modes, row-major like [`JcaGrid`].
    pub fn reconstruct(&self, n_modes: usize) -> Vec<Complex64> {
        let (ni, no) = (self.grid_i.n_points, self.grid_o.n_points);
        let mut out = vec![Complex64::new(0.0, 0.0); ni * no];
        for n in 0..n_modes.min(self.input_modes.len()) {
            let s = self.kappas[n].sqrt();
            let (g, h) = (&self.input_modes[n], &self.output_modes[n]);
            for i in 0..ni {
                let gi = g[i] * s;
                let row = &mut out[i * no..(i + 1) * no];
                for (r, hv) in row.iter_mut().zip(h) {
                    *r += gi * hv.conj();
                }
            }
        }
        out
    }
}

pub fn schmidt_decompose(jca: &JcaGrid) -> Result<SchmidtData> {
    if !jca.normalized {
        return Err(Error::InvalidParameter("Schmidt decomposition needs a normalized JCA".into()));
    }
    let (ni, no) = (jca.grid_i.n_points, jca.grid_o.n_points);
    let (di, d_o) = (jca.grid_i.step(), jca.grid_o.step());
    let w = (di * d_o).sqrt();
    let m = Mat::<c64>::from_fn(ni, no, |i, o| {
        let z = jca.at(i, o) * w;
        c64::new(z.re, z.im)
    });
    let svd = m.thin_svd();
    let s = svd.s_diagonal();
    let r = ni.min(no);
    let mut sv: Vec<(usize, f64)> = (0..r).map(|k| (k, s.read(k).re)).collect();
    if sv.iter().any(|(_, x)| !x.is_finite()) {
        return Err(Error::NumericalFailure("SVD produced non-finite singular values".into()));
    }
    sv.sort_by(|a, b| b.1.total_cmp(&a.1));
    let kappas: Vec<f64> = sv.iter().map(|&(_, x)| x * x).collect();
    let (u, v) = (svd.u(), svd.v());
    let keep = kappas.iter().take_while(|&&k| k > KAPPA_KEEP_FLOOR).count();
    let mut input_modes = Vec::with_capacity(keep);
    let mut output_modes = Vec::with_capacity(keep);
    for &(col, _) in sv.iter().take(keep) {
        input_modes.push((0..ni).map(|i| to_c(u.read(i, col)) / di.sqrt()).collect());
        output_modes.push((0..no).map(|o| to_c(v.read(o, col)) / d_o.sqrt()).collect());
    }
    let sum_sq: f64 = kappas.iter().map(|k| k * k).sum();
    let schmidt_number = 1.0 / sum_sq;
    Ok(SchmidtData {
        grid_i: jca.grid_i,
        grid_o: jca.grid_o,
        kappas,
        input_modes,
        output_modes,
        schmidt_number,
        purity: 1.0 / schmidt_number,
    })
}

fn to_c(z: c64) -> Complex64 {
    Complex64::new(z.re, z.im)
}

/// Output spectral amplitude β(ω_o) with β*(ω_o) = Σ f(ω_i, ω_o)α*(ω_i)Δω_i.
pub fn apply_jca_map(jca: &JcaGrid, alpha: &[Complex64]) -> Result<Vec<Complex64>> {
    let (ni, no) = (jca.grid_i.n_points, jca.grid_o.n_points);
    if alpha.len() != ni {
        return Err(Error::GridMismatch(format!("input amplitude has {} samples, grid has {ni}", alpha.len())));
    }
    let di = jca.grid_i.step();
    let mut beta_conj = vec![Complex64::new(0.0, 0.0); no];
    for (i, a) in alpha.iter().enumerate() {
        let ac = a.conj() * di;
        for (b, f) in beta_conj.iter_mut().zip(jca.row(i)) {
            *b += f * ac;
        }
    }
    Ok(beta_conj.into_iter().map(|b| b.conj()).collect())
}

/// Per-mode probabilities ηₙ = sin²(𝒞√κₙ)|Σ α*gₙΔω_i|² for the reported
/// modes and their sum. `angle` is the dimensionless evolution parameter 𝒞.
pub fn conversion_probability(schmidt: &SchmidtData, alpha: &[Complex64], angle: f64) -> Result<(Vec<f64>, f64)> {
    let grid = &schmidt.grid_i;
    if alpha.len() != grid.n_points {
        return Err(Error::GridMismatch(format!(
            "input amplitude has {} samples, grid has {}",
            alpha.len(),
            grid.n_points
        )));
    }
    let norm = grid.norm_sqr(alpha);
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidParameter(format!("input amplitude must be unit norm, has {norm}")));
    }
    let n = schmidt.retained().min(schmidt.input_modes.len());
    let eta: Vec<f64> = (0..n)
        .map(|k| {
            let overlap = grid.inner(alpha, &schmidt.input_modes[k]);
            (angle * schmidt.kappas[k].sqrt()).sin().powi(2) * overlap.norm_sqr()
        })
        .collect();
    let total = eta.iter().sum();
    Ok((eta, total))
}

/// σ_iσ_oσ_p/(σ_i²σ_o² + σ_i²σ_p² + σ_o²σ_p²) [1/m].
pub fn beam_overlap(sigmas: [f64; 3]) -> f64 {
    let [a, b, c] = sigmas;
    a * b * c / (a * a * b * b + a * a * c * c + b * b * c * c)
}

/// Dimensionless evolution parameter
/// 𝒞 = √(2ħd²/(π²ε₀c³))·√(ω̄_iω̄_oω̄_p n_gi n_go n_gp/(n_i²n_o²n_p²))·L·𝒩·√N_p·overlap.
///
/// `pmf_norm` is 𝒩 = √(∫|s*·sinc|²dω_idω_o) for unit-norm s, as stored in
/// [`JcaGrid::raw_norm`].
pub fn evolution_parameter(cfg: &InteractionConfig, sigmas: [f64; 3], d_eff: f64, n_pump: f64, pmf_norm: f64) -> Result<f64> {
    if sigmas.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::InvalidParameter("beam radii must be positive".into()));
    }
    if !(n_pump >= 0.0) {
        return Err(Error::InvalidParameter("pump photon number must be ≥ 0".into()));
    }
    let [i, o, p] = cfg.carrier_dispersion()?;
    let prefactor = (2.0 * HBAR * d_eff * d_eff / (PI * PI * EPSILON_0 * C.powi(3))).sqrt();
    let omegas = cfg.omega_i() * cfg.omega_o() * cfg.omega_p();
    let ratio = i.group_index * o.group_index * p.group_index / (i.n * i.n * o.n * o.n * p.n * p.n);
    Ok(prefactor * (omegas * ratio).sqrt() * cfg.length_m * pmf_norm * n_pump.sqrt() * beam_overlap(sigmas))
}

/// Photon number of a pulse of energy `energy_j` at carrier `lambda_um`.
pub fn photon_number(energy_j: f64, lambda_um: f64) -> f64 {
    energy_j / (HBAR * omega_from_um(lambda_um))
}
