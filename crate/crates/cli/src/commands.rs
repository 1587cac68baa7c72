//! One function per subcommand; each returns the staged files of its run.

use autohom_core::constants::um_from_omega;
use autohom_core::dispersion::CrystalDatabase;
use autohom_core::jca::{build_jca, default_grids, pmf_lobe_widths, schmidt_decompose, KAPPA_REPORT_FLOOR};
use autohom_core::metrics::{homogenization_interval, visibility_scan, HomogenizationInterval, VisibilityScan};
use autohom_core::par::Execution;
use autohom_core::phasematch::{gvm_table_with, phasematch_angles, pmf_angle, InteractionConfig};
use autohom_core::propagation::{efficiency_scan, energy_for_peak_power, output_spectrum, EfficiencyPoint, Scenario};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{default_pm_lambdas_nm, scheme_label, RunConfig};
use crate::output::Artifacts;
use crate::svg::{self, Axes, Series};
use crate::{CliError, Command, JCA_NORM_GATE, KAPPA_SUM_GATE, MANLEY_ROWE_GATE, RECONSTRUCTION_GATE};

/// Spectral samples below this fraction of the peak are not written.
pub const SPECTRUM_FLOOR: f64 = 1e-6;
/// Spectral plots span the samples above this fraction of the peak.
pub const PLOT_FLOOR: f64 = 1e-3;
/// Side of the downsampled JCA written to CSV and SVG.
pub const JCA_EXPORT_POINTS: usize = 128;

type Res<T> = Result<T, CliError>;

fn io(e: anyhow::Error) -> CliError {
    CliError::ComputeFailed(format!("{e:#}"))
}

pub fn execute(command: Command, config: &RunConfig) -> Res<Artifacts> {
    match command {
        Command::GvmSearch => cmd_gvm_search(config),
        Command::PmTable => cmd_pm_table(config),
        Command::Jca => cmd_jca(config),
        Command::Propagate => cmd_propagate(config),
        Command::VisibilityScan => cmd_visibility_scan(config),
        Command::EfficiencyScan => cmd_efficiency_scan(config),
    }
}

fn nm(um: f64) -> f64 {
    um * 1e3
}

fn omega_nm(omega: f64) -> f64 {
    um_from_omega(omega) * 1e3
}

#[derive(Serialize)]
struct DeviceSummary {
    crystal: String,
    scheme: String,
    lambda_i_nm: f64,
    lambda_o_nm: f64,
    lambda_p_nm: f64,
    theta_deg: f64,
    phi_deg: f64,
    length_mm: f64,
    poling_period_um: Option<f64>,
    qpm_order: Option<i32>,
    pmf_angle_deg: f64,
}

fn device_summary(config: &RunConfig, d: &InteractionConfig) -> Res<DeviceSummary> {
    Ok(DeviceSummary {
        crystal: config.device.crystal.clone(),
        scheme: scheme_label(&config.device.scheme),
        lambda_i_nm: nm(d.lambda_i),
        lambda_o_nm: nm(d.lambda_o),
        lambda_p_nm: nm(d.lambda_p),
        theta_deg: d.input.theta_deg,
        phi_deg: d.input.phi_deg,
        length_mm: d.length_m * 1e3,
        poling_period_um: d.poling_period_um,
        qpm_order: d.qpm_order,
        pmf_angle_deg: pmf_angle(d)?,
    })
}

fn resolve(config: &RunConfig) -> Res<(CrystalDatabase, InteractionConfig)> {
    let db = config.database()?;
    let device = config.interaction(&db)?;
    Ok((db, device))
}

pub fn cmd_gvm_search(config: &RunConfig) -> Res<Artifacts> {
    let db = config.database()?;
    let wanted = config.gvm_search.crystals.clone();
    let mut crystals = Vec::new();
    match &wanted {
        Some(ids) => {
            for id in ids {
                let m = db.get(id).map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
                crystals.push((id.as_str(), m));
            }
        }
        None => crystals.extend(db.iter()),
    }
    let lambda_o = config.gvm_search.lambda_o_nm * 1e-3;
    let table = gvm_table_with(Execution::default(), lambda_o, &crystals);

    #[derive(Serialize)]
    struct Row<'a> {
        crystal_id: &'a str,
        crystal: &'a str,
        lambda_i_nm: f64,
        lambda_o_nm: f64,
        lambda_p_nm: f64,
        theta_deg: f64,
        phi_deg: f64,
        plane: String,
        polarizations: String,
        delta_k0_per_m: f64,
        delta_v_inv_s_per_m: f64,
    }
    #[derive(Serialize)]
    struct Failure {
        crystal_id: String,
        scheme: String,
        reason: String,
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for e in &table.entries {
        match &e.outcome {
            Ok(sols) => rows.extend(sols.iter().map(|s| Row {
                crystal_id: &e.crystal_id,
                crystal: &s.crystal,
                lambda_i_nm: nm(s.lambda_i),
                lambda_o_nm: nm(s.lambda_o),
                lambda_p_nm: nm(s.lambda_p),
                theta_deg: s.theta_deg,
                phi_deg: s.phi_deg,
                plane: s.scheme.plane.map(|p| p.to_string()).unwrap_or_default(),
                polarizations: s.scheme.polarization_label(),
                delta_k0_per_m: s.delta_k0,
                delta_v_inv_s_per_m: s.delta_v_inv,
            })),
            Err(err) => failures.push(Failure {
                crystal_id: e.crystal_id.clone(),
                scheme: scheme_label(&e.scheme),
                reason: err.to_string(),
            }),
        }
    }
    let mut a = Artifacts::default();
    a.csv(
        "gvm_table.csv",
        &[
            "crystal_id",
            "crystal",
            "lambda_i_nm",
            "lambda_o_nm",
            "lambda_p_nm",
            "theta_deg",
            "phi_deg",
            "plane",
            "polarizations",
            "delta_k0_per_m",
            "delta_v_inv_s_per_m",
        ],
        &rows,
    )
    .map_err(io)?;
    let summary = serde_json::json!({
        "lambda_o_nm": config.gvm_search.lambda_o_nm,
        "combinations": table.entries.len(),
        "solutions": rows.len(),
        "rows": rows,
        "failures": failures,
    });
    a.json("gvm_table.json", &summary).map_err(io)?;
    Ok(a)
}

pub fn cmd_pm_table(config: &RunConfig) -> Res<Artifacts> {
    let db = config.database()?;
    let d = &config.device;
    let crystal = db.get(&d.crystal).map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
    let lambda_o = d.lambda_o_nm * 1e-3;
    let lambdas = config.pm_table.lambda_i_nm.as_ref().map_or_else(default_pm_lambdas_nm, |s| s.values());

    #[derive(Serialize)]
    struct Row {
        lambda_i_nm: f64,
        lambda_o_nm: f64,
        lambda_p_nm: f64,
        angle_deg: f64,
        poling_period_um: Option<f64>,
        delta_v_inv_ip_s_per_m: f64,
        pmf_angle_deg: Option<f64>,
    }
    let row_for = |li: f64, angle: f64| -> Res<Row> {
        let mut cfg = InteractionConfig::new(crystal.clone(), d.scheme, angle, li * 1e-3, lambda_o, d.length_mm * 1e-3)?;
        if let Some(m) = d.qpm_order {
            cfg = cfg.with_qpm(m)?;
        }
        let [ci, _, cp] = cfg.carrier_dispersion()?;
        Ok(Row {
            lambda_i_nm: li,
            lambda_o_nm: d.lambda_o_nm,
            lambda_p_nm: nm(cfg.lambda_p),
            angle_deg: angle,
            poling_period_um: cfg.poling_period_um,
            delta_v_inv_ip_s_per_m: ci.v_inv - cp.v_inv,
            pmf_angle_deg: pmf_angle(&cfg).ok(),
        })
    };
    let jobs: Vec<Res<Vec<Row>>> = autohom_core::par::map(Execution::default(), &lambdas, |&li| {
        let angles = match (d.qpm_order, d.angle_deg) {
            (Some(_), Some(a)) => vec![a],
            _ => match phasematch_angles(crystal, &d.scheme, li * 1e-3, lambda_o) {
                Ok(a) => a,
                Err(autohom_core::Error::OutOfValidityRange { .. } | autohom_core::Error::NonpositivePumpFrequency(_)) => {
                    Vec::new()
                }
                Err(e) => return Err(e.into()),
            },
        };
        let mut rows = Vec::new();
        for a in angles {
            match row_for(li, a) {
                Ok(r) => rows.push(r),
                Err(CliError::ComputeFailed(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(rows)
    });
    let mut rows = Vec::new();
    for j in jobs {
        rows.extend(j?);
    }
    let mut a = Artifacts::default();
    a.csv(
        "pm_table.csv",
        &[
            "lambda_i_nm",
            "lambda_o_nm",
            "lambda_p_nm",
            "angle_deg",
            "poling_period_um",
            "delta_v_inv_ip_s_per_m",
            "pmf_angle_deg",
        ],
        &rows,
    )
    .map_err(io)?;
    let summary = serde_json::json!({
        "crystal": d.crystal,
        "scheme": scheme_label(&d.scheme),
        "lambda_o_nm": d.lambda_o_nm,
        "inputs": lambdas.len(),
        "rows": rows.len(),
    });
    a.json("pm_table.json", &summary).map_err(io)?;
    Ok(a)
}

fn gate(name: &'static str, value: f64, limit: f64) -> Res<()> {
    if value < limit {
        Ok(())
    } else {
        Err(CliError::GateFailed { name, value, limit })
    }
}

pub fn cmd_jca(config: &RunConfig) -> Res<Artifacts> {
    let (_, device) = resolve(config)?;
    let pump = config.pump_field(&device);
    let (gi, go) = default_grids(&device, &pump, config.numerics.jca_points)?;
    let jca = build_jca(&device, &pump, gi, go)?;
    let schmidt = schmidt_decompose(&jca)?;
    let norm_err = (jca.norm_sqr() - 1.0).abs();
    let kappa_sum = schmidt.kappas.iter().sum::<f64>();
    let rec = schmidt.reconstruct(schmidt.input_modes.len());
    let diff: f64 = rec.iter().zip(&jca.f).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>();
    let total: f64 = jca.f.iter().map(|z| z.norm_sqr()).sum();
    let rec_err = (diff / total).sqrt();
    gate("jca_unit_norm", norm_err, JCA_NORM_GATE)?;
    gate("kappa_sum", (kappa_sum - 1.0).abs(), KAPPA_SUM_GATE)?;
    gate("schmidt_reconstruction", rec_err, RECONSTRUCTION_GATE)?;

    let n = jca.grid_i.n_points;
    let m = jca.grid_o.n_points;
    let (si, so) = ((n / JCA_EXPORT_POINTS).max(1), (m / JCA_EXPORT_POINTS).max(1));
    let mag = jca.magnitude_normalized();
    let (wi, wo) = (jca.grid_i.values(), jca.grid_o.values());
    let idx_i: Vec<usize> = (0..n).step_by(si).collect();
    let idx_o: Vec<usize> = (0..m).step_by(so).collect();
    let mut cells = Vec::with_capacity(idx_i.len() * idx_o.len());
    for &i in &idx_i {
        for &o in &idx_o {
            cells.push((omega_nm(wi[i]), omega_nm(wo[o]), mag[i * m + o]));
        }
    }
    let mut a = Artifacts::default();
    a.csv("jca.csv", &["lambda_i_nm", "lambda_o_nm", "magnitude_normalized"], &cells).map_err(io)?;
    let kappas: Vec<(usize, f64)> =
        schmidt.kappas.iter().copied().enumerate().take_while(|&(_, k)| k > KAPPA_REPORT_FLOOR).collect();
    a.csv("kappas.csv", &["n", "kappa"], &kappas).map_err(io)?;

    let modes = schmidt.input_modes.len().min(4);
    let mode_rows = |w: &[f64], set: &[Vec<Complex64>]| {
        let mut rows = Vec::new();
        for (k, &wk) in w.iter().enumerate() {
            for (n, g) in set.iter().take(modes).enumerate() {
                rows.push((n, omega_nm(wk), g[k].re, g[k].im));
            }
        }
        rows
    };
    let header = ["n", "wavelength_nm", "re", "im"];
    a.csv("input_modes.csv", &header, mode_rows(&wi, &schmidt.input_modes)).map_err(io)?;
    a.csv("output_modes.csv", &header, mode_rows(&wo, &schmidt.output_modes)).map_err(io)?;

    let (lobe_i, lobe_o) = pmf_lobe_widths(&device)?;
    let summary = serde_json::json!({
        "device": device_summary(config, &device)?,
        "schmidt_number": schmidt.schmidt_number,
        "purity": schmidt.purity,
        "kappa_sum": kappa_sum,
        "modes_retained": schmidt.retained(),
        "jca_norm_error": norm_err,
        "reconstruction_error": rec_err,
        "grid_points": [n, m],
        "grid_span_rad_per_s": [jca.grid_i.span, jca.grid_o.span],
        "pmf_lobe_width_rad_per_s": {"input": lobe_i, "output": lobe_o},
    });
    a.json("schmidt.json", &summary).map_err(io)?;

    let (ni, no) = (idx_i.len(), idx_o.len());
    // rows of the heatmap run along the output axis, input wavelength ascends upward
    let mut grid = vec![0.0; ni * no];
    for (r, &i) in idx_i.iter().rev().enumerate() {
        for (c, &o) in idx_o.iter().rev().enumerate() {
            grid[r * no + c] = mag[i * m + o];
        }
    }
    let li = (omega_nm(wi[n - 1]), omega_nm(wi[0]));
    let lo = (omega_nm(wo[m - 1]), omega_nm(wo[0]));
    let axes = Axes {
        title: &format!("|f| (K = {:.4})", schmidt.schmidt_number),
        x_label: "output wavelength (nm)",
        y_label: "input wavelength (nm)",
        x_range: lo,
        y_range: li,
    };
    a.text("jca.svg", svg::heatmap(&axes, &grid, no, ni));
    Ok(a)
}

fn pump_drive(config: &RunConfig, scenario: &Scenario) -> Res<(f64, Scenario)> {
    let peak = config.pump_peak_power(scenario)?;
    Ok((peak, scenario.with_peak_power(peak)))
}

pub fn cmd_propagate(config: &RunConfig) -> Res<Artifacts> {
    let (_, device) = resolve(config)?;
    let base = config.scenario(&device);
    let (peak, driven) = pump_drive(config, &base)?;
    let lambdas: Vec<f64> = match &config.propagate.input_lambdas_nm {
        Some(s) => s.values(),
        None => vec![nm(driven.input.lambda0_um)],
    };
    let runs = autohom_core::par::map(Execution::default(), &lambdas, |&l| {
        let mut s = driven.clone();
        s.input.lambda0_um = l * 1e-3;
        s.run()
    });
    let mut spectra = Vec::new();
    let mut photons = Vec::new();
    let mut records = Vec::new();
    let mut series_data = Vec::new();
    for (&l, r) in lambdas.iter().zip(runs) {
        let r = r?;
        gate("manley_rowe", r.diagnostics.max_manley_rowe(), MANLEY_ROWE_GATE)?;
        let spec = output_spectrum(&r.state);
        let norm = spec.normalized();
        let wl = spec.wavelength_nm();
        let mut pts = Vec::new();
        for (w, v) in wl.iter().zip(&norm) {
            if *v >= SPECTRUM_FLOOR {
                spectra.push((l, *w, *v));
                pts.push((*w, *v));
            }
        }
        pts.reverse();
        series_data.push((l, pts));
        for p in &r.diagnostics.photon_numbers {
            photons.push((l, p[0] * 1e3, p[1], p[2], p[3]));
        }
        let [ni, no, np] = r.state.photon_numbers();
        records.push(serde_json::json!({
            "lambda_i0_nm": l,
            "efficiency": r.efficiency,
            "photon_numbers_final": {"input": ni, "output": no, "pump": np},
            "photon_numbers_initial": {
                "input": r.initial.photon_numbers()[0],
                "pump": r.initial.photon_numbers()[2],
            },
            "manley_rowe_output": r.diagnostics.manley_rowe_output,
            "manley_rowe_pump": r.diagnostics.manley_rowe_pump,
            "time_points": r.state.grid.n_points,
            "dt_s": r.state.grid.dt,
        }));
    }
    let mut a = Artifacts::default();
    a.csv("spectra.csv", &["lambda_i0_nm", "wavelength_nm", "intensity_normalized"], &spectra).map_err(io)?;
    a.csv("photon_numbers.csv", &["lambda_i0_nm", "z_mm", "n_input", "n_output", "n_pump"], &photons)
        .map_err(io)?;
    let summary = serde_json::json!({
        "device": device_summary(config, &device)?,
        "pump_peak_power_w": peak,
        "pump_energy_nj": driven.pump.energy_j * 1e9,
        "pump_gdd_ps2": driven.pump.gdd_s2 * 1e24,
        "manley_rowe_gate": MANLEY_ROWE_GATE,
        "runs": records,
    });
    a.json("diagnostics.json", &summary).map_err(io)?;

    let series: Vec<Series> = series_data
        .iter()
        .map(|(l, pts)| Series { label: format!("λi0 = {l:.1} nm"), points: pts, markers: false })
        .collect();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, pts) in &series_data {
        for p in pts.iter().filter(|p| p.1 >= PLOT_FLOOR) {
            x0 = x0.min(p.0);
            x1 = x1.max(p.0);
        }
    }
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    let axes = Axes {
        title: "output spectra",
        x_label: "wavelength (nm)",
        y_label: "normalized intensity",
        x_range: (x0, x1),
        y_range: (0.0, 1.05),
    };
    a.text("spectra.svg", svg::line_plot(&axes, &series, None));
    Ok(a)
}

#[derive(Serialize)]
struct IntervalSummary {
    threshold: f64,
    lower_nm: Option<f64>,
    upper_nm: Option<f64>,
    width_nm: Option<f64>,
    lower_crossed: bool,
    upper_crossed: bool,
    bandwidth_nm: Option<f64>,
}

fn interval_summary(scan: &VisibilityScan, t: f64) -> IntervalSummary {
    match homogenization_interval(scan, t) {
        Ok(HomogenizationInterval { lower, upper, lower_crossed, upper_crossed, .. }) => IntervalSummary {
            threshold: t,
            lower_nm: Some(nm(lower)),
            upper_nm: Some(nm(upper)),
            width_nm: Some(nm(upper - lower)),
            lower_crossed,
            upper_crossed,
            bandwidth_nm: (lower_crossed && upper_crossed).then(|| nm(upper - lower)),
        },
        Err(_) => IntervalSummary {
            threshold: t,
            lower_nm: None,
            upper_nm: None,
            width_nm: None,
            lower_crossed: false,
            upper_crossed: false,
            bandwidth_nm: None,
        },
    }
}

pub fn cmd_visibility_scan(config: &RunConfig) -> Res<Artifacts> {
    let (_, device) = resolve(config)?;
    let vs = &config.visibility_scan;
    let mut base = config.scenario(&device);
    let peak = match vs.source {
        autohom_core::metrics::VisibilitySource::FromPropagation => {
            let (p, s) = pump_drive(config, &base)?;
            base = s;
            Some(p)
        }
        autohom_core::metrics::VisibilitySource::FromJcaMap => None,
    };
    let center = device.lambda_i;
    let lambdas: Vec<f64> = vs.offsets_nm.values().iter().map(|o| center + o * 1e-3).collect();
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    let mut curves = Vec::new();
    for &bw in &vs.input_bandwidths_nm {
        let mut s = base.clone();
        s.input.fwhm_nm = bw;
        let scan = visibility_scan(&s, &lambdas, vs.source, Execution::default())?;
        for &(l, v) in &scan.points {
            rows.push((nm(l), v, vs.source.label(), bw));
        }
        let intervals: Vec<IntervalSummary> = vs.thresholds.iter().map(|&t| interval_summary(&scan, t)).collect();
        summaries.push(serde_json::json!({
            "input_bandwidth_nm": bw,
            "min_visibility": scan.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
            "intervals": intervals,
        }));
        curves.push((bw, scan.points.iter().map(|&(l, v)| (nm(l - center), v)).collect::<Vec<_>>()));
    }
    let mut a = Artifacts::default();
    a.csv("visibility.csv", &["lambda_i0_nm", "visibility", "source", "input_bandwidth_nm"], &rows).map_err(io)?;
    let summary = serde_json::json!({
        "device": device_summary(config, &device)?,
        "source": vs.source.label(),
        "reference_lambda_nm": nm(center),
        "pump_peak_power_w": peak,
        "scans": summaries,
    });
    a.json("visibility.json", &summary).map_err(io)?;
    let offsets = vs.offsets_nm.values();
    let x0 = offsets.iter().copied().fold(f64::INFINITY, f64::min);
    let x1 = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1) = if x0.is_finite() { (x0, x1) } else { (-1.0, 1.0) };
    let y0 = rows.iter().map(|r| r.1).fold(0.8, f64::min);
    let series: Vec<Series> = curves
        .iter()
        .map(|(bw, pts)| Series { label: format!("{bw} nm input"), points: pts, markers: true })
        .collect();
    let axes = Axes {
        title: &format!("visibility about {:.2} nm", nm(center)),
        x_label: "input carrier offset (nm)",
        y_label: "visibility",
        x_range: (x0, x1),
        y_range: (y0, 1.0),
    };
    a.text("visibility.svg", svg::line_plot(&axes, &series, vs.thresholds.first().copied()));
    Ok(a)
}

pub fn cmd_efficiency_scan(config: &RunConfig) -> Res<Artifacts> {
    let (_, device) = resolve(config)?;
    let es = &config.efficiency_scan;
    let base = config.scenario(&device);
    let peak = config.pump_peak_power(&base)?;
    let gdds: Vec<f64> = es.gdd_ps2.values().iter().map(|g| g * 1e-24).collect();
    let points = efficiency_scan(&base, &es.input_bandwidths_nm, &gdds, peak, Execution::default())?;
    for p in &points {
        gate("manley_rowe", p.manley_rowe, MANLEY_ROWE_GATE)?;
    }
    let rows: Vec<(f64, f64, f64, f64)> =
        points.iter().map(|p| (p.gdd_s2 * 1e24, p.input_bandwidth_nm, p.efficiency, p.manley_rowe)).collect();
    let mut a = Artifacts::default();
    a.csv("efficiency.csv", &["gdd_ps2", "input_bandwidth_nm", "efficiency", "manley_rowe"], &rows).map_err(io)?;
    let curves: Vec<(f64, Vec<(f64, f64)>)> = es
        .input_bandwidths_nm
        .iter()
        .map(|&bw| {
            let pts = points
                .iter()
                .filter(|p| p.input_bandwidth_nm == bw)
                .map(|p: &EfficiencyPoint| (p.gdd_s2 * 1e24, p.efficiency))
                .collect();
            (bw, pts)
        })
        .collect();
    let per_bw: Vec<serde_json::Value> = curves
        .iter()
        .map(|(bw, pts)| {
            let monotone = pts.windows(2).all(|w| w[1].1 >= w[0].1);
            serde_json::json!({
                "input_bandwidth_nm": bw,
                "efficiency_tl": pts.first().map(|p| p.1),
                "efficiency_max": pts.iter().map(|p| p.1).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v)))),
                "monotone": monotone,
            })
        })
        .collect();
    let summary = serde_json::json!({
        "device": device_summary(config, &device)?,
        "pump_peak_power_w": peak,
        "pump_energy_tl_nj": energy_for_peak_power(&base.pump, peak) * 1e9,
        "manley_rowe_gate": MANLEY_ROWE_GATE,
        "curves": per_bw,
    });
    a.json("efficiency.json", &summary).map_err(io)?;
    let g = es.gdd_ps2.values();
    let x0 = g.iter().copied().fold(f64::INFINITY, f64::min);
    let x1 = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1) = if x0.is_finite() { (x0, x1) } else { (0.0, 1.0) };
    let y1 = rows.iter().map(|r| r.2).fold(0.0, f64::max).max(1e-3) * 1.05;
    let series: Vec<Series> = curves
        .iter()
        .map(|(bw, pts)| Series { label: format!("{bw} nm input"), points: pts, markers: false })
        .collect();
    let axes = Axes {
        title: "conversion efficiency",
        x_label: "pump GDD (ps²)",
        y_label: "efficiency",
        x_range: (x0, x1),
        y_range: (0.0, y1),
    };
    a.text("efficiency.svg", svg::line_plot(&axes, &series, None));
    Ok(a)
}
