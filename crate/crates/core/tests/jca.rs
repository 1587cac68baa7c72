use autohom_core::dispersion::CrystalDatabase;
use autohom_core::jca::*;
use autohom_core::presets;
use autohom_core::spectral::{FieldSpec, Role, SpectralAmplitude, SpectralGrid};
use num_complex::Complex64;
use proptest::prelude::*;

fn correlated_gaussian(n: usize, s_plus: f64, s_minus: f64, tilt: f64) -> JcaGrid {
    let span = 16.0 * s_plus.max(s_minus);
    let g = SpectralGrid::new(0.0, span, n).unwrap();
    let mut f = Vec::with_capacity(n * n);
    for i in 0..n {
        for o in 0..n {
            let (x, y) = (g.value(i), g.value(o));
            let a = (-(x + y).powi(2) / (2.0 * s_plus * s_plus) - (x - y).powi(2) / (2.0 * s_minus * s_minus)).exp();
            f.push(Complex64::from_polar(a, tilt * x));
        }
    }
    let mut jca = JcaGrid { grid_i: g, grid_o: g, f, normalized: false, raw_norm: 0.0 };
    let norm = jca.norm_sqr().sqrt();
    jca.f.iter_mut().for_each(|z| *z /= norm);
    jca.normalized = true;
    jca
}

#[test]
fn correlated_gaussian_matches_mehler_oracle() {
    // κₙ = (1−μ²)μ^{2n}, μ = (r−1)/(r+1), K = (r + 1/r)/2 with r = s₊/s₋
    for (sp, sm) in [(1.0, 1.0), (1.0, 0.25), (0.3, 1.2)] {
        let sd = schmidt_decompose(&correlated_gaussian(512, sp, sm, 0.7)).unwrap();
        let r: f64 = sp / sm;
        let k = 0.5 * (r + 1.0 / r);
        assert!((sd.schmidt_number - k).abs() < 1e-6 * k, "{sp} {sm}: {} vs {k}", sd.schmidt_number);
        let mu = (r - 1.0) / (r + 1.0);
        for n in 0..3 {
            let kn = (1.0 - mu * mu) * mu.powi(2 * n as i32);
            if kn > 1e-6 {
                assert!((sd.kappas[n] - kn).abs() < 1e-7, "mode {n}: {} vs {kn}", sd.kappas[n]);
            }
        }
    }
}

#[test]
fn ktp_device_schmidt_metrics() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let pump = presets::default_pump(&cfg);
    let (gi, go) = default_grids(&cfg, &pump, DEFAULT_JCA_POINTS).unwrap();
    let jca = build_jca(&cfg, &pump, gi, go).unwrap();
    assert!((jca.norm_sqr() - 1.0).abs() < 1e-10);
    let sd = schmidt_decompose(&jca).unwrap();
    assert!((1.0..=1.2).contains(&sd.schmidt_number), "{}", sd.schmidt_number);
    assert!((sd.purity * sd.schmidt_number - 1.0).abs() < 1e-12);
    assert!((sd.kappas.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    assert!(sd.kappas.windows(2).all(|w| w[0] >= w[1]));
    let rec = sd.reconstruct(sd.input_modes.len());
    let err: f64 = rec.iter().zip(&jca.f).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let norm: f64 = jca.f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!(err / norm < 1e-8, "{}", err / norm);

    // ‖β‖² = Σκₙ|⟨α|gₙ⟩|² for the map, and small-angle η ≈ 𝒞²‖β‖²
    let alpha = gi.sample(&SpectralAmplitude::new(&FieldSpec::gaussian(Role::Input, cfg.lambda_i, 5.0)).unwrap());
    let alpha_norm = gi.norm_sqr(&alpha).sqrt();
    let alpha: Vec<Complex64> = alpha.iter().map(|z| z / alpha_norm).collect();
    let beta = apply_jca_map(&jca, &alpha).unwrap();
    let beta_sq = go.norm_sqr(&beta);
    let modal: f64 = (0..sd.input_modes.len())
        .map(|n| sd.kappas[n] * gi.inner(&alpha, &sd.input_modes[n]).norm_sqr())
        .sum();
    assert!((beta_sq - modal).abs() < 1e-9 * modal, "{beta_sq} {modal}");
    let (_, eta) = conversion_probability(&sd, &alpha, 1e-3).unwrap();
    assert!((eta / (1e-6 * modal) - 1.0).abs() < 1e-5);
}

#[test]
fn coarse_grids_are_rejected() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let pump = presets::default_pump(&cfg);
    let (lobe_i, lobe_o) = pmf_lobe_widths(&cfg).unwrap();
    assert!(lobe_i > 1e3 * lobe_o, "input/pump matching flattens the PMF along ω_i");
    let gi = SpectralGrid::new(cfg.omega_i(), 5.0 * pump.omega_fwhm(), 256).unwrap();
    let go = SpectralGrid::new(cfg.omega_o(), 200.0 * lobe_o, 256).unwrap();
    assert!(matches!(build_jca(&cfg, &pump, gi, go), Err(autohom_core::Error::GridTooCoarse(_))));
}

#[test]
fn evolution_parameter_scales_with_length_and_pump() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let c1 = evolution_parameter(&cfg, presets::BEAM_SIGMAS, presets::D_EFF, 1e8, 1.0).unwrap();
    let c4 = evolution_parameter(&cfg, presets::BEAM_SIGMAS, presets::D_EFF, 4e8, 1.0).unwrap();
    assert!((c4 / c1 - 2.0).abs() < 1e-12);
    let mut long = cfg.clone();
    long.length_m *= 2.0;
    let c2 = evolution_parameter(&long, presets::BEAM_SIGMAS, presets::D_EFF, 1e8, 1.0).unwrap();
    assert!((c2 / c1 - 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn schmidt_weights_sum_to_one(sp in 0.2f64..2.0, sm in 0.2f64..2.0, tilt in -2.0f64..2.0) {
        let sd = schmidt_decompose(&correlated_gaussian(256, sp, sm, tilt)).unwrap();
        prop_assert!((sd.kappas.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(sd.schmidt_number >= 1.0 - 1e-12);
        prop_assert!(sd.purity <= 1.0 + 1e-12);
    }
}
