use autohom_core::dispersion::CrystalDatabase;
use autohom_core::metrics::*;
use autohom_core::par::Execution;
use autohom_core::presets;
use autohom_core::propagation::TimeGrid;
use num_complex::Complex64;
use proptest::prelude::*;

fn pulse(grid: &TimeGrid, t0: f64, width: f64, chirp: f64, amp: f64) -> Vec<Complex64> {
    (0..grid.n_points)
        .map(|k| {
            let t = grid.time(k) - t0;
            Complex64::from_polar(amp * (-t * t / (2.0 * width * width)).exp(), chirp * t * t)
        })
        .collect()
}

fn energy(a: &[Complex64], dt: f64) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>() * dt
}

#[test]
fn disjoint_spectra_do_not_interfere() {
    let g = TimeGrid::new(2048, 400.0).unwrap();
    let a = pulse(&g, 0.0, 10.0, 0.0, 1.0);
    let v = visibility(&g, Envelope { samples: &a, carrier: 1.0 }, Envelope { samples: &a, carrier: 3.0 }).unwrap();
    assert!(v < 1e-12, "{v}");
}

#[test]
fn shifted_gaussians_match_the_analytic_cross_correlation() {
    // Γ(τ) of two Gaussians of rms width w separated by t0: √π·w·exp(−(τ − t0)²/(4w²))
    let g = TimeGrid::new(4096, 400.0).unwrap();
    let (w, t0) = (5.0, 20.0);
    let a = pulse(&g, 0.0, w, 0.0, 1.0);
    let b = pulse(&g, t0, w, 0.0, 1.0);
    let gamma =
        cross_correlation_envelope(&g, Envelope { samples: &a, carrier: 0.0 }, Envelope { samples: &b, carrier: 0.0 })
            .unwrap();
    for k in (0..g.n_points).step_by(37) {
        let tau = g.time(k);
        let oracle = std::f64::consts::PI.sqrt() * w * (-(tau - t0).powi(2) / (4.0 * w * w)).exp();
        assert!((gamma[k].norm() - oracle).abs() < 1e-10, "{tau}");
    }
}

#[test]
fn jca_map_scan_is_symmetric_about_the_reference_and_bounded() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let pump = presets::default_pump(&cfg);
    let input = presets::default_input(&cfg);
    let lambdas = carrier_list(cfg.lambda_i, 12.0, 3.0);
    let scan = visibility_scan_jca(&cfg, &pump, &input, &lambdas, Execution::Parallel).unwrap();
    let seq = visibility_scan_jca(&cfg, &pump, &input, &lambdas, Execution::Sequential).unwrap();
    assert_eq!(scan, seq);
    let mid = scan.points.len() / 2;
    assert!((scan.points[mid].1 - 1.0).abs() < 1e-12);
    for (l, v) in &scan.points {
        assert!((0.0..=1.0).contains(v), "{l}: {v}");
    }
    // visibility falls off on both sides of the matched carrier
    assert!(scan.points[0].1 < scan.points[mid - 1].1 && scan.points[mid - 1].1 < 1.0);
    assert!(scan.points[scan.points.len() - 1].1 < scan.points[mid + 1].1);
}

#[test]
fn propagation_scan_agrees_with_jca_map_at_low_conversion() {
    let cfg = presets::ktp_gvm_device(&CrystalDatabase::bundled()).unwrap();
    let mut base = presets::default_scenario(&cfg).with_peak_power(100.0);
    base.min_time_points = 1 << 13;
    base.stepper.n_steps = 128;
    let lambdas = carrier_list(cfg.lambda_i, 16.0, 8.0);
    let prop = visibility_scan(&base, &lambdas, VisibilitySource::FromPropagation, Execution::Parallel).unwrap();
    let map = visibility_scan(&base, &lambdas, VisibilitySource::FromJcaMap, Execution::Parallel).unwrap();
    for (p, m) in prop.points.iter().zip(&map.points) {
        assert!((p.1 - m.1).abs() <= 0.03, "{}: {} vs {}", p.0, p.1, m.1);
    }
}

proptest! {
    #[test]
    fn visibility_is_symmetric_and_bounded(
        w1 in 3.0f64..12.0, w2 in 3.0f64..12.0, t1 in -30.0f64..30.0, t2 in -30.0f64..30.0,
        c1 in -0.02f64..0.02, c2 in -0.02f64..0.02, a2 in 0.1f64..5.0, dw in -0.3f64..0.3,
    ) {
        let g = TimeGrid::new(2048, 300.0).unwrap();
        let a = pulse(&g, t1, w1, c1, 1.0);
        let b = pulse(&g, t2, w2, c2, a2);
        let ea = Envelope { samples: &a, carrier: 1.0 };
        let eb = Envelope { samples: &b, carrier: 1.0 + dw };
        let v12 = visibility(&g, ea, eb).unwrap();
        let v21 = visibility(&g, eb, ea).unwrap();
        prop_assert!((v12 - v21).abs() < 1e-14);
        let (p1, p2) = (energy(&a, g.dt), energy(&b, g.dt));
        prop_assert!(v12 <= 2.0 * (p1 * p2).sqrt() / (p1 + p2) + 1e-12);
        prop_assert!((visibility(&g, ea, ea).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_ignores_global_phase_and_delay(phase in 0.0f64..6.3, shift in -40i64..40) {
        let g = TimeGrid::new(1024, 200.0).unwrap();
        let a = pulse(&g, 0.0, 6.0, 0.01, 1.0);
        let b = pulse(&g, 5.0, 4.0, -0.01, 1.0);
        let n = g.n_points as i64;
        let moved: Vec<Complex64> = (0..n)
            .map(|k| b[(k - shift).rem_euclid(n) as usize] * Complex64::from_polar(1.0, phase))
            .collect();
        let e = |s: &[Complex64]| visibility(&g, Envelope { samples: &a, carrier: 2.0 }, Envelope { samples: s, carrier: 2.0 }).unwrap();
        prop_assert!((e(&b) - e(&moved)).abs() < 1e-9);
    }

    #[test]
    fn offset_gaussians_match_oracle(sigma in 0.2f64..1.0, delta in 0.0f64..1.5) {
        let n = 1024;
        let d = 0.025;
        let spec = |c: f64| -> Vec<Complex64> {
            (0..n).map(|k| {
                let w = (k as f64 - n as f64 / 2.0) * d - c;
                Complex64::new((-w * w / (4.0 * sigma * sigma)).exp(), 0.0)
            }).collect()
        };
        let v = spectral_visibility(d, &spec(-delta / 2.0), &spec(delta / 2.0)).unwrap();
        prop_assert!((v - gaussian_visibility(sigma, delta)).abs() < 1e-8);
    }
}
