use autohom_core::constants::{omega_from_um, um_from_omega, C};
use autohom_core::dispersion::*;
use autohom_core::Error;
use proptest::prelude::*;

fn ktp() -> CrystalModel {
    CrystalDatabase::bundled().get("ktp_kato2002").unwrap().clone()
}

fn k_of_omega(m: &CrystalModel, s: &OpticalAxisSpec, w: f64) -> f64 {
    refractive_index(m, s, um_from_omega(w)).unwrap() * w / C
}

#[test]
fn group_index_and_gvd_match_omega_derivatives_of_k() {
    let m = ktp();
    let s = OpticalAxisSpec::biaxial(Polarization::Extraordinary, PrincipalPlane::XZ, 90.0);
    for lambda in [0.55, 0.84, 1.55, 2.5] {
        let w = omega_from_um(lambda);
        let h = w * 2e-4;
        // Richardson-extrapolated central differences in ω
        let d1 = |h: f64| (k_of_omega(&m, &s, w + h) - k_of_omega(&m, &s, w - h)) / (2.0 * h);
        let d2 = |h: f64| {
            (k_of_omega(&m, &s, w + h) - 2.0 * k_of_omega(&m, &s, w) + k_of_omega(&m, &s, w - h)) / (h * h)
        };
        let k1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
        let k2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
        let d = dispersion_at(&m, &s, lambda, DerivativeMethod::Analytic).unwrap();
        assert!((d.v_inv - k1).abs() < 1e-9 * k1, "{lambda}: {} vs {k1}", d.v_inv);
        assert!((d.gvd - k2).abs() < 1e-4 * k2.abs(), "{lambda}: {} vs {k2}", d.gvd);
    }
}

#[test]
fn every_bundled_crystal_is_physical_over_its_range() {
    let db = CrystalDatabase::bundled();
    assert_eq!(db.len(), 7);
    for (id, m) in db.iter() {
        let (lo, hi) = m.validity();
        for k in 0..=40 {
            let l = lo + (hi - lo) * k as f64 / 40.0;
            let specs = match m.symmetry() {
                Symmetry::Uniaxial => vec![
                    OpticalAxisSpec::uniaxial(Polarization::Ordinary, 0.0),
                    OpticalAxisSpec::uniaxial(Polarization::Extraordinary, 90.0),
                ],
                Symmetry::Biaxial => vec![
                    OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::YZ, 0.0),
                    OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::XZ, 0.0),
                    OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::XY, 90.0),
                ],
            };
            let ns: Vec<f64> = specs.iter().map(|s| refractive_index(m, s, l).unwrap()).collect();
            assert!(ns.iter().all(|&n| n > 1.0 && n < 3.5), "{id} at {l}: {ns:?}");
            if m.symmetry() == Symmetry::Biaxial {
                assert!(ns[0] < ns[1] && ns[1] < ns[2], "{id} at {l}: {ns:?}");
            }
        }
    }
}

#[test]
fn lookups_by_label_and_name() {
    let db = CrystalDatabase::bundled();
    assert_eq!(db.get("KTP (Kato 2002)").unwrap().name, "KTP");
    assert_eq!(db.get("KTP").unwrap().name, "KTP");
    assert!(db.get("BBO").is_err(), "two BBO fits make the bare name ambiguous");
    assert!(db.get("quartz").is_err());
}

#[test]
fn environment_directory_overrides_bundle() {
    let dir = std::env::temp_dir().join(format!("autohom-crystals-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = r#"{"name": "Glass", "symmetry": "uniaxial", "citation": "test",
        "axes": {"o": {"variant": "constant", "coefficients": [1.5], "validity": [0.2, 3.0]},
                 "e": {"variant": "constant", "coefficients": [1.6], "validity": [0.2, 3.0]}}}"#;
    std::fs::write(dir.join("glass.json"), text).unwrap();
    std::env::set_var(CRYSTAL_DIR_ENV, &dir);
    let db = CrystalDatabase::from_env().unwrap();
    std::env::remove_var(CRYSTAL_DIR_ENV);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(db.len(), 1);
    let g = db.get("glass").unwrap();
    let e45 = refractive_index(g, &OpticalAxisSpec::uniaxial(Polarization::Extraordinary, 45.0), 1.0).unwrap();
    let oracle = 1.0 / (0.5 / 1.5f64.powi(2) + 0.5 / 1.6f64.powi(2)).sqrt();
    assert!((e45 - oracle).abs() < 1e-14);
    assert_eq!(group_index(g, &OpticalAxisSpec::uniaxial(Polarization::Ordinary, 0.0), 1.0).unwrap(), 1.5);
}

#[test]
fn out_of_range_reports_model_and_bounds() {
    let m = ktp();
    let s = OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::XZ, 90.0);
    match refractive_index(&m, &s, 4.0) {
        Err(Error::OutOfValidityRange { lo, hi, .. }) => assert_eq!((lo, hi), (0.43, 3.54)),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn finite_differences_agree_with_analytic(l in 0.5f64..3.4, theta in 0.0f64..90.0) {
        let m = ktp();
        let s = OpticalAxisSpec::biaxial(Polarization::Extraordinary, PrincipalPlane::XZ, theta);
        let a = index_jet(&m, &s, l).unwrap();
        let f = index_jet_fd(&m, &s, l).unwrap();
        prop_assert!((a.n - f.n).abs() < 1e-15);
        prop_assert!((a.dn - f.dn).abs() < 1e-6);
        prop_assert!((a.d2n - f.d2n).abs() < 1e-4 * a.d2n.abs().max(1.0));
    }

    #[test]
    fn extraordinary_index_lies_between_principal_indices(l in 0.5f64..3.4, theta in 0.0f64..90.0) {
        let m = ktp();
        let n_x = refractive_index(&m, &OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::YZ, 0.0), l).unwrap();
        let n_z = refractive_index(&m, &OpticalAxisSpec::biaxial(Polarization::Extraordinary, PrincipalPlane::XZ, 90.0), l).unwrap();
        let n = refractive_index(&m, &OpticalAxisSpec::biaxial(Polarization::Extraordinary, PrincipalPlane::XZ, theta), l).unwrap();
        prop_assert!(n >= n_x - 1e-15 && n <= n_z + 1e-15);
        let n2 = refractive_index(&m, &OpticalAxisSpec::biaxial(Polarization::Extraordinary, PrincipalPlane::XZ, (theta + 0.5).min(90.0)), l).unwrap();
        prop_assert!(n2 >= n - 1e-15);
    }

    #[test]
    fn normal_dispersion_in_the_visible(l in 0.5f64..1.2) {
        let m = ktp();
        let s = OpticalAxisSpec::biaxial(Polarization::Ordinary, PrincipalPlane::XZ, 90.0);
        let d = dispersion_at(&m, &s, l, DerivativeMethod::Analytic).unwrap();
        prop_assert!(d.group_index > d.n);
        prop_assert!(d.gvd > 0.0);
        prop_assert!((d.v_inv * C - d.group_index).abs() < 1e-12);
    }
}
