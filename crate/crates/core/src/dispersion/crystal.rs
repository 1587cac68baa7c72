//! Crystal dispersion models and propagation geometry.

use serde::{Deserialize, Serialize};

use super::sellmeier::{IndexJet, SellmeierForm, Variant};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Uniaxial,
    Biaxial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    #[serde(alias = "o")]
    Ordinary,
    #[serde(alias = "e")]
    Extraordinary,
}

impl Polarization {
    pub fn short(self) -> &'static str {
        match self {
            Polarization::Ordinary => "o",
            Polarization::Extraordinary => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrincipalPlane {
    XY,
    XZ,
    YZ,
}

impl PrincipalPlane {
    pub const ALL: [PrincipalPlane; 3] = [PrincipalPlane::XY, PrincipalPlane::XZ, PrincipalPlane::YZ];
}

impl std::fmt::Display for PrincipalPlane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PrincipalPlane::XY => "XY",
            PrincipalPlane::XZ => "XZ",
            PrincipalPlane::YZ => "YZ",
        })
    }
}

/// Polarization and propagation direction of one field.
///
/// `theta_deg` is measured from Z, `phi_deg` from X. Biaxial crystals are
/// restricted to principal planes: XZ means φ = 0, YZ means φ = 90 and XY
/// means θ = 90.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpticalAxisSpec {
    pub polarization: Polarization,
    #[serde(default)]
    pub theta_deg: f64,
    #[serde(default)]
    pub phi_deg: f64,
    #[serde(default)]
    pub principal_plane: Option<PrincipalPlane>,
}

impl OpticalAxisSpec {
    pub fn uniaxial(polarization: Polarization, theta_deg: f64) -> Self {
        OpticalAxisSpec { polarization, theta_deg, phi_deg: 0.0, principal_plane: None }
    }

    /// Direction inside a biaxial principal plane, `angle_deg` being θ for XZ
    /// and YZ and φ for XY.
    pub fn biaxial(polarization: Polarization, plane: PrincipalPlane, angle_deg: f64) -> Self {
        let (theta_deg, phi_deg) = match plane {
            PrincipalPlane::XZ => (angle_deg, 0.0),
            PrincipalPlane::YZ => (angle_deg, 90.0),
            PrincipalPlane::XY => (90.0, angle_deg),
        };
        OpticalAxisSpec { polarization, theta_deg, phi_deg, principal_plane: Some(plane) }
    }

    /// The angle that varies inside the plane (θ, or φ for XY).
    pub fn tuning_angle_deg(&self) -> f64 {
        match self.principal_plane {
            Some(PrincipalPlane::XY) => self.phi_deg,
            _ => self.theta_deg,
        }
    }

    pub fn with_tuning_angle(mut self, angle_deg: f64) -> Self {
        match self.principal_plane {
            Some(PrincipalPlane::XY) => self.phi_deg = angle_deg,
            _ => self.theta_deg = angle_deg,
        }
        self
    }

    pub fn validate(&self, symmetry: Symmetry) -> Result<()> {
        let in_range = |a: f64| (0.0..=90.0).contains(&a);
        if !in_range(self.theta_deg) || !in_range(self.phi_deg) {
            return Err(Error::InvalidGeometry(format!(
                "angles must lie in [0, 90] deg, got theta={} phi={}",
                self.theta_deg, self.phi_deg
            )));
        }
        match (symmetry, self.principal_plane) {
            (Symmetry::Uniaxial, Some(p)) => Err(Error::InvalidGeometry(format!(
                "principal plane {p} given for a uniaxial crystal"
            ))),
            (Symmetry::Biaxial, None) => {
                Err(Error::InvalidGeometry("biaxial crystal needs a principal plane".into()))
            }
            (Symmetry::Biaxial, Some(p)) => {
                let off = match p {
                    PrincipalPlane::XZ => self.phi_deg,
                    PrincipalPlane::YZ => 90.0 - self.phi_deg,
                    PrincipalPlane::XY => 90.0 - self.theta_deg,
                };
                if off.abs() > 1e-9 {
                    return Err(Error::InvalidGeometry(format!(
                        "direction theta={} phi={} is not in the {p} plane",
                        self.theta_deg, self.phi_deg
                    )));
                }
                Ok(())
            }
            (Symmetry::Uniaxial, None) => Ok(()),
        }
    }
}

/// Dispersion of one principal axis with its fitted wavelength range [µm].
#[derive(Debug, Clone, PartialEq)]
pub struct AxisDispersion {
    pub form: SellmeierForm,
    pub validity: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Axes {
    Uniaxial { o: AxisDispersion, e: AxisDispersion },
    Biaxial { x: AxisDispersion, y: AxisDispersion, z: AxisDispersion },
}

/// A named dispersion model for one crystal from one reference.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalModel {
    pub name: String,
    pub citation: String,
    pub axes: Axes,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisFile {
    variant: Variant,
    #[serde(default)]
    coefficients: Vec<f64>,
    #[serde(default)]
    table: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    validity: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrystalFile {
    name: String,
    symmetry: Symmetry,
    axes: std::collections::BTreeMap<String, AxisFile>,
    #[serde(default)]
    citation: String,
}

fn parse_axis(label: &str, a: &AxisFile) -> Result<AxisDispersion> {
    let form = SellmeierForm::new(a.variant, &a.coefficients, a.table.as_deref())
        .map_err(|e| Error::InvalidModel(format!("axis {label}: {e}")))?;
    let validity = match (a.validity, &form) {
        (Some([lo, hi]), _) => (lo, hi),
        (None, SellmeierForm::Tabulated(s)) => s.range(),
        (None, SellmeierForm::Constant(_)) => (0.0, f64::INFINITY),
        (None, _) => {
            return Err(Error::InvalidModel(format!("axis {label}: missing validity range")))
        }
    };
    if !(validity.0 >= 0.0 && validity.1 > validity.0) {
        return Err(Error::InvalidModel(format!("axis {label}: bad validity range {validity:?}")));
    }
    if let SellmeierForm::Tabulated(s) = &form {
        let (lo, hi) = s.range();
        if validity.0 < lo || validity.1 > hi {
            return Err(Error::InvalidModel(format!(
                "axis {label}: validity extends beyond the tabulated data"
            )));
        }
    }
    Ok(AxisDispersion { form, validity })
}

impl CrystalModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CrystalFile = serde_json::from_str(text)?;
        let get = |k: &str| {
            file.axes
                .get(k)
                .ok_or_else(|| Error::InvalidModel(format!("{}: missing axis {k}", file.name)))
                .and_then(|a| parse_axis(k, a))
        };
        let expected: &[&str] = match file.symmetry {
            Symmetry::Uniaxial => &["o", "e"],
            Symmetry::Biaxial => &["X", "Y", "Z"],
        };
        if let Some(extra) = file.axes.keys().find(|k| !expected.contains(&k.as_str())) {
            return Err(Error::InvalidModel(format!("{}: unexpected axis {extra}", file.name)));
        }
        let axes = match file.symmetry {
            Symmetry::Uniaxial => Axes::Uniaxial { o: get("o")?, e: get("e")? },
            Symmetry::Biaxial => Axes::Biaxial { x: get("X")?, y: get("Y")?, z: get("Z")? },
        };
        let model = CrystalModel { name: file.name, citation: file.citation, axes };
        model.check_invariants()?;
        Ok(model)
    }

    /// Isotropic model with a single wavelength-independent index.
    pub fn constant(name: &str, n: f64) -> Self {
        let axis = AxisDispersion { form: SellmeierForm::Constant(n), validity: (0.0, f64::INFINITY) };
        CrystalModel {
            name: name.to_string(),
            citation: String::new(),
            axes: Axes::Uniaxial { o: axis.clone(), e: axis },
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        match self.axes {
            Axes::Uniaxial { .. } => Symmetry::Uniaxial,
            Axes::Biaxial { .. } => Symmetry::Biaxial,
        }
    }

    /// Display label such as "KTP (Kato 2002)".
    pub fn label(&self) -> String {
        if self.citation.is_empty() {
            self.name.clone()
        } else {
            format!("{} ({})", self.name, self.citation)
        }
    }

    fn axis_list(&self) -> Vec<&AxisDispersion> {
        match &self.axes {
            Axes::Uniaxial { o, e } => vec![o, e],
            Axes::Biaxial { x, y, z } => vec![x, y, z],
        }
    }

    /// Wavelength interval [µm] where every axis is valid.
    pub fn validity(&self) -> (f64, f64) {
        self.axis_list()
            .iter()
            .fold((0.0_f64, f64::INFINITY), |(lo, hi), a| (lo.max(a.validity.0), hi.min(a.validity.1)))
    }

    pub(crate) fn check_lambda(&self, lambda_um: f64, strict: bool) -> Result<()> {
        let (lo, hi) = self.validity();
        let inside = if strict {
            lambda_um > lo && lambda_um < hi
        } else {
            lambda_um >= lo && lambda_um <= hi
        };
        if inside && lambda_um.is_finite() {
            Ok(())
        } else {
            Err(Error::OutOfValidityRange { model: self.label(), lambda_um, lo, hi })
        }
    }

    /// Principal-axis indices evaluated without range checks, in the order
    /// (o, e) or (X, Y, Z).
    pub(crate) fn axis_jets(&self, lambda_um: f64) -> Vec<IndexJet> {
        self.axis_list().iter().map(|a| a.form.jet(lambda_um)).collect()
    }

    fn check_invariants(&self) -> Result<()> {
        let (lo, hi) = self.validity();
        if !(hi > lo) {
            return Err(Error::InvalidModel(format!("{}: axes share no valid wavelengths", self.label())));
        }
        let hi_s = if hi.is_finite() { hi } else { lo + 10.0 };
        for k in 0..10 {
            let l = lo + (hi_s - lo) * k as f64 / 9.0;
            let jets = self.axis_jets(l);
            if jets.iter().any(|j| !j.n.is_finite() || j.n <= 1.0) {
                return Err(Error::InvalidModel(format!(
                    "{}: index not real and > 1 at {l} µm",
                    self.label()
                )));
            }
            if self.symmetry() == Symmetry::Biaxial && !(jets[0].n < jets[1].n && jets[1].n < jets[2].n) {
                return Err(Error::InvalidModel(format!(
                    "{}: axes must satisfy nX < nY < nZ (violated at {l} µm)",
                    self.label()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_validation() {
        let e = Polarization::Extraordinary;
        assert!(OpticalAxisSpec::uniaxial(e, 30.0).validate(Symmetry::Uniaxial).is_ok());
        assert!(OpticalAxisSpec::uniaxial(e, 95.0).validate(Symmetry::Uniaxial).is_err());
        assert!(OpticalAxisSpec::uniaxial(e, 30.0).validate(Symmetry::Biaxial).is_err());
        let xz = OpticalAxisSpec::biaxial(e, PrincipalPlane::XZ, 40.0);
        assert!(xz.validate(Symmetry::Biaxial).is_ok());
        assert!(xz.validate(Symmetry::Uniaxial).is_err());
        let skew = OpticalAxisSpec { phi_deg: 10.0, ..xz };
        assert!(skew.validate(Symmetry::Biaxial).is_err());
        let xy = OpticalAxisSpec::biaxial(e, PrincipalPlane::XY, 25.0);
        assert_eq!((xy.theta_deg, xy.phi_deg), (90.0, 25.0));
        assert_eq!(xy.with_tuning_angle(5.0).phi_deg, 5.0);
    }

    #[test]
    fn axis_order_is_enforced() {
        let text = r#"{"name":"bad","symmetry":"biaxial","citation":"",
            "axes":{"X":{"variant":"constant","coefficients":[1.8]},
                    "Y":{"variant":"constant","coefficients":[1.7]},
                    "Z":{"variant":"constant","coefficients":[1.9]}}}"#;
        assert!(matches!(CrystalModel::from_json(text), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn unknown_fields_and_axes_are_rejected() {
        let extra_key = r#"{"name":"a","symmetry":"uniaxial","colour":1,
            "axes":{"o":{"variant":"constant","coefficients":[1.5]},
                    "e":{"variant":"constant","coefficients":[1.6]}}}"#;
        assert!(CrystalModel::from_json(extra_key).is_err());
        let extra_axis = r#"{"name":"a","symmetry":"uniaxial",
            "axes":{"o":{"variant":"constant","coefficients":[1.5]},
                    "e":{"variant":"constant","coefficients":[1.6]},
                    "X":{"variant":"constant","coefficients":[1.6]}}}"#;
        assert!(CrystalModel::from_json(extra_axis).is_err());
    }

    #[test]
    fn tabulated_axis_takes_validity_from_table() {
        let text = r#"{"name":"wg","symmetry":"uniaxial","citation":"measured",
            "axes":{"o":{"variant":"tabulated","table":[[0.5,1.80],[1.0,1.75],[1.5,1.73],[2.0,1.72]]},
                    "e":{"variant":"tabulated","table":[[0.5,1.90],[1.0,1.84],[1.5,1.82],[2.0,1.81]]}}}"#;
        let m = CrystalModel::from_json(text).unwrap();
        assert_eq!(m.validity(), (0.5, 2.0));
        assert_eq!(m.label(), "wg (measured)");
    }
}
