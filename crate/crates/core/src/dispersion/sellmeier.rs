//! Closed set of dispersion formulas used by the bundled crystal data.
//!
//! Every form is written as n²(λ) = F(x) with x = λ² (λ in µm), which keeps the
//! analytic first and second wavelength derivatives short.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Refractive index and its first two derivatives with respect to wavelength
/// (µm⁻¹ and µm⁻²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexJet {
    pub n: f64,
    pub dn: f64,
    pub d2n: f64,
}

impl IndexJet {
    /// Builds the jet of n = √F from F = n² and its λ-derivatives.
    fn from_n_squared(f: f64, df: f64, d2f: f64) -> Self {
        let n = f.sqrt();
        let dn = df / (2.0 * n);
        let d2n = (d2f - 2.0 * dn * dn) / (2.0 * n);
        IndexJet { n, dn, d2n }
    }

    /// Index of the in-plane wave on a principal-plane index ellipse:
    /// 1/n² = cos²/a² + sin²/b².
    pub fn ellipse(a: IndexJet, b: IndexJet, angle_rad: f64) -> IndexJet {
        let (s, c) = angle_rad.sin_cos();
        let (c2, s2) = (c * c, s * s);
        let u = c2 / (a.n * a.n) + s2 / (b.n * b.n);
        let du = -2.0 * (c2 * a.dn / a.n.powi(3) + s2 * b.dn / b.n.powi(3));
        let d2u = c2 * (6.0 * a.dn * a.dn / a.n.powi(4) - 2.0 * a.d2n / a.n.powi(3))
            + s2 * (6.0 * b.dn * b.dn / b.n.powi(4) - 2.0 * b.d2n / b.n.powi(3));
        let n = u.powf(-0.5);
        let dn = -0.5 * u.powf(-1.5) * du;
        let d2n = 0.75 * u.powf(-2.5) * du * du - 0.5 * u.powf(-1.5) * d2u;
        IndexJet { n, dn, d2n }
    }
}

/// Identifier of the algebraic form, as written in crystal data files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// n = A
    Constant,
    /// n² = A + B/(λ² − C) − Dλ²
    PoleIr,
    /// n² = A + B/(λ² − C) − Dλ² + Eλ⁴ − Fλ⁶
    PoleIrPoly,
    /// n² = A + B/(λ² − C) + D/(λ² − E)
    DoublePole,
    /// n² = 1 + Σₖ Bₖλ²/(λ² − Cₖ), coefficients [B₁, C₁, B₂, C₂, …]
    Sellmeier,
    /// Measured (λ, n) pairs, natural cubic spline.
    Tabulated,
}

/// A validated dispersion formula for one principal axis.
#[derive(Debug, Clone, PartialEq)]
pub enum SellmeierForm {
    Constant(f64),
    PoleIr([f64; 4]),
    PoleIrPoly([f64; 6]),
    DoublePole([f64; 5]),
    Sellmeier(Vec<(f64, f64)>),
    Tabulated(CubicSpline),
}

fn fixed<const N: usize>(variant: Variant, c: &[f64]) -> Result<[f64; N]> {
    c.try_into().map_err(|_| {
        Error::InvalidModel(format!(
            "{variant:?} takes {N} coefficients, got {}",
            c.len()
        ))
    })
}

impl SellmeierForm {
    pub fn new(variant: Variant, coefficients: &[f64], table: Option<&[[f64; 2]]>) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidModel("non-finite coefficient".into()));
        }
        Ok(match variant {
            Variant::Constant => SellmeierForm::Constant(fixed::<1>(variant, coefficients)?[0]),
            Variant::PoleIr => SellmeierForm::PoleIr(fixed(variant, coefficients)?),
            Variant::PoleIrPoly => SellmeierForm::PoleIrPoly(fixed(variant, coefficients)?),
            Variant::DoublePole => SellmeierForm::DoublePole(fixed(variant, coefficients)?),
            Variant::Sellmeier => {
                if coefficients.is_empty() || coefficients.len() % 2 != 0 {
                    return Err(Error::InvalidModel(
                        "sellmeier takes (B, C) pairs".into(),
                    ));
                }
                SellmeierForm::Sellmeier(coefficients.chunks(2).map(|p| (p[0], p[1])).collect())
            }
            Variant::Tabulated => {
                let table = table.ok_or_else(|| {
                    Error::InvalidModel("tabulated variant needs a `table` of [λ, n] pairs".into())
                })?;
                SellmeierForm::Tabulated(CubicSpline::new(table)?)
            }
        })
    }

    pub fn variant(&self) -> Variant {
        match self {
            SellmeierForm::Constant(_) => Variant::Constant,
            SellmeierForm::PoleIr(_) => Variant::PoleIr,
            SellmeierForm::PoleIrPoly(_) => Variant::PoleIrPoly,
            SellmeierForm::DoublePole(_) => Variant::DoublePole,
            SellmeierForm::Sellmeier(_) => Variant::Sellmeier,
            SellmeierForm::Tabulated(_) => Variant::Tabulated,
        }
    }

    /// Index only.
    pub fn index(&self, lambda_um: f64) -> f64 {
        self.jet(lambda_um).n
    }

    /// Index and analytic wavelength derivatives.
    pub fn jet(&self, lambda_um: f64) -> IndexJet {
        let l = lambda_um;
        let x = l * l;
        // (F, dF/dx, d²F/dx²)
        let pole = |b: f64, c: f64| {
            let d = x - c;
            (b / d, -b / (d * d), 2.0 * b / (d * d * d))
        };
        let (f, fx, fxx) = match self {
            SellmeierForm::Constant(n0) => {
                return IndexJet { n: *n0, dn: 0.0, d2n: 0.0 };
            }
            SellmeierForm::Tabulated(spline) => return spline.jet(l),
            SellmeierForm::PoleIr([a, b, c, d]) => {
                let (p, px, pxx) = pole(*b, *c);
                (a + p - d * x, px - d, pxx)
            }
            SellmeierForm::PoleIrPoly([a, b, c, d, e, g]) => {
                let (p, px, pxx) = pole(*b, *c);
                (
                    a + p - d * x + e * x * x - g * x * x * x,
                    px - d + 2.0 * e * x - 3.0 * g * x * x,
                    pxx + 2.0 * e - 6.0 * g * x,
                )
            }
            SellmeierForm::DoublePole([a, b, c, d, e]) => {
                let (p1, p1x, p1xx) = pole(*b, *c);
                let (p2, p2x, p2xx) = pole(*d, *e);
                (a + p1 + p2, p1x + p2x, p1xx + p2xx)
            }
            SellmeierForm::Sellmeier(terms) => {
                // Bx/(x − C) = B + BC/(x − C)
                terms.iter().fold((1.0, 0.0, 0.0), |(f, fx, fxx), &(b, c)| {
                    let (p, px, pxx) = pole(b * c, c);
                    (f + b + p, fx + px, fxx + pxx)
                })
            }
        };
        // chain rule from x = λ² to λ
        let df = 2.0 * l * fx;
        let d2f = 2.0 * fx + 4.0 * x * fxx;
        IndexJet::from_n_squared(f, df, d2f)
    }
}

/// Natural cubic spline through (λ, n) samples with strictly increasing λ.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(points: &[[f64; 2]]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidModel("tabulated index needs at least 3 points".into()));
        }
        let x: Vec<f64> = points.iter().map(|p| p[0]).collect();
        let y: Vec<f64> = points.iter().map(|p| p[1]).collect();
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidModel("tabulated wavelengths must increase strictly".into()));
        }
        let n = x.len();
        // tridiagonal system for interior second derivatives (Thomas algorithm)
        let mut m = vec![0.0; n];
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            let a = h0;
            let b = 2.0 * (h0 + h1);
            let c = h1;
            let d = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            let denom = b - a * c_prime[i - 1];
            c_prime[i] = c / denom;
            d_prime[i] = (d - a * d_prime[i - 1]) / denom;
        }
        for i in (1..n - 1).rev() {
            m[i] = d_prime[i] - c_prime[i] * m[i + 1];
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    pub fn jet(&self, t: f64) -> IndexJet {
        let n = self.x.len();
        let i = match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        let val = a * y0 + b * y1 + ((a.powi(3) - a) * m0 + (b.powi(3) - b) * m1) * h * h / 6.0;
        let d1 = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let d2 = a * m0 + b * m1;
        IndexJet { n: val, dn: d1, d2n: d2 }
    }
}
