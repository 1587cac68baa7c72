//! Scalar root bracketing and Brent refinement.

use crate::error::{Error, Result};

/// Adjacent sample pairs of `xs` whose function values differ in sign.
/// Samples where `f` fails or is non-finite break the chain.
pub fn sign_changes<F>(xs: &[f64], mut f: F) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> Option<f64>,
{
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in xs {
        let y = f(x).filter(|y| y.is_finite());
        match (prev, y) {
            (_, Some(y)) if y == 0.0 => out.push((x, x)),
            (Some((xp, yp)), Some(y)) if yp != 0.0 && yp.signum() != y.signum() => out.push((xp, x)),
            _ => {}
        }
        prev = y.map(|y| (x, y));
    }
    out
}

/// Evenly spaced samples from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Brent's method on a bracket [a, b] with f(a)·f(b) ≤ 0.
///
/// Combines bisection with secant and inverse quadratic steps; terminates when
/// the bracket is narrower than `xtol` or an exact zero is hit.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket(format!("f({a}) and f({b}) have the same sign")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::NumericalFailure(format!("root search did not converge in {max_iter} iterations")))
}

/// Bisection on a monotone predicate: returns x in [lo, hi] where `pred`
/// switches from false to true, to within `xtol`.
pub fn bisect_predicate<F>(mut pred: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    if pred(lo)? || !pred(hi)? {
        return Err(Error::NotBracketed(format!("predicate does not switch on [{lo}, {hi}]")));
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
