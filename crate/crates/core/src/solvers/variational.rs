//! Variational estimates for the pure-gauge plaquette from the Method A
//! ansatz, as ratios of radial integrals with Bessel-function weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::bessel::{bessel_i_scaled, Order};
use crate::numerics::minimize::{minimize_scalar, Minimum};
use crate::numerics::quadrature::{radial_integral_tilted, RadialGridSpec, RadialWeightParams};

fn i0s(x: f64) -> f64 {
    bessel_i_scaled(Order::Zero, x).unwrap_or(f64::NAN)
}

fn i1s(x: f64) -> f64 {
    bessel_i_scaled(Order::One, x).unwrap_or(f64::NAN)
}

/// `∫ num / ∫ den` over the radial weight tilted by `e^{tilt·R}`; the shared
/// peak scale cancels.
fn ratio(
    num: impl Fn(f64) -> f64,
    den: impl Fn(f64) -> f64,
    lambda: f64,
    g: f64,
    tilt: f64,
    spec: &RadialGridSpec,
) -> Result<f64> {
    let params = RadialWeightParams::new(lambda, g, 0.0)?;
    let (n, sn) = radial_integral_tilted(num, &params, tilt, spec)?;
    let (d, sd) = radial_integral_tilted(den, &params, tilt, spec)?;
    Ok(n / d * (sn - sd).exp())
}

fn check(x: f64, name: &str, strictly: bool) -> Result<()> {
    let ok = if strictly { x > 0.0 } else { x >= 0.0 };
    if !(ok && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} = {x}")));
    }
    Ok(())
}

/// `ε₀(α, Λ)`: energy of the ground-state ansatz under `2g²J² + (1/2g²)(q² + 1 − 2q⁰)`.
pub fn variational_e0(alpha: f64, lambda: f64, g: f64, spec: &RadialGridSpec) -> Result<f64> {
    check(alpha, "α", false)?;
    let g4 = g.powi(4);
    let num = |r: f64| {
        let x = 2.0 * r * alpha;
        (r * r + 1.0) * i0s(x) + 2.0 * r * (g4 * alpha - 1.0) * i1s(x)
    };
    let den = |r: f64| 2.0 * g * g * i0s(2.0 * r * alpha);
    ratio(num, den, lambda, g, 2.0 * alpha, spec)
}

/// `ε₁(β, Λ)`: energy of `q¹|ψ₀(β, Λ)⟩`.
pub fn variational_e1(beta: f64, lambda: f64, g: f64, spec: &RadialGridSpec) -> Result<f64> {
    check(beta, "β", true)?;
    let g4 = g.powi(4);
    let num = |r: f64| {
        let x = 2.0 * r * beta;
        r * ((2.0 + beta * (1.0 + r * r - 2.0 * g4)) * i1s(x) - 2.0 * beta * (1.0 - 3.0 * g4 * beta) * r * i0s(x))
    };
    let den = |r: f64| 2.0 * beta * g * g * r * i1s(2.0 * r * beta);
    ratio(num, den, lambda, g, 2.0 * beta, spec)
}

/// `⟨q⁰⟩` on the ground-state ansatz.
pub fn wilson_vev(alpha: f64, lambda: f64, g: f64, spec: &RadialGridSpec) -> Result<f64> {
    check(alpha, "α", false)?;
    ratio(|r| r * i1s(2.0 * r * alpha), |r| i0s(2.0 * r * alpha), lambda, g, 2.0 * alpha, spec)
}

/// `⟨(q² − 1)²⟩` on the ground-state ansatz.
pub fn constraint_violation(alpha: f64, lambda: f64, g: f64, spec: &RadialGridSpec) -> Result<f64> {
    check(alpha, "α", false)?;
    let i0 = |r: f64| i0s(2.0 * r * alpha);
    ratio(|r| (r * r - 1.0).powi(2) * i0(r), i0, lambda, g, 2.0 * alpha, spec)
}

/// Minimum of `f` on `[lo, hi]`, allowing the lower end itself.
fn minimize_from(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Minimum> {
    let mut upper = hi;
    for _ in 0..6 {
        match minimize_scalar(&f, lo, upper) {
            Ok(m) => return Ok(m),
            Err(Error::BracketInvalid { .. }) => upper = lo + (upper - lo) / 16.0,
            Err(e) => return Err(e),
        }
    }
    let (fl, fh) = (f(lo), f(hi));
    if !(fl.is_finite() && fh.is_finite()) {
        return Err(Error::NonConvergence { what: "variational minimization", iterations: 6 });
    }
    Ok(if fl <= fh { Minimum { argmin: lo, min: fl } } else { Minimum { argmin: hi, min: fh } })
}

/// Upper end of the parameter search; the weak-coupling optimum is near `1/(2g²)`.
pub fn search_bound(g: f64) -> f64 {
    4.0 / (g * g)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationalPoint {
    pub g_inv_sq: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub e0: f64,
    pub beta: f64,
    pub e1: f64,
    pub gap: f64,
    pub wilson: f64,
    pub constraint: f64,
}

/// Minimizes `ε₀` over `α` and `ε₁` over `β` at one coupling.
pub fn variational_point(g_inv_sq: f64, lambda: f64, spec: &RadialGridSpec) -> Result<VariationalPoint> {
    check(g_inv_sq, "g⁻²", true)?;
    check(lambda, "Λ", true)?;
    let g = g_inv_sq.powf(-0.5);
    let bound = search_bound(g);
    // failed evaluations rank last
    let nan_on_err = |r: Result<f64>| r.ok().filter(|v| v.is_finite()).unwrap_or(f64::INFINITY);
    let e0 = minimize_from(|a| nan_on_err(variational_e0(a, lambda, g, spec)), 0.0, bound)?;
    let e1 = minimize_from(|b| nan_on_err(variational_e1(b, lambda, g, spec)), 1e-3 * bound, bound)?;
    if !(e0.min.is_finite() && e1.min.is_finite()) {
        return Err(Error::NonConvergence { what: "variational minimization", iterations: 0 });
    }
    Ok(VariationalPoint {
        g_inv_sq,
        lambda,
        alpha: e0.argmin,
        e0: e0.min,
        beta: e1.argmin,
        e1: e1.min,
        gap: e1.min - e0.min,
        wilson: wilson_vev(e0.argmin, lambda, g, spec)?,
        constraint: constraint_violation(e0.argmin, lambda, g, spec)?,
    })
}
