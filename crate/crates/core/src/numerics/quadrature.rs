//! Gauss–Legendre rules and the radial integrals of the squeezed-projection weight.

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule with `panels` equal panels of `order` points on [a, b].
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + 0.5 * h * xi);
            weights.push(0.5 * h * wi);
        }
    }
    (nodes, weights)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialWeightParams {
    pub lambda: f64,
    pub g: f64,
    pub alpha: f64,
}

impl RadialWeightParams {
    pub fn new(lambda: f64, g: f64, alpha: f64) -> Result<Self> {
        if !(lambda > 0.0 && g > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("radial weight Λ={lambda}, g={g}, α={alpha}")));
        }
        Ok(Self { lambda, g, alpha })
    }

    /// `(Λ/g)²`, the stiffness of the constraint Gaussian.
    pub fn stiffness(&self) -> f64 {
        (self.lambda / self.g).powi(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGridSpec {
    pub panels: usize,
    pub order: usize,
    pub max_refinements: usize,
    pub rel_tol: f64,
    /// Log-drop below the peak of the integrand at which the domain is cut.
    pub margin: f64,
}

impl Default for RadialGridSpec {
    fn default() -> Self {
        Self { panels: 4, order: 20, max_refinements: 10, rel_tol: 1e-12, margin: 75.0 }
    }
}

/// Log of the radial density `R exp(-2κ(R²-1)² - R² + tilt·R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialDensity {
    pub stiffness: f64,
    pub tilt: f64,
}

impl RadialDensity {
    pub fn log_density(&self, r: f64) -> f64 {
        let u = r * r - 1.0;
        r.ln() - 2.0 * self.stiffness * u * u - r * r + self.tilt * r
    }

    /// Interval outside which the density is below `e^{-margin}` of its peak, and the peak log value.
    pub fn support(&self, margin: f64) -> (f64, f64, f64) {
        let mut hi = 2.0_f64.max(1.0 + self.tilt);
        loop {
            let coarse = (1..=256).map(|i| self.log_density(i as f64 * hi / 256.0)).fold(f64::NEG_INFINITY, f64::max);
            if self.log_density(hi) < coarse - margin - 5.0 {
                break;
            }
            hi *= 2.0;
        }
        let n = 4096;
        let step = hi / n as f64;
        let logs: Vec<f64> = (1..=n).map(|i| self.log_density(i as f64 * step)).collect();
        let (imax, _) = logs
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        // refine the peak location by golden-section on the bracketing cells
        let a = (imax as f64) * step;
        let b = (imax as f64 + 2.0) * step;
        let peak_r = golden_max(|r| self.log_density(r), a.max(1e-300), b);
        let peak = self.log_density(peak_r).max(logs[imax]);
        let cut = peak - margin;
        let lo = (0..imax).rev().find(|&i| logs[i] < cut).map_or(0.0, |i| (i + 1) as f64 * step);
        let hi_cut = (imax..n).find(|&i| logs[i] < cut).map_or(hi, |i| (i + 1) as f64 * step);
        (lo, hi_cut, peak)
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

/// Quadrature nodes for a radial density; weights carry `dR · density / e^{log_scale}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_scale: f64,
}

impl RadialGrid {
    pub fn new(density: RadialDensity, panels: usize, order: usize, margin: f64) -> Self {
        let (lo, hi, peak) = density.support(margin);
        let (nodes, dr) = composite_gauss_legendre(lo, hi, panels, order);
        let weights = nodes
            .iter()
            .zip(&dr)
            .map(|(&r, &w)| w * (density.log_density(r) - peak).exp())
            .collect();
        Self { nodes, weights, log_scale: peak }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }

    fn integrate_with_magnitude(&self, f: &impl Fn(f64) -> f64) -> (f64, f64) {
        self.nodes.iter().zip(&self.weights).fold((0.0, 0.0), |(s, m), (&r, &w)| {
            let v = w * f(r);
            (s + v, m + v.abs())
        })
    }
}

/// `∫₀^∞ dR R e^{-2(Λ/g)²(R²-1)² - R²} f(R)`.
pub fn radial_integral(f: impl Fn(f64) -> f64, params: &RadialWeightParams, spec: &RadialGridSpec) -> Result<f64> {
    let (value, log_scale) = radial_integral_tilted(f, params, 0.0, spec)?;
    Ok(value * log_scale.exp())
}

/// The same integral with an extra factor `e^{tilt·R}`, returned as
/// `(value, log_scale)` with the integral equal to `value · e^{log_scale}`.
pub fn radial_integral_tilted(
    f: impl Fn(f64) -> f64,
    params: &RadialWeightParams,
    tilt: f64,
    spec: &RadialGridSpec,
) -> Result<(f64, f64)> {
    let density = RadialDensity { stiffness: params.stiffness(), tilt };
    let mut panels = spec.panels.max(1);
    let mut grid = RadialGrid::new(density, panels, spec.order, spec.margin);
    let (mut value, _) = grid.integrate_with_magnitude(&f);
    for _ in 0..spec.max_refinements {
        panels *= 2;
        grid = RadialGrid::new(density, panels, spec.order, spec.margin);
        let (refined, magnitude) = grid.integrate_with_magnitude(&f);
        if !refined.is_finite() {
            return Err(Error::InvalidParameter("radial integrand is not finite".into()));
        }
        if (refined - value).abs() <= spec.rel_tol * magnitude {
            return Ok((refined, grid.log_scale));
        }
        value = refined;
    }
    Err(Error::NonConvergence { what: "radial_integral", iterations: spec.max_refinements })
}
