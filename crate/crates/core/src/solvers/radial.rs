//! Radial slices for Method A expectation values: quadrature nodes in the
//! unphysical radius with the weight `R e^{−R²} e^{−2(Λ/g)²(R²−1)²}`.

use crate::error::{Error, Result};
use crate::numerics::quadrature::{RadialDensity, RadialGrid, RadialGridSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSlices {
    pub radii: Vec<f64>,
    /// Normalized to sum to one.
    pub weights: Vec<f64>,
}

impl RadialSlices {
    /// Slices for cutoff `lambda` at coupling `g` with `panels` Gauss–Legendre panels.
    pub fn method_a(lambda: f64, g: f64, panels: usize, spec: &RadialGridSpec) -> Result<Self> {
        if !(lambda > 0.0 && g > 0.0) {
            return Err(Error::InvalidParameter(format!("Λ = {lambda}, g = {g}")));
        }
        let density = RadialDensity { stiffness: (lambda / g).powi(2), tilt: 0.0 };
        let grid = RadialGrid::new(density, panels.max(1), spec.order, spec.margin);
        let total: f64 = grid.weights.iter().sum();
        Ok(Self { radii: grid.nodes, weights: grid.weights.iter().map(|w| w / total).collect() })
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Evaluates `eval` on successively doubled radial grids until two
/// consecutive results differ by at most `tol` in the max norm.
pub fn converge_radially<T>(
    lambda: f64,
    g: f64,
    spec: &RadialGridSpec,
    tol: f64,
    eval: impl Fn(&RadialSlices) -> Result<T>,
    values: impl Fn(&T) -> Vec<f64>,
) -> Result<(T, f64)> {
    let mut panels = spec.panels.max(1);
    let mut previous = eval(&RadialSlices::method_a(lambda, g, panels, spec)?)?;
    for _ in 0..spec.max_refinements {
        panels *= 2;
        let next = eval(&RadialSlices::method_a(lambda, g, panels, spec)?)?;
        let shift = values(&previous).iter().zip(values(&next)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if shift <= tol {
            return Ok((next, shift));
        }
        previous = next;
    }
    Err(Error::NonConvergence { what: "radial grid doubling", iterations: spec.max_refinements })
}
