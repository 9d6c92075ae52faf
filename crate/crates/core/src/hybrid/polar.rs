//! Angular-momentum representation of a link at fixed radius `R`.

use nalgebra::DMatrix;

use super::layout::{HybridLayout, QumodeBasis};
use super::operator::OperatorMatrix;
use crate::error::{Error, Result};
use crate::numerics::linalg::C64;

#[derive(Clone, Debug)]
pub struct PolarLinkOperators {
    /// `J = diag(j)`.
    pub j: OperatorMatrix,
    /// `R cos χ`.
    pub cos: OperatorMatrix,
    /// `R sin χ`.
    pub sin: OperatorMatrix,
    /// `R e^{iχ}`, raising `j` by one.
    pub raise: OperatorMatrix,
}

pub fn radial_slice_layout(radius: f64, j_max: usize) -> Result<HybridLayout> {
    HybridLayout::new(0, vec![QumodeBasis::RadialSlice { radius, j_max }])
}

/// Raw `e^{iχ}` on `2 j_max + 1` angular states; the top state is mapped to zero.
pub fn shift_matrix(j_max: usize) -> DMatrix<C64> {
    let d = 2 * j_max + 1;
    DMatrix::from_fn(d, d, |r, c| if r == c + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
}

pub fn j_matrix(j_max: usize) -> DMatrix<C64> {
    let d = 2 * j_max + 1;
    DMatrix::from_fn(d, d, |r, c| if r == c { C64::new(r as f64 - j_max as f64, 0.0) } else { C64::new(0.0, 0.0) })
}

pub fn polar_link_operators(radius: f64, j_max: usize) -> Result<PolarLinkOperators> {
    if j_max < 1 {
        return Err(Error::InvalidParameter("j_max must be >= 1".into()));
    }
    let layout = radial_slice_layout(radius, j_max)?;
    let raise = shift_matrix(j_max) * C64::new(radius, 0.0);
    let cos = (&raise + raise.adjoint()) * C64::new(0.5, 0.0);
    let sin = (&raise - raise.adjoint()) * C64::new(0.0, -0.5);
    Ok(PolarLinkOperators {
        j: OperatorMatrix::hermitian_on_layout(layout.clone(), j_matrix(j_max))?,
        cos: OperatorMatrix::hermitian_on_layout(layout.clone(), cos)?,
        sin: OperatorMatrix::hermitian_on_layout(layout.clone(), sin)?,
        raise: OperatorMatrix::on_layout(layout, raise)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_diagonal() {
        let ops = polar_link_operators(1.0, 1).unwrap();
        let d: Vec<f64> = (0..3).map(|k| ops.j.data()[(k, k)].re).collect();
        assert_eq!(d, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn cos_is_half_shift_sum() {
        let ops = polar_link_operators(1.0, 1).unwrap();
        let s = shift_matrix(1);
        assert_eq!(ops.cos.data(), &((&s + s.adjoint()) * C64::new(0.5, 0.0)));
    }

    #[test]
    fn raise_scaled_by_radius() {
        let ops = polar_link_operators(0.5, 2).unwrap();
        assert_eq!(ops.raise.data()[(3, 2)], C64::new(0.5, 0.0));
        assert!(ops.sin.is_hermitian());
    }
}
