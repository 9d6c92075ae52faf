//! Special functions, quadrature, Hermitian eigensolving and minimization.

pub mod bessel;
pub mod linalg;
pub mod mathieu;
pub mod minimize;
pub mod quadrature;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_i_scaled_sequence, Order};
pub use linalg::{expm_action, spectral_norm, HermitianSpectrum, C64};
pub use mathieu::{mathieu_char, MathieuKind};
pub use minimize::{minimize_scalar, Minimum};
pub use quadrature::{radial_integral, radial_integral_tilted, RadialGrid, RadialGridSpec, RadialWeightParams};
