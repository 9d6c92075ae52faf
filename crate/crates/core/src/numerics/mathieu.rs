//! Mathieu characteristic values `a_n(q)`, `b_n(q)`.
//!
//! Each parity class is a symmetric tridiagonal matrix in a Fourier basis;
//! the requested eigenvalue is isolated by Sturm-sequence bisection.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MathieuKind {
    /// Even solutions `ce_n`.
    A,
    /// Odd solutions `se_n`.
    B,
}

pub const DEFAULT_TRUNCATION: usize = 64;
const MAX_TRUNCATION: usize = 4096;
const STABILITY_TOL: f64 = 1e-10;

/// `a_n(q)` or `b_n(q)`, doubling the Fourier truncation from 64 until stable.
pub fn mathieu_char(kind: MathieuKind, n: usize, q: f64) -> Result<f64> {
    mathieu_char_from(kind, n, q, DEFAULT_TRUNCATION)
}

/// As [`mathieu_char`] with an explicit starting truncation.
pub fn mathieu_char_from(kind: MathieuKind, n: usize, q: f64, truncation: usize) -> Result<f64> {
    if kind == MathieuKind::B && n == 0 {
        return Err(Error::InvalidParameter("b_n requires n >= 1".into()));
    }
    if !q.is_finite() {
        return Err(Error::InvalidParameter(format!("Mathieu q = {q}")));
    }
    let mut m = truncation.max(n / 2 + 2);
    let mut value = truncated(kind, n, q, m);
    loop {
        let doubled = truncated(kind, n, q, 2 * m);
        let shift = (doubled - value).abs();
        if shift <= STABILITY_TOL * value.abs().max(1.0) {
            return Ok(doubled);
        }
        if 2 * m >= MAX_TRUNCATION {
            return Err(Error::TruncationInsufficient { what: "mathieu_char", shift });
        }
        m *= 2;
        value = doubled;
    }
}

/// Characteristic value from a single truncation of size `m` per parity block.
pub fn truncated(kind: MathieuKind, n: usize, q: f64, m: usize) -> f64 {
    let (diag, off, index) = parity_block(kind, n, q, m);
    kth_eigenvalue(&diag, &off, index)
}

/// Tridiagonal block for the parity class containing the requested value,
/// together with the ascending index of that value within the block.
pub fn parity_block(kind: MathieuKind, n: usize, q: f64, m: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let mut off = vec![q; m - 1];
    let (diag, index): (Vec<f64>, usize) = match (kind, n % 2) {
        (MathieuKind::A, 0) => {
            off[0] = std::f64::consts::SQRT_2 * q;
            ((0..m).map(|r| (2 * r * 2 * r) as f64).collect(), n / 2)
        }
        (MathieuKind::A, _) => {
            let mut d: Vec<f64> = (0..m).map(|r| ((2 * r + 1) * (2 * r + 1)) as f64).collect();
            d[0] += q;
            (d, (n - 1) / 2)
        }
        (MathieuKind::B, 0) => ((0..m).map(|r| ((2 * r + 2) * (2 * r + 2)) as f64).collect(), n / 2 - 1),
        (MathieuKind::B, _) => {
            let mut d: Vec<f64> = (0..m).map(|r| ((2 * r + 1) * (2 * r + 1)) as f64).collect();
            d[0] -= q;
            (d, (n - 1) / 2)
        }
    };
    (diag, off, index)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - coupling / d;
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
pub fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let n = diag.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_values_are_squares() {
        for n in 0..=8 {
            assert!((mathieu_char(MathieuKind::A, n, 0.0).unwrap() - (n * n) as f64).abs() < 1e-9);
            if n >= 1 {
                assert!((mathieu_char(MathieuKind::B, n, 0.0).unwrap() - (n * n) as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn b0_rejected() {
        assert!(mathieu_char(MathieuKind::B, 0, 1.0).is_err());
    }

    #[test]
    fn sturm_count_on_diagonal() {
        let d = [1.0, 2.0, 3.0];
        assert_eq!(sturm_count(&d, &[0.0, 0.0], 2.5), 2);
        assert!((kth_eigenvalue(&d, &[0.0, 0.0], 1) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn small_q_perturbation() {
        // a_0(q) = -q^2/2 + 7q^4/128 + O(q^6)
        let q = 0.05_f64;
        let a0 = mathieu_char(MathieuKind::A, 0, q).unwrap();
        assert!((a0 - (-q * q / 2.0 + 7.0 * q.powi(4) / 128.0)).abs() < 1e-9);
        // a_1, b_1 = 1 ± q - q²/8 ∓ q³/64 - q⁴/1536
        let a1 = mathieu_char(MathieuKind::A, 1, q).unwrap();
        let b1 = mathieu_char(MathieuKind::B, 1, q).unwrap();
        let common = 1.0 - q * q / 8.0 - q.powi(4) / 1536.0;
        assert!((a1 - (common + q - q.powi(3) / 64.0)).abs() < 1e-8);
        assert!((b1 - (common - q + q.powi(3) / 64.0)).abs() < 1e-8);
    }
}
