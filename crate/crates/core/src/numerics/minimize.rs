//! One-dimensional minimization (Brent: golden section with parabolic steps).

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub argmin: f64,
    pub min: f64,
}

const PROBES: usize = 16;

/// Minimize `f` on `(lo, hi)`.
///
/// The bracket is probed on a uniform grid first; the best interior probe
/// must lie below both end values, otherwise there is no descent to follow.
pub fn minimize_scalar(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Minimum> {
    if !(lo < hi) {
        return Err(Error::BracketInvalid { lo, hi });
    }
    let h = (hi - lo) / PROBES as f64;
    let values: Vec<f64> = (0..=PROBES).map(|i| f(lo + i as f64 * h)).collect();
    let (best, &fbest) = values[1..PROBES]
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i + 1, v))
        .expect("interior probes");
    if !(fbest <= values[0] && fbest <= values[PROBES]) {
        return Err(Error::BracketInvalid { lo, hi });
    }
    let a = lo + (best - 1) as f64 * h;
    let b = lo + (best + 1) as f64 * h;
    Ok(brent(&f, a, b, lo + best as f64 * h, fbest))
}

fn brent(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, x0: f64, f0: f64) -> Minimum {
    const GOLD: f64 = 0.381_966_011_250_105;
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (f0, f0, f0);
    let (mut d, mut e) = (0.0_f64, 0.0_f64);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol = 1e-10 * x.abs() + 1e-12;
        if (x - m).abs() <= 2.0 * tol - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                golden = false;
                let u = x + d;
                if u - a < 2.0 * tol || b - u < 2.0 * tol {
                    d = if m >= x { tol } else { -tol };
                }
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol { x + d } else { x + tol.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Minimum { argmin: x, min: fx }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let m = minimize_scalar(|x| (x - 2.0).powi(2), 0.0, 5.0).unwrap();
        assert!((m.argmin - 2.0).abs() < 1e-6);
        assert!(m.min < 1e-12);
    }

    #[test]
    fn non_quadratic() {
        let m = minimize_scalar(|x: f64| x.cosh() - 0.3 * x, -3.0, 4.0).unwrap();
        assert!((m.argmin - 0.3f64.asinh()).abs() < 1e-7);
    }

    #[test]
    fn monotone_has_no_descent() {
        assert!(matches!(minimize_scalar(|x| x, 0.0, 1.0), Err(Error::BracketInvalid { .. })));
    }

    #[test]
    fn inverted_bracket_rejected() {
        assert!(minimize_scalar(|x| x * x, 1.0, -1.0).is_err());
    }
}
