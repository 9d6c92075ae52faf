//! Modified Bessel functions of the first kind: orders 0 and 1 directly,
//! integer orders through a backward recurrence.

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 15.0;

/// Largest argument for which `I_n(x)` itself is finite in f64.
pub const MAX_ARGUMENT: f64 = 713.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

impl Order {
    fn nu(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
        }
    }
}

/// `I_order(x)`.
pub fn bessel_i(order: Order, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x < SERIES_LIMIT {
        return Ok(series(order, x));
    }
    let v = x.exp() * asymptotic_scaled(order, x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { x })
    }
}

/// `e^{-x} I_order(x)`, finite for every finite `x >= 0`.
pub fn bessel_i_scaled(order: Order, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x < SERIES_LIMIT {
        Ok(series(order, x) * (-x).exp())
    } else {
        Ok(asymptotic_scaled(order, x))
    }
}

fn check_argument(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidParameter(format!("Bessel argument {x}")));
    }
    Ok(())
}

fn series(order: Order, x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let (mut term, nu) = match order {
        Order::Zero => (1.0, 0.0),
        Order::One => (h, 1.0),
    };
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= h2 / (k * (k + nu));
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
    }
}

// Hankel expansion without the e^x factor, truncated at its smallest term.
fn asymptotic_scaled(order: Order, x: f64) -> f64 {
    let mu = 4.0 * order.nu() * order.nu();
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// `e^{-x} I_j(x)` for `j = 0 … j_max`, by Miller's backward recurrence
/// normalized to `e^{-x} I_0(x)`.
pub fn bessel_i_scaled_sequence(x: f64, j_max: usize) -> Result<Vec<f64>> {
    check_argument(x)?;
    let mut out = vec![0.0; j_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let top = j_max.max(x.ceil() as usize);
    let start = top + 30 + (40.0 * top as f64).sqrt() as usize;
    let (mut above, mut here) = (0.0_f64, 1e-300_f64);
    for j in (1..=start).rev() {
        let below = above + 2.0 * j as f64 / x * here;
        above = here;
        here = below;
        if j - 1 <= j_max {
            out[j - 1] = here;
        }
        if here.abs() > 1e250 {
            above *= 1e-250;
            here *= 1e-250;
            out.iter_mut().for_each(|v| *v *= 1e-250);
        }
    }
    let scale = bessel_i_scaled(Order::Zero, x)? / here;
    out.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}
