//! Generalized exponential integrals `E_n(x) = int_1^inf e^{-xt} t^{-n} dt`.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 500;

/// `E_n(x)` for integer `n >= 0` and `x > 0` (`x = 0` is accepted for `n >= 2`).
pub fn expint_en(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 || (x == 0.0 && n <= 1) {
        return Err(Error::domain("expint_en", format!("n = {n}, x = {x}")));
    }
    if n == 0 {
        return Ok((-x).exp() / x);
    }
    if x == 0.0 {
        return Ok(1.0 / (n as f64 - 1.0));
    }
    if x > 1.0 {
        Ok(continued_fraction(n, x))
    } else {
        Ok(series(n, x))
    }
}

/// Fills `out[j] = E_j(x)` for `j = 0..out.len()`.
///
/// Anchors one order near `x` and recurs away from it in the stable direction.
pub fn expint_table(x: f64, out: &mut [f64]) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "expint_table",
            format!("x = {x} must be finite and > 0"),
        ));
    }
    if out.is_empty() {
        return Ok(());
    }
    let ex = (-x).exp();
    out[0] = ex / x;
    let top = out.len() - 1;
    if top == 0 {
        return Ok(());
    }
    let pivot = (x.ceil() as usize).clamp(1, top);
    out[pivot] = expint_en(pivot as u32, x)?;
    for n in (1..pivot).rev() {
        out[n] = (ex - n as f64 * out[n + 1]) / x;
    }
    for n in pivot..top {
        out[n + 1] = (ex - x * out[n]) / n as f64;
    }
    Ok(())
}

fn continued_fraction(n: u32, x: f64) -> f64 {
    let nm1 = n as f64 - 1.0;
    let mut b = x + n as f64;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let fi = i as f64;
        let an = -fi * (nm1 + fi);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h * (-x).exp()
}

fn series(n: u32, x: f64) -> f64 {
    let nm1 = n as i64 - 1;
    let mut ans = if nm1 != 0 {
        1.0 / nm1 as f64
    } else {
        -x.ln() - EULER_GAMMA
    };
    let mut fact = 1.0;
    for i in 1..=MAX_ITER as i64 {
        fact *= -x / i as f64;
        let del = if i != nm1 {
            -fact / (i - nm1) as f64
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-x.ln() + psi)
        };
        ans += del;
        if del.abs() < ans.abs() * EPS {
            break;
        }
    }
    ans
}
