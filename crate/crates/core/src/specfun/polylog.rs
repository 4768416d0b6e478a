//! Dilogarithm on the closed unit disk, parametrized as `Li2(e^mu)` with `Re mu <= 0`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `|mu|` below which the expansion around `mu = 0` is used (radius of convergence is 2 pi).
const NEAR_ONE: f64 = 3.8;

/// `Li2(e^mu) = sum_{p >= 1} e^{p mu} / p^2` for `Re mu <= 0`, `mu != 0 (mod 2 pi i)`.
pub fn dilog_exp(mu: Complex64) -> Result<Complex64> {
    if !(mu.re <= 0.0) || !mu.im.is_finite() {
        return Err(Error::domain(
            "dilog_exp",
            format!("mu = {mu} needs Re mu <= 0"),
        ));
    }
    // Li2 depends on mu only modulo 2 pi i.
    let two_pi = 2.0 * PI;
    let im = mu.im - two_pi * (mu.im / two_pi).round();
    let mu = Complex64::new(mu.re, im);
    if mu.norm() < NEAR_ONE {
        near_one(mu)
    } else {
        let z = mu.exp();
        let mut zp = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for p in 1..400 {
            zp *= z;
            let t = zp / (p * p) as f64;
            sum += t;
            if t.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        Ok(sum)
    }
}

/// `Li2(e^mu) = zeta(2) + mu (1 - ln(-mu)) + sum_{k >= 2} zeta(2 - k) mu^k / k!`.
fn near_one(mu: Complex64) -> Result<Complex64> {
    if mu.norm() == 0.0 {
        return Ok(Complex64::new(PI * PI / 6.0, 0.0));
    }
    let mut sum = Complex64::new(PI * PI / 6.0, 0.0) + mu * (1.0 - (-mu).ln());
    // k = 2: zeta(0) / 2! = -1/4; even k > 2 vanish.
    sum -= 0.25 * mu * mu;
    // k = 2n + 1: zeta(-(2n - 1)) / (2n + 1)! = (-1)^n 2 zeta(2n) / ((2 pi)^{2n} 2n (2n + 1))
    let mu2 = mu * mu;
    let mut power = mu; // mu^{2n+1}
    let scale = 1.0 / (4.0 * PI * PI);
    let mut inv = 1.0; // (2 pi)^{-2n}
    for n in 1..80 {
        power *= mu2;
        inv *= scale;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let n2 = 2.0 * n as f64;
        let coef = sign * 2.0 * zeta_even(n) * inv / (n2 * (n2 + 1.0));
        let t = power * coef;
        sum += t;
        if t.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    Ok(sum)
}

/// `zeta(2n)` for `n >= 1`.
fn zeta_even(n: u32) -> f64 {
    let s = 2 * n as i32;
    match n {
        1 => PI.powi(2) / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        4 => PI.powi(8) / 9450.0,
        _ => (1..200).rev().map(|m| (m as f64).powi(-s)).sum(),
    }
}
