//! Integer-order Bessel functions of real argument.
//!
//! Three regimes: ascending series for small arguments, Miller's backward
//! recurrence (with the Neumann series for `Y0`) in the middle, and the
//! Hankel asymptotic expansion for large arguments.

use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_MAX: f64 = 2.0;
const ASYMPTOTIC_MIN: f64 = 25.0;

/// `J0(x)` for real `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_MAX {
        series_j0(x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x).0
    } else {
        asymptotic(x, 0).re
    }
}

/// `J1(x)` for real `x`.
pub fn bessel_j1(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let v = if x <= SERIES_MAX {
        series_j1(x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x).1
    } else {
        asymptotic(x, 1).re
    };
    sign * v
}

/// `Y0(x)` for `x > 0`.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_y0",
            format!("x = {x} must be finite and > 0"),
        ));
    }
    Ok(if x <= SERIES_MAX {
        series_y0(x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x).2
    } else {
        asymptotic(x, 0).im
    })
}

/// Hankel function of the first kind and order zero, `H0(z) = J0(z) + i Y0(z)`.
pub fn hankel1_0(z: f64) -> Result<Complex64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "hankel1_0",
            format!("z = {z} must be finite and > 0"),
        ));
    }
    Ok(if z <= SERIES_MAX {
        Complex64::new(series_j0(z), series_y0(z))
    } else if z < ASYMPTOTIC_MIN {
        let (j0, _, y0) = miller(z);
        Complex64::new(j0, y0)
    } else {
        asymptotic(z, 0)
    })
}

fn series_j0(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn series_j1(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    0.5 * x * sum
}

fn series_y0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..40 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = -term * harmonic;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_PI * ((0.5 * x).ln() + EULER_GAMMA) * series_j0(x) + FRAC_2_PI * sum
}

/// Backward recurrence. Returns `(J0, J1, Y0)`.
fn miller(x: f64) -> (f64, f64, f64) {
    let start = x + 12.0 * x.cbrt() + 20.0;
    let mut m = start as usize;
    if m % 2 == 1 {
        m += 1;
    }
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{n+1}
    let mut j_cur = 1e-30; // J_n, starting at n = m
    let mut norm = 0.0; // J0 + 2 sum J_{2k}
    let mut ysum = 0.0; // sum_{k>=1} (-1)^k J_{2k} / k
    let mut j1 = 0.0;
    let mut n = m;
    loop {
        if n.is_multiple_of(2) {
            if n > 0 {
                norm += 2.0 * j_cur;
                let k = n / 2;
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                ysum += sign * j_cur / k as f64;
            } else {
                norm += j_cur;
            }
        }
        if n == 1 {
            j1 = j_cur;
        }
        if n == 0 {
            break;
        }
        let j_prev = n as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        n -= 1;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            ysum *= 1e-250;
            j1 *= 1e-250;
        }
    }
    let j0 = j_cur / norm;
    let j1 = j1 / norm;
    let y0 = FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j0 - 2.0 * ysum / norm);
    (j0, j1, y0)
}

/// Hankel asymptotic expansion of `H_nu^(1)(x)` for `nu` in {0, 1}.
fn asymptotic(x: f64, nu: u32) -> Complex64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut a = 1.0;
    let mut re = 1.0;
    let mut im = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (8.0 * k as f64 * x);
        if a.abs() > last || a.abs() < 1e-17 {
            break;
        }
        last = a.abs();
        // i^k
        match k % 4 {
            0 => re += a,
            1 => im += a,
            2 => re -= a,
            _ => im -= a,
        }
    }
    let phase = x - FRAC_PI_4 - 0.5 * nu as f64 * PI;
    let amp = (FRAC_2_PI / x).sqrt();
    Complex64::from_polar(amp, phase) * Complex64::new(re, im)
}
