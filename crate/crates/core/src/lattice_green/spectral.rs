//! Rayleigh (plane-wave) series `G = (1/a) sum_p e^{-i k1p x} f_{k^2 - k1p^2}(z)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{check_subdiffraction, f_alpha, f_alpha_prime, Lattice, Point2, WaveMode};
use crate::error::{Error, Result};

/// Number of orders per side needed for the evanescent tail at height `z` to drop below `tol`.
pub fn spectral_modes_for(lattice: &Lattice, z: f64, tol: f64) -> usize {
    let decay = lattice.reciprocal() * z.abs();
    if decay <= 0.0 {
        return usize::MAX;
    }
    ((-tol.ln()) / decay).ceil().max(1.0) as usize + 2
}

/// Spectral series truncated to `p` in `[-modes, modes]`.
pub fn green_spectral(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    modes: usize,
) -> Result<Complex64> {
    Ok(sum(lattice, mode, d, modes, false)?.0)
}

/// Spectral series and its gradient.
pub fn green_spectral_grad(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    modes: usize,
) -> Result<(Complex64, [Complex64; 2])> {
    sum(lattice, mode, d, modes, true)
}

fn sum(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    modes: usize,
    grad: bool,
) -> Result<(Complex64, [Complex64; 2])> {
    if d.z == 0.0 {
        return Err(Error::domain(
            "green_spectral",
            "the series does not converge on the lattice line z = 0",
        ));
    }
    if modes == 0 {
        return Err(Error::domain(
            "green_spectral",
            "at least one mode per side is required",
        ));
    }
    if !mode.is_static() {
        check_subdiffraction(lattice, mode)?;
    }
    let a = lattice.period();
    let c = 2.0 * PI / a;
    let k2 = mode.k * mode.k;
    let m = modes as i64;
    let zero = Complex64::new(0.0, 0.0);
    let (mut v, mut gx, mut gz) = (zero, zero, zero);
    for p in -m..=m {
        let k1 = mode.k_par + c * p as f64;
        let alpha = k2 - k1 * k1;
        let phase = Complex64::from_polar(1.0, -k1 * d.x);
        let f = phase * f_alpha(alpha, d.z);
        v += f;
        if grad {
            gx += Complex64::new(0.0, -k1) * f;
            gz += phase * f_alpha_prime(alpha, d.z);
        }
    }
    Ok((v / a, [gx / a, gz / a]))
}
