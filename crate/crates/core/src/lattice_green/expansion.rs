//! Leading terms of the low-frequency expansion `G+(eps k) = G0+ + eps G1+ + O(eps^2)`,
//! where both `k` and `k_par` are scaled by `eps`.

use num_complex::Complex64;

use super::{EwaldKernel, EwaldParams, Lattice, Point2, WaveMode};
use crate::error::{Error, Result};
use crate::specfun::dilog_exp;

/// First two terms of the expansion of the Dirichlet Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerms {
    pub g0_plus: Complex64,
    pub g1_plus: Complex64,
}

/// The `k_par`-weighted correction `g1` of the quasi-periodic kernel (summed in closed form).
///
/// Even in `d.z`, odd in `d.x`.
pub fn g1_sharp(lattice: &Lattice, d: Point2) -> Result<Complex64> {
    let c = lattice.reciprocal();
    let u = c * d.z.abs();
    let v = c * d.x;
    let q = (-u).exp();
    let log_arg = 1.0 - 2.0 * q * v.cos() + q * q;
    if !(log_arg > 0.0) {
        return Err(Error::domain(
            "g1_sharp",
            "displacement coincides with a lattice image",
        ));
    }
    let sin_p2 = dilog_exp(Complex64::new(-u, v))?.im;
    let sin_p1 = (q * v.sin()).atan2(1.0 - q * v.cos());
    let cos_p1 = -0.5 * log_arg.ln();
    let bracket = sin_p2 / (c * c) + d.z.abs() / c * sin_p1 - d.x / c * cos_p1;
    Ok(Complex64::new(0.0, bracket / lattice.period()))
}

/// `(G0+(x, y), G1+(x, y))` for the wave mode `mode` (the expansion parameter multiplies both wavenumbers).
pub fn green_expansion_terms(
    lattice: &Lattice,
    mode: &WaveMode,
    x: Point2,
    y: Point2,
) -> Result<ExpansionTerms> {
    if x == y {
        return Err(Error::domain("green_expansion_terms", "coincident points"));
    }
    let kernel = EwaldKernel::new(lattice, &WaveMode::zero(), &EwaldParams::default())?;
    let dx = x.x - y.x;
    let minus = Point2::new(dx, x.z - y.z);
    let plus = Point2::new(dx, x.z + y.z);
    let g0_plus = kernel.value(minus)? - kernel.value(plus)?;
    let kd = mode.k_normal();
    let kp = mode.k_par;
    let a = lattice.period();
    let poly = 2.0 * kd * x.z * y.z + kp * dx * (minus.z.abs() - plus.z.abs());
    let mut g1_plus = Complex64::new(0.0, -poly / (2.0 * a));
    if kp != 0.0 {
        g1_plus -= kp * (g1_sharp(lattice, minus)? - g1_sharp(lattice, plus)?);
    }
    Ok(ExpansionTerms { g0_plus, g1_plus })
}
