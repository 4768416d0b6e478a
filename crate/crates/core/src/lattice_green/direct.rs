//! Brute-force image sums. Slow; used only as a reference.

use num_complex::Complex64;

use super::{Lattice, Point2, WaveMode};
use crate::error::{Error, Result};
use crate::specfun::hankel1_0;

/// Default number of images per side for reference evaluations.
pub const DEFAULT_DIRECT_TERMS: usize = 100_000;

/// Fraction of the window over which the weight is identically one.
const WINDOW_FLAT: f64 = 0.3;

/// `-(i/4) sum_{|n - n0| <= terms} e^{-i k_par n a} H0(k |d - n a e_x|)`, `n0` the nearest image.
///
/// The plain truncation converges like `terms^{-1/2}`.
pub fn green_direct(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    terms: usize,
) -> Result<Complex64> {
    image_sum(lattice, mode, d, terms, |_| 1.0)
}

/// Same sum with a smooth cutoff weight, which converges super-algebraically
/// in `terms` away from Wood anomalies.
pub fn green_direct_windowed(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    terms: usize,
) -> Result<Complex64> {
    image_sum(lattice, mode, d, terms, window)
}

fn window(t: f64) -> f64 {
    if t <= WINDOW_FLAT {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let u = (t - WINDOW_FLAT) / (1.0 - WINDOW_FLAT);
        (2.0 * (-1.0 / u).exp() / (u - 1.0)).exp()
    }
}

fn image_sum(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    terms: usize,
    weight: impl Fn(f64) -> f64,
) -> Result<Complex64> {
    if mode.k <= 0.0 {
        return Err(Error::domain("green_direct", "the image sum needs k > 0"));
    }
    if terms == 0 {
        return Err(Error::domain(
            "green_direct",
            "at least one image per side is required",
        ));
    }
    let a = lattice.period();
    let n0 = (d.x / a).round() as i64;
    let nt = terms as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (n0 - nt)..=(n0 + nt) {
        let w = weight((n - n0).unsigned_abs() as f64 / (terms as f64 + 1.0));
        if w == 0.0 {
            continue;
        }
        let dx = d.x - n as f64 * a;
        let p = dx.hypot(d.z);
        if p == 0.0 {
            return Err(Error::domain(
                "green_direct",
                "source point coincides with a lattice image",
            ));
        }
        let phase = Complex64::from_polar(w, -mode.k_par * n as f64 * a);
        sum += phase * hankel1_0(mode.k * p)?;
    }
    Ok(sum * Complex64::new(0.0, -0.25))
}
