//! Quasi-periodic Helmholtz Green's functions for a line of sources with
//! period `a`, and their Dirichlet (sound-soft plane) image combination.
//!
//! Convention: `G(d)` solves `(Laplacian + k^2) G = sum_n e^{-i k_par n a} delta(d - n a e_x)`,
//! so `G(d + a e_x) = e^{-i k_par a} G(d)` and `G ~ ln|d| / (2 pi)` near the origin.
//! Three evaluators are provided: a direct image sum (reference only), the
//! spectral (Rayleigh) series, and the Ewald split used everywhere else.

mod direct;
mod ewald;
mod expansion;
mod spectral;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use direct::{green_direct, green_direct_windowed, DEFAULT_DIRECT_TERMS};
pub use ewald::EwaldKernel;
pub use expansion::{g1_sharp, green_expansion_terms, ExpansionTerms};
pub use spectral::{green_spectral, green_spectral_grad, spectral_modes_for};

/// Relative width of the excluded band `|k^2 - k1p^2| < WOOD_TOL * k^2`.
pub const WOOD_TOL: f64 = 1e-10;

/// A point or displacement in the plane: `x` along the lattice, `z` the height above the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub z: f64,
}

impl Point2 {
    pub const fn new(x: f64, z: f64) -> Self {
        Self { x, z }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.z)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.z * o.z
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.z - o.z)
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.z + o.z)
    }
}

impl std::ops::Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        Point2::new(self * p.x, self * p.z)
    }
}

/// One-dimensional lattice `a Z` along the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    period: f64,
}

impl Lattice {
    pub fn new(period: f64) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::Config(format!(
                "lattice period must be > 0, got {period}"
            )));
        }
        Ok(Self { period })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Spacing of the reciprocal lattice, `2 pi / a`.
    pub fn reciprocal(&self) -> f64 {
        2.0 * PI / self.period
    }
}

/// Wavenumber and Bloch (tangential) wavenumber of one medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveMode {
    pub k: f64,
    pub k_par: f64,
}

impl WaveMode {
    pub fn new(k: f64, k_par: f64) -> Result<Self> {
        if !(k >= 0.0) || !k.is_finite() || !k_par.is_finite() {
            return Err(Error::Config(format!(
                "invalid wavenumbers k = {k}, k_par = {k_par}"
            )));
        }
        Ok(Self { k, k_par })
    }

    /// The static mode `k = k_par = 0`.
    pub const fn zero() -> Self {
        Self { k: 0.0, k_par: 0.0 }
    }

    pub fn is_static(&self) -> bool {
        self.k == 0.0 && self.k_par == 0.0
    }

    /// Normal wavenumber `sqrt(k^2 - k_par^2)` of the specular order (zero when evanescent).
    pub fn k_normal(&self) -> f64 {
        (self.k * self.k - self.k_par * self.k_par).max(0.0).sqrt()
    }
}

/// Truncation and splitting parameters of the Ewald representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EwaldParams {
    /// Gaussian splitting parameter; `None` means `sqrt(pi) / a`.
    #[serde(default)]
    pub splitting: Option<f64>,
    /// Spatial images `n` in `[-n_images, n_images]`.
    pub n_images: usize,
    /// Exponential-integral terms `q` in `[0, q_terms]`.
    pub q_terms: usize,
    /// Spectral modes `p` in `[-p_modes, p_modes]`.
    pub p_modes: usize,
}

impl Default for EwaldParams {
    fn default() -> Self {
        Self {
            splitting: None,
            n_images: 5,
            q_terms: 15,
            p_modes: 5,
        }
    }
}

impl EwaldParams {
    /// Every truncation raised by one step.
    pub fn refined(&self) -> Self {
        Self {
            splitting: self.splitting,
            n_images: self.n_images + 2,
            q_terms: self.q_terms + 5,
            p_modes: self.p_modes + 2,
        }
    }

    pub fn splitting_for(&self, lattice: &Lattice) -> f64 {
        self.splitting.unwrap_or(PI.sqrt() / lattice.period())
    }
}

/// Selects how `G` is evaluated in the generic entry points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluator {
    /// Truncated image sum with `n` in `[-terms, terms]`; optionally smoothly windowed.
    Direct {
        terms: usize,
        windowed: bool,
    },
    /// Rayleigh series with `p` in `[-modes, modes]`.
    Spectral {
        modes: usize,
    },
    Ewald(EwaldParams),
}

/// One-dimensional outgoing Green's function: `(d^2/dx^2 + alpha) f = delta_0`.
///
/// For `alpha < 0` the decaying solution `-e^{-sqrt(-alpha)|x|} / (2 sqrt(-alpha))` is returned.
pub fn f_alpha(alpha: f64, x: f64) -> Complex64 {
    let ax = x.abs();
    if alpha == 0.0 {
        Complex64::new(0.5 * ax, 0.0)
    } else if alpha > 0.0 {
        let s = alpha.sqrt();
        Complex64::from_polar(1.0, s * ax) / Complex64::new(0.0, 2.0 * s)
    } else {
        let s = (-alpha).sqrt();
        Complex64::new(-(-s * ax).exp() / (2.0 * s), 0.0)
    }
}

/// Derivative of [`f_alpha`] with respect to `x` (zero at `x = 0` by symmetry).
pub fn f_alpha_prime(alpha: f64, x: f64) -> Complex64 {
    let sign = if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    };
    let ax = x.abs();
    let v = if alpha == 0.0 {
        Complex64::new(0.5, 0.0)
    } else if alpha > 0.0 {
        0.5 * Complex64::from_polar(1.0, alpha.sqrt() * ax)
    } else {
        Complex64::new(0.5 * (-(-alpha).sqrt() * ax).exp(), 0.0)
    };
    sign * v
}

/// Fails on a Wood anomaly (`k^2 = k1p^2` for some order `p`).
pub fn check_wood(lattice: &Lattice, mode: &WaveMode) -> Result<()> {
    if mode.k == 0.0 {
        return Ok(());
    }
    let k2 = mode.k * mode.k;
    for (p, k1) in orders_near(lattice, mode) {
        let gap = k2 - k1 * k1;
        if gap.abs() < WOOD_TOL * k2 {
            return Err(Error::WoodAnomaly { order: p, gap });
        }
    }
    Ok(())
}

/// Fails unless exactly the specular order propagates (and none is grazing).
pub fn check_subdiffraction(lattice: &Lattice, mode: &WaveMode) -> Result<()> {
    check_wood(lattice, mode)?;
    let k2 = mode.k * mode.k;
    for (p, k1) in orders_near(lattice, mode) {
        if p != 0 && k1 * k1 < k2 {
            return Err(Error::UnsupportedRegime(format!(
                "diffraction order p = {p} propagates (k = {}, k_par = {}, period = {})",
                mode.k,
                mode.k_par,
                lattice.period()
            )));
        }
    }
    if mode.k > 0.0 && mode.k_par.abs() > mode.k {
        return Err(Error::UnsupportedRegime(format!(
            "specular order is evanescent (|k_par| = {} > k = {})",
            mode.k_par.abs(),
            mode.k
        )));
    }
    Ok(())
}

/// Orders `p` with `|k_par + 2 pi p / a|` within reach of `k`.
fn orders_near(lattice: &Lattice, mode: &WaveMode) -> impl Iterator<Item = (i64, f64)> {
    let c = lattice.reciprocal();
    let lo = ((-mode.k - mode.k_par) / c).floor() as i64 - 1;
    let hi = ((mode.k - mode.k_par) / c).ceil() as i64 + 1;
    let k_par = mode.k_par;
    (lo..=hi).map(move |p| (p, k_par + c * p as f64))
}

/// `G(d)` with the chosen evaluator.
pub fn green_sharp(
    lattice: &Lattice,
    mode: &WaveMode,
    d: Point2,
    eval: &Evaluator,
) -> Result<Complex64> {
    match *eval {
        Evaluator::Direct { terms, windowed } => {
            if windowed {
                green_direct_windowed(lattice, mode, d, terms)
            } else {
                green_direct(lattice, mode, d, terms)
            }
        }
        Evaluator::Spectral { modes } => green_spectral(lattice, mode, d, modes),
        Evaluator::Ewald(params) => EwaldKernel::new(lattice, mode, &params)?.value(d),
    }
}

/// Ewald evaluation of `G(x - y)`.
pub fn green_ewald(
    lattice: &Lattice,
    mode: &WaveMode,
    x: Point2,
    y: Point2,
    params: &EwaldParams,
) -> Result<Complex64> {
    EwaldKernel::new(lattice, mode, params)?.value(x - y)
}

/// Dirichlet Green's function `G(x - y) - G(x - y*)`, `y*` the mirror image of `y` in the plane.
pub fn green_dirichlet(
    lattice: &Lattice,
    mode: &WaveMode,
    x: Point2,
    y: Point2,
    eval: &Evaluator,
) -> Result<Complex64> {
    if x.z == 0.0 || y.z == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let dx = x.x - y.x;
    let direct = green_sharp(lattice, mode, Point2::new(dx, x.z - y.z), eval)?;
    let image = green_sharp(lattice, mode, Point2::new(dx, x.z + y.z), eval)?;
    Ok(direct - image)
}
