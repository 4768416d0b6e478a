//! Resonance analysis: capacity and moments, the Minnaert-type frequency,
//! characteristic values of the block operator, and the reflection response.

mod search;
mod statics;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{BubbleGeometry, DiscreteBoundary};
use crate::error::{Error, Result};
use crate::lattice_green::{EwaldKernel, EwaldParams, Lattice, Point2, WaveMode};
use crate::layer_ops::{eval_field_with, Wavenumbers};

pub use search::{
    find_characteristic_value, smallest_singular_value, wavenumbers_at, CharacteristicValue,
    SearchOptions, SvSample,
};
pub use statics::{
    compute_capacity, compute_m1_psi1, compute_psi0, static_constants, static_constants_from,
    MonopoleDensity, StaticConstants, DEGENERACY_TOL, HALF_EIGENVALUE_TOL, MAX_CONDITION,
};

/// Contrast above which the small-contrast asymptotics are not expected to hold.
pub const HIGH_CONTRAST: f64 = 0.1;

/// Densities and bulk moduli of the host medium and the bubble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediaConfig {
    pub rho: f64,
    pub kappa: f64,
    pub rho_b: f64,
    pub kappa_b: f64,
    /// Scale `mu` in `delta = mu eps^2`; defaults to `delta` (i.e. `eps = 1`).
    #[serde(default)]
    pub mu: Option<f64>,
}

impl Default for MediaConfig {
    fn default() -> Self {
        Self {
            rho: 1000.0,
            kappa: 1000.0,
            rho_b: 1.0,
            kappa_b: 1.0,
            mu: None,
        }
    }
}

impl MediaConfig {
    /// Media with contrast `delta` and sound speeds `v`, `v_b` (host density 1000).
    pub fn from_contrast(delta: f64, v: f64, v_b: f64) -> Self {
        let rho = 1000.0;
        let rho_b = delta * rho;
        Self {
            rho,
            kappa: rho * v * v,
            rho_b,
            kappa_b: rho_b * v_b * v_b,
            mu: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rho", self.rho),
            ("kappa", self.kappa),
            ("rho_b", self.rho_b),
            ("kappa_b", self.kappa_b),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if let Some(mu) = self.mu {
            if !(mu > 0.0) {
                return Err(Error::Config(format!("mu must be > 0, got {mu}")));
            }
        }
        if self.is_high_contrast() {
            log::warn!("contrast delta = {} is not small", self.delta());
        }
        Ok(())
    }

    pub fn delta(&self) -> f64 {
        self.rho_b / self.rho
    }

    pub fn v(&self) -> f64 {
        (self.kappa / self.rho).sqrt()
    }

    pub fn v_b(&self) -> f64 {
        (self.kappa_b / self.rho_b).sqrt()
    }

    pub fn mu(&self) -> f64 {
        self.mu.unwrap_or_else(|| self.delta())
    }

    pub fn is_high_contrast(&self) -> bool {
        self.delta() > HIGH_CONTRAST
    }
}

/// Non-radiative losses lumped into one scalar.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DampingModel {
    pub eta_other: f64,
}

/// `omega_M = v_b sqrt(delta C / |D|)`.
pub fn minnaert_frequency(capacity: f64, area: f64, media: &MediaConfig) -> Result<f64> {
    if !(capacity > 0.0 && area > 0.0) {
        return Err(Error::Config(format!(
            "capacity {capacity} and area {area} must be > 0"
        )));
    }
    Ok(media.v_b() * (media.delta() * capacity / area).sqrt())
}

/// `mu_M = k_b^2 |D| / C`.
pub fn mu_m(k_b: f64, area: f64, capacity: f64) -> f64 {
    k_b * k_b * area / capacity
}

/// Constants entering the scattering function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsConstants {
    pub mu_m: f64,
    pub m1: f64,
    pub capacity: f64,
    pub k_d: f64,
    pub period: f64,
}

/// `g_s = eps M1 / (1 - mu_M / mu - i eps M1^2 k_d C / a)`.
pub fn scattering_gs(mu: f64, epsilon: f64, c: &GsConstants) -> Result<Complex64> {
    if !(mu > 0.0) || !(epsilon >= 0.0) {
        return Err(Error::Config(format!(
            "need mu > 0 and eps >= 0, got {mu}, {epsilon}"
        )));
    }
    let denom = Complex64::new(
        1.0 - c.mu_m / mu,
        -epsilon * c.m1 * c.m1 * c.k_d * c.capacity / c.period,
    );
    if denom.norm() == 0.0 {
        return Err(Error::Pole(format!(
            "scattering function at mu = mu_M = {mu} with no radiative damping"
        )));
    }
    Ok(epsilon * c.m1 / denom)
}

/// Radiative damping `k_d M1^2 C / a` at frequency `omega`.
pub fn eta_rad(omega: f64, theta: f64, statics: &StaticConstants, media: &MediaConfig) -> f64 {
    let k_d = omega / media.v() * theta.sin();
    k_d * statics.m1 * statics.m1 * statics.capacity / statics.period
}

/// Reflection coefficient `R(omega) = -1 - 2 i eta_rad / (1 - (omega/omega_M)^2 - i (eta_rad + eta_other))`.
pub fn reflection(omega: f64, omega_m: f64, eta_rad: f64, damping: &DampingModel) -> Complex64 {
    let detune = 1.0 - (omega / omega_m).powi(2);
    let num = Complex64::new(0.0, 2.0 * eta_rad);
    let den = Complex64::new(detune, -(eta_rad + damping.eta_other));
    -1.0 - num / den
}

/// `(alpha0_inf, alpha1_inf)`.
pub fn alpha_infinity(statics: &StaticConstants, bdy: &DiscreteBoundary) -> (f64, f64) {
    (statics.alpha0_inf(), statics.alpha1_inf(bdy))
}

/// Monopole and dipole harmonic fields `alpha0(x) = -C S[psi0](x)`, `alpha1(x) = S[psi1 - M1 C psi0](x)`.
pub fn alpha_fields(
    bdy: &DiscreteBoundary,
    statics: &StaticConstants,
    kernel: &EwaldKernel,
    x: Point2,
) -> Result<(f64, f64)> {
    let s0 = eval_field_with(kernel, bdy, &statics.psi0, x)?.re;
    let s1 = eval_field_with(kernel, bdy, &statics.psi1, x)?.re;
    let mc = statics.m1 * statics.capacity;
    Ok((-statics.capacity * s0, s1 - mc * s0))
}

/// Scattered field split into its far-field and boundary-layer parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteredField {
    pub far: Complex64,
    pub boundary_layer: Complex64,
}

impl ScatteredField {
    pub fn total(&self) -> Complex64 {
        self.far + self.boundary_layer
    }
}

/// Leading-order scattered field at the macroscopic point `x_macro` for the scaled problem
/// (`delta = mu eps^2`, cell size `eps a`), valid above the bubble layer.
#[allow(clippy::too_many_arguments)]
pub fn scattered_field(
    bdy: &DiscreteBoundary,
    statics: &StaticConstants,
    lattice: &Lattice,
    params: &EwaldParams,
    wn: &Wavenumbers,
    mu: f64,
    epsilon: f64,
    u0: Complex64,
    x_macro: Point2,
) -> Result<ScatteredField> {
    if !(epsilon > 0.0) {
        return Err(Error::Config(format!("eps must be > 0, got {epsilon}")));
    }
    let top = bdy
        .nodes
        .iter()
        .map(|p| p.z)
        .fold(f64::NEG_INFINITY, f64::max);
    let x = (1.0 / epsilon) * x_macro;
    if x.z < top {
        return Err(Error::Config(format!(
            "field point at microscopic height {} is below the bubble layer (top {top})",
            x.z
        )));
    }
    let kernel = EwaldKernel::new(lattice, &WaveMode::zero(), params)?;
    let (a0, a1) = alpha_fields(bdy, statics, &kernel, x)?;
    let (a0_inf, a1_inf) = alpha_infinity(statics, bdy);
    let k_d = wn.k_normal();
    let gs = scattering_gs(
        mu,
        epsilon,
        &GsConstants {
            mu_m: mu_m(wn.k_b, statics.area, statics.capacity),
            m1: statics.m1,
            capacity: statics.capacity,
            k_d,
            period: statics.period,
        },
    )?;
    let pre = Complex64::new(0.0, 2.0 * k_d) * u0;
    let tangential = Complex64::from_polar(1.0, -wn.k_par * x_macro.x);
    let far = pre
        * Complex64::from_polar(1.0, k_d * x_macro.z)
        * tangential
        * (epsilon * a1_inf - gs * a0_inf);
    let boundary_layer = pre * tangential * (epsilon * (a1 - a1_inf) - gs * (a0 - a0_inf));
    Ok(ScatteredField {
        far,
        boundary_layer,
    })
}

/// Everything computed for one geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub capacity: f64,
    pub capacity_check: f64,
    pub m1: f64,
    pub area: f64,
    pub period: f64,
    pub delta: f64,
    /// `mu_M` evaluated at `omega_M`.
    pub mu_m: f64,
    pub omega_m: f64,
    pub omega_c: Option<f64>,
    pub min_eigenvalue: Option<f64>,
    pub sv_curve: Vec<SvSample>,
    pub alpha0_inf: f64,
    pub alpha1_inf: f64,
    pub half_eigenvalue: f64,
    pub psi1_condition: f64,
    pub psi0: Vec<f64>,
    pub psi1: Vec<f64>,
}

impl ResonanceReport {
    pub fn new(
        bdy: &DiscreteBoundary,
        statics: &StaticConstants,
        media: &MediaConfig,
    ) -> Result<Self> {
        let omega_m = minnaert_frequency(statics.capacity, statics.area, media)?;
        let (alpha0_inf, alpha1_inf) = alpha_infinity(statics, bdy);
        Ok(Self {
            capacity: statics.capacity,
            capacity_check: statics.capacity_check,
            m1: statics.m1,
            area: statics.area,
            period: statics.period,
            delta: media.delta(),
            mu_m: mu_m(omega_m / media.v_b(), statics.area, statics.capacity),
            omega_m,
            omega_c: None,
            min_eigenvalue: None,
            sv_curve: Vec::new(),
            alpha0_inf,
            alpha1_inf,
            half_eigenvalue: statics.half_eigenvalue,
            psi1_condition: statics.psi1_condition,
            psi0: statics.psi0.iter().map(|c| c.re).collect(),
            psi1: statics.psi1.iter().map(|c| c.re).collect(),
        })
    }

    pub fn with_characteristic(mut self, cv: CharacteristicValue) -> Self {
        self.omega_c = Some(cv.omega);
        self.min_eigenvalue = Some(cv.min_eigenvalue);
        self.sv_curve = cv.curve;
        self
    }
}

/// Static constants, `omega_M` and optionally the characteristic value for one circle or ellipse.
pub fn analyze(
    geometry: &BubbleGeometry,
    lattice: &Lattice,
    media: &MediaConfig,
    nodes: usize,
    params: &EwaldParams,
    search: Option<(f64, (f64, f64), &SearchOptions)>,
) -> Result<ResonanceReport> {
    media.validate()?;
    let bdy = geometry.discretize(nodes)?;
    let statics = static_constants(&bdy, lattice, params)?;
    let report = ResonanceReport::new(&bdy, &statics, media)?;
    match search {
        None => Ok(report),
        Some((theta, range, options)) => {
            let cv =
                find_characteristic_value(&bdy, lattice, media, theta, params, range, options)?;
            Ok(report.with_characteristic(cv))
        }
    }
}

/// `omega_M` of a circle of radius `r` centred at height `beta`.
pub fn circle_frequency(
    r: f64,
    beta: f64,
    lattice: &Lattice,
    media: &MediaConfig,
    nodes: usize,
    params: &EwaldParams,
) -> Result<f64> {
    Ok(analyze(
        &BubbleGeometry::circle(r, beta),
        lattice,
        media,
        nodes,
        params,
        None,
    )?
    .omega_m)
}

/// Finds the ratio `beta / r` for which a circle of radius `r` resonates at `target`.
///
/// `omega_M` decreases monotonically with the standoff, so plain bisection on `bracket` suffices.
pub fn calibrate_standoff_ratio(
    r: f64,
    target: f64,
    bracket: (f64, f64),
    lattice: &Lattice,
    media: &MediaConfig,
    nodes: usize,
    params: &EwaldParams,
) -> Result<f64> {
    let f = |ratio: f64| {
        circle_frequency(r, ratio * r, lattice, media, nodes, params).map(|w| w - target)
    };
    let (mut lo, mut hi) = bracket;
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::Config(format!(
            "standoff ratios {lo} and {hi} do not bracket omega_M = {target}"
        )));
    }
    let decreasing = flo > 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) < 1e-10 * mid {
            break;
        }
        if (f(mid)? > 0.0) == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn media_defaults() {
        let m = MediaConfig::default();
        assert!((m.delta() - 1e-3).abs() < 1e-18);
        assert_eq!(m.v(), 1.0);
        assert_eq!(m.v_b(), 1.0);
        let m = MediaConfig::from_contrast(4e-3, 1.0, 2.0);
        assert!((m.delta() - 4e-3).abs() < 1e-15 && (m.v_b() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn minnaert_scaling() {
        let m = MediaConfig::from_contrast(1e-3, 1.0, 1.0);
        let w = minnaert_frequency(5.0, 0.3, &m).unwrap();
        let w4 = minnaert_frequency(5.0, 0.3, &MediaConfig::from_contrast(4e-3, 1.0, 1.0)).unwrap();
        let w2v =
            minnaert_frequency(5.0, 0.3, &MediaConfig::from_contrast(1e-3, 1.0, 2.0)).unwrap();
        assert!((w4 / w - 2.0).abs() < 1e-12 && (w2v / w - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scattering_function_limits() {
        let c = GsConstants {
            mu_m: 0.3,
            m1: 1.7,
            capacity: 4.0,
            k_d: 0.2,
            period: 10.0,
        };
        assert_eq!(
            scattering_gs(0.5, 0.0, &c).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let at = scattering_gs(0.3, 0.01, &c).unwrap();
        let want = Complex64::new(0.0, c.period / (c.m1 * c.k_d * c.capacity));
        assert!((at - want).norm() < 1e-12 * want.norm());
        let far = scattering_gs(1e9, 1e-4, &c).unwrap();
        assert!((far - 1e-4 * c.m1).norm() < 1e-8);
        assert!(matches!(scattering_gs(0.3, 0.0, &c), Err(Error::Pole(_))));
    }

    #[test]
    fn reflection_identities() {
        let none = DampingModel::default();
        let wm = 0.37;
        let eta = 0.02;
        assert_eq!(reflection(wm, wm, eta, &none), Complex64::new(1.0, 0.0));
        let matched = DampingModel { eta_other: eta };
        assert!(reflection(wm, wm, eta, &matched).norm() < 1e-15);
        for w in [1e-6, 0.1, 0.5, 10.0, 1e6] {
            assert!((reflection(w, wm, eta * w / wm, &none).norm() - 1.0).abs() < 1e-14);
        }
        assert!((reflection(1e-8, wm, eta * 1e-8 / wm, &none) + 1.0).norm() < 1e-8);
    }
}
