//! Characteristic values: frequencies where the physical block operator becomes singular.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MediaConfig;
use crate::boundary::DiscreteBoundary;
use crate::error::{Error, Result};
use crate::lattice_green::{check_subdiffraction, EwaldParams, Lattice};
use crate::layer_ops::{assemble_block, Wavenumbers};

/// One point of the smallest-singular-value curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvSample {
    pub omega: f64,
    pub sigma_min: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacteristicValue {
    pub omega: f64,
    pub sigma_min: f64,
    /// Smallest eigenvalue modulus of the block operator at `omega`.
    pub min_eigenvalue: f64,
    pub curve: Vec<SvSample>,
}

/// Search settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchOptions {
    pub samples: usize,
    /// Relative tolerance of the golden-section refinement.
    pub rel_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            samples: 40,
            rel_tol: 1e-4,
        }
    }
}

/// Wavenumbers at frequency `omega` for incidence angle `theta` (measured from the plane).
pub fn wavenumbers_at(media: &MediaConfig, omega: f64, theta: f64) -> Result<Wavenumbers> {
    let k = omega / media.v();
    Wavenumbers::new(k, omega / media.v_b(), k * theta.cos())
}

fn block_at(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    media: &MediaConfig,
    theta: f64,
    params: &EwaldParams,
    omega: f64,
) -> Result<nalgebra::DMatrix<Complex64>> {
    let wn = wavenumbers_at(media, omega, theta)?;
    check_subdiffraction(lattice, &wn.exterior())?;
    Ok(assemble_block(bdy, lattice, &wn, params, 1.0, media.delta())?.matrix)
}

/// Smallest singular value of the physical block operator at `omega`.
pub fn smallest_singular_value(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    media: &MediaConfig,
    theta: f64,
    params: &EwaldParams,
    omega: f64,
) -> Result<f64> {
    Ok(block_at(bdy, lattice, media, theta, params, omega)?
        .singular_values()
        .min())
}

/// Grid scan of the smallest singular value over `range`, then golden-section refinement of the minimum.
pub fn find_characteristic_value(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    media: &MediaConfig,
    theta: f64,
    params: &EwaldParams,
    range: (f64, f64),
    options: &SearchOptions,
) -> Result<CharacteristicValue> {
    let (lo, hi) = range;
    if options.samples < 3 || !(lo > 0.0 && hi > lo) {
        return Err(Error::Config(format!(
            "characteristic-value search needs 0 < lo < hi and >= 3 samples, got [{lo}, {hi}] with {}",
            options.samples
        )));
    }
    let n = options.samples;
    let step = (hi - lo) / (n - 1) as f64;
    let sigma = |w: f64| smallest_singular_value(bdy, lattice, media, theta, params, w);
    let curve: Vec<SvSample> = (0..n)
        .into_par_iter()
        .map(|i| {
            let omega = lo + step * i as f64;
            sigma(omega).map(|sigma_min| SvSample { omega, sigma_min })
        })
        .collect::<Result<_>>()?;
    let imin = (0..n)
        .min_by(|&i, &j| curve[i].sigma_min.total_cmp(&curve[j].sigma_min))
        .unwrap_or(0);
    if imin == 0 || imin == n - 1 {
        return Err(Error::NotFound { lo, hi, curve });
    }

    // golden section on [omega_{i-1}, omega_{i+1}]
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (curve[imin - 1].omega, curve[imin + 1].omega);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = sigma(c)?;
    let mut fd = sigma(d)?;
    while (b - a) > options.rel_tol * 0.5 * (a + b) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sigma(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sigma(d)?;
        }
    }
    let (omega, sigma_min) = if fc < fd { (c, fc) } else { (d, fd) };
    let block = block_at(bdy, lattice, media, theta, params, omega)?;
    let min_eigenvalue = nalgebra::linalg::Schur::new(block)
        .eigenvalues()
        .map(|e| e.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min))
        .unwrap_or(f64::NAN);
    Ok(CharacteristicValue {
        omega,
        sigma_min,
        min_eigenvalue,
        curve,
    })
}
