use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{assemble_layer_operators, LayerOperators};
use crate::boundary::DiscreteBoundary;
use crate::error::{Error, Result};
use crate::lattice_green::{EwaldParams, Lattice, WaveMode};

/// Exterior and interior wavenumbers sharing one Bloch wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wavenumbers {
    pub k: f64,
    pub k_b: f64,
    pub k_par: f64,
}

impl Wavenumbers {
    pub fn new(k: f64, k_b: f64, k_par: f64) -> Result<Self> {
        if !(k > 0.0 && k_b > 0.0) || !k.is_finite() || !k_b.is_finite() || !k_par.is_finite() {
            return Err(Error::Config(format!(
                "invalid wavenumbers k = {k}, k_b = {k_b}, k_par = {k_par}"
            )));
        }
        if k_par.abs() > k || k_par.abs() > k_b {
            return Err(Error::UnsupportedRegime(format!(
                "tangential wavenumber {k_par} exceeds k = {k} or k_b = {k_b}"
            )));
        }
        Ok(Self { k, k_b, k_par })
    }

    /// Normal component of the incident wave vector.
    pub fn k_normal(&self) -> f64 {
        (self.k * self.k - self.k_par * self.k_par).max(0.0).sqrt()
    }

    pub fn scaled(&self, eps: f64) -> Self {
        Self {
            k: eps * self.k,
            k_b: eps * self.k_b,
            k_par: eps * self.k_par,
        }
    }

    pub fn exterior(&self) -> WaveMode {
        WaveMode {
            k: self.k,
            k_par: self.k_par,
        }
    }

    pub fn interior(&self) -> WaveMode {
        WaveMode {
            k: self.k_b,
            k_par: self.k_par,
        }
    }
}

/// `[[S(k_b), -S(k)], [-1/2 + K*(k_b), -c (1/2 + K*(k))]]` as one `2n x 2n` matrix.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    pub matrix: DMatrix<Complex64>,
    pub nodes: usize,
    pub coupling: f64,
}

impl BlockOperator {
    /// Block `(row, col)` with `row, col` in {0, 1}.
    pub fn block(&self, row: usize, col: usize) -> DMatrix<Complex64> {
        let n = self.nodes;
        self.matrix.view((row * n, col * n), (n, n)).into_owned()
    }
}

/// Block operator at wavenumbers `eps * wn` with coupling `contrast * eps^2`.
///
/// `eps = 1` with `contrast = delta` gives the physical operator; `contrast = mu`
/// with small `eps` gives the scaled one. `eps = 0` yields the static operator with a zero lower-right block.
pub fn assemble_block(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    wn: &Wavenumbers,
    params: &EwaldParams,
    epsilon: f64,
    contrast: f64,
) -> Result<BlockOperator> {
    if !(epsilon >= 0.0) || !(contrast > 0.0) {
        return Err(Error::Config(format!(
            "need eps >= 0 and contrast > 0, got {epsilon}, {contrast}"
        )));
    }
    let scaled = wn.scaled(epsilon);
    let interior = assemble_layer_operators(bdy, lattice, &scaled.interior(), params)?;
    let exterior = if scaled.k == scaled.k_b {
        None
    } else {
        Some(assemble_layer_operators(
            bdy,
            lattice,
            &scaled.exterior(),
            params,
        )?)
    };
    let exterior = exterior.as_ref().unwrap_or(&interior);
    Ok(compose(&interior, exterior, contrast * epsilon * epsilon))
}

fn compose(interior: &LayerOperators, exterior: &LayerOperators, coupling: f64) -> BlockOperator {
    let n = interior.single.dim();
    let half = Complex64::new(0.5, 0.0);
    let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n))
        .copy_from(&interior.single.matrix);
    m.view_mut((0, n), (n, n))
        .copy_from(&(-&exterior.single.matrix));
    m.view_mut((n, 0), (n, n))
        .copy_from(&interior.adjoint.matrix);
    m.view_mut((n, n), (n, n))
        .copy_from(&(&exterior.adjoint.matrix * Complex64::new(-coupling, 0.0)));
    for i in 0..n {
        m[(n + i, i)] -= half;
        m[(n + i, n + i)] -= half * coupling;
    }
    BlockOperator {
        matrix: m,
        nodes: n,
        coupling,
    }
}

/// Right-hand side generated by the incident plane wave `u0 e^{-i(k_par x + k_d z)}` and its mirror image.
pub fn block_rhs(
    bdy: &DiscreteBoundary,
    wn: &Wavenumbers,
    epsilon: f64,
    contrast: f64,
    u0: Complex64,
) -> Vec<Complex64> {
    let n = bdy.len();
    let kd = epsilon * wn.k_normal();
    let kp = epsilon * wn.k_par;
    let pre = Complex64::new(0.0, -2.0) * u0;
    let coupling = contrast * epsilon * epsilon;
    let mut f = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (j, (p, nu)) in bdy.nodes.iter().zip(&bdy.normals).enumerate() {
        let phase = Complex64::from_polar(1.0, -kp * p.x);
        let (s, c) = (kd * p.z).sin_cos();
        f[j] = pre * s * phase;
        f[n + j] = pre * coupling * Complex64::new(kd * nu.z * c, -kp * nu.x * s) * phase;
    }
    f
}
