//! Nyström discretization of the periodic-Dirichlet single-layer operator `S`
//! and adjoint Neumann-Poincaré operator `K*`, off-boundary evaluation of the
//! single-layer potential, and the 2x2 block operator of the transmission problem.
//!
//! The logarithmic singularity is integrated with Kress' product quadrature;
//! the smooth remainder uses the trapezoidal rule with diagonal limits taken
//! from the regular part of the lattice kernel.

mod block;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::boundary::DiscreteBoundary;
use crate::error::{Error, Result};
use crate::lattice_green::{EwaldKernel, EwaldParams, Lattice, Point2, WaveMode};
use crate::specfun::{bessel_j0, bessel_j1};

pub use block::{assemble_block, block_rhs, BlockOperator, Wavenumbers};

/// Boundary density: one complex value per node.
pub type Density = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    SingleLayer,
    NkAdjoint,
}

/// Dense boundary operator; rows are target nodes, columns source nodes.
#[derive(Debug, Clone)]
pub struct ComplexOperator {
    pub kind: OperatorKind,
    pub matrix: DMatrix<Complex64>,
}

impl ComplexOperator {
    pub fn apply(&self, density: &[Complex64]) -> Density {
        let v = nalgebra::DVector::from_column_slice(density);
        (&self.matrix * v).as_slice().to_vec()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// `S` and `K*` assembled together from one set of kernel evaluations.
#[derive(Debug, Clone)]
pub struct LayerOperators {
    pub single: ComplexOperator,
    pub adjoint: ComplexOperator,
}

#[derive(Clone, Copy)]
struct Pair {
    value: Complex64,
    grad_direct: [Complex64; 2],
    grad_image: [Complex64; 2],
}

/// Kress weights `R_m`, `m = 0..2n`, for the product rule on `ln(4 sin^2((t - s)/2))`.
fn kress_weights(nodes: usize) -> Vec<f64> {
    let n = nodes / 2;
    let nf = n as f64;
    (0..nodes)
        .map(|m| {
            let mut s = 0.0;
            for l in 1..n {
                s += (l as f64 * m as f64 * PI / nf).cos() / l as f64;
            }
            let alt = if m % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / nf * s - PI / (nf * nf) * alt
        })
        .collect()
}

fn pair(kernel: &EwaldKernel, x: Point2, y: Point2) -> Result<Pair> {
    let (gd, grad_direct) = kernel.value_grad(x - y)?;
    let (gi, grad_image) = kernel.value_grad(Point2::new(x.x - y.x, x.z + y.z))?;
    Ok(Pair {
        value: gd - gi,
        grad_direct,
        grad_image,
    })
}

/// Assembles `S` and `K*` for the wave mode `mode`.
pub fn assemble_layer_operators(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    mode: &WaveMode,
    params: &EwaldParams,
) -> Result<LayerOperators> {
    bdy.geometry().validate(Some(lattice.period()))?;
    let kernel = EwaldKernel::new(lattice, mode, params)?;
    let n = bdy.len();
    let symmetric = mode.k_par == 0.0;

    // raw kernel data, rows in parallel; with k_par = 0 only the upper triangle
    let rows: Vec<Result<Vec<Pair>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let start = if symmetric { i + 1 } else { 0 };
            (start..n)
                .map(|j| {
                    if i == j {
                        let z = Point2::new(0.0, 2.0 * bdy.nodes[i].z);
                        let (gi, grad_image) = kernel.value_grad(z)?;
                        Ok(Pair {
                            value: -gi,
                            grad_direct: [Complex64::new(0.0, 0.0); 2],
                            grad_image,
                        })
                    } else {
                        pair(&kernel, bdy.nodes[i], bdy.nodes[j])
                    }
                })
                .collect()
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    let at = |i: usize, j: usize| -> Pair {
        if !symmetric {
            return rows[i][j];
        }
        if i < j {
            rows[i][j - i - 1]
        } else {
            // mirror: G is even in x, so grad_x flips for the image and both flip for the direct part
            let p = rows[j][i - j - 1];
            Pair {
                value: p.value,
                grad_direct: [-p.grad_direct[0], -p.grad_direct[1]],
                grad_image: [-p.grad_image[0], p.grad_image[1]],
            }
        }
    };

    let weights = kress_weights(n);
    let h = 2.0 * PI / n as f64;
    let k = mode.k;
    let r0 = kernel.regular_at_origin();
    let r0_grad = kernel.regular_grad_at_origin();
    let inv4pi = 1.0 / (4.0 * PI);
    let mut s = DMatrix::<Complex64>::zeros(n, n);
    let mut kstar = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let xi = bdy.nodes[i];
        let nu = bdy.normals[i];
        for j in 0..n {
            let speed = bdy.speeds[j];
            if i == j {
                let img = if symmetric {
                    // diagonal entries were stored with the image only
                    let z = Point2::new(0.0, 2.0 * xi.z);
                    kernel.value_grad(z)?
                } else {
                    let p = rows[i][i];
                    (-p.value, p.grad_image)
                };
                let m2 = r0 + inv4pi * (speed * speed).ln() - img.0;
                s[(i, j)] = (weights[0] * inv4pi + h * m2) * speed;
                let l2 = bdy.curvature[i] * inv4pi
                    + (r0_grad[0] - img.1[0]) * nu.x
                    + (r0_grad[1] - img.1[1]) * nu.z;
                kstar[(i, j)] = h * l2 * speed;
                continue;
            }
            let p = at(i, j);
            let d = xi - bdy.nodes[j];
            let r = d.norm();
            let m = (i as isize - j as isize).unsigned_abs();
            let log_factor = (4.0 * (0.5 * (i as f64 - j as f64) * h).sin().powi(2)).ln();
            let m1 = inv4pi * bessel_j0(k * r);
            s[(i, j)] = (weights[m] * m1 + h * (p.value - m1 * log_factor)) * speed;
            let dn = (p.grad_direct[0] - p.grad_image[0]) * nu.x
                + (p.grad_direct[1] - p.grad_image[1]) * nu.z;
            let l1 = if k == 0.0 {
                0.0
            } else {
                -k * inv4pi * bessel_j1(k * r) * d.dot(nu) / r
            };
            kstar[(i, j)] = (weights[m] * l1 + h * (dn - l1 * log_factor)) * speed;
        }
    }
    Ok(LayerOperators {
        single: ComplexOperator {
            kind: OperatorKind::SingleLayer,
            matrix: s,
        },
        adjoint: ComplexOperator {
            kind: OperatorKind::NkAdjoint,
            matrix: kstar,
        },
    })
}

pub fn assemble_single_layer(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    mode: &WaveMode,
    params: &EwaldParams,
) -> Result<ComplexOperator> {
    Ok(assemble_layer_operators(bdy, lattice, mode, params)?.single)
}

pub fn assemble_nk_adjoint(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    mode: &WaveMode,
    params: &EwaldParams,
) -> Result<ComplexOperator> {
    Ok(assemble_layer_operators(bdy, lattice, mode, params)?.adjoint)
}

/// Single-layer potential of `density` at an off-boundary point.
///
/// Fails with [`Error::NearBoundary`] closer than one node spacing to the boundary.
pub fn eval_field(
    bdy: &DiscreteBoundary,
    density: &[Complex64],
    lattice: &Lattice,
    mode: &WaveMode,
    params: &EwaldParams,
    x: Point2,
) -> Result<Complex64> {
    let kernel = EwaldKernel::new(lattice, mode, params)?;
    eval_field_with(&kernel, bdy, density, x)
}

/// [`eval_field`] with a prebuilt kernel.
pub fn eval_field_with(
    kernel: &EwaldKernel,
    bdy: &DiscreteBoundary,
    density: &[Complex64],
    x: Point2,
) -> Result<Complex64> {
    if density.len() != bdy.len() {
        return Err(Error::Config(format!(
            "density has {} values for {} nodes",
            density.len(),
            bdy.len()
        )));
    }
    let spacing = bdy.spacing();
    let distance = bdy.distance_to_nodes(x);
    if distance < spacing {
        return Err(Error::NearBoundary { distance, spacing });
    }
    if x.z == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for ((&y, &w), &psi) in bdy.nodes.iter().zip(&bdy.weights).zip(density) {
        let g = kernel.value(x - y)? - kernel.value(Point2::new(x.x - y.x, x.z + y.z))?;
        sum += g * psi * w;
    }
    Ok(sum)
}

/// `<1, psi> = sum_j w_j psi_j`.
pub fn pairing(bdy: &DiscreteBoundary, density: &[Complex64]) -> Complex64 {
    density.iter().zip(&bdy.weights).map(|(&p, &w)| p * w).sum()
}
