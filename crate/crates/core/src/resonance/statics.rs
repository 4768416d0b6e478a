//! Static (zero-frequency) boundary quantities: the monopole density, the
//! periodic capacity, the dipole moment and density.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::DiscreteBoundary;
use crate::error::{Error, Result};
use crate::lattice_green::{EwaldParams, Lattice, WaveMode};
use crate::layer_ops::{assemble_layer_operators, ComplexOperator, Density};

/// Largest accepted distance between 1/2 and the nearest discrete eigenvalue of `K*`.
pub const HALF_EIGENVALUE_TOL: f64 = 0.05;
/// Eigenvalues closer than this to the selected one count as a multiple eigenvalue.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Condition-number ceiling for the restricted solve defining the dipole density.
pub const MAX_CONDITION: f64 = 1e12;

/// Monopole density: eigenvector of `K*` for the eigenvalue nearest 1/2.
#[derive(Debug, Clone)]
pub struct MonopoleDensity {
    /// Normalized so that `<1, psi0> = 1`.
    pub density: Density,
    pub eigenvalue: f64,
}

/// All static constants of one geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StaticConstants {
    pub period: f64,
    pub area: f64,
    /// Periodic capacity `-<S^{-1} 1, 1>`.
    pub capacity: f64,
    /// `-1 / mean(S psi0)`; agrees with `capacity` up to discretization error.
    pub capacity_check: f64,
    /// Monopole moment `<psi0, z>`.
    pub m1: f64,
    pub half_eigenvalue: f64,
    pub psi1_condition: f64,
    #[serde(skip)]
    pub psi0: Density,
    #[serde(skip)]
    pub psi1: Density,
}

impl StaticConstants {
    /// Far-field value of the monopole harmonic: `M1 C / a`.
    pub fn alpha0_inf(&self) -> f64 {
        self.m1 * self.capacity / self.period
    }

    /// Far-field value of the dipole harmonic: `-<z, psi1> / a + M1^2 C / a`.
    pub fn alpha1_inf(&self, bdy: &DiscreteBoundary) -> f64 {
        let zpsi: f64 = bdy
            .nodes
            .iter()
            .zip(&bdy.weights)
            .zip(&self.psi1)
            .map(|((p, w), s)| p.z * w * s.re)
            .sum();
        -zpsi / self.period + self.m1 * self.m1 * self.capacity / self.period
    }
}

fn real_part(op: &ComplexOperator) -> DMatrix<f64> {
    op.matrix.map(|c| c.re)
}

fn to_density(v: &DVector<f64>) -> Density {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// Eigenvector of the static `K*` for the eigenvalue nearest 1/2, scaled to `<1, psi0> = 1`.
pub fn compute_psi0(kstar: &ComplexOperator, bdy: &DiscreteBoundary) -> Result<MonopoleDensity> {
    let k = real_part(kstar);
    let n = k.nrows();
    let eig = k.clone().complex_eigenvalues();
    let mut order: Vec<usize> = (0..n).collect();
    let dist = |i: usize| (eig[i] - Complex64::new(0.5, 0.0)).norm();
    order.sort_by(|&i, &j| dist(i).total_cmp(&dist(j)));
    let best = eig[order[0]];
    if dist(order[0]) > HALF_EIGENVALUE_TOL {
        return Err(Error::Discretization(format!(
            "no eigenvalue of K* near 1/2 (closest {best})"
        )));
    }
    if n > 1 && (eig[order[1]] - best).norm() < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!(
            "eigenvalues {best} and {} of K* coincide",
            eig[order[1]]
        )));
    }
    let lambda = best.re;
    // inverse iteration with a slightly perturbed shift
    let shift = lambda + 1e-10 * (1.0 + lambda.abs());
    let mut shifted = k.clone();
    for i in 0..n {
        shifted[(i, i)] -= shift;
    }
    let lu = shifted.lu();
    let mut v = DVector::from_element(n, 1.0);
    for _ in 0..3 {
        v = lu
            .solve(&v)
            .ok_or_else(|| Error::Discretization("shifted K* is singular".into()))?;
        let nv = v.norm();
        v /= nv;
    }
    let mass: f64 = v.iter().zip(&bdy.weights).map(|(x, w)| x * w).sum();
    if mass.abs() < 1e-12 * v.norm() {
        return Err(Error::Discretization(
            "monopole eigenvector has zero mean".into(),
        ));
    }
    v /= mass;
    Ok(MonopoleDensity {
        density: to_density(&v),
        eigenvalue: lambda,
    })
}

/// Periodic capacity `-<S^{-1} 1, 1>` of the static single-layer operator.
pub fn compute_capacity(bdy: &DiscreteBoundary, single: &ComplexOperator) -> Result<f64> {
    let s = real_part(single);
    let ones = DVector::from_element(s.nrows(), 1.0);
    let sol = s
        .lu()
        .solve(&ones)
        .ok_or_else(|| Error::Discretization("static single-layer operator is singular".into()))?;
    let c = -sol
        .iter()
        .zip(&bdy.weights)
        .map(|(x, w)| x * w)
        .sum::<f64>();
    if !(c > 0.0) {
        return Err(Error::Discretization(format!("non-positive capacity {c}")));
    }
    Ok(c)
}

/// `M1 = <psi0, z>` and the mean-zero solution of `(-1/2 + K*) psi1 = nu_z`.
pub fn compute_m1_psi1(
    bdy: &DiscreteBoundary,
    kstar: &ComplexOperator,
    psi0: &[Complex64],
) -> Result<(f64, Density, f64)> {
    let k = real_part(kstar);
    let n = k.nrows();
    let p0 = DVector::from_iterator(n, psi0.iter().map(|c| c.re));
    let w = DVector::from_column_slice(&bdy.weights);
    let m1: f64 = bdy
        .nodes
        .iter()
        .zip(&bdy.weights)
        .zip(p0.iter())
        .map(|((p, w), s)| p.z * w * s)
        .sum();
    // rank-one deflation: (-1/2 + K* + psi0 w^T) is invertible
    let mut m = k;
    for i in 0..n {
        m[(i, i)] -= 0.5;
    }
    m += &p0 * w.transpose();
    let sv = m.clone().singular_values();
    let cond = sv.max() / sv.min();
    if !(cond < MAX_CONDITION) {
        return Err(Error::IllConditioned {
            condition: cond,
            context: "dipole density solve".into(),
        });
    }
    let nu = DVector::from_iterator(n, bdy.normals.iter().map(|q| q.z));
    let rhs = &nu - &p0 * w.dot(&nu);
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Discretization("dipole density solve failed".into()))?;
    let sol = &sol - &p0 * w.dot(&sol);
    Ok((m1, to_density(&sol), cond))
}

/// Assembles the static operators and computes every static constant.
pub fn static_constants(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    params: &EwaldParams,
) -> Result<StaticConstants> {
    let ops = assemble_layer_operators(bdy, lattice, &WaveMode::zero(), params)?;
    static_constants_from(bdy, lattice, &ops.single, &ops.adjoint)
}

pub fn static_constants_from(
    bdy: &DiscreteBoundary,
    lattice: &Lattice,
    single: &ComplexOperator,
    kstar: &ComplexOperator,
) -> Result<StaticConstants> {
    let mono = compute_psi0(kstar, bdy)?;
    let capacity = compute_capacity(bdy, single)?;
    let s_psi0 = single.apply(&mono.density);
    let mean = s_psi0.iter().map(|c| c.re).sum::<f64>() / s_psi0.len() as f64;
    let (m1, psi1, cond) = compute_m1_psi1(bdy, kstar, &mono.density)?;
    Ok(StaticConstants {
        period: lattice.period(),
        area: bdy.area(),
        capacity,
        capacity_check: -1.0 / mean,
        m1,
        half_eigenvalue: mono.eigenvalue,
        psi1_condition: cond,
        psi0: mono.density,
        psi1,
    })
}
