use num_complex::Complex64;
use std::f64::consts::PI;

use super::{check_wood, EwaldParams, Lattice, Point2, WaveMode};
use crate::error::{Error, Result};
use crate::specfun::{erf, exp_erfc, expint_table};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Images whose Gaussian argument exceeds this contribute below 1e-19 and are skipped.
const SPATIAL_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone)]
struct Order {
    k1: f64,
    /// `i k2` with `k2 = -sqrt(k^2 - k1^2)` (principal root).
    ik2: Complex64,
    /// Static specular order: handled by its finite part.
    finite_part: bool,
}

/// Ewald-split evaluator of `G` and its gradient for one lattice and wave mode.
///
/// Construction precomputes the spectral orders and series coefficients, and
/// the regular part of `G` at the origin used by the boundary quadrature.
#[derive(Debug, Clone)]
pub struct EwaldKernel {
    period: f64,
    k_par: f64,
    splitting: f64,
    coef: Vec<f64>,
    image_phase: Vec<Complex64>,
    n_images: i64,
    orders: Vec<Order>,
    regular: Complex64,
    regular_grad: [Complex64; 2],
}

impl EwaldKernel {
    pub fn new(lattice: &Lattice, mode: &WaveMode, params: &EwaldParams) -> Result<Self> {
        check_wood(lattice, mode)?;
        let a = lattice.period();
        let e = params.splitting_for(lattice);
        if !(e > 0.0) || !e.is_finite() {
            return Err(Error::Config(format!(
                "Ewald splitting must be > 0, got {e}"
            )));
        }
        let k = mode.k;
        let ratio = (k / (2.0 * e)).powi(2);
        let mut coef = Vec::with_capacity(params.q_terms + 1);
        let mut c = 1.0;
        for q in 0..=params.q_terms {
            if q > 0 {
                c *= ratio / q as f64;
            }
            coef.push(c);
        }
        let n = params.n_images as i64;
        let image_phase = (-n..=n)
            .map(|m| Complex64::from_polar(1.0, -mode.k_par * m as f64 * a))
            .collect();
        let recip = lattice.reciprocal();
        let p = params.p_modes as i64;
        let orders = (-p..=p)
            .map(|p| {
                let k1 = mode.k_par + recip * p as f64;
                let gap = k * k - k1 * k1;
                let finite_part = mode.is_static() && p == 0;
                // k2 = -sqrt(gap): -|.| when propagating, -i|.| when evanescent
                let k2 = if gap >= 0.0 {
                    Complex64::new(-gap.sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, -(-gap).sqrt())
                };
                Order {
                    k1,
                    ik2: Complex64::i() * k2,
                    finite_part,
                }
            })
            .collect();
        let mut kernel = Self {
            period: a,
            k_par: mode.k_par,
            splitting: e,
            coef,
            image_phase,
            n_images: n,
            orders,
            regular: Complex64::new(0.0, 0.0),
            regular_grad: [Complex64::new(0.0, 0.0); 2],
        };
        let (rest, rest_grad) = kernel.eval(Point2::new(0.0, 0.0), true, true)?;
        let series: f64 = kernel
            .coef
            .iter()
            .enumerate()
            .skip(1)
            .map(|(q, c)| c / q as f64)
            .sum();
        kernel.regular = rest
            + Complex64::new(
                e.ln() / (2.0 * PI) + (EULER_GAMMA - series) / (4.0 * PI),
                0.0,
            );
        kernel.regular_grad = rest_grad;
        Ok(kernel)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn splitting(&self) -> f64 {
        self.splitting
    }

    /// `G(d)`.
    pub fn value(&self, d: Point2) -> Result<Complex64> {
        Ok(self.eval(d, false, false)?.0)
    }

    /// `G(d)` and its gradient `(d/dx, d/dz)`.
    pub fn value_grad(&self, d: Point2) -> Result<(Complex64, [Complex64; 2])> {
        self.eval(d, true, false)
    }

    /// `lim_{d -> 0} G(d) - ln|d| / (2 pi)`.
    pub fn regular_at_origin(&self) -> Complex64 {
        self.regular
    }

    /// Gradient of the regular part at the origin.
    pub fn regular_grad_at_origin(&self) -> [Complex64; 2] {
        self.regular_grad
    }

    fn eval(
        &self,
        d: Point2,
        want_grad: bool,
        skip_origin: bool,
    ) -> Result<(Complex64, [Complex64; 2])> {
        let a = self.period;
        let e = self.splitting;
        let e2 = e * e;
        let shift = (d.x / a).round();
        let xr = d.x - shift * a;
        let z = d.z;
        let zero = Complex64::new(0.0, 0.0);

        // spatial part
        let mut sp = zero;
        let mut sp_grad = [zero; 2];
        let mut table = [0.0f64; 64];
        let nq = self.coef.len();
        let table = if nq < table.len() {
            &mut table[..nq + 1]
        } else {
            return Err(Error::Config(format!(
                "q_terms = {} exceeds the supported 62",
                nq - 1
            )));
        };
        for (idx, m) in (-self.n_images..=self.n_images).enumerate() {
            if skip_origin && m == 0 && shift == 0.0 {
                continue;
            }
            let dx = xr - m as f64 * a;
            let p2 = dx * dx + z * z;
            let arg = p2 * e2;
            if arg > SPATIAL_CUTOFF {
                continue;
            }
            if p2 == 0.0 {
                return Err(Error::domain(
                    "green_ewald",
                    "source point coincides with a lattice image",
                ));
            }
            expint_table(arg, table)?;
            let mut s = 0.0;
            let mut g = 0.0;
            for (q, c) in self.coef.iter().enumerate() {
                s += c * table[q + 1];
                g += c * table[q];
            }
            let ph = self.image_phase[idx];
            sp += ph * s;
            if want_grad {
                let f = -2.0 * e2 * g;
                sp_grad[0] += ph * (f * dx);
                sp_grad[1] += ph * (f * z);
            }
        }

        // spectral part
        let y = z.abs();
        let sign = if z > 0.0 {
            1.0
        } else if z < 0.0 {
            -1.0
        } else {
            0.0
        };
        let mut spec = zero;
        let mut spec_grad = [zero; 2];
        let mut static_part = zero;
        let mut static_grad_z = zero;
        for o in &self.orders {
            if o.finite_part {
                let sqrt_pi = PI.sqrt();
                static_part += (y * erf(y * e) + (-y * y * e2).exp() / (e * sqrt_pi)) / (2.0 * a);
                static_grad_z += sign * erf(y * e) / (2.0 * a);
                continue;
            }
            let ik2 = o.ik2;
            let zc = ik2 / (2.0 * e);
            let plus = exp_erfc(ik2 * y, zc + y * e)?;
            let minus = exp_erfc(-ik2 * y, zc - y * e)?;
            let phase = Complex64::from_polar(1.0, -o.k1 * xr);
            let term = phase * (plus + minus) / ik2;
            spec += term;
            if want_grad {
                spec_grad[0] += Complex64::new(0.0, -o.k1) * term;
                spec_grad[1] += sign * phase * (plus - minus);
            }
        }

        let shift_phase = Complex64::from_polar(1.0, -self.k_par * shift * a);
        let val = -(sp / (4.0 * PI) + spec / (4.0 * a)) + static_part;
        let mut grad = [zero; 2];
        if want_grad {
            grad[0] = -(sp_grad[0] / (4.0 * PI) + spec_grad[0] / (4.0 * a));
            grad[1] = -(sp_grad[1] / (4.0 * PI) + spec_grad[1] / (4.0 * a)) + static_grad_z;
            grad[0] *= shift_phase;
            grad[1] *= shift_phase;
        }
        Ok((val * shift_phase, grad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel(a: f64, k: f64, k_par: f64) -> EwaldKernel {
        EwaldKernel::new(
            &Lattice::new(a).unwrap(),
            &WaveMode::new(k, k_par).unwrap(),
            &EwaldParams::default(),
        )
        .unwrap()
    }

    #[test]
    fn quasi_periodic() {
        let g = kernel(3.0, 0.7, 0.3);
        let d = Point2::new(0.4, 0.9);
        let v0 = g.value(d).unwrap();
        let v1 = g.value(Point2::new(d.x + 3.0, d.z)).unwrap();
        let v2 = g.value(Point2::new(d.x - 6.0, d.z)).unwrap();
        assert!((v1 - v0 * Complex64::from_polar(1.0, -0.9)).norm() < 1e-13);
        assert!((v2 - v0 * Complex64::from_polar(1.0, 1.8)).norm() < 1e-13);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for g in [kernel(2.0, 1.1, 0.4), kernel(10.0, 0.0, 0.0)] {
            let d = Point2::new(0.7, -0.35);
            let (_, grad) = g.value_grad(d).unwrap();
            let h = 1e-5;
            let fx = (g.value(Point2::new(d.x + h, d.z)).unwrap()
                - g.value(Point2::new(d.x - h, d.z)).unwrap())
                / (2.0 * h);
            let fz = (g.value(Point2::new(d.x, d.z + h)).unwrap()
                - g.value(Point2::new(d.x, d.z - h)).unwrap())
                / (2.0 * h);
            assert!((grad[0] - fx).norm() < 1e-8, "{} vs {}", grad[0], fx);
            assert!((grad[1] - fz).norm() < 1e-8, "{} vs {}", grad[1], fz);
        }
    }

    #[test]
    fn regular_part_is_the_log_subtracted_limit() {
        for g in [
            kernel(2.0, 1.1, 0.4),
            kernel(10.0, 0.0, 0.0),
            kernel(5.0, 0.3, 0.0),
        ] {
            let (r0, r0_grad) = (g.regular_at_origin(), g.regular_grad_at_origin());
            let k = g
                .coef
                .get(1)
                .map(|c| (c * 4.0).sqrt() * g.splitting)
                .unwrap_or(0.0);
            for &(dx, dz) in &[(1e-4, 0.0), (0.0, -1e-4), (6e-5, 8e-5)] {
                let d = Point2::new(dx, dz);
                let r = d.norm();
                // singular part of G is J0(kr) ln r / (2 pi)
                let sing = crate::specfun::bessel_j0(k * r) * r.ln() / (2.0 * PI);
                let approx = r0 + r0_grad[0] * dx + r0_grad[1] * dz;
                let got = g.value(d).unwrap() - sing;
                assert!((got - approx).norm() < 1e-7, "{got} vs {approx}");
            }
        }
    }

    #[test]
    fn coincident_point_is_rejected() {
        assert!(kernel(2.0, 0.5, 0.0).value(Point2::new(4.0, 0.0)).is_err());
    }
}
