//! Faddeeva function `w(z) = e^{-z^2} erfc(-iz)` and the complementary error
//! function of complex argument.
//!
//! Algorithm of Poppe and Wijers: a power series near the origin, a
//! continued fraction (optionally blended with a Taylor expansion) elsewhere,
//! with the lower half-plane obtained by reflection.

use num_complex::Complex64;

use crate::error::{Error, Result};

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const MAX_EXP: f64 = 708.5;

/// `w(z)`. Fails only when the lower-half-plane reflection overflows.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("faddeeva", format!("z = {z}")));
    }
    let (xi, yi) = (z.re, z.im);
    let xabs = xi.abs();
    let yabs = yi.abs();
    let x = xabs / 6.3;
    let y = yabs / 4.4;
    let mut qrho = x * x + y * y;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;
    let small = qrho < 0.085_264;

    let (mut u, mut v);
    let (mut u2, mut v2) = (0.0, 0.0);
    if small {
        qrho = (1.0 - 0.85 * y) * qrho.sqrt();
        let n = (6.0 + 72.0 * qrho).round() as i64;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let fi = i as f64;
            let xaux = (xsum * xquad - ysum * yquad) / fi;
            ysum = (xsum * yquad + ysum * xquad) / fi;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * xabs - ysum * yabs);
        let daux = (-xquad).exp();
        u2 = daux * yquad.cos();
        v2 = -daux * yquad.sin();
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        let (h, kapn, nu);
        if qrho > 1.0 {
            h = 0.0;
            kapn = 0;
            qrho = qrho.sqrt();
            nu = (3.0 + 1442.0 / (26.0 * qrho + 77.0)) as i64;
        } else {
            qrho = (1.0 - y) * (1.0 - qrho).sqrt();
            h = 1.88 * qrho;
            kapn = (7.0 + 34.0 * qrho).round() as i64;
            nu = (16.0 + 26.0 * qrho).round() as i64;
        }
        let h2 = 2.0 * h;
        let blend = h > 0.0;
        let mut qlambda = if blend { h2.powi(kapn as i32) } else { 0.0 };
        let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
        for n in (0..=nu).rev() {
            let np1 = (n + 1) as f64;
            let tx = yabs + h + np1 * rx;
            let ty = xabs - np1 * ry;
            let c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if blend && n <= kapn {
                let tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if blend {
            u = TWO_OVER_SQRT_PI * sx;
            v = TWO_OVER_SQRT_PI * sy;
        } else {
            u = TWO_OVER_SQRT_PI * rx;
            v = TWO_OVER_SQRT_PI * ry;
        }
        if yabs == 0.0 {
            u = (-xabs * xabs).exp();
        }
    }

    if yi < 0.0 {
        if small {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            let e = -xquad;
            if e > MAX_EXP {
                return Err(Error::domain("faddeeva", format!("w({z}) overflows")));
            }
            let w1 = 2.0 * e.exp();
            u2 = w1 * yquad.cos();
            v2 = -w1 * yquad.sin();
        }
        u = u2 - u;
        v = v2 - v;
        if xi > 0.0 {
            v = -v;
        }
    } else if xi < 0.0 {
        v = -v;
    }
    Ok(Complex64::new(u, v))
}

/// `erfc(z)` for complex `z`.
pub fn erfc_complex(z: Complex64) -> Result<Complex64> {
    exp_erfc(Complex64::new(0.0, 0.0), z)
}

/// Real error function.
pub fn erf(x: f64) -> f64 {
    let c = faddeeva(Complex64::new(0.0, x.abs()))
        .map(|w| w.re)
        .unwrap_or(0.0);
    (1.0 - (-x * x).exp() * c).copysign(x)
}

/// `e^a erfc(z)`, combined so that large `e^a` and tiny `erfc(z)` do not
/// overflow or underflow separately.
pub fn exp_erfc(a: Complex64, z: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    if z.re >= 0.0 {
        Ok((a - z * z).exp() * faddeeva(i * z)?)
    } else {
        Ok(2.0 * a.exp() - (a - z * z).exp() * faddeeva(-i * z)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // mpmath.erfc
    const REF: [((f64, f64), (f64, f64)); 8] = [
        (
            (1.0, 1.0),
            (-0.316_151_281_697_947_65, -0.190_453_469_237_834_7),
        ),
        ((0.3, -2.0), (-13.028_218_985_110_46, 9.155_146_204_030_22)),
        (
            (-1.5, 0.5),
            (2.007_605_486_221_37, -0.041_697_093_665_554_6),
        ),
        (
            (4.0, 0.2),
            (-1.224_236_147_623_879_6e-9, -1.598_260_883_788_112_3e-8),
        ),
        ((0.0, 0.5), (1.0, -0.614_952_094_696_511)),
        (
            (2.5, -3.0),
            (-2.246_627_447_123_719_6, -0.305_850_365_299_705_14),
        ),
        (
            (8.0, 0.001),
            (1.122_284_943_770_698e-29, -1.809_630_186_877_105_7e-31),
        ),
        (
            (-3.0, -3.0),
            (1.867_826_497_575_451_2, -0.012_152_181_790_312_257),
        ),
    ];

    #[test]
    fn erfc_matches_reference() {
        for &((zr, zi), (er, ei)) in &REF {
            let want = c(er, ei);
            let got = erfc_complex(c(zr, zi)).unwrap();
            assert!(
                (got - want).norm() < 1e-13 * want.norm(),
                "erfc({zr}+{zi}i) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn real_erf() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(0.5) - 0.520_499_877_813_046_5).abs() < 1e-15);
        assert!((erf(-2.0) + 0.995_322_265_018_952_7).abs() < 1e-15);
    }

    #[test]
    fn real_axis_limit() {
        // w(x) on the real axis has Re w = exp(-x^2)
        for &x in &[0.0, 0.4, 1.7, 5.0] {
            let w = faddeeva(c(x, 0.0)).unwrap();
            assert!((w.re - (-x * x).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn reflection_identity() {
        // w(-z) = 2 exp(-z^2) - w(z)
        for &(x, y) in &[(0.2, 0.1), (1.3, 2.2), (4.0, 0.5), (0.5, 6.0)] {
            let z = c(x, y);
            let lhs = faddeeva(-z).unwrap();
            let rhs = 2.0 * (-z * z).exp() - faddeeva(z).unwrap();
            assert!((lhs - rhs).norm() < 1e-13 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn exp_erfc_avoids_overflow() {
        // e^{900} erfc(30) is finite even though both factors are not representable
        let v = exp_erfc(c(900.0, 0.0), c(30.0, 0.0)).unwrap();
        assert!(v.re.is_finite() && v.re > 0.0);
        let direct = (900.0f64 - 900.0).exp() * faddeeva(c(0.0, 30.0)).unwrap().re;
        assert!((v.re - direct).abs() < 1e-15 * direct);
    }
}
