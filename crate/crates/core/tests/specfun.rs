use metascreen::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

// J1 = -J0', checked by central differences across all three evaluation regimes
#[test]
fn j1_is_minus_j0_derivative() {
    for &x in &[0.3, 1.9, 2.1, 7.5, 24.9, 25.1, 60.0] {
        let h = 1e-5;
        let d = (bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h);
        assert!(
            (d + bessel_j1(x)).abs() < 1e-9,
            "x {x}: {d} vs {}",
            -bessel_j1(x)
        );
    }
}

#[test]
fn expint_table_matches_pointwise() {
    for &x in &[0.05, 0.9, 1.0, 3.7, 20.0, 45.0] {
        let mut t = vec![0.0; 30];
        expint_table(x, &mut t).unwrap();
        for (n, v) in t.iter().enumerate() {
            let want = expint_en(n as u32, x).unwrap();
            assert!(
                (v - want).abs() <= 1e-13 * want.abs().max(1e-300),
                "E_{n}({x}): {v} vs {want}"
            );
        }
    }
}

#[test]
fn erf_matches_complex_erfc_on_the_real_line() {
    for &x in &[-3.0, -0.4, 0.0, 0.1, 1.5, 5.0] {
        let c = erfc_complex(Complex64::new(x, 0.0)).unwrap();
        assert!((1.0 - c.re - erf(x)).abs() < 1e-14 && c.im.abs() < 1e-15);
    }
}

#[test]
fn dilog_at_minus_one_and_on_the_unit_circle() {
    // Li2(-1) = -pi^2/12, Re Li2(e^{i t}) = pi^2/6 - t(2pi - t)/4
    let v = dilog_exp(Complex64::new(0.0, PI)).unwrap();
    assert!((v.re + PI * PI / 12.0).abs() < 1e-13 && v.im.abs() < 1e-13);
    for &t in &[0.3, 1.0, 2.5, 5.9] {
        let v = dilog_exp(Complex64::new(0.0, t)).unwrap();
        let want = PI * PI / 6.0 - t * (2.0 * PI - t) / 4.0;
        assert!((v.re - want).abs() < 1e-12, "t {t}");
    }
}

proptest! {
    // J0 Y1 - J1 Y0 = -2/(pi x) with Y1 = -Y0'
    #[test]
    fn bessel_wronskian(x in 0.05f64..80.0) {
        let h = 1e-5 * x.max(1.0);
        let y1 = -(bessel_y0(x + h).unwrap() - bessel_y0(x - h).unwrap()) / (2.0 * h);
        let w = bessel_j0(x) * y1 - bessel_j1(x) * bessel_y0(x).unwrap();
        prop_assert!((w + 2.0 / (PI * x)).abs() < 1e-7 * (1.0 + 2.0 / (PI * x)));
    }

    // n E_{n+1}(x) = e^{-x} - x E_n(x)
    #[test]
    fn expint_recurrence(n in 1u32..40, x in 0.01f64..50.0) {
        let lhs = n as f64 * expint_en(n + 1, x).unwrap();
        let rhs = (-x).exp() - x * expint_en(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (-x).exp().max(1e-300) * 10.0 + 1e-300);
    }

    #[test]
    fn erfc_conjugation_and_reflection(re in -6.0f64..6.0, im in -6.0f64..6.0) {
        let z = Complex64::new(re, im);
        let e = erfc_complex(z).unwrap();
        let ec = erfc_complex(z.conj()).unwrap();
        let em = erfc_complex(-z).unwrap();
        let scale = 1.0 + e.norm();
        prop_assert!((ec - e.conj()).norm() < 1e-12 * scale);
        prop_assert!((e + em - 2.0).norm() < 1e-11 * (scale + em.norm()));
    }

    #[test]
    fn faddeeva_symmetry(re in -20.0f64..20.0, im in 0.0f64..20.0) {
        // w(-conj z) = conj w(z)
        let z = Complex64::new(re, im);
        let a = faddeeva(z).unwrap();
        let b = faddeeva(-z.conj()).unwrap();
        prop_assert!((b - a.conj()).norm() < 1e-14 * (1.0 + a.norm()));
    }
}
