use metascreen::lattice_green::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn setup(a: f64, ka: f64, theta: f64) -> (Lattice, WaveMode) {
    let k = ka / a;
    (
        Lattice::new(a).unwrap(),
        WaveMode::new(k, k * theta.cos()).unwrap(),
    )
}

#[test]
fn ewald_matches_windowed_direct_sum() {
    let cases = [
        (10.0, 0.4, PI / 3.0, 0.3, 0.7),
        (10.0, 1.0, 1.2, -4.1, 2.5),
        (1.0, 0.1, PI / 2.0, 0.45, 0.02),
        (3.0, 0.7, 0.5, 1.2, -0.4),
    ];
    for &(a, ka, theta, x, z) in &cases {
        let (lat, mode) = setup(a, ka, theta);
        let d = Point2::new(x * a, z * a);
        let ewald = green_sharp(&lat, &mode, d, &Evaluator::Ewald(EwaldParams::default())).unwrap();
        let direct = green_direct_windowed(&lat, &mode, d, DEFAULT_DIRECT_TERMS).unwrap();
        assert!(
            (ewald - direct).norm() < 1e-8,
            "a {a} ka {ka}: ewald {ewald} direct {direct}"
        );
    }
}

#[test]
fn plain_truncation_is_slow_but_consistent() {
    let (lat, mode) = setup(10.0, 0.4, PI / 3.0);
    let d = Point2::new(3.0, 7.0);
    let ewald = green_sharp(&lat, &mode, d, &Evaluator::Ewald(EwaldParams::default())).unwrap();
    let coarse = (green_direct(&lat, &mode, d, 1_000).unwrap() - ewald).norm();
    let fine = (green_direct(&lat, &mode, d, 100_000).unwrap() - ewald).norm();
    assert!(fine < coarse && fine < 1e-2, "coarse {coarse}, fine {fine}");
}

#[test]
fn ewald_matches_spectral_series() {
    for &(a, ka, theta) in &[(10.0, 0.5, 1.0), (2.0, 2.0, PI / 2.0), (5.0, 0.05, 0.3)] {
        let (lat, mode) = setup(a, ka, theta);
        for &(x, z) in &[(0.1, 0.2), (-0.45, 0.5), (0.3, -1.5)] {
            let d = Point2::new(x * a, z * a);
            let modes = spectral_modes_for(&lat, d.z, 1e-14);
            let (s, sg) = green_spectral_grad(&lat, &mode, d, modes).unwrap();
            let kernel = EwaldKernel::new(&lat, &mode, &EwaldParams::default()).unwrap();
            let (e, eg) = kernel.value_grad(d).unwrap();
            assert!((s - e).norm() < 1e-10, "{s} vs {e}");
            assert!((sg[0] - eg[0]).norm() < 1e-10 && (sg[1] - eg[1]).norm() < 1e-10);
        }
    }
}

#[test]
fn static_kernel_matches_static_series() {
    let lat = Lattice::new(4.0).unwrap();
    let kernel = EwaldKernel::new(&lat, &WaveMode::zero(), &EwaldParams::default()).unwrap();
    for &(x, z) in &[(0.5, 0.9), (1.9, -2.0), (0.0, 6.0)] {
        let d = Point2::new(x, z);
        let s = green_spectral(
            &lat,
            &WaveMode::zero(),
            d,
            spectral_modes_for(&lat, z, 1e-15),
        )
        .unwrap();
        assert!((kernel.value(d).unwrap() - s).norm() < 1e-12);
    }
    // leading far-field term |z| / (2a)
    let far = kernel.value(Point2::new(0.3, 40.0)).unwrap();
    assert!(
        (far - Complex64::new(40.0 / 8.0, 0.0)).norm() < 1e-12,
        "{far}"
    );
}

#[test]
fn splitting_parameter_does_not_matter() {
    let (lat, mode) = setup(10.0, 0.8, 0.9);
    let d = Point2::new(2.3, 1.1);
    let base = EwaldParams::default();
    let reference = green_sharp(&lat, &mode, d, &Evaluator::Ewald(base)).unwrap();
    for factor in [0.5, 2.0] {
        let params = EwaldParams {
            splitting: Some(factor * PI.sqrt() / 10.0),
            ..base
        };
        let v = green_sharp(&lat, &mode, d, &Evaluator::Ewald(params)).unwrap();
        assert!(
            (v - reference).norm() < 1e-7,
            "factor {factor}: {v} vs {reference}"
        );
    }
}

#[test]
fn large_height_is_the_specular_mode() {
    let (lat, mode) = setup(10.0, 0.5, PI / 2.0);
    let h = 50.0;
    let v = green_direct_windowed(&lat, &mode, Point2::new(0.0, h), DEFAULT_DIRECT_TERMS).unwrap();
    let k = mode.k;
    let plane = Complex64::from_polar(1.0, k * h) / Complex64::new(0.0, 2.0 * k * 10.0);
    assert!((v - plane).norm() < 1e-6 * plane.norm());
}

#[test]
fn dirichlet_kernel_properties() {
    let (lat, mode) = setup(6.0, 0.9, 1.1);
    let eval = Evaluator::Ewald(EwaldParams::default());
    let y = Point2::new(0.4, 1.3);
    assert_eq!(
        green_dirichlet(&lat, &mode, Point2::new(2.0, 0.0), y, &eval)
            .unwrap()
            .norm(),
        0.0
    );
    // the image breaks translation invariance
    let x = Point2::new(1.5, 2.0);
    let g = green_dirichlet(&lat, &mode, x, y, &eval).unwrap();
    let shifted = green_dirichlet(
        &lat,
        &mode,
        x - y + Point2::new(0.0, 1.0),
        Point2::new(0.0, 1.0),
        &eval,
    )
    .unwrap();
    assert!((g - shifted).norm() > 1e-3);
    // Helmholtz residual with h-refinement
    let k2 = mode.k * mode.k;
    let mut prev = f64::INFINITY;
    for h in [0.04, 0.02, 0.01] {
        let at = |p: Point2| green_dirichlet(&lat, &mode, p, y, &eval).unwrap();
        let lap = (at(x + Point2::new(h, 0.0))
            + at(x - Point2::new(h, 0.0))
            + at(x + Point2::new(0.0, h))
            + at(x - Point2::new(0.0, h))
            - 4.0 * at(x))
            / (h * h);
        let res = (lap + k2 * at(x)).norm();
        assert!(res < 0.35 * prev, "h {h}: residual {res}");
        prev = res;
    }
}

#[test]
fn mirror_symmetry_at_normal_incidence() {
    let (lat, mode) = setup(5.0, 0.6, PI / 2.0);
    let kernel = EwaldKernel::new(&lat, &mode, &EwaldParams::default()).unwrap();
    let d = Point2::new(1.3, 0.8);
    let v = kernel.value(d).unwrap();
    assert!((v - kernel.value(Point2::new(-1.3, 0.8)).unwrap()).norm() < 1e-14);
    assert!((v - kernel.value(Point2::new(1.3, -0.8)).unwrap()).norm() < 1e-14);
}

#[test]
fn spectral_rejects_invalid_inputs() {
    let (lat, mode) = setup(10.0, 0.5, 1.0);
    assert!(green_spectral(&lat, &mode, Point2::new(1.0, 0.0), 10).is_err());
    let (lat, mode) = setup(1.0, 7.0, PI / 2.0);
    assert!(green_spectral(&lat, &mode, Point2::new(0.1, 0.3), 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quasi_periodicity(x in -3.0..3.0f64, z in 0.05..2.0f64, ka in 0.1..1.5f64, theta in 0.2..1.57f64, shift in -3i32..3) {
        let (lat, mode) = setup(2.0, ka, theta);
        let kernel = EwaldKernel::new(&lat, &mode, &EwaldParams::default()).unwrap();
        let base = kernel.value(Point2::new(x, z)).unwrap();
        let moved = kernel.value(Point2::new(x + 2.0 * shift as f64, z)).unwrap();
        let phase = Complex64::from_polar(1.0, -mode.k_par * 2.0 * shift as f64);
        prop_assert!((moved - base * phase).norm() < 1e-12 * base.norm().max(1.0));
    }
}
