use std::f64::consts::PI;

use oamlab::aperture::AngularAperture;
use oamlab::entanglement::{concurrence_from_overlap, overlap_analytic, overlap_quadrature, universal_concurrence};
use oamlab::field::{dump_header, inner_product, read_dump, total_power, write_dump, GridSpec, ScalarField};
use oamlab::oam::{delta_phi_of_lambda, IntelligentState};
use oamlab::propagation::fft2;
use oamlab::Complex64;
use proptest::prelude::*;

fn field_from(n: usize, values: &[(f64, f64)]) -> ScalarField {
    let grid = GridSpec::new(n, 2.0).unwrap();
    let samples = values.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    ScalarField::new(grid, 1e4, samples).unwrap()
}

fn samples(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inner_product_is_conjugate_symmetric(a in samples(64), b in samples(64)) {
        let (f, g) = (field_from(64, &a), field_from(64, &b));
        let fg = inner_product(&f, &g).unwrap();
        let gf = inner_product(&g, &f).unwrap();
        prop_assert!((fg - gf.conj()).norm() <= 1e-14 * (1.0 + fg.norm()));
        let ff = inner_product(&f, &f).unwrap();
        prop_assert!((ff.re - total_power(&f)).abs() <= 1e-12 * ff.re && ff.im.abs() <= 1e-14 * ff.re);
    }

    #[test]
    fn fft_round_trip_and_parseval(a in samples(64)) {
        let original: Vec<Complex64> = a.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let mut data = original.clone();
        fft2(&mut data, 64, false);
        let spatial: f64 = original.iter().map(|c| c.norm_sqr()).sum();
        let spectral: f64 = data.iter().map(|c| c.norm_sqr()).sum::<f64>() / (64.0 * 64.0);
        prop_assert!((spatial - spectral).abs() <= 1e-10 * spatial);
        fft2(&mut data, 64, true);
        for (x, y) in data.iter().zip(&original) {
            prop_assert!((x - y).norm() <= 1e-13);
        }
    }

    #[test]
    fn aperture_is_even_in_angle(
        lambda in 1e-4..1e4f64,
        x in -4.0..4.0f64,
        y in 1e-6..4.0f64,
    ) {
        let a = AngularAperture::for_waist(lambda, 1.0).unwrap();
        let (up, down) = (a.transmission(x, y), a.transmission(x, -y));
        prop_assert!((up - down).abs() <= 1e-15 * up.max(1e-300));
        prop_assert!(up >= 0.0 && up <= a.peak());
    }

    #[test]
    fn concurrence_is_even_and_bounded(b in -1.0..=1.0f64) {
        let c = concurrence_from_overlap(b).unwrap();
        prop_assert_eq!(c, concurrence_from_overlap(-b).unwrap());
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn angular_width_is_bounded_and_decreasing(log_lambda in (1e-4f64).ln()..(1e4f64).ln()) {
        let lambda = log_lambda.exp();
        let d = delta_phi_of_lambda(lambda);
        prop_assert!(d > 0.0 && d <= PI / 3f64.sqrt());
        prop_assert!(delta_phi_of_lambda(lambda * 1.01) < d);
    }

    #[test]
    fn overlap_oracles_agree(log_lambda in (0.005f64).ln()..(500f64).ln(), l0 in 1..=7i32) {
        let lambda = log_lambda.exp();
        let closed = overlap_analytic(lambda, l0);
        let quad = overlap_quadrature(lambda, l0).unwrap();
        prop_assert!((closed - quad).abs() < 1e-8, "lambda {} l0 {}: {} vs {}", lambda, l0, closed, quad);
    }

    #[test]
    fn universal_concurrence_is_monotone(l0 in 1..=7i32, d in 0.0..1.8f64) {
        let c = universal_concurrence(l0, d);
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!(universal_concurrence(l0, d + 1e-3) >= c);
    }

    #[test]
    fn intelligent_states_saturate_the_relation(log_lambda in (0.01f64).ln()..(100f64).ln(), l_bar in -3..=3i32) {
        let state = IntelligentState::new(log_lambda.exp(), l_bar as f64).unwrap();
        let product = state.delta_phi() * state.delta_l();
        let bound = (1.0 - 2.0 * PI * state.boundary_density()).abs() / 2.0;
        prop_assert!(product >= bound - 1e-9);
        prop_assert!((product - bound).abs() < 1e-9, "product {} bound {}", product, bound);
    }

    #[test]
    fn dump_header_and_round_trip(a in samples(64), half_width in 0.1..10.0f64, k in 1.0..1e6f64) {
        let grid = GridSpec::new(64, half_width).unwrap();
        let f = ScalarField::new(grid, k, a.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap();
        let mut buf = Vec::new();
        write_dump(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = format!("# oamfield v1 n=64 half_width={half_width:?} k={k:?}");
        prop_assert_eq!(text.lines().next().unwrap(), expected.as_str());
        prop_assert_eq!(dump_header(&f), expected);
        let back = read_dump(text.as_bytes()).unwrap();
        prop_assert_eq!(back.grid().half_width(), half_width);
        prop_assert_eq!(back.wavenumber(), k);
        prop_assert_eq!(back.samples(), f.samples());
    }
}
