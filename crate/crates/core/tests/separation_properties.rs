use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use timesep::form::{classify_default, signature, CausalClass, Signature, Vec4};
use timesep::random;
use timesep::separation::{riemann_from_timelike, roundtrip_check, timelike_line};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn induced_metric_depends_only_on_the_line(seed in any::<u64>(), c in prop_oneof![-20.0..-0.05f64, 0.05..20.0f64]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::lorentzian(&mut rng);
        let v = random::timelike(&mut rng, &g);
        let a = riemann_from_timelike(&g, &v).unwrap();
        let b = riemann_from_timelike(&g, &(v * c)).unwrap();
        let scale = a.max_abs();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((a.entries()[i][j] - b.entries()[i][j]).abs() < 1e-12 * scale);
            }
        }
        prop_assert_eq!(signature(&a, 1e-12 * scale), Signature::RIEMANNIAN);
    }

    #[test]
    fn induced_metric_negates_g_along_v(seed in any::<u64>()) {
        // h(v,·) = −g(v,·): the identity behind the −1 eigenvalue
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::lorentzian(&mut rng);
        let v = random::timelike(&mut rng, &g);
        let h = riemann_from_timelike(&g, &v).unwrap();
        let hv = h.apply(&v);
        let gv = g.apply(&v);
        for i in 0..4 {
            prop_assert!((hv[i] + gv[i]).abs() < 1e-10 * h.max_abs() * v.norm());
        }
    }

    #[test]
    fn recovered_line_is_timelike_with_small_residual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::lorentzian(&mut rng);
        let h = random::riemannian(&mut rng);
        let line = timelike_line(&g, &h).unwrap();
        let x = line.direction;
        prop_assert_eq!(classify_default(&g, &x).unwrap(), CausalClass::Timelike);
        prop_assert!((h.eval(&x, &x) - 1.0).abs() < 1e-10);
        prop_assert!((g.eval(&x, &x) - line.eigenvalue).abs() < 1e-9);
        prop_assert!(line.eigenvalue < 0.0);
        let residual = g.apply(&x) - h.apply(&x) * line.eigenvalue;
        prop_assert!(residual.max_abs() < 1e-10 * g.max_abs());
        prop_assert!(line.direction[line.direction.argmax_abs()] > 0.0);
    }
}

#[test]
fn roundtrip_over_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let g = random::lorentzian(&mut rng);
        let v = random::timelike(&mut rng, &g);
        let rt = roundtrip_check(&g, &v).unwrap();
        assert!(
            rt.passes(1e-8),
            "angle {} eig err {}",
            rt.angle,
            rt.eigenvalue_error
        );
    }
}

#[test]
fn exactly_one_negative_generalized_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let g = random::lorentzian(&mut rng);
        let h = random::riemannian(&mut rng);
        let line = timelike_line(&g, &h).unwrap();
        assert_eq!(line.spectrum.iter().filter(|&&l| l < 0.0).count(), 1);
    }
}

#[test]
fn scale_examples_from_rest_frame() {
    let g = timesep::SymmetricForm4::minkowski();
    for c in [-3.0, 0.01, 7.0] {
        let h = riemann_from_timelike(&g, &(Vec4::basis(0) * c)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((h.entries()[i][j] - want).abs() < 1e-15);
            }
        }
    }
}
