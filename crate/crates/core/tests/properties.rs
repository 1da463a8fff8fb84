use std::sync::OnceLock;

use bitoeplitz::linalg::C64;
use bitoeplitz::models::{builtin, Model, BUILTIN_NAMES};
use bitoeplitz::random;
use bitoeplitz::{CStarAlgebra, OperatorMatrix};
use proptest::prelude::*;

fn model(idx: usize) -> &'static Model {
    static MODELS: OnceLock<Vec<Model>> = OnceLock::new();
    &MODELS.get_or_init(|| BUILTIN_NAMES.iter().map(|n| builtin(n, 2).unwrap()).collect())[idx]
}

fn algebra_strategy() -> impl Strategy<Value = CStarAlgebra> {
    prop::collection::vec(1usize..=3, 1..=3).prop_map(|b| CStarAlgebra::new(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c_star_identity_and_submultiplicativity(alg in algebra_strategy(), seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let a = random::algebra_element(&alg, &mut rng);
        let b = random::algebra_element(&alg, &mut rng);
        let na = a.norm();
        prop_assert!((a.adjoint().mul(&a).unwrap().norm() - na * na).abs() < 1e-9 * (1.0 + na * na));
        prop_assert!(a.mul(&b).unwrap().norm() <= na * b.norm() + 1e-9);
        prop_assert!((a.adjoint().norm() - na).abs() < 1e-12 * (1.0 + na));
    }

    #[test]
    fn trace_is_linear_and_tracial(alg in algebra_strategy(), seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let a = random::algebra_element(&alg, &mut rng);
        let b = random::algebra_element(&alg, &mut rng);
        let z = random::complex(&mut rng);
        let ab = a.mul(&b).unwrap().trace();
        let ba = b.mul(&a).unwrap().trace();
        prop_assert!((ab - ba).norm() < 1e-9);
        let lin = a.scale(z).add(&b).unwrap().trace() - (a.trace() * z + b.trace());
        prop_assert!(lin.norm() < 1e-9);
        prop_assert!(a.adjoint().mul(&a).unwrap().trace().re >= -1e-12);
    }

    #[test]
    fn toeplitz_matrices_form_a_subspace(idx in 0usize..4, seed in any::<u64>()) {
        let m = model(idx);
        let l = &m.ladder;
        let mut rng = random::seeded(seed);
        let m1 = l.lambda_rep(&random::cross_section(l, -2..=2, &mut rng).unwrap(), 2).unwrap();
        let m2 = random::alpha_consistent_matrix(l, 2, &mut rng).unwrap();
        let (a, b) = (random::complex(&mut rng), random::complex(&mut rng));
        let combo = m1.scale(a).add(&m2.scale(b)).unwrap();
        prop_assert!(combo.toeplitz_check(l, 1e-8).unwrap().max_residual < 1e-9);
    }

    #[test]
    fn toeplitz_survives_right_action(idx in 0usize..4, seed in any::<u64>()) {
        let m = model(idx);
        let l = &m.ladder;
        let mut rng = random::seeded(seed);
        let t = random::alpha_consistent_matrix(l, 2, &mut rng).unwrap();
        let a = random::algebra_element(l.algebra(), &mut rng);
        prop_assert!(t.act_right(l, &a).unwrap().toeplitz_check(l, 1e-8).unwrap().max_residual < 1e-9);
    }

    #[test]
    fn seminorms_are_homogeneous_and_subadditive(idx in 0usize..4, seed in any::<u64>(), j in -2i32..=2) {
        let m = model(idx);
        let l = &m.ladder;
        let mut rng = random::seeded(seed);
        let block = |rng: &mut random::SeededRng| {
            OperatorMatrix::from_fn(l, 2, |r, c| random::right_linear_map(l, c, r, rng)).unwrap()
        };
        let (m1, m2) = (block(&mut rng), block(&mut rng));
        let v = random::module_element(l.level(j).unwrap(), &mut rng);
        let z: C64 = random::complex(&mut rng);
        let p = |t: &OperatorMatrix| t.sigma_seminorm(l, &v, j).unwrap();
        prop_assert!((p(&m1.scale(z)) - z.norm() * p(&m1)).abs() < 1e-9 * (1.0 + p(&m1)));
        prop_assert!(p(&m1.add(&m2).unwrap()) <= p(&m1) + p(&m2) + 1e-9);
    }

    #[test]
    fn inner_products_are_positive_on_every_level(idx in 0usize..4, seed in any::<u64>(), n in -4i32..=4) {
        let m = model(idx);
        let lv = m.ladder.level(n).unwrap();
        let mut rng = random::seeded(seed);
        let x = random::module_element(lv, &mut rng);
        prop_assert!(lv.inner_right(&x, &x).is_positive(1e-9));
        prop_assert!(lv.inner_left(&x, &x).is_positive(1e-9));
    }
}
