use bitoeplitz::linalg::C64;
use bitoeplitz::models::{builtin, BUILTIN_NAMES};
use bitoeplitz::{random, unit_decomposition, Side};

#[test]
fn rstar_identity() {
    // (R_z)^*(η) ⊗ w = η⟨z, w⟩_R
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(41);
        for q in -2..=2 {
            for n in -2..=2 {
                let r = l.creation_right(q, &random::module_element(l.level(q).unwrap(), &mut rng), n);
                let Ok(_) = r else { continue };
                let z = random::module_element(l.level(q).unwrap(), &mut rng);
                let w = random::module_element(l.level(q).unwrap(), &mut rng);
                let eta = random::module_element(l.level(n + q).unwrap(), &mut rng);
                let rz = l.creation_right(q, &z, n).unwrap();
                let adj = l.adjoint(&rz).unwrap();
                let lhs = l.contract(n, q, &adj.apply(&eta).unwrap(), &w).unwrap();
                let zw = l.level(q).unwrap().inner_right(&z, &w);
                let rhs = l.level(n + q).unwrap().act_right(&eta, &zw).unwrap();
                assert!((lhs - rhs).norm() < 1e-9, "{name} q={q} n={n}");
            }
        }
    }
}

#[test]
fn right_creation_adjoint_on_simple_tensors() {
    // (R_{z0})^*(y ⊗ z) = y⟨z, z0⟩_L
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(43);
        for (n, q) in [(1, 1), (-1, 2), (2, -1), (-2, -2), (0, 3), (3, 0)] {
            let z0 = random::module_element(l.level(q).unwrap(), &mut rng);
            let y = random::module_element(l.level(n).unwrap(), &mut rng);
            let z = random::module_element(l.level(q).unwrap(), &mut rng);
            let adj = l.adjoint(&l.creation_right(q, &z0, n).unwrap()).unwrap();
            let got = adj.apply(&l.contract(n, q, &y, &z).unwrap()).unwrap();
            let want = l
                .level(n)
                .unwrap()
                .act_right(&y, &l.level(q).unwrap().inner_left(&z, &z0))
                .unwrap();
            assert!((got - want).norm() < 1e-9, "{name} ({n},{q})");
        }
    }
}

#[test]
fn creation_operators_are_isometric() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(47);
        for p in -2..=2 {
            for n in -2..=2 {
                let y = random::module_element(l.level(p).unwrap(), &mut rng);
                let norm = l.level(p).unwrap().module_norm(&y);
                let tl = l.creation_left(p, &y, n).unwrap();
                assert!((l.op_norm(&tl).unwrap() - norm).abs() < 1e-9 * norm.max(1.0));
                let tr = l.creation_right(p, &y, n).unwrap();
                assert_eq!(tr.side(), Side::Left);
                assert!((l.op_norm(&tr).unwrap() - norm).abs() < 1e-9 * norm.max(1.0));
            }
        }
    }
}

#[test]
fn c_star_identity_for_operator_norm() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(53);
        for (n, m) in [(0, 1), (1, -1), (-2, 2), (2, 2)] {
            let t = random::right_linear_map(l, n, m, &mut rng)
                .unwrap()
                .scale(C64::new(2.5, 0.0));
            let tt = l.adjoint(&t).unwrap().compose(&t).unwrap();
            let a = l.op_norm(&t).unwrap();
            let b = l.op_norm(&tt).unwrap();
            assert!((a * a - b).abs() < 1e-9 * a * a, "{name} ({n},{m}) {a} {b}");
        }
    }
}

#[test]
fn extraction_recovers_symbols_and_random_maps() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(59);
        for n in -2..=2 {
            for m in -2..=2 {
                let eta = random::module_element(l.level(m - n).unwrap(), &mut rng);
                let got = l.extract_symbol(&l.creation_left(m - n, &eta, n).unwrap()).unwrap();
                assert!((got - &eta).norm() < 1e-9, "{name} ({n},{m})");

                let t = random::right_linear_map(l, n, m, &mut rng).unwrap();
                assert!((l.op_norm(&t).unwrap() - 1.0).abs() < 1e-9, "{name} ({n},{m}) degenerate draw");
                let sym = l.extract_symbol(&t).unwrap();
                let rebuilt = l.creation_left(m - n, &sym, n).unwrap();
                assert!(l.distance(&t, &rebuilt).unwrap() < 1e-9, "{name} ({n},{m}) random");
            }
        }
    }
}

#[test]
fn h_and_j_are_mutually_inverse() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let mut rng = random::seeded(61);
        for n in -2..=2 {
            for p in -2..=2 {
                let t = random::right_linear_map(l, n, n + p, &mut rng).unwrap();
                let back = l.multiplier_h(&l.multiplier_j(&t).unwrap(), n).unwrap();
                assert!(l.distance(&back, &t).unwrap() < 1e-9);

                let phi = random::right_linear_map(l, 0, p, &mut rng).unwrap();
                let again = l.multiplier_j(&l.multiplier_h(&phi, n).unwrap()).unwrap();
                assert!(l.distance(&again, &phi).unwrap() < 1e-9);

                let y = random::module_element(l.level(p).unwrap(), &mut rng);
                let h = l.multiplier_h(&l.creation_left(p, &y, 0).unwrap(), n).unwrap();
                assert!(l.distance(&h, &l.creation_left(p, &y, n).unwrap()).unwrap() < 1e-9);
            }
        }
    }
}

#[test]
fn alpha_shift_moves_creation_operators_and_inverts() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let alg = l.algebra();
        let mut rng = random::seeded(67);
        for n in -1..=2 {
            for m in -1..=2 {
                let eta = random::module_element(l.level(m - n).unwrap(), &mut rng);
                let shifted = l.alpha_shift(&l.creation_left(m - n, &eta, n).unwrap()).unwrap();
                let want = l.creation_left(m - n, &eta, n - 1).unwrap();
                assert!(l.distance(&shifted, &want).unwrap() < 1e-12);

                let t = random::right_linear_map(l, n, m, &mut rng).unwrap();
                let round = l.alpha_unshift(&l.alpha_shift(&t).unwrap()).unwrap();
                assert!(l.distance(&round, &t).unwrap() < 1e-9);

                let a = random::algebra_element(alg, &mut rng);
                let b = random::algebra_element(alg, &mut rng);
                let lhs = l.alpha_shift(&l.act_right_on_map(&l.act_left_on_map(&a, &t).unwrap(), &b).unwrap());
                let rhs = l
                    .act_right_on_map(&l.act_left_on_map(&a, &l.alpha_shift(&t).unwrap()).unwrap(), &b)
                    .unwrap();
                assert!(l.distance(&lhs.unwrap(), &rhs).unwrap() < 1e-9);
            }
        }
    }
}

#[test]
fn unit_decompositions_reproduce_the_unit() {
    for name in BUILTIN_NAMES {
        let model = builtin(name, 2).unwrap();
        let l = &model.ladder;
        let one = l.algebra().unit();
        for n in -4..=4 {
            let lv = l.level(n).unwrap();
            let mut acc = l.algebra().zero();
            for (u, v) in unit_decomposition(lv).unwrap() {
                acc = acc.add(&lv.inner_left(&u, &v)).unwrap();
            }
            assert!(acc.sub(&one).unwrap().norm() < 1e-10, "{name} level {n}");
        }
    }
}

#[test]
fn scalar_model_is_classical() {
    let model = builtin("scalar", 2).unwrap();
    let l = &model.ladder;
    let c = C64::new(0.3, -1.2);
    let t = l.map(1, 2, bitoeplitz::linalg::CMatrix::from_element(1, 1, c)).unwrap();
    assert!((l.extract_symbol(&t).unwrap()[0] - c).norm() < 1e-12);
    let shifted = l.alpha_shift(&t).unwrap();
    assert!((shifted.matrix()[(0, 0)] - c).norm() < 1e-12);
    let j = l.multiplier_j(&t).unwrap();
    assert!((j.matrix()[(0, 0)] - c).norm() < 1e-12);
}
