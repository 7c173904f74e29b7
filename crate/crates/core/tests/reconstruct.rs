// SPDX-License-Identifier: Apache-2.0

use genus2::classify::{c10_key, classify, gl23_key, moduli_key, order24_key, AutGroup, DihedralInvariants};
use genus2::conic::{on_conic, solve_conic, ConicSolution};
use genus2::reconstruct::{
    build_conic_cubic, d4_parameter_s, d6_parameter_w, dihedral_uv_j2zero, rationality_obstruction, reconstruct,
    twist_set, v4_model, Reconstruction, Route,
};
use genus2::{frac, rat, BinarySextic, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1 << 18;

fn diag(a: i64, b: i64, c: i64) -> [[Rat; 3]; 3] {
    let z = || rat(0);
    [[rat(a), z(), z()], [z(), rat(b), z()], [z(), z(), rat(c)]]
}

#[test]
fn conic_points_and_certificates() {
    for (a, b, c) in [(1, 1, -2), (3, 5, -8), (7, -11, 4), (1, -1, 6), (13, 17, -30)] {
        let m = diag(a, b, c);
        match solve_conic(&m, BUDGET).unwrap() {
            ConicSolution::Point(p) => assert!(on_conic(&m, &p), "{a} {b} {c}"),
            s => panic!("expected a point on {a} {b} {c}, got {s:?}"),
        }
    }
    // definite, and insoluble at 3
    for (a, b, c) in [(1, 1, 1), (1, 1, -3), (2, 5, -7 * 3)] {
        assert!(matches!(solve_conic(&diag(a, b, c), BUDGET).unwrap(), ConicSolution::NoPoint { .. }));
    }
}

#[test]
fn conic_with_square_factors_and_large_primes() {
    // 4 * 1000003 x^2 - 9 * 1000033 y^2 + ... built around a known point (1, 1, 1)
    let a = rat(4 * 1_000_003);
    let b = rat(-9 * 1_000_033);
    let c = -(&a + &b);
    let z = || rat(0);
    let m = [[a, z(), z()], [z(), b, z()], [z(), z(), c]];
    match solve_conic(&m, BUDGET).unwrap() {
        ConicSolution::Point(p) => assert!(on_conic(&m, &p)),
        s => panic!("{s:?}"),
    }
}

fn random_sextic(rng: &mut ChaCha8Rng, r: i64) -> BinarySextic {
    loop {
        let c: [i64; 7] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        if let Ok(f) = BinarySextic::from_ints(&c) {
            if !f.discriminant().is_zero() && moduli_key(&f).is_ok() {
                return f;
            }
        }
    }
}

#[test]
fn random_curves_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut mestre = 0;
    for _ in 0..25 {
        let f = random_sextic(&mut rng, 4);
        let k = moduli_key(&f).unwrap();
        match reconstruct(&k, BUDGET).unwrap() {
            Reconstruction::Curve { curve, route } => {
                assert_eq!(moduli_key(&curve).unwrap(), k);
                if route == Route::Mestre {
                    mestre += 1;
                }
            }
            Reconstruction::Quadratic(fd) => {
                panic!("a curve over Q was certified non-rational: {f} {fd:?}")
            }
        }
    }
    assert!(mestre > 20);
}

#[test]
fn conic_matrix_singular_on_involution_locus() {
    let k = moduli_key(&BinarySextic::from_ints(&[1, 0, 1, 0, 1, 0, 1]).unwrap()).unwrap();
    assert!(build_conic_cubic(&k).is_err());
}

#[test]
fn d6_parameter_of_large_curve() {
    let big: Vec<BigInt> = [
        "4294967297",
        "77309411328",
        "579820584969",
        "2319282339816",
        "5218385264643",
        "6262062317592",
        "3131031158771",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    let f = BinarySextic::from_bigints(&big.try_into().unwrap()).unwrap();
    let k = moduli_key(&f).unwrap();
    assert_eq!(classify(&k), AutGroup::D6);
    assert_eq!(d6_parameter_w(&k).unwrap(), genus2::arith::int(BigInt::from(1u64 << 33)));
    let Reconstruction::Curve { curve, route } = reconstruct(&k, BUDGET).unwrap() else { panic!() };
    assert_eq!(route, Route::D6);
    assert_eq!(moduli_key(&curve).unwrap(), k);
}

#[test]
fn d4_and_d6_parameters_round_trip() {
    for (n, d) in [(1, 3), (-2, 7), (5, 1), (13, 4), (-9, 11)] {
        let s = frac(n, d);
        let f = BinarySextic::new([rat(0), rat(1), rat(0), rat(1), rat(0), s.clone(), rat(0)]).unwrap();
        let k = moduli_key(&f).unwrap();
        assert_eq!(d4_parameter_s(&k), Some(s));
        let w = frac(n, d);
        let f = BinarySextic::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), w.clone()]).unwrap();
        let k = moduli_key(&f).unwrap();
        assert_eq!(d6_parameter_w(&k), Some(w));
    }
}

#[test]
fn v4_model_golden_and_key() {
    let d = DihedralInvariants::from_ints(35, 6);
    let f = v4_model(&d).unwrap();
    assert_eq!(*f.coeff(0), rat(-4 * 19591));
    assert_eq!(*f.coeff(1), rat(-4 * 106_564_876));
    assert_eq!(moduli_key(&f).unwrap(), d.key().unwrap());
}

#[test]
fn special_points_reconstruct() {
    let cases = [
        (order24_key(), [1, 0, 0, 0, 0, 0, -1]),
        (gl23_key(), [0, 1, 0, 0, 0, -1, 0]),
        (c10_key(), [1, 0, 0, 0, 0, -1, 0]),
    ];
    for (k, c) in cases {
        let Reconstruction::Curve { curve, route } = reconstruct(&k, BUDGET).unwrap() else { panic!() };
        assert_eq!(route, Route::Special);
        assert_eq!(curve, BinarySextic::from_ints(&c).unwrap());
    }
}

#[test]
fn j2_zero_involution_points() {
    for v in [-98, 98, -1122, 366] {
        let d = DihedralInvariants::new(rat(-15), rat(v));
        let k = d.key().unwrap();
        assert_eq!(k.r, 0);
        let g = classify(&k);
        assert!(g.has_extra_involution());
        let back = dihedral_uv_j2zero(&k).unwrap();
        assert_eq!(back.key().unwrap(), k);
        let Reconstruction::Curve { curve, .. } = reconstruct(&k, BUDGET).unwrap() else { panic!() };
        assert_eq!(moduli_key(&curve).unwrap(), k);
    }
}

#[test]
fn v4_example_is_rational() {
    let k = moduli_key(&BinarySextic::from_ints(&[1, 0, -14, 0, -82, 0, 1]).unwrap()).unwrap();
    assert!(rationality_obstruction(&k, BUDGET).unwrap().is_rational());
}

#[test]
fn twists_contain_self_and_share_key() {
    let f = BinarySextic::from_ints(&[1, 0, 1, 0, 1, 0, 1]).unwrap();
    let k = moduli_key(&f).unwrap();
    let t = twist_set(&k, 1).unwrap();
    assert!(t.contains(&f));
    for g in &t {
        assert_eq!(moduli_key(g).unwrap(), k);
    }
    assert_eq!(t, twist_set(&k, 1).unwrap());
}
