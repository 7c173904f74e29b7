// SPDX-License-Identifier: Apache-2.0

#![allow(clippy::needless_range_loop)]

use genus2::arith::{frac, rat, resultant, BinarySextic, Mobius};
use genus2::classify::{
    c10_key, classify_uv, dihedral_uv_candidates, dihedral_uv_from_standard, gl23_key, order24_key, DihedralInvariants,
};
use genus2::heights::{moduli_height, reduce_at_prime, v4_minimal_model};
use genus2::invariants::{a_invariants, clebsch, clebsch_matrix, j16, j30, t_invariants};
use genus2::reconstruct::{d6_parameter_w, reconstruct, Reconstruction};
use genus2::{absolute_i, classify, igusa, moduli_key, AutGroup, InvariantVector, ModuliKey};
use num_bigint::BigInt;
use num_traits::Zero;

fn sextic(c: [i64; 7]) -> BinarySextic {
    BinarySextic::from_ints(&c).unwrap()
}

#[test]
fn worked_example_invariants() {
    let v = igusa(&sextic([1, 0, -14, 0, -82, 0, 1]));
    assert_eq!(v, InvariantVector::from_ints([-18608, -21902732, 66103989592, -808828594567744]));
    let expected = -BigInt::from(64) * BigInt::from(17).pow(4) * BigInt::from(12301).pow(2);
    assert_eq!(v.j10, rat(1) * genus2::arith::int(expected));
}

#[test]
fn worked_example_key() {
    let k = moduli_key(&sextic([1, 0, -14, 0, -82, 0, 1])).unwrap();
    let want =
        ModuliKey::parse("-1, -49281147/5410276, 706232480445/12584301976, 3071021069999403/17429644021121376256")
            .unwrap();
    assert_eq!(k, want);
    assert_eq!(classify(&k), AutGroup::V4);
}

#[test]
fn small_curve_invariants() {
    assert_eq!(igusa(&sextic([1, 0, 0, 0, 0, 0, -1])), InvariantVector::from_ints([240, 1620, 119880, 46656]));
    assert_eq!(igusa(&sextic([0, 1, 0, 0, 0, -1, 0])), InvariantVector::from_ints([-40, -80, 320, -256]));
    assert_eq!(igusa(&sextic([1, 0, 1, 0, 1, 0, 1])), InvariantVector::from_ints([-256, 1216, -99328, -16384]));
}

#[test]
fn resultant_of_x2_minus_1_and_its_derivative() {
    let r = resultant(&[rat(1), rat(0), rat(-1)], &[rat(2), rat(0)]);
    assert_eq!(r, rat(-4));
}

#[test]
fn igusa_clebsch_vector_with_j2_zero() {
    let f = BinarySextic::new([rat(1), rat(1), rat(0), rat(0), rat(0), rat(1), frac(1, 6)]).unwrap();
    let v = igusa(&f);
    assert_eq!(v.igusa_clebsch(), [rat(0), rat(-32000), frac(5120000, 3), frac(295116800000, 81)]);
    assert!(genus2::absolute_i(&v).is_err());
}

#[test]
fn special_points() {
    assert_eq!(moduli_key(&sextic([1, 0, 0, 0, 0, 0, -1])).unwrap(), order24_key());
    assert_eq!(moduli_key(&sextic([0, 1, 0, 0, 0, -1, 0])).unwrap(), gl23_key());
    assert_eq!(moduli_key(&sextic([1, 0, 0, 0, 0, -1, 0])).unwrap(), c10_key());
    assert_eq!(classify(&order24_key()), AutGroup::Order24);
    assert_eq!(classify(&gl23_key()), AutGroup::GL23);
    assert_eq!(classify(&c10_key()), AutGroup::C10);
    assert_eq!(classify(&moduli_key(&sextic([1, 0, 1, 0, 1, 0, 1])).unwrap()), AutGroup::D4);
}

fn pow2(e: u32) -> BigInt {
    BigInt::from(2).pow(e)
}

fn big(b: BigInt) -> genus2::Rat {
    genus2::arith::int(b)
}

#[test]
fn d6_scaling_and_content() {
    let f = BinarySextic::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), big(pow2(33))]).unwrap();
    let g = f.transform(&Mobius::diag(big(pow2(5)), rat(1)).unwrap());
    let want = [big(pow2(30)), rat(0), rat(0), big(pow2(15)), rat(0), rat(0), big(pow2(33))];
    assert_eq!(g.coeffs(), &want);
    let (c, p) = g.content_primitive();
    assert_eq!(c, big(pow2(15)));
    assert_eq!(p.coeffs(), &[big(pow2(15)), rat(0), rat(0), rat(1), rat(0), rat(0), big(pow2(18))]);
    assert_eq!(p.naive_height().unwrap(), pow2(18));
}

#[test]
fn rational_content() {
    let (c, p) = sextic([2, 0, 0, 0, 0, 0, 4]).content_primitive();
    assert_eq!((c, p), (rat(2), sextic([1, 0, 0, 0, 0, 0, 2])));
    let f = BinarySextic::new([frac(3, 2), rat(0), rat(0), rat(0), rat(0), rat(0), rat(3)]).unwrap();
    assert_eq!(f.content_primitive(), (frac(3, 2), sextic([1, 0, 0, 0, 0, 0, 2])));
}

#[test]
fn naive_heights() {
    assert_eq!(sextic([1, 0, -14, 0, -82, 0, 1]).naive_height().unwrap(), BigInt::from(82));
    assert_eq!(sextic([1, 0, 1, 0, 1, 0, 1]).naive_height().unwrap(), BigInt::from(1));
    assert_eq!(sextic([0, 0, 0, 0, 0, 0, 1]).naive_height().unwrap(), BigInt::from(1));
}

#[test]
fn repeated_root_has_zero_discriminant() {
    // (x - z)^2 (x^4 + z^4)
    assert!(sextic([1, -2, 1, 0, 1, -2, 1]).discriminant().is_zero());
    assert_eq!(sextic([1, 0, 0, 0, 0, 0, -1]).discriminant(), rat(46656));
}

#[test]
fn absolute_invariants_of_the_special_curves() {
    let i = absolute_i(&igusa(&sextic([1, 0, 0, 0, 0, 0, -1]))).unwrap();
    assert_eq!([i.i1, i.i2, i.i3], [frac(81, 20), frac(-729, 200), frac(729, 25600000)]);
    let i = absolute_i(&igusa(&sextic([0, 1, 0, 0, 0, -1, 0]))).unwrap();
    assert_eq!([i.i1, i.i2, i.i3], [frac(-36, 5), frac(1512, 25), frac(243, 200000)]);
}

#[test]
fn clebsch_a_of_x6_minus_1() {
    assert_eq!(clebsch(&sextic([1, 0, 0, 0, 0, 0, -1])).a, rat(-2));
}

#[test]
fn c10_t_invariants_vanish() {
    let t = t_invariants(&igusa(&sextic([1, 0, 0, 0, 0, -1, 0]))).unwrap();
    assert_eq!([t.t1, t.t2, t.t3], [rat(0), rat(0), rat(0)]);
}

#[test]
fn a_invariants_guard_and_unit_values() {
    assert_eq!(a_invariants(&InvariantVector::from_ints([0, 1, 1, 1])).unwrap(), [rat(1), rat(1)]);
    assert!(a_invariants(&InvariantVector::from_ints([1, 1, 1, 1])).is_err());
    let v = igusa(&BinarySextic::new([rat(1), rat(1), rat(0), rat(0), rat(0), rat(1), frac(1, 6)]).unwrap());
    let a = a_invariants(&v).unwrap();
    // from the integral values (B, C, D) = (2^8 J4, 2^12 J6, 2^20 J10)
    let (b, c, d) = (rat(-32000), frac(5120000, 3), frac(295116800000, 81));
    let j4 = b / rat(256);
    let j6 = c / rat(4096);
    let j10 = d / rat(1 << 20);
    assert_eq!(a[0], &j4 * &j6 / j10);
}

#[test]
fn j16_on_the_dihedral_family() {
    // J16 / J2^8 agrees with (4u^3 - v^2)(u^2 - 110u - 4v + 1125)^2 / J2(u,v)^8 up to one constant
    let ratio = |u: i64, v: i64| {
        let d = DihedralInvariants::from_ints(u, v);
        let w = d.igusa();
        let (u, v) = (rat(u), rat(v));
        let q = &u * &u - &u * rat(110) - &v * rat(4) + rat(1125);
        let closed = (&u * &u * &u * rat(4) - &v * &v) * &q * &q;
        j16(&w) / closed
    };
    let r = ratio(6, 35);
    assert!(!r.is_zero());
    for (u, v) in [(1, 3), (-7, 11), (20, -9), (2, 100)] {
        assert_eq!(ratio(u, v), r);
    }
}

#[test]
fn j16_is_zero_on_all_zero_input_and_has_weight_16() {
    assert!(j16(&InvariantVector::from_ints([0, 0, 0, 0])).is_zero());
    let v = InvariantVector::from_ints([3, -5, 7, 11]);
    let c = rat(2);
    let w = InvariantVector::new(&v.j2 * rat(4), &v.j4 * rat(16), &v.j6 * rat(64), &v.j10 * rat(1024));
    let c16 = (0..16).fold(rat(1), |a, _| a * &c);
    assert_eq!(j16(&w), j16(&v) * c16);
}

#[test]
fn clebsch_matrix_entries() {
    let c = genus2::invariants::ClebschVector { a: rat(2), b: rat(3), c: rat(5), d: rat(7) };
    let m = clebsch_matrix(&c);
    assert_eq!(m[0][1], (rat(9) + rat(10)) * frac(2, 3));
    assert_eq!(m[1][1], rat(7));
    assert_eq!(m[0][2], rat(7));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
    let z = genus2::invariants::ClebschVector { a: rat(0), b: rat(0), c: rat(0), d: rat(0) };
    assert!(clebsch_matrix(&z).iter().flatten().all(|x| x.is_zero()));
}

#[test]
fn j30_vanishes_on_the_worked_example() {
    assert!(j30(&igusa(&sextic([1, 0, -14, 0, -82, 0, 1]))).is_zero());
}

#[test]
fn d4_curve_with_j2_zero() {
    // x^5 + x^3 - (3/20) x
    let f = BinarySextic::new([rat(0), rat(1), rat(0), rat(1), rat(0), frac(-3, 20), rat(0)]).unwrap();
    let k = moduli_key(&f).unwrap();
    assert_eq!(k.r, 0);
    assert_eq!(classify(&k), AutGroup::D4);
    assert_eq!(AutGroup::D4.id(), (8, 3));
    assert_eq!(AutGroup::V4.id(), (4, 2));
}

#[test]
fn dihedral_invariants_examples() {
    let d = dihedral_uv_from_standard(&rat(2), &rat(3)).unwrap();
    assert_eq!((d.u.clone(), d.v.clone()), (rat(6), rat(35)));
    assert_eq!(classify_uv(&DihedralInvariants::from_ints(0, 0)), AutGroup::Order24);
    assert_eq!(classify_uv(&DihedralInvariants::from_ints(25, -250)), AutGroup::GL23);
    assert_eq!(classify_uv(&DihedralInvariants::from_ints(4, 16)), AutGroup::D4);
    let cands = dihedral_uv_candidates(&order24_key()).unwrap();
    assert!(cands
        .iter()
        .any(|c| *c == DihedralInvariants::from_ints(0, 0) || *c == DihedralInvariants::from_ints(225, 6750)));
}

#[test]
fn height_examples() {
    let mh = moduli_height(&igusa(&sextic([1, 0, -14, 0, -82, 0, 1]))).unwrap();
    assert_eq!(mh.value, pow2(14) * BigInt::from(1163).pow(5));
    assert_eq!(moduli_height(&InvariantVector::from_ints([1, 0, 0, 1])).unwrap().value, BigInt::from(1));
    let f = sextic([1, 0, 0, 0, 0, 0, 1]);
    assert_eq!(reduce_at_prime(&f, &BigInt::from(2)).unwrap(), (f, 0));
}

#[test]
fn d6_curve_reduces_at_two() {
    let f = BinarySextic::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), big(pow2(33))]).unwrap();
    let (g, m) = reduce_at_prime(&f, &BigInt::from(2)).unwrap();
    assert_eq!(m, 5);
    assert_eq!(g.naive_height().unwrap(), pow2(18));
    assert_eq!(d6_parameter_w(&moduli_key(&f).unwrap()), Some(big(pow2(33))));
}

#[test]
fn v4_minimal_model_of_6_35() {
    let d = DihedralInvariants::from_ints(6, 35);
    let k = moduli_key(&v4_minimal_model(&d).unwrap()).unwrap();
    assert_eq!(k, moduli_key(&sextic([1, 0, 2, 0, 3, 0, 1])).unwrap());
    assert!(v4_minimal_model(&DihedralInvariants::from_ints(0, 5)).is_err());
}

#[test]
fn special_point_reconstruction() {
    match reconstruct(&order24_key(), 1 << 18).unwrap() {
        Reconstruction::Curve { curve, .. } => {
            assert_eq!(moduli_key(&curve).unwrap(), order24_key())
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn d6_curve_with_x4_term() {
    assert_eq!(classify(&moduli_key(&sextic([1, 0, 83, 0, 19, 0, 1])).unwrap()), AutGroup::D6);
}

#[test]
fn v4_locus_matches_j30_on_height_one_points() {
    for e in genus2::db::build_l1(1).entries.values() {
        let Some(i) = e.key.absolute() else { continue };
        let v = InvariantVector::from_absolute(&i);
        assert_eq!(genus2::classify::v4_locus(&i).is_zero(), j30(&v).is_zero(), "{:?}", e.key);
    }
}
