// SPDX-License-Identifier: Apache-2.0

//! Curves from moduli points: special curves, the D4/D6/V4 models and the conic-cubic method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{frac, int, rat, rpow, BinarySextic, Rat};
use crate::classify::{
    classify, dihedral_uv_from_key, j2zero_d4_curve, j2zero_d6_curve, key_to_invariants, moduli_key, AutGroup,
    DihedralInvariants, ModuliKey,
};
use crate::conic::{solve_conic, solve_conic_with_primes, ConicSolution};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::heights::{
    minimize_at_primes, minimize_by_hessian, reduce_gl2z, reduce_to_fixpoint, v4_minimal_model, KeyMatcher,
};
use crate::invariants::{
    clebsch_from_igusa, clebsch_matrix, det3, igusa_i128, ClebschVector, InvariantVector, Matrix3,
};
use crate::poly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    Quadratic,
}

/// Q, or the quadratic field Q(sqrt(d)) with d squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldOfDefinition {
    pub kind: FieldKind,
    pub squarefree_part: BigInt,
}

impl FieldOfDefinition {
    pub fn rational() -> Self {
        FieldOfDefinition { kind: FieldKind::Rational, squarefree_part: BigInt::from(1) }
    }

    pub fn quadratic(d: BigInt) -> Self {
        FieldOfDefinition { kind: FieldKind::Quadratic, squarefree_part: d }
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }
}

/// The conic x^T M x = 0 and the cubic sum a_jkl x_j x_k x_l = 0 (over all ordered triples).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCubic {
    pub conic: Matrix3,
    /// a_jkl for j <= k <= l, indexed by `cubic_index`.
    pub cubic: [Rat; 10],
}

/// Position of the sorted triple (j, k, l), 0-based, in `ConicCubic::cubic`.
pub fn cubic_index(mut t: [usize; 3]) -> usize {
    t.sort();
    const ORDER: [[usize; 3]; 10] =
        [[0, 0, 0], [0, 0, 1], [0, 0, 2], [0, 1, 1], [0, 1, 2], [0, 2, 2], [1, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2]];
    ORDER.iter().position(|o| *o == t).unwrap()
}

pub fn cubic_coefficients(c: &ClebschVector) -> [Rat; 10] {
    let (a, b, cc, d) = (&c.a, &c.b, &c.c, &c.d);
    let a2 = a * a;
    let b2 = b * b;
    let b3 = &b2 * b;
    let b4 = &b2 * &b2;
    let c2 = cc * cc;
    let c3 = &c2 * cc;
    let q = |n: i64, m: i64| frac(n, m);
    let a111 = q(2, 9) * (&a2 * cc - b * cc * rat(6) + d * rat(9));
    let a112 = q(1, 9) * (&b3 * rat(2) + a * b * cc * rat(4) + &c2 * rat(12) + a * d * rat(3));
    let a113 = q(1, 9) * (a * &b3 + &a2 * b * cc * q(4, 3) + &b2 * cc * rat(4) + a * &c2 * rat(6) + b * d * rat(3));
    let a123 = q(1, 18)
        * (&b4 * rat(2)
            + a * &b2 * cc * rat(4)
            + &a2 * &c2 * q(4, 3)
            + b * &c2 * rat(4)
            + a * b * d * rat(3)
            + cc * d * rat(12));
    let a133 = q(1, 18)
        * (a * &b4
            + &a2 * &b2 * cc * q(4, 3)
            + &b3 * cc * q(16, 3)
            + a * b * &c2 * q(26, 3)
            + &c3 * rat(8)
            + &b2 * d * rat(3)
            + a * cc * d * rat(2));
    let a222 =
        q(1, 9) * (&b4 * rat(3) + a * &b2 * cc * rat(6) + &a2 * &c2 * q(8, 3) + b * &c2 * rat(2) - cc * d * rat(3));
    let a223 = q(1, 18)
        * (-(&b3 * cc * q(2, 3)) - a * b * &c2 * q(4, 3) - &c3 * rat(4) + &b2 * d * rat(9) + a * cc * d * rat(8));
    let a233 = q(1, 18)
        * (&b4 * b + a * &b3 * cc * rat(2) + &a2 * b * &c2 * q(8, 9) + &b2 * &c2 * q(2, 3) - b * cc * d
            + d * d * rat(9));
    let a333 = q(1, 36)
        * (-(&b4 * cc * rat(2)) - a * &b2 * &c2 * rat(4) - &a2 * &c3 * q(16, 9) - b * &c3 * q(4, 3)
            + &b3 * d * rat(9)
            + a * b * cc * d * rat(12)
            + &c2 * d * rat(20));
    let a122 = a113.clone();
    [a111, a112, a113, a122, a123, a133, a222, a223, a233, a333]
}

/// The integral weighted representative of the key with the least scaling, and the primes
/// involved in the scaling.
pub fn integral_representative(k: &ModuliKey, budget: u64) -> Result<(InvariantVector, Vec<BigInt>)> {
    let v = key_to_invariants(k)?;
    let a = v.as_array();
    let den = a.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let f = factor(&den, budget);
    if !f.complete() {
        // lcm scaling still gives an integral point
        return Ok((v.weighted_scale(&int(den)), Vec::new()));
    }
    let mut c = rat(1);
    for (p, _) in &f.primes {
        let mut e = 0i64;
        for (x, w) in a.iter().zip([2i64, 4, 6, 10]) {
            if x.is_zero() {
                continue;
            }
            let vp = val(x.numer(), p) - val(x.denom(), p);
            e = e.max(Integer::div_ceil(&(-vp), &w));
        }
        c *= int(p.pow(e as u32));
    }
    Ok((v.weighted_scale(&c), f.primes.into_iter().map(|(p, _)| p).collect()))
}

fn val(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

/// Primes of the point's coordinates found cheaply; unfactored parts contribute their gcds.
fn point_primes(p: &[BigInt; 3], budget: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = Vec::new();
    for x in p.iter().filter(|x| !x.is_zero()) {
        let f = factor(x, budget);
        out.extend(f.primes.into_iter().map(|(q, _)| q));
        if !f.cofactor.is_one() {
            rest.push(f.cofactor);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if !g.is_one() {
                out.push(g);
            }
        }
    }
    out
}

/// Clebsch invariants of a small integral representative of the key.
fn key_clebsch(k: &ModuliKey) -> Result<ClebschVector> {
    Ok(clebsch_from_igusa(&integral_representative(k, 1 << 16)?.0))
}

pub fn build_conic_cubic(k: &ModuliKey) -> Result<ConicCubic> {
    let c = key_clebsch(k)?;
    let conic = clebsch_matrix(&c);
    if det3(&conic).is_zero() {
        return Err(Error::UseDihedralModel);
    }
    Ok(ConicCubic { conic, cubic: cubic_coefficients(&c) })
}

/// The classical obstruction d^2 as a function of (i1, i2, i3); reported alongside the conic decision.
pub fn d_squared(k: &ModuliKey) -> Result<Rat> {
    let i = k.absolute().ok_or(Error::UseTInvariants)?;
    let (i1, i2, i3) = (&i.i1, &i.i2, &i.i3);
    let mono = |c: i64, e1: u32, e2: u32, e3: u32| -> Rat { rpow(i1, e1) * rpow(i2, e2) * rpow(i3, e3) * rat(c) };
    let big = |s: &str, e1: u32, e2: u32, e3: u32| -> Rat {
        rpow(i1, e1) * rpow(i2, e2) * rpow(i3, e3) * int(s.parse::<BigInt>().unwrap())
    };
    let p = mono(9, 7, 0, 0) + mono(2, 6, 1, 0) - mono(27, 6, 0, 0) - mono(18, 4, 2, 0) - mono(4, 3, 3, 0)
        + mono(331776, 5, 0, 1)
        + mono(54, 3, 2, 0)
        + mono(9, 1, 4, 0)
        + mono(2, 0, 5, 0)
        - mono(55240704, 4, 0, 1)
        - mono(47278080, 3, 1, 1)
        - mono(8294400, 2, 2, 1)
        - mono(27, 0, 4, 0)
        + mono(161243136, 3, 0, 1)
        + mono(107495424, 2, 1, 1)
        - mono(52254720, 1, 2, 1)
        - mono(12441600, 0, 3, 1)
        - mono(9459597312000, 2, 0, 2)
        - mono(2866544640000, 1, 1, 2)
        + mono(161243136, 0, 2, 1)
        + mono(111451255603200, 1, 0, 2)
        + mono(20639121408000, 0, 1, 2)
        - big("264180754022400000", 0, 0, 3)
        - mono(240734712102912, 0, 0, 2);
    let q = mono(675, 2, 0, 0) + mono(250, 1, 1, 0) - mono(13500, 1, 0, 0) - mono(2700, 0, 1, 0)
        + mono(86400000, 0, 0, 1)
        + rat(34992);
    let den = int(BigInt::from(2).pow(50) * BigInt::from(3).pow(56) * BigInt::from(5).pow(30));
    Ok(-(p * q) / den)
}

/// Field of definition: Q on every locus with an extra involution, else decided by the conic.
pub fn rationality_obstruction(k: &ModuliKey, budget: u64) -> Result<FieldOfDefinition> {
    if classify(k) != AutGroup::C2 {
        return Ok(FieldOfDefinition::rational());
    }
    let cc = build_conic_cubic(k)?;
    Ok(match solve_conic(&cc.conic, budget)? {
        ConicSolution::Point(_) => FieldOfDefinition::rational(),
        ConicSolution::NoPoint { splitting } => FieldOfDefinition::quadratic(splitting),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Special,
    D4,
    D6,
    V4,
    Mestre,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Curve {
        curve: BinarySextic,
        route: Route,
    },
    /// No model over Q; the conic splits over this quadratic field.
    Quadratic(FieldOfDefinition),
}

/// Binary form of degree len - 1, index i holding the x^(d-i) z^i coefficient.
type Form = Vec<BigInt>;

fn form_mul(p: &[BigInt], q: &[BigInt]) -> Form {
    let mut r = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    r
}

/// Clears denominators; a common scalar on the conic or the cubic only rescales the sextic.
fn integral(xs: &[&Rat]) -> Vec<BigInt> {
    let den = xs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    xs.iter().map(|x| (*x * int(den.clone())).to_integer()).collect()
}

/// Parametrizes the conic from the point P and substitutes into the cubic.
pub fn mestre_sextic(cc: &ConicCubic, p: &[BigInt; 3]) -> Result<BinarySextic> {
    let flat = integral(&cc.conic.iter().flatten().collect::<Vec<_>>());
    let m = |r: usize, s: usize| &flat[3 * r + s];
    let cubic = integral(&cc.cubic.iter().collect::<Vec<_>>());
    let i = (0..3).find(|&i| !p[i].is_zero()).ok_or(Error::ZeroForm)?;
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mp: Vec<BigInt> = (0..3).map(|r| (0..3).map(|s| m(r, s) * &p[s]).sum()).collect();
    // X = psi(w) P - 2 B(P, w) w with w = x e_j + z e_k
    let psi_w = [m(j, j).clone(), m(j, k) * 2, m(k, k).clone()];
    let xs: Vec<Form> = (0..3)
        .map(|t| {
            let mut f: Form = psi_w.iter().map(|c| c * &p[t]).collect();
            if t == j {
                f[0] -= &mp[j] * 2;
                f[1] -= &mp[k] * 2;
            } else if t == k {
                f[1] -= &mp[j] * 2;
                f[2] -= &mp[k] * 2;
            }
            f
        })
        .collect();
    let mut out: Form = vec![BigInt::zero(); 7];
    for a in 0..3 {
        for b in a..3 {
            let ab = form_mul(&xs[a], &xs[b]);
            for c in b..3 {
                let coef = &cubic[cubic_index([a, b, c])];
                if coef.is_zero() {
                    continue;
                }
                // number of ordered triples with this multiset
                let mult = match (a == b, b == c) {
                    (true, true) => 1,
                    (true, false) | (false, true) => 3,
                    _ => 6,
                };
                let coef = coef * mult;
                for (o, x) in out.iter_mut().zip(form_mul(&ab, &xs[c])) {
                    *o += &coef * x;
                }
            }
        }
    }
    let arr: [BigInt; 7] = out.try_into().unwrap();
    Ok(BinarySextic::from_bigints(&arr)?.primitive())
}

/// s of y^2 = x^5 + x^3 + s x on the D4 locus.
pub fn d4_parameter_s(k: &ModuliKey) -> Option<Rat> {
    let i = k.absolute()?;
    let (i1, i2) = (&i.i1, &i.i2);
    let num = i1 * i1 * rat(345) + i1 * i2 * rat(50) - i1 * rat(1296) - i2 * rat(90);
    let den = i1 * i1 * rat(2925) + i1 * i2 * rat(250) - i1 * rat(54000) - i2 * rat(9450) + rat(139968);
    (!den.is_zero()).then(|| frac(-3, 4) * num / den)
}

/// w of y^2 = x^6 + x^3 + w on the D6 locus (numerator coefficient -1782 i1).
pub fn d6_parameter_w(k: &ModuliKey) -> Option<Rat> {
    let i = k.absolute()?;
    let (i1, i2) = (&i.i1, &i.i2);
    let num = i1 * i1 * rat(540) + i1 * i2 * rat(100) - i1 * rat(1782) + i2 * rat(45);
    let den = i1 * i1 * rat(2700) + i1 * i2 * rat(1000) + i1 * rat(204525) + i2 * rat(40950) - rat(708588);
    (!den.is_zero()).then(|| frac(1, 4) * num / den)
}

/// The rational V4 model in the dihedral invariants, coefficients a0 (x^6) .. a6 (z^6).
pub fn v4_model(d: &DihedralInvariants) -> Result<BinarySextic> {
    let (u, v) = (&d.u, &d.v);
    let u2 = u * u;
    let u3 = &u2 * u;
    let e = v * v - &u3 * rat(4);
    let lead = v * v + &u2 * v - &u3 * rat(2);
    let r = &u2 + v * rat(3);
    let s = v * v * rat(15) - &u2 * v - &u3 * rat(30);
    let t = v * rat(5) - &u2;
    let e2 = &e * &e;
    BinarySextic::new([
        lead.clone(),
        &r * &e * rat(2),
        &s * &e,
        &t * &e2 * rat(4),
        &e2 * &s,
        &e2 * &e * &r * rat(2),
        &e2 * &e * lead,
    ])
}

/// The (u, v) of a J2 = 0 key on the involution locus: u = -15 and v a common rational root.
pub fn dihedral_uv_j2zero(k: &ModuliKey) -> Result<DihedralInvariants> {
    if k.r != 0 {
        return Err(Error::NotOnInvolutionLocus);
    }
    let (t2, t3) = (&k.x[1], &k.x[2]);
    let j4 = UPoly::linear(rat(210), rat(1)).scale(&rat(48));
    let base = DihedralInvariants::new(rat(-15), rat(0)).igusa();
    // J6 and J10 are affine, resp. quadratic, in v at u = -15; read them off by interpolation
    let at = |x: i64| DihedralInvariants::new(rat(-15), rat(x)).igusa();
    let j6 = UPoly::linear(base.j6.clone(), at(1).j6 - &base.j6);
    let q = UPoly::linear(rat(18), rat(1));
    let j10 = q.pow(2).scale(&rat(-1024));
    let p2 = j4.pow(5).sub(&j10.pow(2).scale(t2));
    let p3 = j6.pow(5).sub(&j10.pow(3).scale(t3));
    let g = match (p2.is_zero(), p3.is_zero()) {
        (true, true) => return Err(Error::NotOnInvolutionLocus),
        (true, false) => p3.monic(),
        (false, true) => p2.monic(),
        (false, false) => p2.gcd(&p3),
    };
    for r in g.rational_roots() {
        let d = DihedralInvariants::new(rat(-15), r);
        if d.key().is_ok_and(|kk| kk == *k) {
            return Ok(d);
        }
    }
    Err(Error::NotOnInvolutionLocus)
}

/// Dihedral models for (u, v), in order of preference.
fn dihedral_models(d: &DihedralInvariants) -> Vec<BinarySextic> {
    let mut out = Vec::new();
    if let Ok(f) = v4_model(d) {
        out.push(f);
    }
    if let Ok(f) = v4_minimal_model(d) {
        out.push(f);
    }
    if d.u.is_zero() {
        // b = 0 in the standard model; y^2 = x^6 + v x^2 + v is a rational twist
        if let Ok(f) = BinarySextic::new([rat(1), rat(0), rat(0), rat(0), d.v.clone(), rat(0), d.v.clone()]) {
            out.push(f);
        }
    } else if (&d.v * &d.v - &d.u * &d.u * &d.u * rat(4)).is_zero() {
        // a = b = v / (2u)
        let a = &d.v / (&d.u * rat(2));
        if let Ok(f) = BinarySextic::new([rat(1), rat(0), a.clone(), rat(0), a, rat(0), rat(1)]) {
            out.push(f);
        }
    }
    out
}

fn verified(f: BinarySextic, k: &ModuliKey, budget: u64) -> Option<BinarySextic> {
    let f = f.primitive();
    if !moduli_key(&f).is_ok_and(|kk| kk == *k) {
        return None;
    }
    let r = reduce_gl2z(&reduce_to_fixpoint(&f, budget.min(1 << 10)).unwrap_or(f.clone()));
    if moduli_key(&r).is_ok_and(|kk| kk == *k) {
        Some(r)
    } else {
        Some(f)
    }
}

fn first_verified(cands: impl IntoIterator<Item = BinarySextic>, k: &ModuliKey, budget: u64) -> Option<BinarySextic> {
    cands.into_iter().find_map(|f| verified(f, k, budget))
}

/// A curve over Q with moduli point k, or the quadratic field certificate; the result's key is
/// always checked against k. `budget` bounds factoring (conic and prime reduction).
pub fn reconstruct(k: &ModuliKey, budget: u64) -> Result<Reconstruction> {
    let g = classify(k);
    let curve = |c: &[i64; 7]| BinarySextic::from_ints(c).unwrap();
    let done = |f: Option<BinarySextic>, route: Route| -> Result<Reconstruction> {
        f.map(|curve| Reconstruction::Curve { curve, route }).ok_or(Error::VerificationFailed)
    };
    match g {
        AutGroup::C10 => done(verified(curve(&[1, 0, 0, 0, 0, -1, 0]), k, budget), Route::Special),
        AutGroup::Order24 => done(verified(curve(&[1, 0, 0, 0, 0, 0, -1]), k, budget), Route::Special),
        AutGroup::GL23 => done(verified(curve(&[0, 1, 0, 0, 0, -1, 0]), k, budget), Route::Special),
        AutGroup::D4 => {
            let mut cands = Vec::new();
            if k.r == 0 {
                cands.push(j2zero_d4_curve());
            } else if let Some(s) = d4_parameter_s(k) {
                cands.push(BinarySextic::new([rat(0), rat(1), rat(0), rat(1), rat(0), s, rat(0)])?);
            }
            if let Ok(d) = dihedral_uv_from_key(k) {
                cands.extend(dihedral_models(&d));
            }
            done(first_verified(cands, k, budget), Route::D4)
        }
        AutGroup::D6 => {
            let mut cands = Vec::new();
            if k.r == 0 {
                cands.push(j2zero_d6_curve());
            } else if let Some(w) = d6_parameter_w(k) {
                cands.push(BinarySextic::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), w])?);
            }
            if let Ok(d) = dihedral_uv_from_key(k) {
                cands.extend(dihedral_models(&d));
            }
            done(first_verified(cands, k, budget), Route::D6)
        }
        AutGroup::V4 => {
            let d = if k.r == 0 { dihedral_uv_j2zero(k)? } else { dihedral_uv_from_key(k)? };
            done(first_verified(dihedral_models(&d), k, budget), Route::V4)
        }
        AutGroup::C2 => {
            let cc = build_conic_cubic(k)?;
            let (sol, pool) = solve_conic_with_primes(&cc.conic, budget)?;
            match sol {
                ConicSolution::NoPoint { splitting } => {
                    Ok(Reconstruction::Quadratic(FieldOfDefinition::quadratic(splitting)))
                }
                ConicSolution::Point(p) => {
                    let f = mestre_sextic(&cc, &p)?;
                    let mut primes: Vec<BigInt> = [2, 3, 5].map(BigInt::from).to_vec();
                    primes.extend(pool);
                    primes.extend(integral_representative(k, budget)?.1);
                    primes.extend(point_primes(&p, budget.min(1 << 12)));
                    primes.sort();
                    primes.dedup();
                    let g = reduce_gl2z(&minimize_by_hessian(&minimize_at_primes(&f, &primes)));
                    done(verified(g, k, budget), Route::Mestre)
                }
            }
        }
    }
}

/// The curve itself; a quadratic certificate is reported as `Undecided`.
pub fn reconstruct_curve(k: &ModuliKey, budget: u64) -> Result<BinarySextic> {
    match reconstruct(k, budget)? {
        Reconstruction::Curve { curve, .. } => Ok(curve),
        Reconstruction::Quadratic(f) => {
            Err(Error::Undecided(format!("no model over Q; defined over Q(sqrt({}))", f.squarefree_part)))
        }
    }
}

/// Primitive integral sextics of naive height <= h with key k, one per class under
/// x <-> z and overall sign.
pub fn twist_set(k: &ModuliKey, h: u64) -> Result<Vec<BinarySextic>> {
    let target = key_to_invariants(k)?;
    let matcher = KeyMatcher::new(&target);
    let h = h as i64;
    let side = 2 * h + 1;
    let total = side.pow(6);
    let mut found: Vec<[i64; 7]> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|a0| {
            let matcher = &matcher;
            (0..total).filter_map(move |mut idx| {
                let mut t = [0i64; 7];
                t[0] = a0;
                for c in t.iter_mut().skip(1) {
                    *c = idx % side - h;
                    idx /= side;
                }
                let canon = canonical(&t);
                if canon != t || gcd_all(&t) != 1 {
                    return None;
                }
                let inv = igusa_i128(&t)?;
                if inv[3] == 0 || !matcher.matches_ints(&inv) {
                    return None;
                }
                Some(t)
            })
        })
        .collect();
    found.sort();
    Ok(found.iter().map(|t| BinarySextic::from_ints(t).unwrap()).collect())
}

fn canonical(t: &[i64; 7]) -> [i64; 7] {
    let norm = |mut u: [i64; 7]| {
        if u.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            u.iter_mut().for_each(|c| *c = -*c);
        }
        u
    };
    let mut r = *t;
    r.reverse();
    norm(*t).min(norm(r))
}

fn gcd_all(t: &[i64; 7]) -> i64 {
    t.iter().fold(0i64, |g, &c| num_integer::gcd(g, c))
}
