// SPDX-License-Identifier: Apache-2.0

//! Naive, minimal and moduli heights, prime-valuation reduction and minimal discriminants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, powmod, rat, rat_mod, BinarySextic, Rat, FP};
use crate::classify::DihedralInvariants;
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::invariants::{igusa, igusa_i128, weighted_equal, InvariantVector};

/// Max |coordinate| of the primitive integral representative of [J2^5 : J4 J2^3 : J6 J2^2 : J10].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuliHeight {
    pub value: BigInt,
}

impl ModuliHeight {
    pub fn factored(&self) -> Factorization {
        factor(&self.value, 1 << 20)
    }
}

impl fmt::Display for ModuliHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The primitive integral point [J2^5 : J4 J2^3 : J6 J2^2 : J10], sign-normalized.
pub fn moduli_point(v: &InvariantVector) -> Result<[BigInt; 4]> {
    if v.j10.is_zero() {
        return Err(Error::NotGenus2);
    }
    let j2 = &v.j2;
    let j2_2 = j2 * j2;
    let j2_3 = &j2_2 * j2;
    let p = [&j2_3 * &j2_2, &v.j4 * &j2_3, &v.j6 * &j2_2, v.j10.clone()];
    let den = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut n: Vec<BigInt> = p.iter().map(|c| (c * int(den.clone())).to_integer()).collect();
    let mut g = n.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if n.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in n.iter_mut() {
        *c /= &g;
    }
    Ok([n[0].clone(), n[1].clone(), n[2].clone(), n[3].clone()])
}

pub fn moduli_height(v: &InvariantVector) -> Result<ModuliHeight> {
    let p = moduli_point(v)?;
    Ok(ModuliHeight { value: p.iter().map(|c| c.abs()).max().unwrap() })
}

fn valuation(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// One valuation reduction at p, anchored at the constant term a6.
/// Returns the reduced primitive form and the exponent m of x -> p^m x.
fn reduce_anchored(f: &BinarySextic, p: &BigInt) -> (BinarySextic, u32) {
    let c = f.integer_coeffs().expect("integral form");
    let Some(alpha0) = valuation(&c[6], p) else {
        return (f.clone(), 0);
    };
    // coefficient of x^i is c[6 - i]
    let mut m = u32::MAX;
    for i in 1..=6u32 {
        if let Some(ai) = valuation(&c[6 - i as usize], p) {
            if ai > alpha0 {
                continue;
            }
            m = m.min((alpha0 - ai) / i);
        }
    }
    if m == 0 || m == u32::MAX {
        return (f.clone(), 0);
    }
    let coeffs: [Rat; 7] = std::array::from_fn(|k| int(&c[k] * p.pow(m * (6 - k as u32))));
    (BinarySextic::new(coeffs).expect("nonzero").primitive(), m)
}

/// Valuation reduction at p in both orientations, keeping whichever lowers the height more.
pub fn reduce_at_prime(f: &BinarySextic, p: &BigInt) -> Result<(BinarySextic, u32)> {
    let f = f.primitive();
    let h = f.naive_height()?;
    let (a, ma) = reduce_anchored(&f, p);
    let (b, mb) = reduce_anchored(&f.swap(), p);
    let b = b.swap().primitive();
    let (ha, hb) = (a.naive_height()?, b.naive_height()?);
    let best = if ma > 0 && ha <= hb && ha <= h {
        (a, ma)
    } else if mb > 0 && hb <= h {
        (b, mb)
    } else {
        (f, 0)
    };
    Ok(best)
}

/// Stage-1 reduction: valuation reduction at every prime dividing a0 or a6, to a fixpoint.
pub fn reduce_to_fixpoint(f: &BinarySextic, budget: u64) -> Result<BinarySextic> {
    let mut cur = f.primitive();
    loop {
        let c = cur.integer_coeffs().expect("integral");
        let mut primes: Vec<BigInt> = Vec::new();
        for end in [&c[0], &c[6]] {
            if !end.is_zero() {
                primes.extend(factor(end, budget).primes.into_iter().map(|(q, _)| q));
            }
        }
        primes.sort();
        primes.dedup();
        let h = cur.naive_height()?;
        let mut improved = false;
        for p in &primes {
            let (g, m) = reduce_at_prime(&cur, p)?;
            if m > 0 && g.naive_height()? < h {
                cur = g;
                improved = true;
                break;
            }
        }
        if !improved {
            return Ok(cur);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalHeight {
    Exact(u64),
    UnknownAboveBound,
}

impl fmt::Display for MinimalHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalHeight::Exact(h) => write!(f, "{h}"),
            MinimalHeight::UnknownAboveBound => write!(f, "unknown above bound"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub naive: BigInt,
    pub minimal: MinimalHeight,
    pub witness: BinarySextic,
    pub search_bound: u64,
}

/// Weighted-projective equality against a fixed target, with a modular pre-filter.
pub struct KeyMatcher {
    target: InvariantVector,
    residues: [u128; 4],
    zeros: [bool; 4],
}

const WT: [u32; 4] = [2, 4, 6, 10];

impl KeyMatcher {
    pub fn new(target: &InvariantVector) -> Self {
        let a = target.as_array();
        let residues = std::array::from_fn(|i| rat_mod(&a[i]).unwrap_or(0));
        let zeros = std::array::from_fn(|i| a[i].is_zero());
        KeyMatcher { target: target.clone(), residues, zeros }
    }

    pub fn matches_ints(&self, c: &[i128; 4]) -> bool {
        for i in 0..4 {
            if (c[i] == 0) != self.zeros[i] {
                return false;
            }
        }
        let cm: [u128; 4] = std::array::from_fn(|i| c[i].rem_euclid(FP as i128) as u128);
        for i in 0..4 {
            for j in i + 1..4 {
                let l = powmod(cm[i], WT[j]) * powmod(self.residues[j], WT[i]) % FP;
                let r = powmod(self.residues[i], WT[j]) * powmod(cm[j], WT[i]) % FP;
                if l != r {
                    return false;
                }
            }
        }
        let v = InvariantVector::new(int(c[0].into()), int(c[1].into()), int(c[2].into()), int(c[3].into()));
        weighted_equal(&v, &self.target)
    }

    pub fn matches(&self, f: &BinarySextic) -> bool {
        weighted_equal(&igusa(f), &self.target)
    }
}

/// Every tuple with max |a_i| = k exactly and first nonzero entry positive, for a fixed a0.
fn shell_with_lead(k: i64, a0: i64, mut visit: impl FnMut(&[i64; 7])) {
    let mut t = [0i64; 7];
    t[0] = a0;
    fn rec(t: &mut [i64; 7], i: usize, k: i64, seen_max: bool, seen_nonzero: bool, visit: &mut dyn FnMut(&[i64; 7])) {
        if i == 7 {
            if seen_max {
                visit(t);
            }
            return;
        }
        let lo = if seen_nonzero { -k } else { 0 };
        for a in lo..=k {
            t[i] = a;
            rec(t, i + 1, k, seen_max || a.abs() == k, seen_nonzero || a != 0, visit);
        }
    }
    rec(&mut t, 1, k, a0.abs() == k, a0 != 0, &mut visit);
}

fn gcd_all(t: &[i64; 7]) -> i64 {
    t.iter().fold(0i64, |g, &a| g.gcd(&a))
}

/// Smallest-height integral model of the target among heights 1..below, or None.
fn search_below(target: &InvariantVector, below: u64) -> Option<(u64, BinarySextic)> {
    let matcher = KeyMatcher::new(target);
    for k in 1..below as i64 {
        let found: Option<[i64; 7]> = (0..=k)
            .into_par_iter()
            .filter_map(|a0| {
                let mut best: Option<[i64; 7]> = None;
                shell_with_lead(k, a0, |t| {
                    if best.is_some() || gcd_all(t) != 1 {
                        return;
                    }
                    if let Some(c) = igusa_i128(t) {
                        if c[3] != 0 && matcher.matches_ints(&c) {
                            best = Some(*t);
                        }
                    }
                });
                best
            })
            .min();
        if let Some(t) = found {
            return Some((k as u64, BinarySextic::from_ints(&t).unwrap()));
        }
    }
    None
}

/// Staged minimal height: valuation reduction, then exhaustive search below the
/// reduced height when it does not exceed `budget`.
pub fn minimal_height(f: &BinarySextic, budget: u64) -> Result<HeightReport> {
    let f = f.primitive();
    let v = igusa(&f);
    if !v.is_genus2() {
        return Err(Error::NotGenus2);
    }
    let naive = f.naive_height()?;
    let reduced = reduce_to_fixpoint(&f, 1 << 20)?;
    let h = reduced.naive_height()?;
    let Some(hs) = h.to_u64().filter(|&h| h <= budget) else {
        return Ok(HeightReport {
            naive,
            minimal: MinimalHeight::UnknownAboveBound,
            witness: reduced,
            search_bound: budget,
        });
    };
    let (minimal, witness) = match search_below(&v, hs) {
        Some((k, w)) => (k, w),
        None => (hs, reduced),
    };
    Ok(HeightReport { naive, minimal: MinimalHeight::Exact(minimal), witness, search_bound: budget })
}

/// 2^12 J10, the integral discriminant used for valuation bookkeeping.
pub fn integral_discriminant(f: &BinarySextic) -> BigInt {
    (f.discriminant() * rat(4096)).to_integer()
}

/// The largest n in {2, 3} with f = g(x^n), or 1.
pub fn decomposition_degree(f: &BinarySextic) -> u32 {
    let c = f.coeffs();
    // coefficient of x^{6-k} is c[k]; x^j present only for n | j
    for n in [3u32, 2] {
        if (0..7).all(|k| c[k].is_zero() || (6 - k as u32).is_multiple_of(n)) {
            return n;
        }
    }
    1
}

/// x -> p^{-1/n} x on a form in x^n, content removed.
fn shrink_x(f: &BinarySextic, p: &BigInt, n: u32) -> BinarySextic {
    let c = f.coeffs();
    let coeffs: [Rat; 7] = std::array::from_fn(|k| {
        let i = 6 - k as u32;
        if c[k].is_zero() {
            return rat(0);
        }
        &c[k] / int(p.pow(i / n))
    });
    BinarySextic::new(coeffs).expect("nonzero").primitive()
}

/// Lowers every prime valuation of the discriminant below the bound of the curve's shape:
/// 30 in general, 15 for f(x^2) and 10 for f(x^3) when twists are allowed.
pub fn minimal_discriminant(f: &BinarySextic, allow_twists: bool) -> Result<BinarySextic> {
    let mut cur = f.primitive();
    if cur.discriminant().is_zero() {
        return Err(Error::NotGenus2);
    }
    let n = if allow_twists { decomposition_degree(&cur) } else { 1 };
    let bound = 30 / n;
    loop {
        let d = integral_discriminant(&cur);
        let fac = factor(&d, 1 << 20);
        let mut improved = false;
        for (p, e) in fac.primes.iter().filter(|(_, e)| *e >= bound) {
            let mut cands = vec![shrink_x(&cur, p, n), shrink_x(&cur.swap(), p, n).swap().primitive()];
            if n == 1 && p.bits() < 20 {
                // x -> (p x + r z): roots of f modulo p
                let pi = p.to_i64().unwrap();
                for r in 0..pi {
                    let m = crate::arith::Mobius::from_ints(pi, r, 0, 1).unwrap();
                    cands.push(cur.transform(&m).primitive());
                }
            }
            for g in cands {
                let dg = integral_discriminant(&g);
                if dg.is_zero() {
                    continue;
                }
                let eg = valuation(&dg, p).unwrap();
                if eg < *e {
                    cur = g;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            return Ok(cur);
        }
    }
}

/// The universal minimal-discriminant model of the V4 locus; requires u != 0 and 4u^3 != v^2.
pub fn v4_minimal_model(d: &DihedralInvariants) -> Result<BinarySextic> {
    let (u, v) = (&d.u, &d.v);
    if u.is_zero() {
        return Err(Error::DegenerateDihedral("u = 0".into()));
    }
    let u2 = u * u;
    let u3 = &u2 * u;
    let w = &u3 * rat(4) - v * v;
    if w.is_zero() {
        return Err(Error::DegenerateDihedral("4u^3 = v^2".into()));
    }
    let q = &u3 * rat(2) - &u2 * v - v * v;
    let r = &u2 + v * rat(3);
    let s = &u3 * rat(30) + &u2 * v - v * v * rat(15);
    let t = &u2 - v * rat(5);
    let up = |k: u32| crate::arith::rpow(u, k);
    let b6 = -&q / (rat(64) * up(6));
    let b5 = -rat(2) * &r * &w / (rat(32) * up(5));
    let b4 = &s * &w / (rat(16) * up(4));
    let b3 = -rat(4) * &t * &w * &w / (rat(8) * up(3));
    let b2 = -&s * &w * &w / (rat(4) * up(2));
    let b1 = -&r * &w * &w * &w / u;
    let b0 = &q * &w * &w * &w;
    BinarySextic::new([b6, b5, b4, b3, b2, b1, b0])
}

/// Polynomial arithmetic mod p, coefficients lowest degree first.
fn poly_mod_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_mod_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>, p: &BigInt) -> Vec<BigInt> {
    a = poly_mod_trim(a);
    b = poly_mod_trim(b);
    while !b.is_empty() {
        // a mod b
        let inv = b.last().unwrap().modpow(&(p - 2u32), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = (a.last().unwrap() * &inv) % p;
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = (&a[shift + i] - &q * c).mod_floor(p);
            }
            a = poly_mod_trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// The root of f(t, 1) mod p of multiplicity >= 3, when f has a single such root.
fn triple_root_mod(f: &BinarySextic, p: &BigInt) -> Option<BigInt> {
    let c = f.integer_coeffs()?;
    // lowest degree first: coefficient of t^i is c[6 - i]
    let g: Vec<BigInt> = (0..7).map(|i| c[6 - i].mod_floor(p)).collect();
    let deriv = |a: &[BigInt]| -> Vec<BigInt> {
        a.iter().enumerate().skip(1).map(|(i, x)| (x * BigInt::from(i)).mod_floor(p)).collect()
    };
    let d1 = deriv(&g);
    let d2 = deriv(&d1);
    let mut h = poly_mod_gcd(poly_mod_gcd(g, d1, p), d2, p);
    // strip multiplicity from a power of a single linear factor
    while h.len() > 2 {
        let next = poly_mod_gcd(h.clone(), deriv(&h), p);
        if next.len() < 2 || next.len() == h.len() {
            return None;
        }
        h = next;
    }
    if h.len() != 2 {
        return None;
    }
    let inv = h[1].modpow(&(p - 2u32), p);
    Some((-&h[0] * inv).mod_floor(p))
}

/// Moves to neighbouring models (x -> p x + r z, z -> p z) for each listed prime. An index-p
/// move changes the discriminant of the primitive form by p^(30 - 10k) when it frees content
/// p^k, so a move is taken exactly when k >= 4.
pub fn minimize_at_primes(f: &BinarySextic, primes: &[BigInt]) -> BinarySextic {
    let Some(mut cur) = f.primitive().integer_coeffs() else {
        return f.clone();
    };
    for p in primes {
        loop {
            let mut moves: Vec<(BigInt, BigInt, bool)> =
                vec![(p.clone(), BigInt::zero(), false), (p.clone(), BigInt::zero(), true)];
            let roots: Vec<BigInt> = match p.to_i64() {
                Some(pi) if pi < 64 => (1..pi).map(BigInt::from).collect(),
                _ => {
                    let g = BinarySextic::from_bigints(&cur).unwrap();
                    triple_root_mod(&g, p).into_iter().filter(|r| !r.is_zero()).collect()
                }
            };
            moves.extend(roots.into_iter().map(|r| (p.clone(), r, false)));
            let mut next = None;
            for (q, r, swapped) in moves {
                let c = if swapped { rev(&cur) } else { cur.clone() };
                let t = substitute(&c, &q, &r);
                let k = t.iter().filter(|x| !x.is_zero()).map(|x| valuation(x, p).unwrap()).min().unwrap();
                if k >= 4 {
                    let pk = p.pow(k);
                    let t: [BigInt; 7] = std::array::from_fn(|i| &t[i] / &pk);
                    next = Some(if swapped { rev(&t) } else { t });
                    break;
                }
            }
            match next {
                Some(t) => cur = t,
                None => break,
            }
        }
    }
    BinarySextic::from_bigints(&cur).unwrap().primitive()
}

fn rev(c: &[BigInt; 7]) -> [BigInt; 7] {
    std::array::from_fn(|i| c[6 - i].clone())
}

/// Coefficients of f(q x + r z, z), by Horner steps in integers.
fn substitute(c: &[BigInt; 7], q: &BigInt, r: &BigInt) -> [BigInt; 7] {
    // f(x + r z, z) by repeated synthetic division on the dehomogenized polynomial
    let mut a: Vec<BigInt> = (0..7).map(|i| c[6 - i].clone()).collect(); // a[j] = coeff of t^j, t = x/z
    for i in 0..6 {
        for j in (i..6).rev() {
            let add = r * &a[j + 1];
            a[j] += add;
        }
    }
    // scale t -> q t
    let mut qp = BigInt::one();
    for x in a.iter_mut() {
        *x *= &qp;
        qp *= q;
    }
    std::array::from_fn(|i| a[6 - i].clone())
}

/// Approximate f64 coefficients (lowest degree first in t = x/z), scaled by a common power of 2
/// only when they would overflow.
fn float_coeffs(c: &[BigInt; 7]) -> Vec<f64> {
    let bits = c.iter().map(|x| x.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(1000);
    (0..7).rev().map(|i| (&c[i] >> shift).to_f64().unwrap_or(0.0)).collect()
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

/// Complex roots of a polynomial (lowest degree first, nonzero leading term), Aberth iteration.
fn complex_roots(p: &[f64]) -> Vec<C64> {
    let n = p.len() - 1;
    let lead = p[n];
    let q: Vec<f64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + q[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            (radius * a.cos() * 0.5, radius * a.sin() * 0.5)
        })
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        let mut v = (q[n], 0.0);
        let mut d = (0.0, 0.0);
        for i in (0..n).rev() {
            d = (cmul(d, x).0 + v.0, cmul(d, x).1 + v.1);
            v = (cmul(v, x).0 + q[i], cmul(v, x).1);
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.0 == 0.0 && v.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(v, d);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let w = cdiv((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s = (s.0 + w.0, s.1 + w.1);
                }
            }
            let denom = (1.0 - cmul(ratio, s).0, -cmul(ratio, s).1);
            let step = cdiv(ratio, denom);
            if !(step.0.is_finite() && step.1.is_finite()) {
                continue;
            }
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max((step.0.abs() + step.1.abs()) / (1.0 + z[i].0.abs() + z[i].1.abs()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Positive definite covariant quadratic sum t_i |x - a_i z|^2 over the roots.
fn root_covariant(c: &[BigInt; 7]) -> Option<[f64; 3]> {
    if c[0].is_zero() {
        return None;
    }
    let p = float_coeffs(c);
    let roots = complex_roots(&p);
    let mut q = [0.0f64; 3];
    for (i, a) in roots.iter().enumerate() {
        let mut d = 1.0f64;
        for (j, b) in roots.iter().enumerate() {
            if i != j {
                d *= ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            }
        }
        let t = 1.0 / d.sqrt();
        if !t.is_finite() {
            return None;
        }
        q[0] += t;
        q[1] -= 2.0 * t * a.0;
        q[2] += t * (a.0 * a.0 + a.1 * a.1);
    }
    (q.iter().all(|x| x.is_finite()) && 4.0 * q[0] * q[2] > q[1] * q[1]).then_some(q)
}

/// GL2(Z) size reduction: reduce the root covariant to the fundamental domain and carry the
/// same substitutions over to f, repeating while the coefficients shrink.
pub fn reduce_gl2z(f: &BinarySextic) -> BinarySextic {
    let f = f.primitive();
    let Some(mut cur) = f.integer_coeffs() else {
        return f;
    };
    let size = |c: &[BigInt; 7]| -> (BigInt, BigInt) {
        (c.iter().map(|x| x.abs()).max().unwrap(), c.iter().map(|x| x * x).sum())
    };
    let one = BigInt::one();
    for _ in 0..40 {
        // move a root at infinity away first: x -> x, z -> x + z
        let base = if cur[0].is_zero() { rev(&substitute(&rev(&cur), &one, &one)) } else { cur.clone() };
        let Some(mut q) = root_covariant(&base) else {
            break;
        };
        let mut g = base;
        for _ in 0..200 {
            let n = (-q[1] / (2.0 * q[0])).round();
            if n != 0.0 && n.abs() < 1e15 {
                g = substitute(&g, &one, &BigInt::from(n as i64));
                q = [q[0], q[1] + 2.0 * n * q[0], q[0] * n * n + q[1] * n + q[2]];
            }
            if q[2] < q[0] * (1.0 - 1e-12) {
                // x -> -z, z -> x
                g = std::array::from_fn(|i| if (6 - i) % 2 == 1 { -&g[6 - i] } else { g[6 - i].clone() });
                q = [q[2], -q[1], q[0]];
            } else {
                break;
            }
        }
        let cont = g.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        let g: [BigInt; 7] = std::array::from_fn(|i| &g[i] / &cont);
        if size(&g) < size(&cur) {
            cur = g;
        } else {
            break;
        }
    }
    BinarySextic::from_bigints(&cur).unwrap()
}

/// Coefficients of the Hessian f_xx f_zz - f_xz^2 (degree 8), up to a constant.
fn hessian(c: &[BigInt; 7]) -> Vec<BigInt> {
    let fxx: Vec<BigInt> = (0..5).map(|i| &c[i] * ((6 - i) * (5 - i)) as i64).collect();
    let fzz: Vec<BigInt> = (0..5).map(|j| &c[j + 2] * ((j + 2) * (j + 1)) as i64).collect();
    let fxz: Vec<BigInt> = (0..5).map(|j| &c[j + 1] * ((5 - j) * (j + 1)) as i64).collect();
    let mut h = vec![BigInt::zero(); 9];
    for i in 0..5 {
        for j in 0..5 {
            h[i + j] += &fxx[i] * &fzz[j] - &fxz[i] * &fxz[j];
        }
    }
    h
}

/// Removes from g every prime it shares with n.
fn coprime_part(mut g: BigInt, n: &BigInt) -> BigInt {
    loop {
        let d = g.gcd(n);
        if d.is_one() {
            return g;
        }
        while (&g % &d).is_zero() {
            g /= &d;
        }
    }
}

/// Removes the primes where f is a sixth power of a linear form modulo p, without factoring:
/// they all divide the content of the Hessian, and one move x -> g x + r z handles them together.
pub fn minimize_by_hessian(f: &BinarySextic) -> BinarySextic {
    let mut cur = f.primitive();
    for _ in 0..64 {
        let Some(c) = cur.integer_coeffs() else {
            return cur;
        };
        let mut g = hessian(&c).iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return cur;
        }
        g = coprime_part(g, &BigInt::from(30));
        if g.is_one() {
            return cur;
        }
        let mut next = None;
        for swapped in [false, true] {
            let o = if swapped { cur.swap() } else { cur.clone() };
            let oc = o.integer_coeffs().unwrap();
            let mut m = coprime_part(g.clone(), &oc[0]);
            while let Some((b, _)) = crate::factor::perfect_power(&m) {
                m = b;
            }
            if m.is_one() {
                continue;
            }
            let Some(inv) = (&oc[0] * BigInt::from(6)).modinv(&m) else {
                continue;
            };
            let r = (-&oc[1] * &inv).mod_floor(&m);
            let raw = o.transform(&crate::arith::Mobius::new(int(m.clone()), int(r.clone()), rat(0), rat(1)).unwrap());
            let cont = raw.integer_coeffs().unwrap().iter().fold(BigInt::zero(), |a, x| a.gcd(x));
            // keep the primes of m that divide the content at least six times
            let (mut q, mut d) = (cont, m.clone());
            for _ in 0..6 {
                d = d.gcd(&q);
                if d.is_one() {
                    break;
                }
                q /= &d;
            }
            if d.is_one() {
                continue;
            }
            let r = r.mod_floor(&d);
            let t = crate::arith::Mobius::new(int(d), int(r), rat(0), rat(1)).unwrap();
            let mut h = o.transform(&t).primitive();
            if swapped {
                h = h.swap();
            }
            next = Some(h);
            break;
        }
        match next {
            Some(h) => cur = h,
            None => return cur,
        }
    }
    cur
}
