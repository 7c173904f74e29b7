// SPDX-License-Identifier: Apache-2.0

//! Rational points on plane conics x^T M x = 0.
//!
//! The form is diagonalized over Q, reduced to a x^2 + b y^2 + c z^2 with a, b, c squarefree and
//! pairwise coprime, and then solved on the index-|abc| lattice where the form vanishes mod abc:
//! after LLL reduction the form restricted to that lattice is unimodular with small
//! coefficients and a zero turns up in a short search. Local insolubility (a missing square
//! root mod some p | abc, or a definite form) certifies that no rational point exists.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, rat, Rat};
use crate::error::{Error, Result};
use crate::factor::{factor, sqrt_mod};
use crate::invariants::Matrix3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSolution {
    /// A primitive integral point.
    Point([BigInt; 3]),
    /// No rational point; the conic splits over Q(sqrt(d)).
    NoPoint { splitting: BigInt },
}

fn bilinear(m: &Matrix3, u: &[Rat; 3], v: &[Rat; 3]) -> Rat {
    let mut s = rat(0);
    for i in 0..3 {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            s += &u[i] * &m[i][j] * &v[j];
        }
    }
    s
}

/// Primitive integral multiple of a nonzero rational vector.
pub fn primitive_point(v: &[Rat; 3]) -> [BigInt; 3] {
    let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let n: Vec<BigInt> = v.iter().map(|c| (c * int(den.clone())).to_integer()).collect();
    let mut g = n.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if n.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    [&n[0] / &g, &n[1] / &g, &n[2] / &g]
}

pub fn on_conic(m: &Matrix3, p: &[BigInt; 3]) -> bool {
    let v = p.clone().map(int);
    bilinear(m, &v, &v).is_zero()
}

/// Squarefree integer kept as its sign and prime support.
#[derive(Clone, Debug)]
struct Sqf {
    neg: bool,
    primes: BTreeSet<BigInt>,
}

impl Sqf {
    fn value(&self) -> BigInt {
        let v: BigInt = self.primes.iter().product();
        if self.neg {
            -v
        } else {
            v
        }
    }
}

/// Reduced LLL basis (delta = 3/4) for the inner product sum w_i u_i v_i (w_i > 0), kept in
/// integers throughout: d_i are the Gram determinants and lam the scaled Gram-Schmidt
/// coefficients, both exact.
fn lll(mut b: Vec<[BigInt; 3]>, w: &[BigInt; 3]) -> Vec<[BigInt; 3]> {
    let ip = |u: &[BigInt; 3], v: &[BigInt; 3]| -> BigInt { (0..3).map(|i| &u[i] * &v[i] * &w[i]).sum() };
    let n = b.len();
    // 1-based as in the usual presentation; d[0] = 1
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    let red = |b: &mut Vec<[BigInt; 3]>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt], k: usize, l: usize| {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l] {
            let q = (&lam[k][l] * BigInt::from(2) + &d[l]).div_floor(&(&d[l] * BigInt::from(2)));
            let bl = b[l - 1].clone();
            for t in 0..3 {
                b[k - 1][t] -= &q * &bl[t];
            }
            lam[k][l] -= &q * &d[l];
            for i in 1..l {
                let x = &q * &lam[l][i];
                lam[k][i] -= x;
            }
        }
    };
    d[1] = ip(&b[0], &b[0]);
    let (mut k, mut kmax) = (2, 1);
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = ip(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            let l = &lam[k][k - 1];
            if &d[k] * &d[k - 2] * 4 < &d[k - 1] * &d[k - 1] * 3 - l * l * 4 {
                b.swap(k - 1, k - 2);
                for j in 1..k - 1 {
                    let t = std::mem::take(&mut lam[k][j]);
                    lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    b
}

/// Zero of the integral ternary form u^T H u in the box |u_i| <= r, searched by growing radius.
fn small_zero(h: &[[BigInt; 3]; 3], r: i64) -> Option<[i64; 3]> {
    let small: Option<Vec<i128>> = h.iter().flat_map(|row| row.iter().map(|x| x.to_i128())).collect();
    let small = small.filter(|v| v.iter().all(|x| x.abs() < (1i128 << 80)));
    let eval_big = |u: &[i64; 3]| -> bool {
        let mut s = BigInt::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += &h[i][j] * u[i] * u[j];
            }
        }
        s.is_zero()
    };
    for rad in 1..=r {
        for x in -rad..=rad {
            for y in -rad..=rad {
                for z in -rad..=rad {
                    if x.abs().max(y.abs()).max(z.abs()) != rad {
                        continue;
                    }
                    let u = [x, y, z];
                    let zero = match &small {
                        Some(hs) => {
                            let mut s = 0i128;
                            for i in 0..3 {
                                for j in 0..3 {
                                    s += hs[3 * i + j] * (u[i] as i128) * (u[j] as i128);
                                }
                            }
                            s == 0
                        }
                        None => eval_big(&u),
                    };
                    if zero {
                        return Some(u);
                    }
                }
            }
        }
    }
    None
}

/// Point on a x^2 + b y^2 + c z^2 = 0 for squarefree, pairwise coprime a, b, c, or None
/// when the equation is locally insoluble somewhere.
fn solve_diagonal(a: &Sqf, b: &Sqf, c: &Sqf) -> Result<Option<[BigInt; 3]>> {
    if a.neg == b.neg && b.neg == c.neg {
        return Ok(None);
    }
    let (av, bv, cv) = (a.value(), b.value(), c.value());
    // congruence y = l z (mod p | a), z = l x (mod p | b), x = l y (mod p | c)
    let mut conds: Vec<(BigInt, [BigInt; 3])> = Vec::new();
    let two = BigInt::from(2);
    let root = |num: &BigInt, den: &BigInt, p: &BigInt| -> Option<BigInt> {
        if *p == two {
            return Some(BigInt::one());
        }
        let inv = den.mod_floor(p).modpow(&(p - 2u32), p);
        sqrt_mod(&(-num * inv), p)
    };
    for p in &a.primes {
        let Some(l) = root(&cv, &bv, p) else {
            return Ok(None);
        };
        conds.push((p.clone(), [BigInt::zero(), BigInt::one(), -l]));
    }
    for p in &b.primes {
        let Some(l) = root(&av, &cv, p) else {
            return Ok(None);
        };
        conds.push((p.clone(), [-l, BigInt::zero(), BigInt::one()]));
    }
    for p in &c.primes {
        let Some(l) = root(&bv, &av, p) else {
            return Ok(None);
        };
        conds.push((p.clone(), [BigInt::one(), -l, BigInt::zero()]));
    }
    let mut basis: Vec<[BigInt; 3]> =
        (0..3).map(|i| std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() })).collect();
    for (p, w) in &conds {
        let cs: Vec<BigInt> =
            basis.iter().map(|v| (0..3).map(|t| &w[t] * &v[t]).sum::<BigInt>().mod_floor(p)).collect();
        let i0 = cs.iter().position(|c| !c.is_zero()).expect("form nonzero mod p");
        let inv = cs[i0].modpow(&(p - 2u32), p);
        let pivot = basis[i0].clone();
        for (i, v) in basis.iter_mut().enumerate() {
            if i == i0 {
                for t in v.iter_mut() {
                    *t *= p;
                }
            } else {
                let k = (&cs[i] * &inv).mod_floor(p);
                for t in 0..3 {
                    v[t] -= &k * &pivot[t];
                }
            }
        }
    }
    let weights = [av.abs(), bv.abs(), cv.abs()];
    let red = lll(basis, &weights);
    let d = [av.clone(), bv.clone(), cv.clone()];
    let abc = (&av * &bv * &cv).abs();
    let mut h: [[BigInt; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero()));
    for i in 0..3 {
        for j in 0..3 {
            let g: BigInt = (0..3).map(|t| &d[t] * &red[i][t] * &red[j][t]).sum();
            // 2 g is divisible by abc on this lattice
            let (q, r) = (g * BigInt::from(2)).div_rem(&abc);
            debug_assert!(r.is_zero());
            h[i][j] = q;
        }
    }
    let Some(u) = small_zero(&h, 40) else {
        return Err(Error::Undecided("no small zero on the reduced lattice".into()));
    };
    Ok(Some(std::array::from_fn(|t| (0..3).map(|i| &red[i][t] * u[i]).sum())))
}

/// Primes of n, trying the known pool before falling back to rho.
fn factor_known(n: &BigInt, pool: &BTreeSet<BigInt>, budget: u64) -> Option<Vec<(BigInt, u32)>> {
    let mut r = n.abs();
    let mut out = Vec::new();
    for p in pool {
        let mut e = 0;
        while (&r % p).is_zero() {
            r /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    }
    if !r.is_one() {
        let f = factor(&r, budget);
        if !f.complete() {
            return None;
        }
        out.extend(f.primes);
    }
    Some(out)
}

fn pool_add(pool: &mut BTreeSet<BigInt>, n: &BigInt, budget: u64) -> bool {
    if n.is_zero() {
        return false;
    }
    let f = factor(n, budget);
    let ok = f.complete();
    pool.extend(f.primes.into_iter().map(|(p, _)| p));
    ok
}

/// Short primitive vectors, ordered by max norm.
fn short_vectors(r: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for rad in 1..=r {
        for x in -rad..=rad {
            for y in -rad..=rad {
                for z in -rad..=rad {
                    if x.abs().max(y.abs()).max(z.abs()) != rad || num_integer::gcd(num_integer::gcd(x, y), z) != 1 {
                        continue;
                    }
                    if [x, y, z].iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
                        out.push([x, y, z]);
                    }
                }
            }
        }
    }
    out
}

/// Solves x^T M x = 0 over Q for a nonsingular symmetric M; `budget` bounds factoring effort.
///
/// Only det M needs factoring in earnest: the Gram-Schmidt basis is chosen among short vectors so
/// that the leading value and the leading 2x2 minor factor cheaply.
pub fn solve_conic(m: &Matrix3, budget: u64) -> Result<ConicSolution> {
    solve_conic_with_primes(m, budget).map(|(s, _)| s)
}

/// As `solve_conic`, also returning the primes met along the way (those of det M among them).
pub fn solve_conic_with_primes(m: &Matrix3, budget: u64) -> Result<(ConicSolution, Vec<BigInt>)> {
    let mut pool = BTreeSet::new();
    let s = solve_inner(m, budget, &mut pool)?;
    Ok((s, pool.into_iter().collect()))
}

fn solve_inner(m: &Matrix3, budget: u64, pool: &mut BTreeSet<BigInt>) -> Result<ConicSolution> {
    let den = m.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mi: [[BigInt; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (&m[i][j] * int(den.clone())).to_integer()));
    let qf = |u: &[BigInt; 3], v: &[BigInt; 3]| -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += &u[i] * &mi[i][j] * &v[j];
            }
        }
        s
    };
    let det = crate::arith::det_bigint(mi.iter().map(|r| r.to_vec()).collect());
    if det.is_zero() {
        return Err(Error::UseDihedralModel);
    }
    if !pool_add(pool, &det, budget) {
        return Err(Error::Undecided(format!("could not factor the conic determinant {det}")));
    }
    pool_add(pool, &den, budget);
    let cheap = budget.min(1 << 12);
    let big = |v: &[i64; 3]| v.map(BigInt::from);
    let vecs = short_vectors(4);
    let mut basis: Option<[[BigInt; 3]; 3]> = None;
    'outer: for v in vecs.iter().map(big) {
        let qv = qf(&v, &v);
        if qv.is_zero() {
            return Ok(ConicSolution::Point(primitive_point(&v.clone().map(int))));
        }
        let mut pv = pool.clone();
        if !pool_add(&mut pv, &qv, cheap) {
            continue;
        }
        for w in vecs.iter().map(big) {
            let bvw = qf(&v, &w);
            let m2 = &qv * qf(&w, &w) - &bvw * &bvw;
            if m2.is_zero() {
                let cross: [Rat; 3] = std::array::from_fn(|t| int(&qv * &w[t] - &bvw * &v[t]));
                if cross.iter().all(|c| c.is_zero()) {
                    continue;
                }
                return Ok(ConicSolution::Point(primitive_point(&cross)));
            }
            let mut pw = pv.clone();
            if !pool_add(&mut pw, &m2, cheap) {
                continue;
            }
            for e in 0..3 {
                let u: [BigInt; 3] = std::array::from_fn(|t| BigInt::from((t == e) as i64));
                let d = crate::arith::det_bigint(vec![v.to_vec(), w.to_vec(), u.to_vec()]);
                if !d.is_zero() {
                    pool_add(&mut pw, &d, budget);
                    *pool = pw;
                    basis = Some([v.clone(), w.clone(), u]);
                    break 'outer;
                }
            }
        }
    }
    let Some(basis) = basis else {
        return Err(Error::Undecided("no basis with factorable minors".into()));
    };
    // Gram-Schmidt for the bilinear form
    let mut ortho: Vec<[Rat; 3]> = Vec::new();
    let mut diag: Vec<Rat> = Vec::new();
    for b in &basis {
        let e = b.clone().map(int);
        let mut v = e.clone();
        for (o, d) in ortho.iter().zip(&diag) {
            let c = bilinear(m, &e, o) / d;
            for t in 0..3 {
                v[t] -= &c * &o[t];
            }
        }
        let q = bilinear(m, &v, &v);
        if q.is_zero() {
            return Ok(ConicSolution::Point(primitive_point(&v)));
        }
        ortho.push(v);
        diag.push(q);
    }
    for d in &diag {
        for x in [d.numer(), d.denom()] {
            pool_add(pool, x, 1);
        }
    }
    // integral squarefree coefficients with coordinate scales
    let mut scale: Vec<Rat> = Vec::new();
    let mut coef: Vec<Sqf> = Vec::new();
    for d in &diag {
        let n = d.numer() * d.denom();
        let Some(fp) = factor_known(&n, pool, budget) else {
            return Err(Error::Undecided(format!("could not factor {n}")));
        };
        let mut s = BigInt::one();
        let mut primes = BTreeSet::new();
        for (p, e) in &fp {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                primes.insert(p.clone());
            }
        }
        // x = m y, y = z / s
        scale.push(int(d.denom().clone()) / int(s));
        coef.push(Sqf { neg: n.is_negative(), primes });
    }
    loop {
        let mut changed = false;
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g: BTreeSet<BigInt> = coef[i].primes.intersection(&coef[j].primes).cloned().collect();
            if g.is_empty() {
                continue;
            }
            let gv: BigInt = g.iter().product();
            let hset: BTreeSet<BigInt> = g.intersection(&coef[k].primes).cloned().collect();
            let hv: BigInt = hset.iter().product();
            for p in &g {
                coef[i].primes.remove(p);
                coef[j].primes.remove(p);
            }
            coef[k].primes = coef[k].primes.symmetric_difference(&g).cloned().collect();
            scale[i] = &scale[i] / int(gv.clone());
            scale[j] = &scale[j] / int(gv.clone());
            scale[k] = &scale[k] / int(hv);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    match solve_diagonal(&coef[0], &coef[1], &coef[2])? {
        Some(w) => {
            let mut v = [rat(0), rat(0), rat(0)];
            for k in 0..3 {
                let c = int(w[k].clone()) * &scale[k];
                for t in 0..3 {
                    v[t] += &c * &ortho[k][t];
                }
            }
            let p = primitive_point(&v);
            if !on_conic(m, &p) {
                return Err(Error::VerificationFailed);
            }
            Ok(ConicSolution::Point(p))
        }
        None => {
            let vals: Vec<BigInt> = coef.iter().map(Sqf::value).collect();
            let cands = [-&vals[0] * &vals[1], -&vals[1] * &vals[2], -&vals[0] * &vals[2]];
            let splitting = cands.into_iter().min_by(|x, y| x.abs().cmp(&y.abs()).then(x.cmp(y))).unwrap();
            Ok(ConicSolution::NoPoint { splitting })
        }
    }
}
