// SPDX-License-Identifier: Apache-2.0

//! Integer factorization: trial division, Miller-Rabin, perfect powers and Pollard-Brent rho.
//! Sized for the 40-50 digit determinants met in conic solving.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 50_000;

fn small_primes() -> &'static [u32] {
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Strong probable-prime test to the first 20 prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in small_primes().iter().take(100) {
        let bp = BigInt::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in small_primes().iter().take(20) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Some nontrivial factor of composite odd n, or `None` once `budget` iterations are spent.
pub fn pollard_brent(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let m = 128u64;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n && g > one {
            return Some(g);
        }
    }
    None
}

/// Exact k-th power test returning (root, k) with the largest k.
pub fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if *n < BigInt::from(4) {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Prime factorization of |n|; `cofactor` holds any part left unsplit within the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub primes: Vec<(BigInt, u32)>,
    pub cofactor: BigInt,
}

impl Factorization {
    pub fn complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.primes.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    /// "-2^6*17^4*12301^2" style rendering.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> =
            self.primes.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        if !self.cofactor.is_one() {
            parts.push(format!("({})", self.cofactor));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        let body = parts.join("*");
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

pub fn factor(n: &BigInt, budget: u64) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut acc: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            acc.push((bp, e));
        }
    }
    let mut cofactor = BigInt::one();
    let mut stack = vec![(m, 1u32)];
    while let Some((x, mult)) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_prime(&x) {
            acc.push((x, mult));
            continue;
        }
        if let Some((r, k)) = perfect_power(&x) {
            stack.push((r, mult * k));
            continue;
        }
        match pollard_brent(&x, budget) {
            Some(d) => {
                let other = &x / &d;
                stack.push((d, mult));
                stack.push((other, mult));
            }
            None => cofactor *= num_traits::pow(x, mult as usize),
        }
    }
    // merge equal primes
    acc.sort();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in acc {
        match primes.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => primes.push((p, e)),
        }
    }
    Factorization { sign, primes, cofactor }
}

/// Positive divisors of |n| (n must factor completely with the default budget).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let f = factor(n, 1 << 22);
    let mut out = vec![BigInt::one()];
    for (p, e) in &f.primes {
        let cur = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..*e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * &pk));
        }
    }
    if !f.cofactor.is_one() {
        let cur = out.clone();
        out.extend(cur.iter().map(|d| d * &f.cofactor));
    }
    out.sort();
    out
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: &BigInt, budget: u64) -> BigInt {
    let f = factor(n, budget);
    let mut s = BigInt::from(f.sign);
    for (p, e) in &f.primes {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s * f.cofactor
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == BigInt::from(2) {
        return Some(a);
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = p - &one;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    if s == 1 {
        return Some(a.modpow(&((p + &one) >> 2), p));
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
