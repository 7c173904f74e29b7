// SPDX-License-Identifier: Apache-2.0

//! Exact rationals, binary sextics, GL2 substitutions and resultants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced rational with positive denominator; `BigRational` keeps this normal form.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

pub fn rpow(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

/// Parses `n`, `-n/d` or a finite decimal such as `0.25`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((w, f)) = s.split_once('.') {
        let neg = w.trim_start().starts_with('-');
        let w = if w.is_empty() || w == "-" || w == "+" { "0" } else { w };
        let wi = BigInt::from_str(w).map_err(|_| bad())?;
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let fi = BigInt::from_str(f).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), f.len());
        let frac_part = Rat::new(fi, den);
        let whole = int(wi);
        return Ok(if neg { whole - frac_part } else { whole + frac_part });
    }
    BigInt::from_str(s).map(int).map_err(|_| bad())
}

pub fn rat_string(x: &Rat) -> String {
    x.to_string()
}

/// Integer square root test for rationals.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = exact_root(x.numer(), 2)?;
    let d = exact_root(x.denom(), 2)?;
    Some(Rat::new(n, d))
}

/// Exact k-th root of an integer when it exists (odd k allows negatives).
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rat_root(x: &Rat, k: u32) -> Option<Rat> {
    Some(Rat::new(exact_root(x.numer(), k)?, exact_root(x.denom(), k)?))
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant over the rationals: clear row denominators, then Bareiss.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let mut scale = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * int(l.clone())).to_integer()).collect()
        })
        .collect();
    Rat::new(det_bigint(rows), scale)
}

/// Sylvester matrix of two coefficient lists given highest power first.
/// Leading zeros are kept, so this also serves as the resultant of binary forms
/// of the declared degrees.
pub fn sylvester(p: &[Rat], q: &[Rat]) -> Vec<Vec<Rat>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut s = vec![vec![Rat::zero(); size]; size];
    for r in 0..n {
        for (j, c) in p.iter().enumerate() {
            s[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in q.iter().enumerate() {
            s[n + r][r + j] = c.clone();
        }
    }
    s
}

pub fn resultant(p: &[Rat], q: &[Rat]) -> Rat {
    det_rat(&sylvester(p, q))
}

/// 2x2 substitution matrix acting by f -> f(aX + bZ, cX + dZ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mobius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularSubstitution);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Self {
        Mobius { a: rat(1), b: rat(0), c: rat(0), d: rat(1) }
    }

    pub fn diag(x: Rat, z: Rat) -> Result<Self> {
        Self::new(x, rat(0), rat(0), z)
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

/// f(x,z) = a0 x^6 + a1 x^5 z + ... + a6 z^6; the curve is y^2 = f(x,1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySextic {
    coeffs: [Rat; 7],
}

impl BinarySextic {
    pub fn new(coeffs: [Rat; 7]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(BinarySextic { coeffs })
    }

    pub fn from_ints(c: &[i64; 7]) -> Result<Self> {
        Self::new(c.map(rat))
    }

    pub fn from_bigints(c: &[BigInt; 7]) -> Result<Self> {
        Self::new(c.clone().map(int))
    }

    pub fn coeffs(&self) -> &[Rat; 7] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_primitive(&self) -> bool {
        self.is_integral() && self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer())).is_one()
    }

    /// Integer coefficients; `None` unless integral.
    pub fn integer_coeffs(&self) -> Option<[BigInt; 7]> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.clone().map(|c| c.to_integer()))
    }

    /// Small integer coefficients for fast paths.
    pub fn small_coeffs(&self) -> Option<[i64; 7]> {
        let c = self.integer_coeffs()?;
        let mut out = [0i64; 7];
        for (o, v) in out.iter_mut().zip(c.iter()) {
            *o = v.to_i64()?;
        }
        Some(out)
    }

    pub fn scale(&self, s: &Rat) -> Result<Self> {
        Self::new(self.coeffs.clone().map(|c| c * s))
    }

    /// Writes f = c * g with g integral, primitive and leading nonzero coefficient positive.
    pub fn content_primitive(&self) -> (Rat, BinarySextic) {
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = self.coeffs.iter().map(|c| (c * int(den.clone())).to_integer()).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        let lead = nums.iter().find(|n| !n.is_zero()).expect("nonzero form");
        if lead.is_negative() {
            g = -g;
        }
        let prim: [Rat; 7] = std::array::from_fn(|i| int(&nums[i] / &g));
        (Rat::new(g, den), BinarySextic { coeffs: prim })
    }

    pub fn primitive(&self) -> BinarySextic {
        self.content_primitive().1
    }

    /// max |a_i| of an integral primitive form.
    pub fn naive_height(&self) -> Result<BigInt> {
        if !self.is_primitive() {
            return Err(Error::NotIntegral);
        }
        Ok(self.coeffs.iter().map(|c| c.numer().abs()).max().unwrap())
    }

    /// f^M(X, Z) = f(aX + bZ, cX + dZ); a right action: (f^M)^N = f^(MN).
    pub fn transform(&self, m: &Mobius) -> BinarySextic {
        // polynomials in t = Z/X, index = power of t
        let l1 = [m.a.clone(), m.b.clone()];
        let l2 = [m.c.clone(), m.d.clone()];
        let mut p1 = vec![vec![rat(1)]];
        let mut p2 = vec![vec![rat(1)]];
        for k in 1..=6 {
            p1.push(mul_linear(&p1[k - 1], &l1));
            p2.push(mul_linear(&p2[k - 1], &l2));
        }
        let mut out: [Rat; 7] = std::array::from_fn(|_| rat(0));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = mul_poly(&p1[6 - i], &p2[i]);
            for (k, t) in term.iter().enumerate() {
                out[k] += a * t;
            }
        }
        BinarySextic { coeffs: out }
    }

    /// The substitution x <-> z, which reverses the coefficient list.
    pub fn swap(&self) -> BinarySextic {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinarySextic { coeffs: c }
    }

    /// Res_x(f(x,1), f'(x)) for the dehomogenized polynomial.
    pub fn resultant_with_derivative(&self) -> Result<Rat> {
        let p: Vec<Rat> = self.coeffs.iter().skip_while(|c| c.is_zero()).cloned().collect();
        if p.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        let deg = p.len() - 1;
        let dp: Vec<Rat> = p[..deg].iter().enumerate().map(|(i, c)| c * rat((deg - i) as i64)).collect();
        Ok(resultant(&p, &dp))
    }

    /// Discriminant of the binary form, -Res(f_x, f_z) / 6^4. Transforms with det^30.
    pub fn discriminant(&self) -> Rat {
        let a = &self.coeffs;
        let fx: Vec<Rat> = (0..6).map(|k| &a[k] * rat(6 - k as i64)).collect();
        let fz: Vec<Rat> = (0..6).map(|j| &a[j + 1] * rat(j as i64 + 1)).collect();
        -resultant(&fx, &fz) / rat(1296)
    }

    /// Parses "1,0,-14,0,-82,0,1" (a0..a6) or a polynomial in x such as "x^6-14*x^4-82*x^2+1".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('x') || s.contains('X') {
            return Self::new(parse_poly(s)?);
        }
        let s = s.trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 7 {
            return Err(Error::Parse(format!("expected 7 coefficients a0..a6, got {}", parts.len())));
        }
        let mut c: [Rat; 7] = std::array::from_fn(|_| rat(0));
        for (i, p) in parts.iter().enumerate() {
            c[i] = parse_rat(p.trim().trim_matches('"'))?;
        }
        Self::new(c)
    }

    pub fn to_strings(&self) -> [String; 7] {
        self.coeffs.clone().map(|c| c.to_string())
    }

    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = 6 - i;
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if e == 0 || !a.is_one() {
                out.push_str(&a.to_string());
                if e > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for BinarySextic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_strings().into();
        write!(f, "[{}]", s.join(","))
    }
}

impl Serialize for BinarySextic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinarySextic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 7 {
            return Err(serde::de::Error::custom("sextic needs 7 coefficients"));
        }
        let mut c: [Rat; 7] = std::array::from_fn(|_| rat(0));
        for (i, s) in v.iter().enumerate() {
            c[i] = parse_rat(s).map_err(serde::de::Error::custom)?;
        }
        BinarySextic::new(c).map_err(serde::de::Error::custom)
    }
}

fn mul_linear(p: &[Rat], l: &[Rat; 2]) -> Vec<Rat> {
    let mut out = vec![rat(0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * &l[0];
        out[i + 1] += c * &l[1];
    }
    out
}

fn mul_poly(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out = vec![rat(0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Polynomial string in x (or t) of degree at most 6, returned as a0..a6.
fn parse_poly(s: &str) -> Result<[Rat; 7]> {
    let bad = |m: &str| Error::Parse(format!("bad polynomial {s:?}: {m}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.replace('X', "x").replace("**", "^");
    let mut c: [Rat; 7] = std::array::from_fn(|_| rat(0));
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms.into_iter().filter(|t| !t.is_empty()) {
        let (coef, exp) = match t.find('x') {
            None => (parse_rat(&t)?, 0usize),
            Some(pos) => {
                let head = t[..pos].trim_end_matches('*');
                let coef = match head {
                    "" | "+" => rat(1),
                    "-" => rat(-1),
                    h => parse_rat(h)?,
                };
                let tail = &t[pos + 1..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .ok_or_else(|| bad("expected ^"))?
                        .parse::<usize>()
                        .map_err(|_| bad("bad exponent"))?
                };
                (coef, exp)
            }
        };
        if exp > 6 {
            return Err(bad("degree above 6"));
        }
        c[6 - exp] += coef;
    }
    Ok(c)
}

/// The Mersenne prime 2^61 - 1, used for modular fingerprints of exact quantities.
pub const FP: u128 = (1u128 << 61) - 1;

/// x modulo FP, or None when the denominator vanishes there.
pub fn rat_mod(x: &Rat) -> Option<u128> {
    let p = BigInt::from(FP);
    let n = x.numer().mod_floor(&p);
    let d = x.denom().mod_floor(&p);
    if d.is_zero() {
        return None;
    }
    let dinv = d.modpow(&(&p - 2u32), &p);
    ((n * dinv) % &p).to_u128()
}

pub fn powmod(mut b: u128, mut e: u32) -> u128 {
    let mut r = 1u128;
    b %= FP;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % FP;
        }
        b = b * b % FP;
        e >>= 1;
    }
    r
}
