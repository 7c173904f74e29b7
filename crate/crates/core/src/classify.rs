// SPDX-License-Identifier: Apache-2.0

//! Moduli keys, automorphism groups from the loci equations, and dihedral invariants.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{frac, int, parse_rat, powmod, rat, rat_mod, rat_root, rpow, BinarySextic, Rat, FP};
use crate::error::{Error, Result};
use crate::invariants::{absolute_i, igusa, t_invariants, weighted_equal, AbsoluteInvariants, InvariantVector};
use crate::poly::UPoly;
use crate::tables;

/// Canonical point of M2: (-1, i1, i2, i3) when J2 != 0, else (0, t1, t2, t3) with t1 = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliKey {
    pub r: i8,
    pub x: [Rat; 3],
}

impl ModuliKey {
    pub fn new(r: i8, x: [Rat; 3]) -> Result<Self> {
        match r {
            -1 => {}
            0 if x[0].is_zero() => {}
            0 => return Err(Error::MalformedKey("r = 0 requires t1 = 0".into())),
            _ => return Err(Error::MalformedKey(format!("r must be -1 or 0, got {r}"))),
        }
        Ok(ModuliKey { r, x })
    }

    pub fn absolute(&self) -> Option<AbsoluteInvariants> {
        (self.r == -1).then(|| AbsoluteInvariants {
            i1: self.x[0].clone(),
            i2: self.x[1].clone(),
            i3: self.x[2].clone(),
        })
    }

    /// `[r,"x1","x2","x3"]`, the serialization used for sorting and persistence.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("key serializes")
    }

    /// Accepts the JSON form or a bare comma list "r,x1,x2,x3".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let t = t.trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(',').map(|p| p.trim().trim_matches('"')).collect();
        if parts.len() != 4 {
            return Err(Error::MalformedKey(format!("expected 4 fields, got {}", parts.len())));
        }
        let r = i8::from_str(parts[0]).map_err(|_| Error::MalformedKey(format!("bad r {:?}", parts[0])))?;
        let x = [parse_rat(parts[1])?, parse_rat(parts[2])?, parse_rat(parts[3])?];
        Self::new(r, x)
    }
}

impl fmt::Display for ModuliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.x[0], self.x[1], self.x[2])
    }
}

impl Serialize for ModuliKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(4)?;
        t.serialize_element(&self.r)?;
        for x in &self.x {
            t.serialize_element(&x.to_string())?;
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for ModuliKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: (i8, String, String, String) = Deserialize::deserialize(d)?;
        let p = |s: &str| parse_rat(s).map_err(serde::de::Error::custom);
        ModuliKey::new(v.0, [p(&v.1)?, p(&v.2)?, p(&v.3)?]).map_err(serde::de::Error::custom)
    }
}

pub fn key_from_invariants(v: &InvariantVector) -> Result<ModuliKey> {
    if v.j10.is_zero() {
        return Err(Error::NotGenus2);
    }
    if v.j2.is_zero() {
        let t = t_invariants(v)?;
        return ModuliKey::new(0, [t.t1, t.t2, t.t3]);
    }
    let i = absolute_i(v)?;
    ModuliKey::new(-1, [i.i1, i.i2, i.i3])
}

pub fn moduli_key(f: &BinarySextic) -> Result<ModuliKey> {
    key_from_invariants(&igusa(f))
}

/// A rational weighted representative (J2, J4, J6, J10) of the key.
pub fn key_to_invariants(k: &ModuliKey) -> Result<InvariantVector> {
    if let Some(i) = k.absolute() {
        return Ok(InvariantVector::from_absolute(&i));
    }
    let (t2, t3) = (&k.x[1], &k.x[2]);
    let z = rat(0);
    Ok(match (t2.is_zero(), t3.is_zero()) {
        (true, true) => InvariantVector::new(z.clone(), z.clone(), z, rat(1)),
        (true, false) => InvariantVector::new(z.clone(), z, t3 * t3, rpow(t3, 3)),
        (false, true) => InvariantVector::new(z.clone(), t2.clone(), z, t2 * t2),
        (false, false) => {
            let no_root = || Error::MalformedKey("t-key has no rational weighted representative".into());
            let a1 = rat_root(&(t2 * t3), 5).ok_or_else(no_root)?;
            let a2 = rat_root(&(t3 / rpow(t2, 4)), 5).ok_or_else(no_root)?;
            let a1sq = &a1 * &a1;
            InvariantVector::new(z, &a1 * &a2, &a1sq * &a2 * &a2, &a1sq * rpow(&a2, 3))
        }
    })
}

/// Automorphism groups of genus-2 curves in characteristic 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AutGroup {
    C2,
    C10,
    V4,
    D4,
    D6,
    /// The order-24 group of y^2 = x^6 - 1; the literature often labels this locus SL2(3).
    Order24,
    GL23,
}

impl AutGroup {
    pub fn id(self) -> (u32, u32) {
        match self {
            AutGroup::C2 => (2, 1),
            AutGroup::C10 => (10, 2),
            AutGroup::V4 => (4, 2),
            AutGroup::D4 => (8, 3),
            AutGroup::D6 => (12, 4),
            AutGroup::Order24 => (24, 8),
            AutGroup::GL23 => (48, 29),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AutGroup::C2 => "C2",
            AutGroup::C10 => "C10",
            AutGroup::V4 => "V4",
            AutGroup::D4 => "D4",
            AutGroup::D6 => "D6",
            AutGroup::Order24 => "C3:D8",
            AutGroup::GL23 => "GL2(3)",
        }
    }

    pub fn order(self) -> u32 {
        self.id().0
    }

    pub fn from_id(order: u32, index: u32) -> Option<Self> {
        [AutGroup::C2, AutGroup::C10, AutGroup::V4, AutGroup::D4, AutGroup::D6, AutGroup::Order24, AutGroup::GL23]
            .into_iter()
            .find(|g| g.id() == (order, index))
    }

    /// Groups containing an elliptic involution (V4 embeds).
    pub fn has_extra_involution(self) -> bool {
        !matches!(self, AutGroup::C2 | AutGroup::C10)
    }
}

impl fmt::Display for AutGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (o, i) = self.id();
        write!(f, "[{o},{i}] {}", self.name())
    }
}

/// Table-driven polynomial with big-integer coefficients.
pub(crate) struct TablePoly<const N: usize> {
    terms: Vec<(BigInt, [u8; N])>,
    residues: Vec<u128>,
}

impl<const N: usize> TablePoly<N> {
    fn new(t: &[(&str, [u8; N])]) -> Self {
        let terms: Vec<(BigInt, [u8; N])> = t.iter().map(|(c, e)| (BigInt::from_str(c).expect("table"), *e)).collect();
        let residues = terms.iter().map(|(c, _)| rat_mod(&int(c.clone())).expect("integer")).collect();
        TablePoly { terms, residues }
    }

    /// Whether the value at x vanishes, deciding by a residue first and exactly only on a zero residue.
    pub(crate) fn vanishes(&self, x: &[Rat; N]) -> bool {
        let r: Option<Vec<u128>> = x.iter().map(rat_mod).collect();
        if let Some(r) = r {
            let mut acc = 0u128;
            for ((_, e), c) in self.terms.iter().zip(&self.residues) {
                let mut m = *c;
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        m = m * powmod(r[i], k as u32) % FP;
                    }
                }
                acc = (acc + m) % FP;
            }
            if acc != 0 {
                return false;
            }
        }
        self.eval(x).is_zero()
    }

    pub(crate) fn eval(&self, x: &[Rat; N]) -> Rat {
        let maxe = self.terms.iter().flat_map(|(_, e)| e.iter().copied()).max().unwrap_or(0) as usize;
        let pows: Vec<Vec<Rat>> = x
            .iter()
            .map(|v| {
                let mut row = vec![rat(1)];
                for k in 1..=maxe {
                    let next = &row[k - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = rat(0);
        for (c, e) in &self.terms {
            let mut m = int(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= &pows[i][k as usize];
                }
            }
            acc += m;
        }
        acc
    }
}

pub(crate) struct Loci {
    pub d4_a: TablePoly<3>,
    pub d4_b: TablePoly<3>,
    pub d6_a: TablePoly<3>,
    pub d6_b: TablePoly<3>,
    pub v4: TablePoly<3>,
    pub j2_zero_special: TablePoly<2>,
}

pub(crate) fn loci() -> &'static Loci {
    static L: OnceLock<Loci> = OnceLock::new();
    L.get_or_init(|| Loci {
        d4_a: TablePoly::new(tables::D4_A),
        d4_b: TablePoly::new(tables::D4_B),
        d6_a: TablePoly::new(tables::D6_A),
        d6_b: TablePoly::new(tables::D6_B),
        v4: TablePoly::new(tables::V4_LOCUS),
        j2_zero_special: TablePoly::new(tables::J2_ZERO_SPECIAL),
    })
}

/// The polynomial cutting out the extra-involution locus in (i1, i2, i3).
pub fn v4_locus(i: &AbsoluteInvariants) -> Rat {
    loci().v4.eval(&[i.i1.clone(), i.i2.clone(), i.i3.clone()])
}

/// The J2 = 0 condition for extra automorphisms in (t2, t3).
pub fn j2_zero_special(t2: &Rat, t3: &Rat) -> Rat {
    loci().j2_zero_special.eval(&[t2.clone(), t3.clone()])
}

pub fn order24_key() -> ModuliKey {
    ModuliKey { r: -1, x: [frac(81, 20), frac(-729, 200), frac(729, 25_600_000)] }
}

pub fn gl23_key() -> ModuliKey {
    ModuliKey { r: -1, x: [frac(-36, 5), frac(1512, 25), frac(243, 200_000)] }
}

pub fn c10_key() -> ModuliKey {
    ModuliKey { r: 0, x: [rat(0), rat(0), rat(0)] }
}

/// y^2 = x^5 + x^3 - 3/20 x, the D4 curve with J2 = 0.
pub fn j2zero_d4_curve() -> BinarySextic {
    BinarySextic::new([rat(0), rat(1), rat(0), rat(1), rat(0), frac(-3, 20), rat(0)]).unwrap()
}

/// y^2 = x^6 + x^3 + 1/40, the D6 curve with J2 = 0.
pub fn j2zero_d6_curve() -> BinarySextic {
    BinarySextic::new([rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), frac(1, 40)]).unwrap()
}

fn special_keys() -> &'static (ModuliKey, ModuliKey) {
    static K: OnceLock<(ModuliKey, ModuliKey)> = OnceLock::new();
    K.get_or_init(|| (moduli_key(&j2zero_d4_curve()).unwrap(), moduli_key(&j2zero_d6_curve()).unwrap()))
}

/// Special points first, then the one-dimensional D4 and D6 loci, then V4, else C2.
pub fn classify(k: &ModuliKey) -> AutGroup {
    let l = loci();
    if let Some(i) = k.absolute() {
        if *k == order24_key() {
            return AutGroup::Order24;
        }
        if *k == gl23_key() {
            return AutGroup::GL23;
        }
        let x = [i.i1, i.i2, i.i3];
        // D4, D6 and the special points all lie on the involution locus
        if !l.v4.vanishes(&x) {
            return AutGroup::C2;
        }
        if l.d4_b.vanishes(&x) && l.d4_a.vanishes(&x) {
            return AutGroup::D4;
        }
        if l.d6_a.vanishes(&x) && l.d6_b.vanishes(&x) {
            return AutGroup::D6;
        }
        return AutGroup::V4;
    }
    if k.x[1].is_zero() && k.x[2].is_zero() {
        return AutGroup::C10;
    }
    let (d4, d6) = special_keys();
    if k == d4 {
        return AutGroup::D4;
    }
    if k == d6 {
        return AutGroup::D6;
    }
    if l.j2_zero_special.vanishes(&[k.x[1].clone(), k.x[2].clone()]) {
        return AutGroup::V4;
    }
    AutGroup::C2
}

/// Dihedral invariants u = ab, v = a^3 + b^3 of y^2 = x^6 + a x^4 + b x^2 + 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralInvariants {
    #[serde(with = "crate::serde_rat")]
    pub u: Rat,
    #[serde(with = "crate::serde_rat")]
    pub v: Rat,
}

impl DihedralInvariants {
    pub fn new(u: Rat, v: Rat) -> Self {
        DihedralInvariants { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        Self::new(rat(u), rat(v))
    }

    /// Igusa invariants of the standard model, as polynomials in (u, v).
    pub fn igusa(&self) -> InvariantVector {
        let (u, v) = (&self.u, &self.v);
        let u2 = u * u;
        let u3 = &u2 * u;
        let j2 = (u + rat(15)) * rat(-16);
        let j4 = (&u2 - u * rat(126) + v * rat(12) + rat(405)) * rat(4);
        let j6 = (&u3 * rat(3) - &u2 * rat(53) - u * rat(2583) + u * v * rat(20) + v * rat(12) + rat(14985)) * rat(-8);
        let q = &u2 + u * rat(18) - v * rat(4) - rat(27);
        let j10 = &q * &q * rat(-64);
        InvariantVector::new(j2, j4, j6, j10)
    }

    pub fn is_degenerate(&self) -> bool {
        !self.igusa().is_genus2()
    }

    pub fn key(&self) -> Result<ModuliKey> {
        key_from_invariants(&self.igusa())
    }
}

pub fn dihedral_uv_from_standard(a: &Rat, b: &Rat) -> Result<DihedralInvariants> {
    let d = DihedralInvariants::new(a * b, a * a * a + b * b * b);
    if d.is_degenerate() {
        return Err(Error::DegenerateDihedral("J10 = 0 for this (a, b)".into()));
    }
    Ok(d)
}

/// Every (u, v) whose standard model has key k (usually one; several at special points).
pub fn dihedral_uv_candidates(k: &ModuliKey) -> Result<Vec<DihedralInvariants>> {
    let i = k.absolute().ok_or(Error::UseTInvariants)?;
    // v is linear in u once i1 is fixed: 6912 v = 256 i1 (u+15)^2 - 576 (u^2 - 126 u + 405)
    let u = UPoly::linear(rat(0), rat(1));
    let up15 = UPoly::linear(rat(15), rat(1));
    let base = u.pow(2).sub(&u.scale(&rat(126))).add(&UPoly::constant(rat(405)));
    let v = up15.pow(2).scale(&(&i.i1 * rat(256))).sub(&base.scale(&rat(576))).scale(&frac(1, 6912));
    let j2 = up15.scale(&rat(-16));
    let j4 = base.add(&v.scale(&rat(12))).scale(&rat(4));
    let u2 = u.pow(2);
    let j6 = u
        .pow(3)
        .scale(&rat(3))
        .sub(&u2.scale(&rat(53)))
        .sub(&u.scale(&rat(2583)))
        .add(&u.mul(&v).scale(&rat(20)))
        .add(&v.scale(&rat(12)))
        .add(&UPoly::constant(rat(14985)))
        .scale(&rat(-8));
    let q = u2.add(&u.scale(&rat(18))).sub(&v.scale(&rat(4))).sub(&UPoly::constant(rat(27)));
    let j10 = q.pow(2).scale(&rat(-64));
    // i2 J2^3 + 1728 (J2 J4 - 3 J6) = 0 and i3 J2^5 - 486 J10 = 0
    let p2 = j2.pow(3).scale(&i.i2).add(&j2.mul(&j4).sub(&j6.scale(&rat(3))).scale(&rat(1728)));
    let p3 = j2.pow(5).scale(&i.i3).sub(&j10.scale(&rat(486)));
    let g = match (p2.is_zero(), p3.is_zero()) {
        (true, true) => return Err(Error::NotOnInvolutionLocus),
        (true, false) => p3.monic(),
        (false, true) => p2.monic(),
        (false, false) => p2.gcd(&p3),
    };
    if g.degree() < 1 {
        return Err(Error::NotOnInvolutionLocus);
    }
    let roots = if g.degree() == 1 { vec![-g.coeff(0) / g.coeff(1)] } else { g.rational_roots() };
    let mut out = Vec::new();
    for r in roots {
        let d = DihedralInvariants::new(r.clone(), v.eval(&r));
        if d.key().is_ok_and(|kk| kk == *k) {
            out.push(d);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::NotOnInvolutionLocus);
    }
    Ok(out)
}

/// The (u, v) of a key on the involution locus, preferring the pair that lies on the
/// locus of the key's own group when several exist.
pub fn dihedral_uv_from_key(k: &ModuliKey) -> Result<DihedralInvariants> {
    let g = classify(k);
    if !g.has_extra_involution() {
        return Err(Error::NotOnInvolutionLocus);
    }
    let c = dihedral_uv_candidates(k)?;
    Ok(c.iter().find(|d| classify_uv(d) == g).cloned().unwrap_or_else(|| c[0].clone()))
}

/// Group of the standard model from (u, v).
pub fn classify_uv(d: &DihedralInvariants) -> AutGroup {
    let (u, v) = (&d.u, &d.v);
    let is = |a: i64, b: i64| *u == rat(a) && *v == rat(b);
    if is(0, 0) || is(225, 6750) {
        return AutGroup::Order24;
    }
    if is(25, -250) {
        return AutGroup::GL23;
    }
    // the excluded value 70 + 30 sqrt(5) is irrational and never met over Q
    if (v * rat(4) - u * u + u * rat(110) - rat(1125)).is_zero() {
        return AutGroup::D6;
    }
    if (v * v - u * u * u * rat(4)).is_zero() {
        return AutGroup::D4;
    }
    AutGroup::V4
}

/// Whether a key equals the key of the given vector's weighted class.
pub fn same_point(a: &InvariantVector, b: &InvariantVector) -> bool {
    weighted_equal(a, b)
}
