// SPDX-License-Identifier: Apache-2.0

//! The three curve databases: all small sextics (L1), the extra-involution standard forms (L2)
//! and points of bounded moduli height (L3). Persisted as JSON Lines.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{int, rat, BinarySextic};
use crate::classify::{classify, key_from_invariants, AutGroup, ModuliKey};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::heights::{moduli_height, MinimalHeight};
use crate::invariants::{igusa_i128, InvariantVector};
use crate::reconstruct::{rationality_obstruction, reconstruct_curve, FieldKind, FieldOfDefinition};

pub type Tuple = [i64; 7];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbEntry {
    pub key: ModuliKey,
    pub h: MinimalHeight,
    /// Moduli height, decimal.
    pub mh: BigInt,
    /// Signed factored discriminant J10 of the first twist, or empty when no model is stored.
    pub disc: String,
    pub aut: AutGroup,
    pub field: FieldOfDefinition,
    pub twists: Vec<Vec<BigInt>>,
}

impl DbEntry {
    pub fn to_value(&self) -> Value {
        let h = match &self.h {
            MinimalHeight::Exact(h) => json!(h),
            MinimalHeight::UnknownAboveBound => json!("unknown above bound"),
        };
        let (o, i) = self.aut.id();
        let kind = match self.field.kind {
            FieldKind::Rational => "rational",
            FieldKind::Quadratic => "quadratic",
        };
        let twists: Vec<Vec<String>> = self.twists.iter().map(|t| t.iter().map(|c| c.to_string()).collect()).collect();
        json!({
            "key": self.key,
            "h": h,
            "mh": self.mh.to_string(),
            "disc": self.disc,
            "aut": [o, i],
            "conductor": null,
            "field": {"kind": kind, "d": self.field.squarefree_part.to_string()},
            "twists": twists,
        })
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("entry field {what}"));
        let key: ModuliKey = serde_json::from_value(v["key"].clone()).map_err(|_| bad("key"))?;
        let h = match &v["h"] {
            Value::Number(n) => MinimalHeight::Exact(n.as_u64().ok_or_else(|| bad("h"))?),
            _ => MinimalHeight::UnknownAboveBound,
        };
        let big = |s: &Value| s.as_str().and_then(|s| s.parse::<BigInt>().ok());
        let mh = big(&v["mh"]).ok_or_else(|| bad("mh"))?;
        let disc = v["disc"].as_str().ok_or_else(|| bad("disc"))?.to_string();
        let aut = v["aut"]
            .as_array()
            .and_then(|a| AutGroup::from_id(a.first()?.as_u64()? as u32, a.get(1)?.as_u64()? as u32))
            .ok_or_else(|| bad("aut"))?;
        let d = big(&v["field"]["d"]).ok_or_else(|| bad("field"))?;
        let field = match v["field"]["kind"].as_str() {
            Some("rational") => FieldOfDefinition::rational(),
            Some("quadratic") => FieldOfDefinition::quadratic(d),
            _ => return Err(bad("field")),
        };
        let twists = v["twists"]
            .as_array()
            .ok_or_else(|| bad("twists"))?
            .iter()
            .map(|t| t.as_array().map(|cs| cs.iter().filter_map(big).collect::<Vec<_>>()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("twists"))?;
        Ok(DbEntry { key, h, mh, disc, aut, field, twists })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub builder: String,
    pub bound: u64,
    pub version: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Entries keyed by the JSON serialization of their moduli key, so iteration is in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Database {
    pub meta: Meta,
    pub entries: BTreeMap<String, DbEntry>,
}

/// Counts in the column layout of the corresponding table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatsTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl StatsTable {
    pub fn to_tsv(&self) -> String {
        if self.rows.is_empty() {
            return String::new();
        }
        let mut s = self.columns.join("\t");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join("\t"));
            s.push('\n');
        }
        s
    }
}

impl Database {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, e: DbEntry) {
        self.entries.insert(e.key.to_json(), e);
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        let header = json!({"meta": self.meta});
        writeln!(w, "{header}")?;
        for e in self.entries.values() {
            writeln!(w, "{}", e.to_value())?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self> {
        let mut db = Database::default();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
            if let Some(m) = v.get("meta") {
                db.meta = serde_json::from_value(m.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                continue;
            }
            db.insert(DbEntry::from_value(&v)?);
        }
        Ok(db)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        self.write_jsonl(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_jsonl(std::io::BufReader::new(f))
    }
}

pub fn query<'a>(db: &'a Database, k: &ModuliKey) -> Option<&'a DbEntry> {
    db.entries.get(&k.to_json())
}

pub fn stats(db: &Database) -> StatsTable {
    StatsTable { columns: db.meta.columns.clone(), rows: db.meta.rows.clone() }
}

fn meta(builder: &str, bound: u64, columns: &[&str], rows: Vec<Vec<String>>) -> Meta {
    Meta {
        builder: builder.into(),
        bound,
        version: env!("CARGO_PKG_VERSION").into(),
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}

/// Runs `f` on a pool of `jobs` workers (0 means rayon's default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool").install(f)
}

/// Twist-class representative: the least image under x <-> z, x -> -x and overall sign,
/// normalized so the first nonzero coefficient is positive.
pub fn canonical_tuple(t: &Tuple) -> Tuple {
    let norm = |mut u: Tuple| {
        if u.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            u.iter_mut().for_each(|c| *c = -*c);
        }
        u
    };
    let rev = |u: &Tuple| {
        let mut r = *u;
        r.reverse();
        r
    };
    let negx = |u: &Tuple| {
        let mut r = *u;
        for (k, c) in r.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = -*c;
            }
        }
        r
    };
    [*t, rev(t), negx(t), rev(&negx(t))].into_iter().map(norm).min().unwrap()
}

fn height_of(t: &Tuple) -> u64 {
    t.iter().map(|c| c.unsigned_abs()).max().unwrap()
}

fn key_of_ints(c: &[i128; 4]) -> Result<ModuliKey> {
    key_from_invariants(&InvariantVector::new(int(c[0].into()), int(c[1].into()), int(c[2].into()), int(c[3].into())))
}

fn to_big(t: &Tuple) -> Vec<BigInt> {
    t.iter().map(|&c| BigInt::from(c)).collect()
}

/// Raw L1 data: key -> (minimal height, canonical twists at that height).
type Groups = BTreeMap<ModuliKey, (u64, Vec<Tuple>)>;

fn merge_group(acc: &mut Groups, k: ModuliKey, h: u64, t: Tuple) {
    match acc.get_mut(&k) {
        Some((h0, ts)) => {
            if h < *h0 {
                *h0 = h;
                ts.clear();
                ts.push(t);
            } else if h == *h0 {
                ts.push(t);
            }
        }
        None => {
            acc.insert(k, (h, vec![t]));
        }
    }
}

fn merge_groups(mut a: Groups, b: Groups) -> Groups {
    for (k, (h, ts)) in b {
        for t in ts {
            merge_group(&mut a, k.clone(), h, t);
        }
    }
    a
}

/// All primitive canonical tuples with max |a_i| <= hmax and J10 != 0, grouped by key.
fn enumerate_l1(hmax: i64) -> Groups {
    let w = (2 * hmax + 1) as usize;
    // shard by (a0, a1)
    let shards: Vec<(i64, i64)> = (0..=hmax).flat_map(|a0| (-hmax..=hmax).map(move |a1| (a0, a1))).collect();
    let mut out = shards
        .into_par_iter()
        .map(|(a0, a1)| {
            let mut acc = Groups::new();
            let total = w.pow(5);
            for mut idx in 0..total {
                let mut t = [a0, a1, 0, 0, 0, 0, 0];
                for slot in t.iter_mut().skip(2) {
                    *slot = (idx % w) as i64 - hmax;
                    idx /= w;
                }
                if t.iter().fold(0i64, |g, &c| g.gcd(&c)) != 1 || canonical_tuple(&t) != t {
                    continue;
                }
                let Some(c) = igusa_i128(&t) else { continue };
                if c[3] == 0 {
                    continue;
                }
                let k = key_of_ints(&c).expect("genus 2");
                merge_group(&mut acc, k, height_of(&t), t);
            }
            acc
        })
        .reduce(Groups::new, merge_groups);
    for (_, ts) in out.values_mut() {
        ts.sort();
    }
    out
}

fn entry_from_group(k: ModuliKey, h: u64, ts: &[Tuple]) -> DbEntry {
    let c = igusa_i128(&ts[0]).expect("small tuple");
    let v = InvariantVector::new(int(c[0].into()), int(c[1].into()), int(c[2].into()), int(c[3].into()));
    DbEntry {
        aut: classify(&k),
        mh: moduli_height(&v).expect("genus 2").value,
        disc: factor(&BigInt::from(c[3]), 1 << 16).render(),
        key: k,
        h: MinimalHeight::Exact(h),
        field: FieldOfDefinition::rational(),
        twists: ts.iter().map(to_big).collect(),
    }
}

/// Points of P^6(Q) of height <= h: primitive integer 7-tuples up to sign.
pub fn p6_count(h: u64) -> u128 {
    // Moebius inversion over the common divisor d of the tuple
    let mut total = 0i128;
    for d in 1..=h {
        let mu = mobius(d);
        if mu != 0 {
            let k = (h / d) as i128;
            total += mu as i128 * ((2 * k + 1).pow(7) - 1) / 2;
        }
    }
    total as u128
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub const L1_COLUMNS: [&str; 6] = ["h", "P6", "curves", "V4", "D4", "D6"];

/// Every sextic with max |a_i| <= hmax, grouped by moduli point; h is the least height seen.
pub fn build_l1(hmax: u64) -> Database {
    let groups = enumerate_l1(hmax as i64);
    let entries: Vec<DbEntry> = groups
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, (h, ts))| entry_from_group(k, h, &ts))
        .collect();
    let mut rows = Vec::new();
    for h in 1..=hmax {
        let at: Vec<&DbEntry> = entries.iter().filter(|e| e.h == MinimalHeight::Exact(h)).collect();
        let count = |g: AutGroup| at.iter().filter(|e| e.aut == g).count();
        rows.push(vec![
            h.to_string(),
            p6_count(h).to_string(),
            at.len().to_string(),
            count(AutGroup::V4).to_string(),
            count(AutGroup::D4).to_string(),
            count(AutGroup::D6).to_string(),
        ]);
    }
    let mut db = Database { meta: meta("L1", hmax, &L1_COLUMNS, rows), entries: BTreeMap::new() };
    for e in entries {
        db.insert(e);
    }
    db
}

pub const L2_COLUMNS: [&str; 6] = ["h", "J10!=0", "new", "D4", "D6", "total"];

/// Standard forms x^6 + a x^4 + b x^2 + 1 with |a|, |b| <= hmax; rows are cumulative in h, and the
/// D4 and D6 columns count forms (a, b) with that group, not distinct points.
pub fn build_l2(hmax: u64) -> Database {
    let hm = hmax as i64;
    let pairs: Vec<(i64, i64)> = (-hm..=hm).flat_map(|a| (-hm..=hm).map(move |b| (a, b))).collect();
    let keyed: Vec<(u64, Tuple, ModuliKey)> = pairs
        .into_par_iter()
        .filter_map(|(a, b)| {
            let t = [1, 0, a, 0, b, 0, 1];
            let c = igusa_i128(&t)?;
            if c[3] == 0 {
                return None;
            }
            Some((a.unsigned_abs().max(b.unsigned_abs()), t, key_of_ints(&c).ok()?))
        })
        .collect();
    let mut groups = Groups::new();
    for (h, t, k) in &keyed {
        merge_group(&mut groups, k.clone(), *h, *t);
    }
    let entries: Vec<DbEntry> = groups
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, (h, mut ts))| {
            ts.sort();
            entry_from_group(k, h, &ts)
        })
        .collect();
    let groups_of: Vec<AutGroup> = keyed.par_iter().map(|(_, _, k)| classify(k)).collect();
    let mut rows = Vec::new();
    for h in 1..=hmax {
        let forms = keyed.iter().filter(|(hh, _, _)| *hh <= h).count();
        let upto: Vec<&DbEntry> = entries.iter().filter(|e| matches!(e.h, MinimalHeight::Exact(x) if x <= h)).collect();
        let new = upto.iter().filter(|e| e.h == MinimalHeight::Exact(h)).count();
        let count = |g: AutGroup| keyed.iter().zip(&groups_of).filter(|((hh, _, _), gg)| *hh <= h && **gg == g).count();
        rows.push(vec![
            h.to_string(),
            forms.to_string(),
            new.to_string(),
            count(AutGroup::D4).to_string(),
            count(AutGroup::D6).to_string(),
            upto.len().to_string(),
        ]);
    }
    let mut db = Database { meta: meta("L2", hmax, &L2_COLUMNS, rows), entries: BTreeMap::new() };
    for e in entries {
        db.insert(e);
    }
    db
}

/// n1..ratio first; the distinct-key count and the undecided count follow.
pub const L3_COLUMNS: [&str; 8] = ["mh", "n1", "n2", "n3", "n4", "ratio", "n2_distinct", "undecided"];

/// Primitive integer 4-tuples up to sign with max |x_i| <= m.
fn projective_points(m: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    let r = -m..=m;
    for x0 in r.clone() {
        for x1 in r.clone() {
            for x2 in r.clone() {
                for x3 in r.clone() {
                    let p = [x0, x1, x2, x3];
                    if p.iter().all(|&c| c == 0) || p.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                        continue;
                    }
                    if p.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Result of running one L3 point through classification and the obstruction.
struct L3Point {
    height: u64,
    inv: InvariantVector,
    key: ModuliKey,
    aut: AutGroup,
    /// None when the obstruction could not be decided within the budget.
    field: Option<FieldOfDefinition>,
    curve: Option<BinarySextic>,
}

fn l3_point(p: &[i64; 4], budget: u64) -> Option<L3Point> {
    let inv = InvariantVector::new(rat(p[0]), rat(p[1]), rat(p[2]), rat(p[3]));
    let key = key_from_invariants(&inv).ok()?;
    let aut = classify(&key);
    let field = rationality_obstruction(&key, budget).ok();
    let curve = match &field {
        Some(f) if f.is_rational() => reconstruct_curve(&key, budget).ok(),
        _ => None,
    };
    Some(L3Point { height: p.iter().map(|c| c.unsigned_abs()).max().unwrap(), inv, key, aut, field, curve })
}

/// Two decimals without trailing zeros.
fn ratio_string(num: usize, den: usize) -> String {
    if den == 0 {
        return "nan".into();
    }
    let s = format!("{:.2}", num as f64 / den as f64);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Points of P^3 of height <= mhmax read as weighted invariants (J2, J4, J6, J10).
pub fn build_l3(mhmax: u64, budget: u64) -> Database {
    let pts = projective_points(mhmax as i64);
    let done: Vec<([i64; 4], Option<L3Point>)> =
        pts.into_par_iter().map(|p| (p, if p[3] != 0 { l3_point(&p, budget) } else { None })).collect();
    let mut rows = Vec::new();
    for m in 1..=mhmax {
        let within: Vec<&([i64; 4], Option<L3Point>)> =
            done.iter().filter(|(p, _)| p.iter().map(|c| c.unsigned_abs()).max().unwrap() <= m).collect();
        let n1 = within.len();
        let n2 = within.iter().filter(|(p, _)| p[3] != 0).count();
        let survivors: Vec<&L3Point> = within.iter().filter_map(|(_, r)| r.as_ref()).collect();
        let distinct: BTreeSet<&ModuliKey> = survivors.iter().map(|r| &r.key).collect();
        let rational = |r: &&&L3Point| r.field.as_ref().is_some_and(FieldOfDefinition::is_rational);
        let n3 = survivors.iter().filter(rational).count();
        let n4 = survivors.iter().filter(rational).filter(|r| r.aut != AutGroup::C2).count();
        let undecided = survivors.iter().filter(|r| r.field.is_none()).count();
        rows.push(vec![
            m.to_string(),
            n1.to_string(),
            n2.to_string(),
            n3.to_string(),
            n4.to_string(),
            ratio_string(n3 - n4, n3),
            distinct.len().to_string(),
            undecided.to_string(),
        ]);
    }
    let mut db = Database { meta: meta("L3", mhmax, &L3_COLUMNS, rows), entries: BTreeMap::new() };
    // one entry per definable moduli point, from its lowest tuple
    let mut best: BTreeMap<String, L3Point> = BTreeMap::new();
    for r in done.into_iter().filter_map(|(_, r)| r) {
        if !r.field.as_ref().is_some_and(FieldOfDefinition::is_rational) {
            continue;
        }
        let k = r.key.to_json();
        if best.get(&k).is_none_or(|b| b.height > r.height) {
            best.insert(k, r);
        }
    }
    for r in best.into_values() {
        let (disc, twists) = match &r.curve {
            Some(c) => {
                let t: Vec<BigInt> = c.integer_coeffs().expect("integral").to_vec();
                (factor(&c.discriminant().to_integer(), 1 << 16).render(), vec![t])
            }
            None => (String::new(), Vec::new()),
        };
        db.insert(DbEntry {
            mh: moduli_height(&r.inv).expect("genus 2").value,
            // a reconstructed model bounds the minimal height but does not certify it
            h: MinimalHeight::UnknownAboveBound,
            key: r.key,
            disc,
            aut: r.aut,
            field: r.field.expect("decided"),
            twists,
        });
    }
    db
}
