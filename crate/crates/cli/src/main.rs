// SPDX-License-Identifier: Apache-2.0

//! `g2`: command-line access to invariants, classification, heights, reconstruction and the
//! curve databases. Text output is one `name<TAB>value` pair per line; `--json` emits JSON.
//!
//! Exit codes: 0 success, 2 domain error (J10 = 0, undecided obstruction, ...), 1 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use genus2::db::with_jobs;
use genus2::invariants::{a_invariants, clebsch_from_igusa, j_invariants};
use genus2::{
    absolute_i, build_l1, build_l2, build_l3, classify, igusa, j16, j30, key_from_invariants, minimal_discriminant,
    minimal_height, moduli_height, query, reconstruct, reduce_at_prime, stats, t_invariants, BinarySextic, Database,
    Error, ModuliKey, Reconstruction,
};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "g2", version, about = "Genus-2 curves over Q: invariants, automorphisms, heights, databases")]
struct Cli {
    /// Emit JSON instead of name<TAB>value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every invariant system of a sextic.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        sextic: String,
    },
    /// The moduli key (r, x1, x2, x3).
    Modpoint {
        #[arg(allow_hyphen_values = true)]
        sextic: String,
    },
    /// Automorphism group of a sextic or of a key "r,x1,x2,x3".
    Classify {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Naive, minimal and moduli heights.
    Height {
        #[arg(allow_hyphen_values = true)]
        sextic: String,
        /// Largest height searched exhaustively.
        #[arg(long, default_value_t = 10)]
        budget: u64,
    },
    /// Minimal-discriminant model, or one valuation reduction at --prime.
    Minimize {
        #[arg(allow_hyphen_values = true)]
        sextic: String,
        /// Allow the twist bounds for f(x^2) and f(x^3).
        #[arg(long)]
        twists: bool,
        #[arg(long)]
        prime: Option<BigInt>,
    },
    /// A curve over Q with the given key, or the quadratic field certificate.
    Reconstruct {
        #[arg(allow_hyphen_values = true)]
        key: String,
        /// Factoring budget for the conic.
        #[arg(long, default_value_t = 1 << 18)]
        bound: u64,
    },
    /// Build a database and write it as JSON Lines.
    Build {
        which: Which,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 lets the pool decide.
        #[arg(long, env = "G2_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Factoring budget for the L3 obstruction.
        #[arg(long, default_value_t = 1 << 18)]
        bound: u64,
    },
    /// Look up a key in a database file.
    Query {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        key: String,
    },
    /// The count table of a database file, as TSV.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "L1", alias = "l1")]
    L1,
    #[value(name = "L2", alias = "l2")]
    L2,
    #[value(name = "L3", alias = "l3")]
    L3,
}

/// Ordered name/value pairs rendered as text lines or a JSON object.
#[derive(Default)]
struct Report(Vec<(String, Value)>);

impl Report {
    fn put(&mut self, name: &str, v: impl Into<Value>) {
        self.0.push((name.to_string(), v.into()));
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let m: Map<String, Value> = self.0.iter().cloned().collect();
            return format!("{}\n", Value::Object(m));
        }
        let mut s = String::new();
        for (k, v) in &self.0 {
            let text = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}\t{text}\n"));
        }
        s
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::MalformedKey(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn sextic(s: &str) -> Result<BinarySextic, Failure> {
    Ok(BinarySextic::parse(s)?)
}

fn key_value(k: &ModuliKey) -> Value {
    serde_json::to_value(k).expect("key serializes")
}

fn put_key(r: &mut Report, k: &ModuliKey) {
    r.put("r", k.r.to_string());
    let names = if k.r == -1 { ["i1", "i2", "i3"] } else { ["t1", "t2", "t3"] };
    for (n, x) in names.iter().zip(&k.x) {
        r.put(n, x.to_string());
    }
}

fn invariants(f: &BinarySextic) -> Report {
    let v = igusa(f);
    let mut r = Report::default();
    for (n, x) in ["J2", "J4", "J6", "J10"].iter().zip(v.as_array()) {
        r.put(n, x.to_string());
    }
    for (n, x) in ["I2", "I4", "I6", "I10"].iter().zip(v.igusa_clebsch()) {
        r.put(n, x.to_string());
    }
    let c = clebsch_from_igusa(&v);
    for (n, x) in ["A", "B", "C", "D"].iter().zip([&c.a, &c.b, &c.c, &c.d]) {
        r.put(n, x.to_string());
    }
    if let Ok(i) = absolute_i(&v) {
        for (n, x) in ["i1", "i2", "i3"].iter().zip([&i.i1, &i.i2, &i.i3]) {
            r.put(n, x.to_string());
        }
    }
    if let Ok(j) = j_invariants(&v) {
        for (n, x) in ["j1", "j2", "j3"].iter().zip(&j) {
            r.put(n, x.to_string());
        }
    }
    if let Ok(t) = t_invariants(&v) {
        for (n, x) in ["t1", "t2", "t3"].iter().zip([&t.t1, &t.t2, &t.t3]) {
            r.put(n, x.to_string());
        }
    }
    if let Ok(a) = a_invariants(&v) {
        r.put("a1", a[0].to_string());
        r.put("a2", a[1].to_string());
    }
    r.put("J16", j16(&v).to_string());
    r.put("J30", j30(&v).to_string());
    r
}

fn sextic_strings(f: &BinarySextic) -> Value {
    json!(f.to_strings())
}

fn load(path: &Path) -> Result<Database, Failure> {
    Ok(Database::load(path)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut r = Report::default();
    match cli.cmd {
        Cmd::Invariants { sextic: s } => r = invariants(&sextic(&s)?),
        Cmd::Modpoint { sextic: s } => {
            let k = genus2::moduli_key(&sextic(&s)?)?;
            if cli.json {
                r.put("key", key_value(&k));
            } else {
                put_key(&mut r, &k);
            }
        }
        Cmd::Classify { input } => {
            // four fields is a key, anything else a sextic
            let k = match ModuliKey::parse(&input) {
                Ok(k) => k,
                Err(_) => genus2::moduli_key(&sextic(&input)?)?,
            };
            let g = classify(&k);
            if cli.json {
                let (o, i) = g.id();
                r.put("aut", json!([o, i]));
                r.put("name", g.name());
            } else {
                r.put("aut", g.to_string());
            }
        }
        Cmd::Height { sextic: s, budget } => {
            let f = sextic(&s)?.primitive();
            let rep = minimal_height(&f, budget)?;
            let mh = moduli_height(&igusa(&f))?;
            r.put("naive", rep.naive.to_string());
            r.put("minimal", rep.minimal.to_string());
            r.put("witness", sextic_strings(&rep.witness));
            r.put("search_bound", rep.search_bound.to_string());
            r.put("moduli_height", mh.value.to_string());
            r.put("moduli_height_factored", mh.factored().render());
        }
        Cmd::Minimize { sextic: s, twists, prime } => {
            let f = sextic(&s)?.primitive();
            if !f.is_integral() {
                return Err(Error::NotIntegral.into());
            }
            let g = match prime {
                Some(p) => {
                    if p < BigInt::from(2) {
                        return Err(Failure::Usage(format!("--prime must be at least 2, got {p}")));
                    }
                    let (g, m) = reduce_at_prime(&f, &p)?;
                    r.put("m", m.to_string());
                    g
                }
                None => minimal_discriminant(&f, twists)?,
            };
            r.put("model", sextic_strings(&g));
            r.put("height", g.naive_height()?.to_string());
            let d = genus2::heights::integral_discriminant(&g);
            r.put("disc", genus2::factor::factor(&d, 1 << 20).render());
        }
        Cmd::Reconstruct { key, bound } => {
            let k = ModuliKey::parse(&key)?;
            match reconstruct(&k, bound)? {
                Reconstruction::Curve { curve, route } => {
                    r.put("route", serde_json::to_value(route).expect("route"));
                    r.put("field", "rational");
                    r.put("curve", sextic_strings(&curve));
                }
                Reconstruction::Quadratic(fd) => {
                    r.put("route", "mestre");
                    r.put("field", "quadratic");
                    r.put("d", fd.squarefree_part.to_string());
                }
            }
        }
        Cmd::Build { which, max, out, jobs, bound } => {
            if max == 0 {
                return Err(Failure::Usage("--max must be at least 1".into()));
            }
            let db = with_jobs(jobs, || match which {
                Which::L1 => build_l1(max),
                Which::L2 => build_l2(max),
                Which::L3 => build_l3(max, bound),
            });
            db.save(&out)?;
            r.put("entries", db.len().to_string());
            r.put("out", out.display().to_string());
        }
        Cmd::Query { file, key } => {
            let db = load(&file)?;
            let k = ModuliKey::parse(&key)?;
            // canonical form of the key is the one stored
            let k = genus2::classify::key_to_invariants(&k).and_then(|v| key_from_invariants(&v)).unwrap_or(k);
            return Ok(match query(&db, &k) {
                Some(e) if cli.json => format!("{}\n", e.to_value()),
                Some(e) => {
                    let v = e.to_value();
                    for name in ["key", "h", "mh", "disc", "aut", "conductor", "field", "twists"] {
                        r.put(name, v[name].clone());
                    }
                    r.render(false)
                }
                None if cli.json => "null\n".into(),
                None => "absent\n".into(),
            });
        }
        Cmd::Stats { file } => {
            let t = stats(&load(&file)?);
            if cli.json {
                return Ok(format!("{}\n", json!({"columns": t.columns, "rows": t.rows})));
            }
            return Ok(t.to_tsv());
        }
    }
    Ok(r.render(cli.json))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
