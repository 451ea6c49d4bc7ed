//! The `spectile` command line.
//!
//! Every command emits line-delimited JSON records, each carrying
//! `"schema": "spectile.v1"` and a `"kind"`, or plain text with
//! `--format text`. Exit codes: 0 success or verdict true, 1 verdict
//! false, 2 usage or parse error, 3 a finding that contradicts a theorem
//! (a counterexample artifact is written alongside).

pub mod sweep;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cm::{self, PrimePowerSet};
use crate::constructions::{self, SzaboParams};
use crate::error::Error;
use crate::residue_sets::{complement_search, direct_sum_check, IntegerSet, ResidueSet, SetLiteral};
use crate::spectral::{self, spectrum_search, SpectrumVerdict};
use crate::structures::{self, DEFAULT_ENUMERATION_BOUND};

pub const SCHEMA: &str = "spectile.v1";
/// Largest `N` swept by default; subset sweeps cost `2^(N-1)` searches.
pub const DEFAULT_SWEEP_MAX_N: u64 = 24;
/// Largest modulus for which `analyze` runs the search oracles.
pub const DEFAULT_ORACLE_MAX_N: u64 = 64;
/// Overrides [`DEFAULT_SWEEP_MAX_N`].
pub const MAX_N_ENV: &str = "SPECTILE_MAX_N";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "spectile", version, about = "Exact tiling and spectral-set computations in cyclic groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S_A, the (T1)/(T2) conditions, canonical complement and spectrum,
    /// and search-based verdicts when a modulus is given.
    Analyze(AnalyzeArgs),
    /// Check a claimed tiling or spectrum.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Build a set and check it before printing.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Exhaustive experiments over small moduli.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Set literal, e.g. "{0,4,8,9,13,17}" or "{0,1,3} mod 6".
    set: String,
    /// Modulus N, when the set literal does not carry one.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Largest modulus for the complement and spectrum searches.
    #[arg(long, default_value_t = DEFAULT_ORACLE_MAX_N)]
    oracle_max: u64,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// A ⊕ B = Z_N.
    Tiling(PairArgs),
    /// Λ is a spectrum of A.
    Spectrum(PairArgs),
}

#[derive(Args, Debug)]
struct PairArgs {
    a: String,
    b: String,
    /// Modulus N, when the set literal does not carry one.
    #[arg(long = "mod")]
    modulus: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// The canonical complement of a CM set with the given S_A.
    CmTile {
        /// Prime powers, e.g. "4,3".
        #[arg(long)]
        sa: String,
    },
    /// The Łaba spectrum attached to S_A.
    Laba {
        /// Prime powers, e.g. "2,8".
        #[arg(long)]
        sa: String,
        /// A multiple of lcm(S_A) to embed into.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Szabó's block-swap factorization from a TOML parameter file.
    Szabo {
        /// Parameter file with moduli, u, v, pi and optional sigma.
        #[arg(long)]
        params: PathBuf,
    },
    /// Compose A ⊕ B = Z_N with tiles A_a ⊕ C = Z_M.
    Compose {
        /// The outer tile A, with its modulus N.
        #[arg(long)]
        a: String,
        /// The complement B of A in Z_N.
        #[arg(long)]
        b: String,
        /// `a:{...} mod M`, once per element of A.
        #[arg(long = "family", required = true)]
        family: Vec<String>,
        /// The common complement C of every family member in Z_M.
        #[arg(long)]
        c: String,
    },
    /// rA for a tiling A ⊕ B = Z_N and gcd(r, #A) = 1.
    Tijdeman {
        #[arg(long)]
        a: String,
        /// A complement of A.
        #[arg(long)]
        b: String,
        /// Multiplier coprime to #A.
        #[arg(long)]
        r: u64,
        /// Modulus N, when the set literal does not carry one.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum SweepCommand {
    /// Spectral versus tile for every A ⊆ Z_N with 0 ∈ A, N ≤ max-n.
    Fuglede(SweepArgs),
    /// Does a non-unit multiplier coprime to #A keep a spectrum?
    DualTijdeman(SweepArgs),
    /// Write the tile family for S as a corpus file.
    Enumerate {
        /// Prime powers, e.g. "2,4,3".
        #[arg(long)]
        s: String,
        /// Refuse sets S whose lcm exceeds this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
        /// Directory for the corpus file.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Largest modulus; defaults to $SPECTILE_MAX_N or 24.
    #[arg(long)]
    max_n: Option<u64>,
    /// Directory for counterexample artifacts.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// A structured record plus its text rendering.
struct Record {
    json: Value,
    text: String,
}

impl Record {
    fn new(kind: &str, mut json: Value, text: impl Into<String>) -> Self {
        let obj = json.as_object_mut().expect("records are objects");
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("kind".into(), kind.into());
        Self { json, text: text.into() }
    }
}

struct Outcome {
    records: Vec<Record>,
    warnings: Vec<String>,
    code: i32,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Self {
        Self { records, warnings: Vec::new(), code: EXIT_OK }
    }

    fn verdict(record: Record, holds: bool) -> Self {
        Self { records: vec![record], warnings: Vec::new(), code: if holds { EXIT_OK } else { EXIT_FALSE } }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Records go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let format = cli.format;
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(e) => error_outcome(e),
    };
    for w in &outcome.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    for r in &outcome.records {
        let line = match format {
            Format::Json => serde_json::to_string(&r.json).expect("records serialize"),
            Format::Text => r.text.clone(),
        };
        let _ = writeln!(out, "{line}");
    }
    if outcome.code >= EXIT_USAGE {
        if let Some(msg) = outcome.records.last().and_then(|r| r.json.get("message")).and_then(Value::as_str) {
            let _ = writeln!(err, "error: {msg}");
        }
    }
    outcome.code
}

fn error_outcome(e: Error) -> Outcome {
    let code = match e {
        Error::TheoremViolation(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    };
    let position = match &e {
        Error::Parse { position, .. } => Some(*position),
        _ => None,
    };
    let msg = e.to_string();
    Outcome {
        records: vec![Record::new("error", json!({ "message": msg, "position": position }), format!("error: {msg}"))],
        warnings: Vec::new(),
        code,
    }
}

fn execute(command: Command) -> crate::Result<Outcome> {
    match command {
        Command::Analyze(args) => analyze(&args),
        Command::Verify(VerifyCommand::Tiling(p)) => verify_tiling(&p),
        Command::Verify(VerifyCommand::Spectrum(p)) => verify_spectrum(&p),
        Command::Construct(c) => construct(c),
        Command::Sweep(s) => sweep(s),
    }
}

fn residue_set(literal: &str, modulus: Option<u64>) -> crate::Result<ResidueSet> {
    let lit: SetLiteral = literal.parse()?;
    let m = match (lit.modulus, modulus) {
        (Some(a), Some(b)) if a != b => return Err(Error::ModulusMismatch { left: a, right: b }),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            return Err(Error::parse(0, format!("'{literal}' needs a modulus (\"{{...}} mod N\" or --mod)")))
        }
    };
    ResidueSet::from_integers(m, lit.elements)
}

fn residue_json(a: &ResidueSet) -> Value {
    json!({ "set": a.to_string(), "modulus": a.modulus(), "elements": a.elements() })
}

fn integer_json(a: &IntegerSet) -> Value {
    json!({ "set": a.to_string(), "elements": a.elements() })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(args: &AnalyzeArgs) -> crate::Result<Outcome> {
    let lit: SetLiteral = args.set.parse()?;
    let modulus = match (lit.modulus, args.modulus) {
        (Some(a), Some(b)) if a != b => return Err(Error::ModulusMismatch { left: a, right: b }),
        (a, b) => a.or(b),
    };
    let a = IntegerSet::new(lit.elements.iter().copied());
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let report = cm::cm_report(&a)?;
    let is_cm = report.is_cm();
    let (cm_tile, laba) =
        if is_cm { (Some(cm::cm_tiling_set(&report.sa)?), Some(cm::laba_spectrum(&report.sa))) } else { (None, None) };
    let mut warnings = Vec::new();
    let mut oracle = None;
    if let Some(n) = modulus {
        let reduced = ResidueSet::from_integers(n, a.elements().iter().copied())?;
        if n <= args.oracle_max {
            oracle = Some((complement_search(&reduced), spectrum_search(&reduced)));
        } else {
            warnings.push(format!(
                "modulus {n} exceeds --oracle-max {}; tile and spectral verdicts skipped",
                args.oracle_max
            ));
        }
    }
    let mut text = vec![
        format!("A = {a}{}", modulus.map(|n| format!(" mod {n}")).unwrap_or_default()),
        format!("S_A = {}", report.sa),
        format!(
            "T1: {} (#A = {}, product = {})",
            if report.t1.holds { "holds" } else { "fails" },
            report.t1.cardinality,
            report.t1.product
        ),
        match &report.t2.witness {
            None => "T2: holds".to_string(),
            Some(w) => format!("T2: fails at {w:?}"),
        },
    ];
    if let (Some(b), Some(l)) = (&cm_tile, &laba) {
        text.push(format!("canonical complement: {b}"));
        text.push(format!("Łaba spectrum: {l}"));
    }
    if let Some((tile, spec)) = &oracle {
        text.push(format!(
            "tiles Z_{}: {}",
            modulus.unwrap_or_default(),
            tile.as_ref().map_or("no".to_string(), |b| format!("yes, complement {b}"))
        ));
        text.push(format!("spectral: {}", spec.as_ref().map_or("no".to_string(), |l| format!("yes, spectrum {l}"))));
    }
    let json = json!({
        "input": a.to_string(),
        "elements": a.elements(),
        "modulus": modulus,
        "sa": report.sa,
        "t1": report.t1,
        "t2": report.t2,
        "cm": is_cm,
        "cm_tile": cm_tile.as_ref().map(integer_json),
        "laba_spectrum": laba.as_ref().map(residue_json),
        "tile_verdict": oracle.as_ref().map(|o| o.0.is_some()),
        "complement": oracle.as_ref().and_then(|o| o.0.as_ref()).map(residue_json),
        "spectral_verdict": oracle.as_ref().map(|o| o.1.is_some()),
        "spectrum": oracle.as_ref().and_then(|o| o.1.as_ref()).map(residue_json),
    });
    let mut outcome = Outcome::ok(vec![Record::new("analysis", json, text.join("\n"))]);
    outcome.warnings = warnings;
    Ok(outcome)
}

/// Two pairs with the same sum, or `None` if all sums are distinct.
fn sum_collision(a: &ResidueSet, b: &ResidueSet) -> Option<[u64; 4]> {
    let n = a.modulus();
    let mut seen = BTreeMap::new();
    for &x in a.elements() {
        for &y in b.elements() {
            if let Some(&(x0, y0)) = seen.get(&((x + y) % n)) {
                return Some([x0, y0, x, y]);
            }
            seen.insert((x + y) % n, (x, y));
        }
    }
    None
}

fn verify_tiling(p: &PairArgs) -> crate::Result<Outcome> {
    let a = residue_set(&p.a, p.modulus)?;
    let b = residue_set(&p.b, p.modulus.or(Some(a.modulus())))?;
    let holds = direct_sum_check(&a, &b)?;
    let n = a.modulus();
    let (reason, why) = if holds {
        (Value::Null, String::new())
    } else if let Some([x0, y0, x, y]) = sum_collision(&a, &b) {
        (json!({ "collision": [[x0, y0], [x, y]], "sum": (x + y) % n }), format!(": {x0} + {y0} = {x} + {y} mod {n}"))
    } else {
        (json!({ "cardinality": [a.len(), b.len()], "modulus": n }), format!(": {} · {} != {n}", a.len(), b.len()))
    };
    let json = json!({
        "check": "tiling",
        "a": residue_json(&a),
        "b": residue_json(&b),
        "holds": holds,
        "reason": reason,
    });
    let text = format!("{a} ⊕ {b} = Z_{n}: {}{why}", yes_no(holds));
    Ok(Outcome::verdict(Record::new("verify", json, text), holds))
}

fn verify_spectrum(p: &PairArgs) -> crate::Result<Outcome> {
    let a = residue_set(&p.a, p.modulus)?;
    let lambda = residue_set(&p.b, p.modulus.or(Some(a.modulus())))?;
    let verdict = spectral::verify_spectrum(&a, &lambda)?;
    let holds = verdict.holds();
    let why = match &verdict {
        SpectrumVerdict::Valid => String::new(),
        SpectrumVerdict::CardinalityMismatch { set, spectrum } => format!(": #A = {set}, #Λ = {spectrum}"),
        SpectrumVerdict::NonVanishing { lambda, lambda_prime } => {
            format!(": A(x) does not vanish at the character {lambda} - {lambda_prime}")
        }
    };
    let json = json!({
        "check": "spectrum",
        "a": residue_json(&a),
        "lambda": residue_json(&lambda),
        "holds": holds,
        "reason": if holds { Value::Null } else { serde_json::to_value(&verdict).expect("verdict serializes") },
    });
    let text = format!("{lambda} is a spectrum of {a}: {}{why}", yes_no(holds));
    Ok(Outcome::verdict(Record::new("verify", json, text), holds))
}

fn construct(c: ConstructCommand) -> crate::Result<Outcome> {
    match c {
        ConstructCommand::CmTile { sa } => {
            let s: PrimePowerSet = sa.parse()?;
            let n = s.lcm();
            let b = cm::cm_tiling_set(&s)?;
            // the canonical product over S itself is a CM set with S_A = S
            let witness = cm::canonical_product(&s, n)?;
            let (bn, wn) = (b.reduce_mod(n)?, witness.reduce_mod(n)?);
            if !direct_sum_check(&wn, &bn)? {
                return Err(Error::TheoremViolation(format!("{witness} ⊕ {b} is not Z_{n}")));
            }
            let json = json!({
                "construction": "cm-tile",
                "sa": s,
                "modulus": n,
                "set": b.to_string(),
                "elements": b.elements(),
                "witness": integer_json(&witness),
                "verified": true,
            });
            Ok(Outcome::ok(vec![Record::new("construct", json, b.to_string())]))
        }
        ConstructCommand::Laba { sa, modulus } => {
            let s: PrimePowerSet = sa.parse()?;
            let n = modulus.unwrap_or(s.lcm());
            let lambda = cm::laba_spectrum_mod(&s, n)?;
            let witness = cm::canonical_product(&s, s.lcm())?.reduce_mod(n)?;
            if !spectral::verify_spectrum(&witness, &lambda)?.holds() {
                return Err(Error::TheoremViolation(format!("{lambda} is not a spectrum of {witness}")));
            }
            let mut json = residue_json(&lambda);
            let obj = json.as_object_mut().expect("object");
            obj.insert("construction".into(), "laba".into());
            obj.insert("sa".into(), serde_json::to_value(&s).expect("serializes"));
            obj.insert("witness".into(), residue_json(&witness));
            obj.insert("verified".into(), true.into());
            Ok(Outcome::ok(vec![Record::new("construct", json, lambda.to_string())]))
        }
        ConstructCommand::Szabo { params } => construct_szabo(&params),
        ConstructCommand::Compose { a, b, family, c } => {
            let c = residue_set(&c, None)?;
            let a = residue_set(&a, None)?;
            let b = residue_set(&b, Some(a.modulus()))?;
            let mut fam = BTreeMap::new();
            for entry in &family {
                let (key, lit) = entry
                    .split_once(':')
                    .ok_or_else(|| Error::parse(0, format!("family entry '{entry}' must be 'a:{{...}} mod M'")))?;
                let key: u64 = key.trim().parse().map_err(|_| Error::parse(0, format!("bad family index '{key}'")))?;
                if fam.insert(key, residue_set(lit, Some(c.modulus()))?).is_some() {
                    return Err(Error::Params(format!("family index {key} given twice")));
                }
            }
            let t = constructions::compose_tiles(&a, &b, &fam, &c)?;
            let json = json!({
                "construction": "compose",
                "a": residue_json(&t.a),
                "b": residue_json(&t.b),
                "verified": true,
            });
            let text = format!("{}\n{}", t.a, t.b);
            Ok(Outcome::ok(vec![Record::new("construct", json, text)]))
        }
        ConstructCommand::Tijdeman { a, b, r, modulus } => {
            let a = residue_set(&a, modulus)?;
            let b = residue_set(&b, Some(a.modulus()))?;
            let ra = spectral::tijdeman_scale(&a, &b, r)?;
            let mut json = residue_json(&ra);
            let obj = json.as_object_mut().expect("object");
            obj.insert("construction".into(), "tijdeman".into());
            obj.insert("r".into(), r.into());
            obj.insert("complement".into(), residue_json(&b));
            obj.insert("verified".into(), true.into());
            Ok(Outcome::ok(vec![Record::new("construct", json, ra.to_string())]))
        }
    }
}

fn construct_szabo(path: &Path) -> crate::Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Params(format!("{}: {e}", path.display())))?;
    let params = SzaboParams::from_toml(&text)?;
    let out = constructions::szabo_example(&params)?;
    let report = constructions::verify_szabo(&out)?;
    if !report.all_passed() {
        return Err(Error::TheoremViolation(format!("Szabó construction failed: {}", report.failures().join("; "))));
    }
    let mut lines = vec![
        format!("A = {}", out.a),
        format!("B' = {}", out.b_prime),
        format!("B = {}", out.b),
        format!("Λ_A = {}", out.lambda_a),
        format!("Λ_B = {}", out.lambda_b),
    ];
    if let Some(lp) = &out.lambda_a_prime {
        lines.push(format!("Λ_A' = {lp}"));
    }
    if let Some(img) = &out.images {
        lines.push(format!("Ψ(A) = {}", img.a));
        lines.push(format!("Ψ(B) = {}", img.b));
    }
    lines.extend(report.clauses.iter().map(|c| format!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name)));
    let json = json!({
        "construction": "szabo",
        "params": out.params,
        "a": out.a.to_string(),
        "b_prime": out.b_prime.to_string(),
        "b": out.b.to_string(),
        "b0": out.b0.to_string(),
        "lambda_a": out.lambda_a.to_string(),
        "lambda_b": out.lambda_b.to_string(),
        "lambda_a_prime": out.lambda_a_prime.as_ref().map(ToString::to_string),
        "images": out.images.as_ref().map(|img| json!({
            "a": residue_json(&img.a),
            "b_prime": residue_json(&img.b_prime),
            "b": residue_json(&img.b),
            "b0": residue_json(&img.b0),
            "lambda_a": residue_json(&img.lambda_a),
            "lambda_b": residue_json(&img.lambda_b),
            "lambda_a_prime": img.lambda_a_prime.as_ref().map(residue_json),
        })),
        "clauses": report.clauses,
        "verified": true,
    });
    Ok(Outcome::ok(vec![Record::new("construct", json, lines.join("\n"))]))
}

/// The default sweep bound, from the environment when set.
fn sweep_limit() -> crate::Result<u64> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Params(format!("{MAX_N_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_SWEEP_MAX_N),
    }
}

fn sweep_bound(requested: Option<u64>, warnings: &mut Vec<String>) -> crate::Result<u64> {
    let limit = sweep_limit()?;
    let n = requested.unwrap_or(limit);
    if n == 0 || n > 40 {
        return Err(Error::Params(format!("--max-n must lie in 1..=40, got {n}")));
    }
    if n > limit {
        warnings
            .push(format!("--max-n {n} exceeds the default bound {limit}; the sweep visits 2^(N-1) sets per modulus"));
    }
    Ok(n)
}

fn write_artifact(dir: &Path, name: &str, value: &Value) -> crate::Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Params(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    let body = serde_json::to_string_pretty(value).expect("artifact serializes");
    std::fs::write(&path, body + "\n").map_err(|e| Error::Params(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn sweep(s: SweepCommand) -> crate::Result<Outcome> {
    let mut warnings = Vec::new();
    let mut outcome = match s {
        SweepCommand::Fuglede(args) => {
            let max_n = sweep_bound(args.max_n, &mut warnings)?;
            let rows: Vec<_> = (1..=max_n).map(sweep::fuglede_row).collect();
            let mut records: Vec<Record> = rows
                .iter()
                .map(|r| {
                    let text = format!(
                        "N = {:2}: {} sets, {} tiles, {} spectral, {} disagreements",
                        r.n,
                        r.sets,
                        r.tiles,
                        r.spectral,
                        r.disagreements.len()
                    );
                    Record::new("fuglede_row", serde_json::to_value(r).expect("row"), text)
                })
                .collect();
            let bad: Vec<&ResidueSet> = rows.iter().flat_map(|r| &r.disagreements).collect();
            let mut summary = json!({
                "sweep": "fuglede",
                "max_n": max_n,
                "sets": rows.iter().map(|r| r.sets).sum::<u64>(),
                "agreements": rows.iter().map(|r| r.agreements).sum::<u64>(),
                "disagreements": bad.len(),
            });
            let code = if bad.is_empty() {
                EXIT_OK
            } else {
                let path = write_artifact(&args.out, "fuglede-counterexample.json", &json!({ "sets": bad }))?;
                summary["artifact"] = path.display().to_string().into();
                EXIT_VIOLATION
            };
            let text = format!("N ≤ {max_n}: {} agreements, {} disagreements", summary["agreements"], bad.len());
            records.push(Record::new("sweep_summary", summary, text));
            Outcome { records, warnings: Vec::new(), code }
        }
        SweepCommand::DualTijdeman(args) => {
            let max_n = sweep_bound(args.max_n, &mut warnings)?;
            let rows: Vec<_> = (1..=max_n).map(sweep::dual_tijdeman_row).collect();
            let mut records: Vec<Record> = rows
                .iter()
                .map(|r| {
                    let text = format!(
                        "N = {:2}: {} spectral sets, {} probes, {} preserved, {} lost",
                        r.n, r.spectral_sets, r.probes, r.preserved, r.lost
                    );
                    Record::new("dual_tijdeman_row", serde_json::to_value(r).expect("row"), text)
                })
                .collect();
            let (probes, lost) = rows.iter().fold((0, 0), |(p, l), r| (p + r.probes, l + r.lost));
            records.push(Record::new(
                "sweep_summary",
                json!({ "sweep": "dual-tijdeman", "max_n": max_n, "probes": probes, "lost": lost }),
                format!("N ≤ {max_n}: {probes} probes, {lost} lost"),
            ));
            Outcome::ok(records)
        }
        SweepCommand::Enumerate { s, bound, out } => {
            let s: PrimePowerSet = s.parse()?;
            let family = structures::enumerate_t_s(&s, bound)?;
            for t in &family.tiles {
                let report = cm::cm_report(t)?;
                if report.sa != s || !report.is_cm() {
                    let path = write_artifact(
                        &out,
                        "enumerate-counterexample.json",
                        &json!({ "s": s, "tile": t, "report": report }),
                    )?;
                    return Err(Error::TheoremViolation(format!(
                        "{t} in the family for {s} has S_A = {} (cm = {}); see {}",
                        report.sa,
                        report.is_cm(),
                        path.display()
                    )));
                }
            }
            std::fs::create_dir_all(&out).map_err(|e| Error::Params(format!("{}: {e}", out.display())))?;
            let name: Vec<String> = s.ordered().iter().map(u64::to_string).collect();
            let path =
                out.join(format!("tiles-s-{}.txt", if name.is_empty() { "empty".into() } else { name.join("-") }));
            std::fs::write(&path, family.to_string()).map_err(|e| Error::Params(format!("{}: {e}", path.display())))?;
            let json = json!({
                "sweep": "enumerate",
                "s": s,
                "lcm": s.lcm(),
                "count": family.tiles.len(),
                "corpus": path.display().to_string(),
            });
            let text = format!("S = {s}: {} tiles written to {}", family.tiles.len(), path.display());
            Outcome::ok(vec![Record::new("sweep_summary", json, text)])
        }
    };
    outcome.warnings.extend(warnings);
    Ok(outcome)
}
