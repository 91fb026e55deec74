//! Command-line front end: `generate`, `verify` and `inspect`, all producing
//! JSON certificate documents.
//!
//! A document is a JSON object with sorted keys:
//!
//! ```text
//! schema_version  "tameforge-cert/1"
//! command         "generate" | "inspect nagata" | "inspect kawanoue" | ...
//! inputs          the parameters the document was computed from
//! checks          [{name, expected, computed, pass}]
//! polynomials     {name: polynomial}
//! automorphism    {images, word} or null
//! witness         type-I witness or null
//! overall         conjunction of every pass flag
//! ```
//!
//! Rationals are strings (`"8/3"`), so nothing is ever rounded. `verify`
//! recomputes the document from `inputs` and compares it field by field.
//!
//! Exit codes: 0 all checks pass, 1 a check fails or the document does not
//! match its recomputation, 2 bad input or schema, 3 I/O failure.

use std::any::Any;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::automorphism::{bracket_degree, PolyMap, Step};
use crate::family::{
    build_family, corollary_from_instance, kawanoue_pair, nagata, nagata_certificate,
    verify_closed_forms, verify_graded_analysis, FamilyParams,
};
use crate::polyring::{format_rational, parse_laurent, parse_poly, Degree, WeightVector};
use crate::sureduction::{Certificate, TypeOneWitness};

pub const SCHEMA_VERSION: &str = "tameforge-cert/1";

/// `deg h_2 = (2p+1)m` above which `generate` warns about run time.
pub const WARN_DEGREE: i64 = 60;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tameforge",
    version,
    about = "Exact certificates for tame automorphisms of Q[x1, x2, x3]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build H' for (p, q) and write its certificate.
    Generate(GenerateArgs),
    /// Recompute a certificate (or an array of them) and compare.
    Verify { path: PathBuf },
    /// Report on the Nagata map, the Kawanoue pair, brackets or degrees.
    Inspect {
        #[command(subcommand)]
        subject: Subject,
        /// Print the JSON document instead of the text report.
        #[arg(long, global = true)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Inclusive ranges `pmin..pmax,qmin..qmax`.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub grid: Option<String>,
    /// Output file, directory, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Subcommand, Debug)]
pub enum Subject {
    Nagata,
    Kawanoue {
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    Bracket {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 3)]
        nvars: usize,
    },
    Degrees {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        /// Accept negative exponents.
        #[arg(long)]
        laurent: bool,
        /// Comma-separated rational weights, e.g. `2,1,3`.
        #[arg(long)]
        weights: Option<String>,
    },
}

/// Errors that end a command before any verdict.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<crate::polyring::PolyError> for CliError {
    fn from(e: crate::polyring::PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn checks_json(cert: &Certificate) -> Value {
    Value::Array(
        cert.checks()
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected": c.expected,
                    "computed": c.computed,
                    "pass": c.pass,
                })
            })
            .collect(),
    )
}

fn rationals_json(v: &[BigRational]) -> Value {
    Value::Array(
        v.iter()
            .map(|r| Value::String(format_rational(r)))
            .collect(),
    )
}

fn step_json(step: &Step) -> Value {
    match step {
        Step::Elementary { index, phi } => json!({
            "type": "elementary",
            "index": index + 1,
            "phi": phi.render(),
        }),
        Step::Affine { matrix, shift } => json!({
            "type": "affine",
            "matrix": matrix.iter().map(|row| rationals_json(row)).collect::<Vec<_>>(),
            "shift": rationals_json(shift),
        }),
    }
}

fn automorphism_json(map: &PolyMap) -> Value {
    json!({
        "images": map.images().iter().map(|f| f.render()).collect::<Vec<_>>(),
        "word": map.word().map(|w| w.steps().iter().map(step_json).collect::<Vec<_>>()),
    })
}

fn witness_json(w: &TypeOneWitness) -> Value {
    json!({
        "perm": w.perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "s": w.s,
        "alpha": format_rational(&w.alpha),
        "phi": w.phi_expr.render(),
        "phi_arguments": "x1 = f1, x2 = f2 - alpha*f3",
    })
}

fn document(
    command: &str,
    inputs: Value,
    cert: &Certificate,
    polynomials: Map<String, Value>,
    automorphism: Option<Value>,
    witness: Option<Value>,
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "checks": checks_json(cert),
        "polynomials": Value::Object(polynomials),
        "automorphism": automorphism.unwrap_or(Value::Null),
        "witness": witness.unwrap_or(Value::Null),
        "overall": cert.overall(),
    })
}

/// The full certificate for one `(p, q)`: closed forms, the theorem, the
/// graded analysis and the type-I reduction of `H'`.
pub fn generate_document(p: u32, q: u32) -> CliResult<Value> {
    let inst = build_family(p, q)?;
    let mut cert = Certificate::new(format!("generate p={p} q={q}"));
    cert.absorb(verify_closed_forms(&inst)?);
    cert.absorb(verify_graded_analysis(&inst)?);
    let (reduced, witness, cor) = corollary_from_instance(&inst)?;
    cert.absorb(cor);

    let mut polys = Map::new();
    let named = [
        ("f", &inst.f),
        ("g", &inst.g),
        ("h", &inst.h),
        ("h_reduced", &reduced),
    ];
    for (prefix, map) in named {
        for (i, img) in map.images().iter().enumerate() {
            polys.insert(format!("{prefix}{}", i + 1), Value::String(img.render()));
        }
    }
    polys.insert(
        "reduced_difference".into(),
        Value::String(inst.reduced_difference().render()),
    );
    polys.insert(
        "invariant_I".into(),
        Value::String(inst.invariant_i().render()),
    );
    let params = &inst.params;
    let inputs = json!({
        "p": p,
        "q": q,
        "m": params.m,
        "c": format_rational(&params.c),
        "c_list": rationals_json(&params.c_list),
        "omega": inst.omega.entries().iter().map(format_rational).collect::<Vec<_>>(),
    });
    Ok(document(
        "generate",
        inputs,
        &cert,
        polys,
        Some(automorphism_json(&reduced)),
        Some(witness_json(&witness)),
    ))
}

pub fn nagata_document() -> CliResult<Value> {
    let (n, n_inv) = nagata()?;
    let cert = nagata_certificate()?;
    let mut polys = Map::new();
    for (i, img) in n_inv.images().iter().enumerate() {
        polys.insert(format!("inverse{}", i + 1), Value::String(img.render()));
    }
    Ok(document(
        "inspect nagata",
        json!({}),
        &cert,
        polys,
        Some(automorphism_json(&n)),
        None,
    ))
}

pub fn kawanoue_document(l: u32, m: u32) -> CliResult<Value> {
    let (f, g, cert) = kawanoue_pair(l, m)?;
    let sum = &f.pow(3)? + &g.pow(2)?;
    let mut polys = Map::new();
    polys.insert("f".into(), Value::String(f.render()));
    polys.insert("g".into(), Value::String(g.render()));
    polys.insert("f^3+g^2".into(), Value::String(sum.render()));
    Ok(document(
        "inspect kawanoue",
        json!({"l": l, "m": m}),
        &cert,
        polys,
        None,
        None,
    ))
}

fn check_nvars(nvars: usize) -> CliResult<()> {
    if nvars == 0 {
        return Err(CliError::Input("nvars must be positive".into()));
    }
    Ok(())
}

pub fn bracket_document(f: &str, g: &str, nvars: usize) -> CliResult<Value> {
    check_nvars(nvars)?;
    let fp = parse_poly(f, nvars)?;
    let gp = parse_poly(g, nvars)?;
    let b = bracket_degree(&fp, &gp)?;
    let b_rev = bracket_degree(&gp, &fp)?;
    let mut cert = Certificate::new("bracket");
    cert.push_eq("deg[f, g] = deg[g, f]", b.clone(), b_rev);
    let sum = fp.total_degree()? + gp.total_degree()?;
    cert.push(
        "deg[f, g] <= deg f + deg g",
        format!("<= {sum}"),
        b.to_string(),
        b <= sum,
    );
    let mut polys = Map::new();
    polys.insert("f".into(), Value::String(fp.render()));
    polys.insert("g".into(), Value::String(gp.render()));
    let inputs = json!({"f": f, "g": g, "nvars": nvars, "bracket_degree": b.to_string()});
    Ok(document(
        "inspect bracket",
        inputs,
        &cert,
        polys,
        None,
        None,
    ))
}

fn parse_weights(text: &str, nvars: usize) -> CliResult<WeightVector> {
    let entries = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| CliError::Input(format!("invalid weight '{}'", s.trim())))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if entries.len() != nvars {
        return Err(CliError::Input(format!(
            "expected {nvars} weights, got {}",
            entries.len()
        )));
    }
    Ok(WeightVector::new(entries))
}

pub fn degrees_document(
    f: &str,
    nvars: usize,
    laurent: bool,
    weights: Option<&str>,
) -> CliResult<Value> {
    check_nvars(nvars)?;
    let fp = if laurent {
        parse_laurent(f, nvars)?
    } else {
        parse_poly(f, nvars)?
    };
    let eta = match weights {
        Some(w) => parse_weights(w, nvars)?,
        None => WeightVector::uniform(nvars),
    };
    let mut cert = Certificate::new("degrees");
    let deg = fp.weighted_degree(&eta)?;
    let mut polys = Map::new();
    polys.insert("f".into(), Value::String(fp.render()));
    if !fp.is_zero() {
        let lead = fp.leading_part(&eta)?;
        cert.push_eq(
            "deg_eta f = deg_eta f^eta",
            deg.render(),
            lead.weighted_degree(&eta)?.render(),
        );
        polys.insert("leading_part".into(), Value::String(lead.render()));
    }
    let total = if laurent {
        None
    } else {
        Some(fp.total_degree()?)
    };
    if let Some(t) = &total {
        let as_weighted = t
            .clone()
            .map(|d| format_rational(&BigRational::from_integer(d.into())));
        let uniform = fp.weighted_degree(&WeightVector::uniform(nvars))?;
        cert.push_eq(
            "deg f = deg_(1,...,1) f",
            as_weighted.to_string(),
            match uniform {
                Degree::MinusInfinity => "-inf".to_string(),
                Degree::Finite(r) => format_rational(&r),
            },
        );
    }
    let inputs = json!({
        "f": f,
        "nvars": nvars,
        "laurent": laurent,
        "weights": eta.entries().iter().map(format_rational).collect::<Vec<_>>(),
        "weighted_degree": deg.render(),
        "total_degree": total.map(|t| t.to_string()),
    });
    Ok(document(
        "inspect degrees",
        inputs,
        &cert,
        polys,
        None,
        None,
    ))
}

fn get_u32(inputs: &Value, key: &str) -> CliResult<u32> {
    inputs
        .get(key)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| {
            CliError::Input(format!(
                "inputs.{key} missing or not a small nonnegative integer"
            ))
        })
}

fn get_str<'a>(inputs: &'a Value, key: &str) -> CliResult<&'a str> {
    inputs
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Input(format!("inputs.{key} missing or not a string")))
}

fn get_usize(inputs: &Value, key: &str) -> CliResult<usize> {
    Ok(get_u32(inputs, key)? as usize)
}

/// Recomputes the document a `command` and its recorded `inputs` describe.
pub fn recompute(command: &str, inputs: &Value) -> CliResult<Value> {
    match command {
        "generate" => generate_document(get_u32(inputs, "p")?, get_u32(inputs, "q")?),
        "inspect nagata" => nagata_document(),
        "inspect kawanoue" => kawanoue_document(get_u32(inputs, "l")?, get_u32(inputs, "m")?),
        "inspect bracket" => bracket_document(
            get_str(inputs, "f")?,
            get_str(inputs, "g")?,
            get_usize(inputs, "nvars")?,
        ),
        "inspect degrees" => {
            let weights = inputs
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Input("inputs.weights missing".into()))?
                .iter()
                .map(|w| w.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Input("inputs.weights must be strings".into()))?
                .join(",");
            degrees_document(
                get_str(inputs, "f")?,
                get_usize(inputs, "nvars")?,
                inputs
                    .get("laurent")
                    .and_then(Value::as_bool)
                    .unwrap_or(false),
                Some(&weights),
            )
        }
        other => Err(CliError::Input(format!("unknown command '{other}'"))),
    }
}

fn panic_message(payload: Box<dyn Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "computation aborted".to_string()
    }
}

/// Runs `f`, turning a panic (for example the term cap inside an operator)
/// into an input error.
pub fn guarded<T>(f: impl FnOnce() -> CliResult<T>) -> CliResult<T> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(payload) => Err(CliError::Input(format!(
            "aborted: {}",
            panic_message(payload)
        ))),
    }
}

/// Canonical text of a document: pretty JSON with sorted keys and a final
/// newline.
pub fn render_document(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses `"a..b,c..d"` (a bare `n` means `n..n`) into the cells of the grid.
pub fn parse_grid(text: &str) -> CliResult<Vec<(u32, u32)>> {
    let bad = || {
        CliError::Input(format!(
            "invalid grid '{text}', expected pmin..pmax,qmin..qmax"
        ))
    };
    let range = |s: &str| -> CliResult<(u32, u32)> {
        let s = s.trim();
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, s),
        };
        let a: u32 = a.parse().map_err(|_| bad())?;
        let b: u32 = b.parse().map_err(|_| bad())?;
        if a < 1 || a > b {
            return Err(bad());
        }
        Ok((a, b))
    };
    let (ps, qs) = text.split_once(',').ok_or_else(bad)?;
    let (p0, p1) = range(ps)?;
    let (q0, q1) = range(qs)?;
    Ok((p0..=p1)
        .flat_map(|p| (q0..=q1).map(move |q| (p, q)))
        .collect())
}

fn warn_if_large(p: u32, q: u32, stderr: &mut dyn Write) {
    if let Ok(params) = FamilyParams::new(p, q) {
        let deg_h2 = (2 * p as i64 + 1) * params.m;
        if deg_h2 > WARN_DEGREE {
            let _ = writeln!(
                stderr,
                "warning: p={p} q={q} expands polynomials of degree up to {}; this may take a long time",
                2 * deg_h2
            );
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn summary(doc: &Value) -> String {
    let inputs = &doc["inputs"];
    let failing = doc["checks"]
        .as_array()
        .map(|c| {
            c.iter()
                .filter(|c| !c["pass"].as_bool().unwrap_or(false))
                .count()
        })
        .unwrap_or(0);
    format!(
        "p={} q={}: {} ({} failing checks)",
        inputs["p"],
        inputs["q"],
        if doc["overall"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        },
        failing
    )
}

fn run_generate(
    args: &GenerateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<i32> {
    let (cells, is_grid) = match (&args.grid, args.p, args.q) {
        (Some(g), _, _) => (parse_grid(g)?, true),
        (None, Some(p), Some(q)) => (vec![(p, q)], false),
        _ => {
            return Err(CliError::Input(
                "generate needs --p and --q, or --grid".into(),
            ))
        }
    };
    for &(p, q) in &cells {
        FamilyParams::new(p, q)?;
        warn_if_large(p, q, stderr);
    }
    let docs = cells
        .par_iter()
        .map(|&(p, q)| guarded(|| generate_document(p, q)))
        .collect::<CliResult<Vec<_>>>()?;
    for doc in &docs {
        let _ = writeln!(stderr, "{}", summary(doc));
    }
    let all_pass = docs.iter().all(|d| d["overall"].as_bool() == Some(true));

    let out = args.out.as_str();
    let out_path = Path::new(out);
    if out == "-" {
        let text = if is_grid {
            render_document(&Value::Array(docs))
        } else {
            render_document(&docs[0])
        };
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))?;
    } else if out_path.is_dir() {
        for (doc, (p, q)) in docs.iter().zip(&cells) {
            write_file(
                &out_path.join(format!("cert_p{p}_q{q}.json")),
                &render_document(doc),
            )?;
        }
    } else if is_grid {
        write_file(out_path, &render_document(&Value::Array(docs)))?;
    } else {
        write_file(out_path, &render_document(&docs[0]))?;
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

/// JSON pointers where `a` and `b` differ, at most `limit` of them.
pub fn differences(a: &Value, b: &Value, limit: usize) -> Vec<String> {
    fn walk(a: &Value, b: &Value, path: String, out: &mut Vec<String>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let keys: std::collections::BTreeSet<_> = x.keys().chain(y.keys()).collect();
                for k in keys {
                    let p = format!("{path}/{k}");
                    match (x.get(k), y.get(k)) {
                        (Some(u), Some(v)) => walk(u, v, p, out, limit),
                        _ => out.push(p),
                    }
                }
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                for (i, (u, v)) in x.iter().zip(y).enumerate() {
                    walk(u, v, format!("{path}/{i}"), out, limit);
                }
            }
            _ if a == b => {}
            _ => out.push(if path.is_empty() { "/".into() } else { path }),
        }
    }
    let mut out = Vec::new();
    walk(a, b, String::new(), &mut out, limit);
    out
}

fn validate_schema(doc: &Value) -> CliResult<(&str, &Value)> {
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::Input("certificate must be a JSON object".into()))?;
    match obj.get("schema_version").and_then(Value::as_str) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => {
            return Err(CliError::Input(format!(
                "unsupported schema_version '{other}'"
            )))
        }
        None => return Err(CliError::Input("missing schema_version".into())),
    }
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Input("missing command".into()))?;
    let inputs = obj
        .get("inputs")
        .filter(|v| v.is_object())
        .ok_or_else(|| CliError::Input("missing inputs object".into()))?;
    let checks = obj
        .get("checks")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input("missing checks array".into()))?;
    for c in checks {
        let ok = c.get("name").is_some_and(Value::is_string)
            && c.get("expected").is_some_and(Value::is_string)
            && c.get("computed").is_some_and(Value::is_string)
            && c.get("pass").is_some_and(Value::is_boolean);
        if !ok {
            return Err(CliError::Input("malformed entry in checks".into()));
        }
    }
    if !obj.get("overall").is_some_and(Value::is_boolean) {
        return Err(CliError::Input("missing overall flag".into()));
    }
    for key in ["polynomials", "automorphism", "witness"] {
        if !obj.contains_key(key) {
            return Err(CliError::Input(format!("missing {key}")));
        }
    }
    Ok((command, inputs))
}

/// Verifies one document; returns whether it matched and passed.
fn verify_one(doc: &Value, label: &str, stdout: &mut dyn Write) -> CliResult<bool> {
    let (command, inputs) = validate_schema(doc)?;
    let fresh = guarded(|| recompute(command, inputs))?;
    let diffs = differences(doc, &fresh, 10);
    if !diffs.is_empty() {
        let _ = writeln!(
            stdout,
            "{label}: MISMATCH with recomputation at {}",
            diffs.join(", ")
        );
        return Ok(false);
    }
    let overall = doc["overall"].as_bool() == Some(true);
    let n = doc["checks"].as_array().map_or(0, Vec::len);
    let _ = writeln!(
        stdout,
        "{label}: {command} reproduced exactly, {n} checks, overall {}",
        if overall { "pass" } else { "FAIL" }
    );
    Ok(overall)
}

fn run_verify(path: &Path, stdout: &mut dyn Write) -> CliResult<i32> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{} is not valid JSON: {e}", path.display())))?;
    let docs = match &value {
        Value::Array(items) if !items.is_empty() => items.iter().collect::<Vec<_>>(),
        Value::Array(_) => return Err(CliError::Input("empty certificate array".into())),
        single => vec![single],
    };
    let mut all = true;
    for (i, doc) in docs.iter().enumerate() {
        let label = if docs.len() == 1 {
            path.display().to_string()
        } else {
            format!("{}[{i}]", path.display())
        };
        all &= verify_one(doc, &label, stdout)?;
    }
    Ok(if all { EXIT_PASS } else { EXIT_FAIL })
}

fn run_inspect(subject: &Subject, as_json: bool, stdout: &mut dyn Write) -> CliResult<i32> {
    let doc = guarded(|| match subject {
        Subject::Nagata => nagata_document(),
        Subject::Kawanoue { l, m } => kawanoue_document(*l, *m),
        Subject::Bracket { f, g, nvars } => bracket_document(f, g, *nvars),
        Subject::Degrees {
            f,
            nvars,
            laurent,
            weights,
        } => degrees_document(f, *nvars, *laurent, weights.as_deref()),
    })?;
    let text = if as_json {
        render_document(&doc)
    } else {
        report(&doc)
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))?;
    Ok(if doc["overall"].as_bool() == Some(true) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

/// Plain-text rendering of a document.
pub fn report(doc: &Value) -> String {
    let mut out = String::new();
    out.push_str(doc["command"].as_str().unwrap_or("?"));
    out.push('\n');
    if let Some(inputs) = doc["inputs"].as_object() {
        for (k, v) in inputs {
            out.push_str(&format!("  {k} = {}\n", plain(v)));
        }
    }
    if let Some(polys) = doc["polynomials"].as_object() {
        for (k, v) in polys {
            out.push_str(&format!("  polynomial {k} = {}\n", plain(v)));
        }
    }
    if let Some(images) = doc["automorphism"]["images"].as_array() {
        for (i, img) in images.iter().enumerate() {
            out.push_str(&format!("  image x{} -> {}\n", i + 1, plain(img)));
        }
    }
    for c in doc["checks"].as_array().into_iter().flatten() {
        let mark = if c["pass"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "  [{mark}] {}: expected {}, computed {}\n",
            plain(&c["name"]),
            plain(&c["expected"]),
            plain(&c["computed"])
        ));
    }
    let overall = if doc["overall"].as_bool() == Some(true) {
        "pass"
    } else {
        "FAIL"
    };
    out.push_str(&format!("  overall: {overall}\n"));
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(args) => run_generate(args, stdout, stderr),
        Command::Verify { path } => run_verify(path, stdout),
        Command::Inspect { subject, json } => run_inspect(subject, *json, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(
            std::iter::once("tameforge").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("1..2,1..1").unwrap(), vec![(1, 1), (2, 1)]);
        assert_eq!(parse_grid("1,2..3").unwrap(), vec![(1, 2), (1, 3)]);
        assert!(parse_grid("0..1,1..1").is_err());
        assert!(parse_grid("2..1,1..1").is_err());
        assert!(parse_grid("1..2").is_err());
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run(&["generate", "--p", "1", "--q", "1"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["schema_version"], SCHEMA_VERSION);
        assert_eq!(doc["overall"], true);
        assert_eq!(doc["inputs"]["c"], "8/3");
        let images = doc["automorphism"]["images"].as_array().unwrap();
        assert_eq!(images.len(), 3);
        assert_eq!(doc["witness"]["s"], 3);
    }

    #[test]
    fn generate_rejects_bad_parameters() {
        assert_eq!(run(&["generate", "--p", "0", "--q", "1"]).0, EXIT_INPUT);
        assert_eq!(run(&["generate", "--p", "1"]).0, EXIT_INPUT);
        assert_eq!(run(&["generate", "--grid", "x"]).0, EXIT_INPUT);
        assert_eq!(run(&["frobnicate"]).0, EXIT_INPUT);
    }

    #[test]
    fn large_parameters_warn() {
        let mut err = Vec::new();
        warn_if_large(5, 5, &mut err);
        assert!(String::from_utf8(err).unwrap().starts_with("warning:"));
        let mut err = Vec::new();
        warn_if_large(3, 1, &mut err);
        assert!(err.is_empty());
    }

    #[test]
    fn inspect_bracket_and_degrees() {
        let (code, out, _) = run(&["inspect", "bracket", "--f", "x1", "--g", "x2", "--json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["inputs"]["bracket_degree"], "2");
        let (code, out, _) = run(&[
            "inspect",
            "degrees",
            "--f",
            "x1^-1*x3 + 2",
            "--laurent",
            "--weights",
            "2,1,3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("weighted_degree = 1"), "{out}");
        assert_eq!(run(&["inspect", "degrees", "--f", "x1^-1"]).0, EXIT_INPUT);
        assert_eq!(
            run(&["inspect", "degrees", "--f", "x1", "--weights", "1,2"]).0,
            EXIT_INPUT
        );
    }

    #[test]
    fn inspect_nagata_and_kawanoue() {
        let (code, out, _) = run(&["inspect", "nagata"]);
        assert_eq!(code, 0);
        assert!(out.contains("[pass] deg N = 9"));
        let (code, out, _) = run(&["inspect", "kawanoue", "--l", "1", "--m", "1"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("deg(f^3 + g^2) = deg f: expected 6, computed 6"),
            "{out}"
        );
    }

    #[test]
    fn differences_lists_paths() {
        let a = json!({"x": [1, 2], "y": "a"});
        let b = json!({"x": [1, 3], "z": "a"});
        assert_eq!(differences(&a, &b, 10), vec!["/x/1", "/y", "/z"]);
        assert!(differences(&a, &a, 10).is_empty());
    }

    #[test]
    fn recompute_rejects_unknown_command() {
        assert!(matches!(
            recompute("explode", &json!({})),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            recompute("generate", &json!({"p": "1"})),
            Err(CliError::Input(_))
        ));
    }

    #[test]
    fn guarded_catches_panics() {
        let r: CliResult<()> = guarded(|| panic!("term limit exceeded"));
        match r {
            Err(CliError::Input(msg)) => assert!(msg.contains("term limit")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
