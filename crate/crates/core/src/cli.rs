//! Command-line front end. Every subcommand prints one JSON document on
//! standard output. Exit status: 0 success, 1 mathematical negative, 2 bad
//! input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{count_classes, identify};
use crate::enumerate::census;
use crate::field::{Field, FieldElement};
use crate::groebner::{buchberger_with, GbOptions, MultiPoly, PolyRing};
use crate::isomind::{decide_isomorphic, Verdict};
use crate::liealg::LieAlgebra;
use crate::linalg::{rcf, Matrix};

#[derive(Parser, Debug)]
#[command(name = "solvlie", version, about = "Small solvable Lie algebras: structure, identification, isomorphism")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check alternation and the Jacobi identity.
    Validate { file: PathBuf },
    /// Derived and lower central series dimensions.
    Profile { file: PathBuf },
    /// Rational canonical form of a square matrix.
    Rcf {
        #[arg(long, default_value = "Q")]
        field: String,
        /// JSON rows, e.g. `[[0,1],[1,1]]`, or a path to a file holding them.
        matrix: String,
    },
    /// Basis of the derivation algebra.
    Derivations { file: PathBuf },
    /// Extension by a derivation: a new last basis vector acting as it.
    Extend {
        file: PathBuf,
        /// JSON rows or a path, as for `rcf`.
        #[arg(long)]
        derivation: String,
    },
    /// Canonical class label.
    Identify { file: PathBuf },
    /// Decide whether two algebras are isomorphic.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Exit with status 1 unless the algebras are isomorphic.
        #[arg(long)]
        expect_iso: bool,
    },
    /// Reduced lexicographic Groebner basis.
    Gb {
        #[arg(long, default_value = "Q")]
        field: String,
        /// Variables, highest first.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Express each basis element in the generators.
        #[arg(long)]
        track: bool,
        /// Also print the normal form of this polynomial.
        #[arg(long)]
        reduce: Option<String>,
        polys: Vec<String>,
    },
    /// Number of classes over the field with q elements.
    Count {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        q: u64,
    },
    /// Enumerate every table and count tables per class.
    Census {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Samples per class checked by exhaustive isomorphism search.
        #[arg(long, default_value_t = 0)]
        check: usize,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Res = Result<(i32, Value, String), Failure>;

fn ok(v: Value) -> Res {
    Ok((0, v, String::new()))
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, stdout: if code == 0 { e.to_string() } else { String::new() }, stderr: if code == 0 { String::new() } else { e.to_string() } };
        }
    };
    match execute(cli.command) {
        Ok((code, v, stderr)) => Outcome { code, stdout: render(&v), stderr },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: render(&json!({ "error": msg })), stderr: format!("error: {msg}\n") },
    }
}

fn render(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LieAlgebra, Failure> {
    LieAlgebra::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn scalar_text(v: &Value, field: &Field) -> Result<FieldElement, Failure> {
    match v {
        Value::String(s) => Ok(field.parse_element(s)?),
        Value::Number(n) => n.as_i64().map(|x| field.from_i64(x)).ok_or_else(|| Failure::Input(format!("non-integer number {n}"))),
        other => Err(Failure::Input(format!("unsupported scalar {other}"))),
    }
}

fn parse_matrix(arg: &str, field: &Field) -> Result<Matrix, Failure> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read(Path::new(arg))? };
    let rows: Vec<Vec<Value>> =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed matrix at line {}, column {}: {e}", e.line(), e.column())))?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Failure::Input("ragged matrix".into()));
    }
    let rows = rows.iter().map(|r| r.iter().map(|v| scalar_text(v, field)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(Matrix::from_rows(field, rows))
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn execute(cmd: Command) -> Res {
    match cmd {
        Command::Validate { file } => {
            let l = load(&file)?;
            match l.validate() {
                Ok(()) => ok(json!({ "valid": true })),
                Err(v) => Ok((1, json!({ "valid": false, "violation": v.to_string() }), String::new())),
            }
        }
        Command::Profile { file } => {
            let l = load(&file)?;
            ok(serde_json::to_value(l.solvability_profile())?)
        }
        Command::Rcf { field, matrix } => {
            let f = Field::parse(&field)?;
            let a = parse_matrix(&matrix, &f)?;
            let r = rcf(&a)?;
            ok(json!({
                "invariant_factors": r.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "form": matrix_json(&r.form),
                "transform": matrix_json(&r.transform),
            }))
        }
        Command::Derivations { file } => {
            let l = load(&file)?;
            let der = l.derivations();
            let inner = l.inner_derivations().len();
            ok(json!({
                "dimension": der.len(),
                "inner_dimension": inner,
                "outer_dimension": der.len() - inner,
                "basis": der.iter().map(matrix_json).collect::<Vec<_>>(),
            }))
        }
        Command::Extend { file, derivation } => {
            let l = load(&file)?;
            let d = parse_matrix(&derivation, l.field())?;
            let e = l.extend_by_derivation(&d)?;
            ok(serde_json::to_value(e.to_file())?)
        }
        Command::Identify { file } => {
            let l = load(&file)?;
            ok(json!({ "label": identify(&l)?.to_string() }))
        }
        Command::Iso { first, second, expect_iso } => {
            let (a, b) = (load(&first)?, load(&second)?);
            if a.field() != b.field() {
                return Err(Failure::Input(format!("field mismatch: {} vs {}", a.field(), b.field())));
            }
            if a.dim() != b.dim() {
                return Err(Failure::Input(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
            }
            let r = decide_isomorphic(&a, &b);
            let v = json!({
                "verdict": r.verdict,
                "witness": r.witness.as_ref().map(matrix_json),
                "groebner_basis": r.evidence.as_ref().map(|g| g.basis.iter().map(ToString::to_string).collect::<Vec<_>>()),
            });
            let code = i32::from(expect_iso && r.verdict != Verdict::Isomorphic);
            Ok((code, v, String::new()))
        }
        Command::Gb { field, vars, track, reduce: target, polys } => {
            let f = Field::parse(&field)?;
            let ring = PolyRing::new(&f, &vars);
            let gens = polys.iter().map(|p| MultiPoly::parse(&ring, p)).collect::<Result<Vec<_>, _>>()?;
            let g = buchberger_with(&gens, GbOptions { track, max_pairs: None })?;
            let text = |ps: &[MultiPoly]| ps.iter().map(ToString::to_string).collect::<Vec<_>>();
            let mut v = json!({
                "variables": vars,
                "basis": text(&g.basis),
                "unit": g.is_unit(),
            });
            if let Some(c) = &g.coordinates {
                v["coordinates"] = json!(c.iter().map(|row| text(row)).collect::<Vec<_>>());
            }
            if let Some(t) = target {
                let p = MultiPoly::parse(&ring, &t)?;
                v["normal_form"] = json!(g.reduce(&p)?.to_string());
            }
            ok(v)
        }
        Command::Count { dim, q } => ok(json!({ "dim": dim, "q": q, "count": count_classes(dim, q)? })),
        Command::Census { dim, q, workers, check } => {
            let c = census(dim, q, workers)?;
            let expected = c.expected()?;
            let failures = if check > 0 { c.spot_check(check)? } else { Vec::new() };
            let pass = c.classes() as u64 == expected && failures.is_empty();
            let status = if pass { "PASS" } else { "FAIL" };
            let counts: serde_json::Map<String, Value> = c.buckets.iter().map(|(k, b)| (k.clone(), json!(b.count))).collect();
            let v = json!({
                "dim": dim,
                "q": q,
                "tables": c.tables,
                "classes": c.classes(),
                "expected": expected,
                "counts": counts,
                "check_failures": failures,
                "status": status,
            });
            let line = format!("{status} census({dim},{q}): {} classes, expected {expected}\n", c.classes());
            Ok((i32::from(!pass), v, line))
        }
    }
}
