//! The `qcat` verbs as library functions returning captured output and an
//! exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Value};

use super::context::{load_context_with, FuzzyContext};
use super::dot::to_dot;
use super::fixtures::{fixture, FIXTURE_NAMES};
use super::schema::{
    lattice_file, read_value, resolve, resolve_matrix, BifunctorFile, CategorySpec, ContextFile, FunctorFile,
    LatticeFile, QuantaleSpec, TableFile, TripleFile, TripleSpec, ValueRef,
};
use super::{exit, FcaError};
use crate::adjunction::{AdjunctionError, BifunctorTable, Kind, TwoVarAdjunction};
use crate::completeness::is_complete;
use crate::quantale::{QuantaleError, QuantaleRef};
use crate::representation::{canonical_pair, verify_representation_kan};
use crate::vcat::{Budget, CategoryError, VBifunctor, VCategory, VFunctor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Dot,
    #[default]
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected dot or json)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub quantale: Option<String>,
    pub mode: Option<Kind>,
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Options {
    fn budget(&self) -> Budget {
        self.budget.map_or_else(Budget::default, Budget::with_max_objects)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: exit::PASS,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &FcaError) -> Self {
        Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn run(f: impl FnOnce() -> Result<Output, FcaError>) -> Output {
    f().unwrap_or_else(|e| Output::error(&e))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), FcaError> {
    fs::write(path, text).map_err(|e| FcaError::io(path, e))
}

/// Writes to `--out` when given, otherwise returns the text as stdout.
fn emit(text: String, opts: &Options) -> Result<Output, FcaError> {
    match &opts.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Output::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(Output::ok(text)),
    }
}

/// A context from a file path, or a bundled fixture of that name.
fn load_source(source: &str, opts: &Options) -> Result<FuzzyContext, FcaError> {
    let path = Path::new(source);
    if !path.exists() && FIXTURE_NAMES.contains(&source) {
        let mut file = fixture(source)?.context;
        if let Some(q) = &opts.quantale {
            file.quantale = QuantaleSpec::Name(q.clone());
        }
        return FuzzyContext::from_file(file, opts.mode);
    }
    load_context_with(path, opts.quantale.as_deref(), opts.mode)
}

pub fn concepts(source: &str, opts: &Options) -> Output {
    run(|| {
        let ctx = load_source(source, opts)?;
        let lattice = ctx.lattice(opts.budget())?;
        let text = match opts.format {
            Format::Dot => to_dot(&lattice),
            Format::Json => pretty(&lattice_file(&lattice, ctx.objects(), ctx.attributes())),
        };
        emit(text, opts)
    })
}

pub fn fixtures(name: Option<&str>, opts: &Options) -> Output {
    run(|| match name {
        None => {
            let mut text = String::new();
            for n in FIXTURE_NAMES {
                text.push_str(&format!("{n}\t{}\n", fixture(n)?.description));
            }
            Ok(Output::ok(text))
        }
        Some(n) => emit(pretty(&fixture(n)?.context), opts),
    })
}

/// Writes a context, its lattice (JSON and DOT), the lattice category and
/// the canonical representation maps into the `--out` directory.
pub fn export(source: &str, opts: &Options) -> Output {
    run(|| {
        let dir = opts
            .out
            .clone()
            .ok_or_else(|| FcaError::Schema("export needs --out DIR".into()))?;
        fs::create_dir_all(&dir).map_err(|e| FcaError::io(&dir, e))?;
        let ctx = load_source(source, opts)?;
        let pair = canonical_pair(&ctx.triple, ctx.mode, &ctx.table, opts.budget())?;
        let c = pair.lattice.category();
        let table_file = |b: &VBifunctor| TableFile {
            table: b
                .table()
                .into_iter()
                .map(|r| r.into_iter().map(|o| c.label(o).into()).collect())
                .collect(),
        };
        let files = [
            ("context.json", pretty(&ctx.to_file())),
            (
                "lattice.json",
                pretty(&lattice_file(&pair.lattice, ctx.objects(), ctx.attributes())),
            ),
            ("lattice.dot", to_dot(&pair.lattice)),
            ("C.json", pretty(&CategorySpec::from_category(c, true))),
            ("alpha.json", pretty(&table_file(&pair.alpha))),
            ("beta.json", pretty(&table_file(&pair.beta))),
        ];
        let mut report = String::new();
        for (name, text) in files {
            let path = dir.join(name);
            write_file(&path, &text)?;
            report.push_str(&format!("wrote {}\n", path.display()));
        }
        Ok(Output::ok(report))
    })
}

/// Structured description of a failure for reports.
pub fn error_json(e: &FcaError) -> Value {
    let witness = match e {
        FcaError::Quantale(
            QuantaleError::NotPartialOrder { law, witness } | QuantaleError::NotMonoid { law, witness },
        ) => json!({ "law": law, "elements": witness }),
        FcaError::Quantale(QuantaleError::LatticeIncomplete { missing, witness }) => {
            json!({ "law": format!("{missing} exists"), "elements": witness })
        }
        FcaError::Quantale(QuantaleError::NotDistributive { witness }) => {
            json!({ "law": "distributivity", "elements": witness })
        }
        FcaError::Category(c) | FcaError::Adjunction(AdjunctionError::Category(c)) => match c {
            CategoryError::ReflexivityFail(x) => json!({ "law": "reflexivity", "objects": [x] }),
            CategoryError::TransitivityFail(x, y, z) => json!({ "law": "transitivity", "objects": [x, y, z] }),
            _ => Value::Null,
        },
        FcaError::Adjunction(AdjunctionError::NotBifunctor { table, witness }) => {
            json!({ "law": "bifunctoriality", "table": table, "at": witness })
        }
        FcaError::Adjunction(AdjunctionError::NotCocontinuous { x, y, z }) => {
            json!({ "law": "two-variable adjunction", "objects": [x, y, z] })
        }
        FcaError::Adjunction(AdjunctionError::NotClosure { law, witness }) => {
            json!({ "law": law, "objects": witness })
        }
        FcaError::Validation {
            row: Some(r),
            column: Some(c),
            ..
        } => json!({ "row": r, "column": c }),
        _ => Value::Null,
    };
    json!({ "error": e.to_string(), "witness": witness })
}

fn quantale_of(v: &Value) -> Result<QuantaleRef, FcaError> {
    let spec: QuantaleSpec = serde_json::from_value(
        v.get("quantale")
            .cloned()
            .ok_or_else(|| FcaError::Schema("missing `quantale`".into()))?,
    )?;
    spec.build()
}

fn kind_of(path: &Path, v: &Value) -> &'static str {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        return "context";
    }
    let has = |k: &str| v.get(k).is_some();
    if has("incidence") {
        "context"
    } else if has("concepts") && has("category") {
        "lattice"
    } else if has("with") {
        "two_variable_adjunction"
    } else if has("table") && has("A") {
        "bifunctor"
    } else if has("map") {
        "functor"
    } else if has("hom") {
        "category"
    } else {
        "quantale"
    }
}

/// Validates one file; returns the detected kind and a summary.
fn check_file(path: &Path, opts: &Options) -> (String, Result<String, FcaError>) {
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let value = if is_csv { Ok(Value::Null) } else { read_value(path) };
    let value = match value {
        Ok(v) => v,
        Err(e) => return ("unknown".into(), Err(e)),
    };
    let kind = kind_of(path, &value);
    let result = (|| -> Result<String, FcaError> {
        match kind {
            "context" => {
                let ctx = load_context_with(path, opts.quantale.as_deref(), opts.mode)?;
                let lattice = ctx.lattice(opts.budget())?;
                Ok(format!(
                    "{} objects, {} attributes, mode {}, {} concepts",
                    ctx.objects().len(),
                    ctx.attributes().len(),
                    ctx.mode,
                    lattice.len()
                ))
            }
            "lattice" => {
                let file: LatticeFile = serde_json::from_value(value)?;
                let c = file.build_category()?;
                is_complete(&c).map_err(|m| FcaError::validation(format!("lattice is not complete: {m}")))?;
                Ok(format!("{} concepts, complete", c.len()))
            }
            "two_variable_adjunction" => {
                let file: TripleFile = serde_json::from_value(value)?;
                let q = file.quantale.build()?;
                let complete = |c: &CategorySpec, role: &str| {
                    is_complete(&c.build_over(&q)?)
                        .map_err(|m| FcaError::validation(format!("{role} is not complete: {m}")))
                };
                let (x, y, z) = (complete(&file.x, "X")?, complete(&file.y, "Y")?, complete(&file.z, "Z")?);
                let with = resolve_matrix(z.category().labels(), &file.with, (x.len(), y.len()), "with")?;
                TwoVarAdjunction::derive(x, y, z, with)?;
                Ok("residuals derived, hom identity holds".into())
            }
            "bifunctor" => {
                let q = quantale_of(&value)?;
                let file: BifunctorFile = serde_json::from_value(value)?;
                let (a, b, target) = (file.a.build_over(&q)?, file.b.build_over(&q)?, file.target.build_over(&q)?);
                let table = resolve_matrix(target.labels(), &file.table, (a.len(), b.len()), "table")?;
                BifunctorTable::new(a, b, target, table)?;
                Ok("bifunctorial".into())
            }
            "functor" => {
                let file: FunctorFile = serde_json::from_value(value)?;
                let q = file.quantale.build()?;
                let (source, target) = (file.source.build_over(&q)?, file.target.build_over(&q)?);
                if file.map.len() != source.len() {
                    return Err(FcaError::validation("map length differs from the source size"));
                }
                let map = file
                    .map
                    .iter()
                    .enumerate()
                    .map(|(i, v)| resolve(target.labels(), v, "map", 0, i))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = VFunctor::new(source, target, map)?;
                match f.functoriality_witness() {
                    Some((x, y)) => Err(FcaError::Validation {
                        message: format!("not a V-functor: X(x{x},x{y}) exceeds Y(fx{x},fx{y})"),
                        row: Some(x),
                        column: Some(y),
                    }),
                    None => Ok("V-functor".into()),
                }
            }
            "category" => {
                let c = match opts.quantale.as_deref() {
                    Some(q) => serde_json::from_value::<CategorySpec>(value)?
                        .build_over(&super::schema::parse_quantale_name(q)?)?,
                    None => serde_json::from_value::<CategorySpec>(value)?.build()?,
                };
                Ok(format!(
                    "{} objects, {}separated, {}complete",
                    c.len(),
                    if c.is_separated() { "" } else { "not " },
                    if is_complete(&c).is_ok() { "" } else { "not " }
                ))
            }
            _ => {
                let q = serde_json::from_value::<QuantaleSpec>(value)?.build()?;
                Ok(format!("quantale with {} elements", q.len()))
            }
        }
    })();
    (kind.to_string(), result)
}

fn worst(codes: impl IntoIterator<Item = i32>) -> i32 {
    // parse errors dominate budget errors, which dominate validation failures
    codes.into_iter().max_by_key(|&c| match c {
        exit::IO => 3,
        exit::BUDGET => 2,
        exit::VALIDATION => 1,
        _ => 0,
    })
    .unwrap_or(exit::PASS)
}

pub fn check(path: &Path, opts: &Options) -> Output {
    let (kind, result) = check_file(path, opts);
    match result {
        Ok(summary) => Output::ok(format!("{}: {kind} ok: {summary}\n", path.display())),
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{}: {kind} invalid: {e}\n", path.display()),
        },
    }
}

/// Machine-readable pass/fail report over several files.
pub fn verify(paths: &[PathBuf], opts: &Options) -> Output {
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for path in paths {
        let (kind, result) = check_file(path, opts);
        let entry = match result {
            Ok(summary) => {
                codes.push(exit::PASS);
                json!({ "file": path.display().to_string(), "kind": kind, "ok": true, "summary": summary })
            }
            Err(e) => {
                codes.push(e.exit_code());
                let mut v = error_json(&e);
                v["file"] = json!(path.display().to_string());
                v["kind"] = json!(kind);
                v["ok"] = json!(false);
                v
            }
        };
        results.push(entry);
    }
    let code = worst(codes);
    let report = json!({ "ok": code == exit::PASS, "results": results });
    match emit(pretty(&report), opts) {
        Ok(out) => Output { code, ..out },
        Err(e) => Output::error(&e),
    }
}


type HomCells = Vec<Vec<ValueRef>>;

/// Loads `φ` as a context, or as a bifunctor file over the quantale triple.
fn load_table_source(path: &Path, opts: &Options) -> Result<FuzzyContext, FcaError> {
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        return load_context_with(path, opts.quantale.as_deref(), opts.mode);
    }
    let value = read_value(path)?;
    if value.get("incidence").is_some() {
        return load_context_with(path, opts.quantale.as_deref(), opts.mode);
    }
    let q = quantale_of(&value)?;
    let file: BifunctorFile = serde_json::from_value(value)?;
    let hom_of = |spec: &CategorySpec| -> Result<(Vec<String>, Option<HomCells>), FcaError> {
        let c = spec.build_over(&q)?;
        match CategorySpec::from_category(&c, false) {
            CategorySpec::Table { objects, hom, .. } => Ok((objects, Some(hom))),
            _ => unreachable!("from_category yields a table"),
        }
    };
    let (objects, a_hom) = hom_of(&file.a)?;
    let (attributes, b_hom) = hom_of(&file.b)?;
    let mode = opts.mode.unwrap_or(Kind::Isbell);
    let triple = match &file.target {
        CategorySpec::Named(n) if n == "V" => None,
        spec if mode == Kind::KanDag => {
            return Err(FcaError::validation(format!(
                "kan_dag tables take values in V, not in {spec:?}; use a context file with an explicit triple"
            )))
        }
        spec => Some(TripleSpec::TensorCotensor {
            tensor_cotensor: spec.clone(),
        }),
    };
    let ctx = ContextFile {
        name: None,
        quantale: QuantaleSpec::from_quantale(&q),
        objects,
        attributes,
        incidence: file.table,
        mode: Some(mode),
        a_hom,
        b_hom,
        triple,
    };
    FuzzyContext::from_file(ctx, None)
}

fn load_candidate(path: &Path, q: &QuantaleRef) -> Result<VCategory, FcaError> {
    let value = read_value(path)?;
    if value.get("concepts").is_some() {
        let file: LatticeFile = serde_json::from_value(value)?;
        return file.category.build_over(q);
    }
    serde_json::from_value::<CategorySpec>(value)?.build_over(q)
}

/// `verify --representation φ C α β`: certificate JSON; exit code 0 iff
/// the certificate is valid.
pub fn verify_representation(phi: &Path, c: &Path, alpha: &Path, beta: &Path, opts: &Options) -> Output {
    run(|| {
        let ctx = load_table_source(phi, opts)?;
        let c = load_candidate(c, &ctx.quantale)?;
        let canonical = canonical_pair(&ctx.triple, ctx.mode, &ctx.table, opts.budget())?;
        let load_map = |path: &Path, like: &VBifunctor| -> Result<VBifunctor, FcaError> {
            let file: TableFile = super::schema::read_json(path)?;
            let table = resolve_matrix(c.labels(), &file.table, (like.left().len(), like.right().len()), "table")?;
            Ok(VBifunctor::new(like.left().clone(), like.right().clone(), c.clone(), table)?)
        };
        let alpha = load_map(alpha, &canonical.alpha)?;
        let beta = load_map(beta, &canonical.beta)?;
        let cert = verify_representation_kan(&ctx.triple, ctx.mode, &ctx.table, &c, &alpha, &beta, opts.budget())?;
        let out = emit(pretty(&cert.to_json()), opts)?;
        Ok(Output {
            code: if cert.is_valid() { exit::PASS } else { exit::VALIDATION },
            ..out
        })
    })
}
