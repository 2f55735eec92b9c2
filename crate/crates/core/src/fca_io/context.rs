//! Formal contexts `(A, B, φ)` with values in a complete V-category.

use std::fs;
use std::path::Path;

use super::schema::{resolve_matrix, ContextFile, QuantaleSpec, TripleSpec, ValueRef};
use super::FcaError;
use crate::adjunction::{concept_lattice, BifunctorTable, ConceptLattice, Kind, TwoVarAdjunction};
use crate::completeness::{is_complete, CompleteCategory};
use crate::quantale::QuantaleRef;
use crate::vcat::{Budget, VCategory};

#[derive(Clone, Debug)]
pub struct FuzzyContext {
    pub name: Option<String>,
    pub quantale: QuantaleRef,
    pub mode: Kind,
    pub triple: TwoVarAdjunction,
    /// Incidence as a bifunctor `A^op ⊗ B → W`, where `W` is `Z`, `Y` or
    /// `X` of the triple according to the mode.
    pub table: BifunctorTable,
    source: ContextFile,
}

fn complete(c: VCategory, role: &str) -> Result<CompleteCategory, FcaError> {
    is_complete(&c).map_err(|missing| FcaError::validation(format!("{role} is not complete: {missing}")))
}

fn build_triple(q: &QuantaleRef, spec: Option<&TripleSpec>) -> Result<TwoVarAdjunction, FcaError> {
    match spec {
        None => Ok(TwoVarAdjunction::of_quantale(q)),
        Some(TripleSpec::Named(name)) => match name.as_str() {
            "quantale" => Ok(TwoVarAdjunction::of_quantale(q)),
            other => Err(FcaError::Schema(format!("unknown triple `{other}`"))),
        },
        Some(TripleSpec::TensorCotensor { tensor_cotensor }) => {
            let x = complete(tensor_cotensor.build_over(q)?, "X")?;
            Ok(TwoVarAdjunction::tensor_cotensor(&x))
        }
        Some(TripleSpec::Explicit { x, y, z, with }) => {
            let x = complete(x.build_over(q)?, "X")?;
            let y = complete(y.build_over(q)?, "Y")?;
            let z = complete(z.build_over(q)?, "Z")?;
            let with = resolve_matrix(z.category().labels(), with, (x.len(), y.len()), "with")?;
            Ok(TwoVarAdjunction::derive(x, y, z, with)?)
        }
    }
}

/// The category incidence values live in for `mode`.
pub fn target_of(t: &TwoVarAdjunction, mode: Kind) -> &CompleteCategory {
    match mode {
        Kind::Isbell => t.z(),
        Kind::KanStar => t.y(),
        Kind::KanDag => t.x(),
    }
}

impl FuzzyContext {
    /// Validates a parsed context; `mode` overrides the file's mode.
    pub fn from_file(file: ContextFile, mode: Option<Kind>) -> Result<Self, FcaError> {
        let q = file.quantale.build()?;
        let mode = mode.or(file.mode).unwrap_or(Kind::Isbell);
        let triple = build_triple(&q, file.triple.as_ref())?;
        let (na, nb) = (file.objects.len(), file.attributes.len());
        let category = |labels: &[String], hom: &Option<Vec<Vec<ValueRef>>>, what: &str| match hom {
            None => Ok(VCategory::discrete(&q, labels.to_vec())),
            Some(rows) => {
                let hom = resolve_matrix(q.labels(), rows, (labels.len(), labels.len()), what)?;
                Ok::<_, FcaError>(VCategory::new(q.clone(), labels.to_vec(), hom)?)
            }
        };
        let a = category(&file.objects, &file.a_hom, "A")?;
        let b = category(&file.attributes, &file.b_hom, "B")?;
        let target = target_of(&triple, mode).category().clone();
        let values = resolve_matrix(target.labels(), &file.incidence, (na, nb), "incidence")?;
        let table = BifunctorTable::new(a, b, target, values)?;
        Ok(FuzzyContext {
            name: file.name.clone(),
            quantale: q,
            mode,
            triple,
            table,
            source: file,
        })
    }

    pub fn objects(&self) -> &[String] {
        self.table.a().labels()
    }

    pub fn attributes(&self) -> &[String] {
        self.table.b().labels()
    }

    /// The same context read in another mode.
    pub fn with_mode(&self, mode: Kind) -> Result<Self, FcaError> {
        Self::from_file(self.source.clone(), Some(mode))
    }

    pub fn lattice(&self, budget: Budget) -> Result<ConceptLattice, FcaError> {
        Ok(concept_lattice(&self.triple, self.mode, &self.table, budget)?)
    }

    /// The context as a JSON document, with its current mode.
    pub fn to_file(&self) -> ContextFile {
        ContextFile {
            mode: Some(self.mode),
            ..self.source.clone()
        }
    }
}

/// Parses a Boolean-style CSV context: header row of attributes after one
/// corner cell, then one row per object. Cells are labels of `q`
/// (`0`/`1` for the Boolean quantale).
pub fn parse_csv(text: &str, q: Option<QuantaleSpec>) -> Result<ContextFile, FcaError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| FcaError::Parse(e.to_string()))?.clone();
    let attributes: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut incidence = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| FcaError::Parse(e.to_string()))?;
        let mut cells = record.iter();
        objects.push(cells.next().unwrap_or_default().to_string());
        incidence.push(cells.map(ValueRef::from).collect());
    }
    Ok(ContextFile {
        name: None,
        quantale: q.unwrap_or_else(|| QuantaleSpec::Name("boolean2".into())),
        objects,
        attributes,
        incidence,
        mode: None,
        a_hom: None,
        b_hom: None,
        triple: None,
    })
}

/// Loads a `.csv` or JSON context.
pub fn load_context(path: &Path) -> Result<FuzzyContext, FcaError> {
    load_context_with(path, None, None)
}

/// As [`load_context`] with an optional quantale for CSV cells and an
/// optional mode override.
pub fn load_context_with(path: &Path, quantale: Option<&str>, mode: Option<Kind>) -> Result<FuzzyContext, FcaError> {
    let text = fs::read_to_string(path).map_err(|e| FcaError::io(path, e))?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let mut file = if is_csv {
        parse_csv(&text, None)?
    } else {
        serde_json::from_str::<ContextFile>(&text)?
    };
    if let Some(name) = quantale {
        super::schema::parse_quantale_name(name)?;
        file.quantale = QuantaleSpec::Name(name.to_string());
    }
    FuzzyContext::from_file(file, mode)
}

/// A Boolean context from a 0/1 matrix, with generated labels.
pub fn boolean_context(incidence: &[Vec<bool>]) -> ContextFile {
    let nb = incidence.first().map_or(0, Vec::len);
    ContextFile {
        name: None,
        quantale: QuantaleSpec::Name("boolean2".into()),
        objects: (0..incidence.len()).map(|i| format!("a{}", i + 1)).collect(),
        attributes: (0..nb).map(|j| format!("b{}", j + 1)).collect(),
        incidence: incidence
            .iter()
            .map(|r| r.iter().map(|&v| ValueRef::Index(v as usize)).collect())
            .collect(),
        mode: None,
        a_hom: None,
        b_hom: None,
        triple: None,
    }
}
