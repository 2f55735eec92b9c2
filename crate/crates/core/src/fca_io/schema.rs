//! JSON schemas for quantales, categories, functors, bifunctor tables,
//! two-variable adjunctions, contexts and exported lattices.
//!
//! Table entries may be given either as indices or as labels.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FcaError;
use crate::adjunction::{ConceptLattice, Kind};
use crate::quantale::{Quantale, QuantaleRef};
use crate::vcat::{Obj, VCategory};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRef {
    Index(usize),
    Label(String),
}

impl From<&str> for ValueRef {
    fn from(s: &str) -> Self {
        ValueRef::Label(s.to_string())
    }
}

/// Resolves `v` against `labels`; `what` names the table for messages.
pub fn resolve(labels: &[String], v: &ValueRef, what: &str, row: usize, column: usize) -> Result<usize, FcaError> {
    let found = match v {
        ValueRef::Index(i) if *i < labels.len() => Some(*i),
        ValueRef::Index(_) => None,
        ValueRef::Label(s) => labels.iter().position(|l| l == s.trim()),
    };
    found.ok_or_else(|| FcaError::Validation {
        message: format!(
            "{what}: value {} is not one of {:?}",
            match v {
                ValueRef::Index(i) => i.to_string(),
                ValueRef::Label(s) => format!("`{s}`"),
            },
            labels
        ),
        row: Some(row),
        column: Some(column),
    })
}

pub(crate) fn resolve_matrix(
    labels: &[String],
    rows: &[Vec<ValueRef>],
    shape: (usize, usize),
    what: &str,
) -> Result<Vec<Vec<usize>>, FcaError> {
    if rows.len() != shape.0 {
        return Err(FcaError::validation(format!(
            "{what}: expected {} rows, found {}",
            shape.0,
            rows.len()
        )));
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != shape.1 {
                return Err(FcaError::Validation {
                    message: format!("{what}: expected {} columns, found {}", shape.1, row.len()),
                    row: Some(r),
                    column: None,
                });
            }
            row.iter()
                .enumerate()
                .map(|(c, v)| resolve(labels, v, what, r, c))
                .collect()
        })
        .collect()
}

fn label_matrix(labels: &[String], rows: Vec<Vec<usize>>) -> Vec<Vec<ValueRef>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|i| ValueRef::Label(labels[i].clone())).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleSpec {
    /// `"boolean2"`, `"goedel(4)"`, `"lukasiewicz:5"`.
    Name(String),
    Builtin {
        builtin: String,
        #[serde(default)]
        n: Option<usize>,
    },
    Table {
        #[serde(alias = "labels")]
        carrier: Vec<String>,
        leq: Vec<Vec<bool>>,
        tensor: Vec<Vec<ValueRef>>,
        unit: ValueRef,
    },
}

/// Parses `name`, `name(n)` or `name:n`.
pub fn parse_quantale_name(s: &str) -> Result<QuantaleRef, FcaError> {
    let s = s.trim();
    let (name, n) = if let Some(open) = s.find('(') {
        let n = s[open + 1..].trim_end_matches(')');
        (&s[..open], Some(n))
    } else if let Some((name, n)) = s.split_once(':') {
        (name, Some(n))
    } else {
        (s, None)
    };
    let n = match n {
        Some(n) => n
            .trim()
            .parse::<usize>()
            .map_err(|_| FcaError::Schema(format!("bad quantale size in `{s}`")))?,
        None => 2,
    };
    Ok(Quantale::builtin(name.trim(), n)?)
}

impl QuantaleSpec {
    pub fn build(&self) -> Result<QuantaleRef, FcaError> {
        match self {
            QuantaleSpec::Name(s) => parse_quantale_name(s),
            QuantaleSpec::Builtin { builtin, n } => Ok(Quantale::builtin(builtin, n.unwrap_or(2))?),
            QuantaleSpec::Table {
                carrier,
                leq,
                tensor,
                unit,
            } => {
                let n = carrier.len();
                let tensor = resolve_matrix(carrier, tensor, (n, n), "tensor")?;
                let unit = resolve(carrier, unit, "unit", 0, 0)?;
                Ok(Quantale::new(carrier.clone(), leq.clone(), tensor, unit)?)
            }
        }
    }

    /// Full table form of `q`.
    pub fn from_quantale(q: &Quantale) -> Self {
        QuantaleSpec::Table {
            carrier: q.labels().to_vec(),
            leq: q.leq_table(),
            tensor: label_matrix(q.labels(), q.tensor_table()),
            unit: ValueRef::Label(q.label(q.unit()).to_string()),
        }
    }
}

/// Table equality of two quantales.
pub fn same_quantale(a: &Quantale, b: &Quantale) -> bool {
    a.labels() == b.labels() && a.leq_table() == b.leq_table() && a.tensor_table() == b.tensor_table() && a.unit() == b.unit()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategorySpec {
    /// `"V"` (the quantale itself) or `"V^op"`.
    Named(String),
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        quantale: Option<QuantaleSpec>,
        objects: Vec<String>,
        hom: Vec<Vec<ValueRef>>,
    },
    Discrete {
        discrete: Vec<String>,
    },
}

impl CategorySpec {
    /// Builds the category over `q`; an embedded quantale must agree with
    /// `q` table for table.
    pub fn build_over(&self, q: &QuantaleRef) -> Result<VCategory, FcaError> {
        match self {
            CategorySpec::Named(name) => match name.trim() {
                "V" => Ok(VCategory::of_quantale(q)),
                "V^op" => Ok(VCategory::of_quantale(q).dual()),
                other => Err(FcaError::Schema(format!("unknown category name `{other}`"))),
            },
            CategorySpec::Discrete { discrete } => Ok(VCategory::discrete(q, discrete.clone())),
            CategorySpec::Table { quantale, objects, hom } => {
                if let Some(spec) = quantale {
                    if !same_quantale(&*spec.build()?, q) {
                        return Err(FcaError::validation("category is enriched over a different quantale"));
                    }
                }
                let n = objects.len();
                let hom = resolve_matrix(q.labels(), hom, (n, n), "hom")?;
                Ok(VCategory::new(q.clone(), objects.clone(), hom)?)
            }
        }
    }

    /// Builds a standalone category, which must carry its quantale.
    pub fn build(&self) -> Result<VCategory, FcaError> {
        match self {
            CategorySpec::Table {
                quantale: Some(spec), ..
            } => self.build_over(&spec.build()?),
            _ => Err(FcaError::Schema("a standalone category needs a `quantale`".into())),
        }
    }

    pub fn from_category(c: &VCategory, with_quantale: bool) -> Self {
        CategorySpec::Table {
            quantale: with_quantale.then(|| QuantaleSpec::from_quantale(c.quantale())),
            objects: c.labels().to_vec(),
            hom: label_matrix(c.quantale().labels(), c.hom_table()),
        }
    }
}

/// `{ "quantale", "source", "target", "map" }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorFile {
    pub quantale: QuantaleSpec,
    pub source: CategorySpec,
    pub target: CategorySpec,
    pub map: Vec<ValueRef>,
}

/// `{ "quantale"?, "A", "B", "target", "table" }` for `A^op ⊗ B → target`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BifunctorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantale: Option<QuantaleSpec>,
    #[serde(rename = "A")]
    pub a: CategorySpec,
    #[serde(rename = "B")]
    pub b: CategorySpec,
    pub target: CategorySpec,
    pub table: Vec<Vec<ValueRef>>,
}

/// A bare table of objects, used for the maps of a representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub table: Vec<Vec<ValueRef>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum TripleSpec {
    /// `"quantale"`: `(V, V, V, ⊗)`.
    Named(String),
    /// `(V, X, X, ⋆)` for a complete `X`.
    TensorCotensor { tensor_cotensor: CategorySpec },
    Explicit {
        #[serde(rename = "X")]
        x: CategorySpec,
        #[serde(rename = "Y")]
        y: CategorySpec,
        #[serde(rename = "Z")]
        z: CategorySpec,
        with: Vec<Vec<ValueRef>>,
    },
}

/// `{ "quantale", "X", "Y", "Z", "with" }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleFile {
    pub quantale: QuantaleSpec,
    #[serde(rename = "X")]
    pub x: CategorySpec,
    #[serde(rename = "Y")]
    pub y: CategorySpec,
    #[serde(rename = "Z")]
    pub z: CategorySpec,
    pub with: Vec<Vec<ValueRef>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub quantale: QuantaleSpec,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<Vec<ValueRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Kind>,
    /// Hom table of the objects; discrete when absent.
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a_hom: Option<Vec<Vec<ValueRef>>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b_hom: Option<Vec<Vec<ValueRef>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConceptEntry {
    pub primary: Vec<String>,
    pub mate: Vec<String>,
}

/// Exported lattice: both concept components and the full hom table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub kind: Kind,
    pub quantale: QuantaleSpec,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub concepts: Vec<ConceptEntry>,
    pub category: CategorySpec,
}

fn object_labels(space: &VCategory, map: &[Obj]) -> Vec<String> {
    map.iter().map(|&o| space.label(o).to_string()).collect()
}

pub fn lattice_file(lattice: &ConceptLattice, objects: &[String], attributes: &[String]) -> LatticeFile {
    let adj = lattice.adjunction();
    let concepts = (0..lattice.len())
        .map(|i| ConceptEntry {
            primary: object_labels(adj.left_space().target(), lattice.primary_map(i)),
            mate: object_labels(adj.right_space().target(), lattice.mate_map(i)),
        })
        .collect();
    LatticeFile {
        kind: lattice.kind(),
        quantale: QuantaleSpec::from_quantale(lattice.category().quantale()),
        objects: objects.to_vec(),
        attributes: attributes.to_vec(),
        concepts,
        category: CategorySpec::from_category(lattice.category(), false),
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FcaError> {
    let text = fs::read_to_string(path).map_err(|e| FcaError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_value(path: &Path) -> Result<serde_json::Value, FcaError> {
    read_json(path)
}

impl LatticeFile {
    pub fn build_category(&self) -> Result<VCategory, FcaError> {
        self.category.build_over(&self.quantale.build()?)
    }
}

/// Reloads the category of an exported lattice.
pub fn load_lattice_category(path: &Path) -> Result<VCategory, FcaError> {
    read_json::<LatticeFile>(path)?.build_category()
}

/// Same quantale tables, same labels and same hom tables.
pub fn hom_identical(a: &VCategory, b: &VCategory) -> bool {
    same_quantale(a.quantale(), b.quantale()) && a.labels() == b.labels() && a.hom_table() == b.hom_table()
}
