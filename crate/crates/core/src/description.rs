//! JSON algebra descriptions: loading with located errors, and writing a
//! structure-constant description back out.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgElement, Algebra};
use crate::constructors::{direct_sum, matrix_algebra, triangular_algebra, twisted_group_algebra, Cocycle};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, FieldSpec, Scalar};
use crate::groups::FiniteGroupTable;

pub const DESCRIPTION_SCHEMA_ID: &str = "urn:fcalg:schema:algebra-description:v1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptionDoc {
    #[serde(rename = "$schema", default)]
    _schema: Option<String>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    comment: Option<String>,
    field: FieldDoc,
    algebra: AlgebraDoc,
    #[serde(default)]
    elements: BTreeMap<String, Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum FieldDoc {
    Rationals,
    PrimeField { p: u64 },
    ExtensionField { p: u64, degree: u32, modulus: Vec<u64> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum AlgebraDoc {
    StructureConstants {
        dim: usize,
        constants: Vec<Vec<Vec<Value>>>,
        one: Vec<Value>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    GroupAlgebra {
        group: GroupDoc,
    },
    TwistedGroupAlgebra {
        group: GroupDoc,
        cocycle: Vec<Vec<Value>>,
    },
    Matrix {
        n: usize,
    },
    Triangular {
        n: usize,
    },
    DirectSum {
        summands: Vec<AlgebraDoc>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GroupDoc {
    Bundled {
        bundled: String,
    },
    Cayley {
        cayley: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// A loaded description: the algebra, its named elements, and for group
/// algebras the basis indices of the group elements.
#[derive(Debug, Clone)]
pub struct Description {
    pub name: Option<String>,
    pub algebra: Algebra,
    pub elements: BTreeMap<String, AlgElement>,
    pub group_basis: Option<Vec<usize>>,
    /// `sha256:<hex>` of the input bytes.
    pub digest: String,
}

impl Description {
    /// Resolve a named element, a basis label, `1` or `0`.
    pub fn resolve(&self, name: &str) -> Result<AlgElement> {
        if let Some(e) = self.elements.get(name) {
            return Ok(e.clone());
        }
        if let Some(i) = self.algebra.label_index(name) {
            return Ok(self.algebra.basis(i));
        }
        match name {
            "1" => Ok(self.algebra.one()),
            "0" => Ok(self.algebra.zero()),
            _ => Err(Error::UnknownElement(name.to_string())),
        }
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn load_description(path: &Path) -> Result<Description> {
    let bytes =
        std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_description(&bytes)
}

pub fn parse_description(bytes: &[u8]) -> Result<Description> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let doc: DescriptionDoc = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    let _ = &doc.comment;
    let field = build_field(&doc.field)?;
    let (algebra, group_basis) = build_algebra(&field, &doc.algebra, "algebra")?;
    let mut elements = BTreeMap::new();
    for (name, coords) in &doc.elements {
        let path = format!("elements.{name}");
        if coords.len() != algebra.dim() {
            return Err(Error::Schema {
                path,
                message: format!("expected {} coordinates, got {}", algebra.dim(), coords.len()),
            });
        }
        let scalars = parse_scalars(&field, coords, &path)?;
        elements.insert(name.clone(), algebra.element(scalars)?);
    }
    Ok(Description {
        name: doc.name,
        algebra,
        elements,
        group_basis,
        digest: digest_bytes(bytes),
    })
}

fn build_field(doc: &FieldDoc) -> Result<Field> {
    let spec = match doc {
        FieldDoc::Rationals => FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: 0,
            degree: 1,
            modulus: Vec::new(),
        },
        FieldDoc::PrimeField { p } => FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: *p,
            degree: 1,
            modulus: Vec::new(),
        },
        FieldDoc::ExtensionField { p, degree, modulus } => FieldSpec {
            kind: FieldKind::ExtensionField,
            characteristic: *p,
            degree: *degree,
            modulus: modulus.clone(),
        },
    };
    Field::from_spec(&spec)
}

fn parse_scalars(field: &Field, values: &[Value], path: &str) -> Result<Vec<Scalar>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            field.parse(v).map_err(|message| Error::Schema {
                path: format!("{path}[{i}]"),
                message,
            })
        })
        .collect()
}

fn build_group(doc: &GroupDoc, path: &str) -> Result<FiniteGroupTable> {
    match doc {
        GroupDoc::Bundled { bundled } => FiniteGroupTable::bundled(bundled).ok_or_else(|| Error::Schema {
            path: format!("{path}.bundled"),
            message: format!(
                "unknown bundled group '{bundled}', expected one of {}",
                FiniteGroupTable::bundled_names().join(", ")
            ),
        }),
        GroupDoc::Cayley { cayley, labels } => {
            FiniteGroupTable::new(cayley.clone(), labels.clone()).map_err(|e| match e {
                Error::InvalidGroupTable { location, reason } => Error::InvalidGroupTable {
                    location: format!("{path}.{location}"),
                    reason,
                },
                other => other,
            })
        }
    }
}

fn build_algebra(field: &Field, doc: &AlgebraDoc, path: &str) -> Result<(Algebra, Option<Vec<usize>>)> {
    match doc {
        AlgebraDoc::StructureConstants {
            dim,
            constants,
            one,
            labels,
        } => {
            if constants.len() != *dim {
                return Err(Error::Schema {
                    path: format!("{path}.constants"),
                    message: format!("expected {dim} rows, got {}", constants.len()),
                });
            }
            let mut dense = Vec::with_capacity(*dim);
            for (i, row) in constants.iter().enumerate() {
                let mut r = Vec::with_capacity(row.len());
                for (j, v) in row.iter().enumerate() {
                    r.push(parse_scalars(field, v, &format!("{path}.constants[{i}][{j}]"))?);
                }
                dense.push(r);
            }
            let one = parse_scalars(field, one, &format!("{path}.one"))?;
            Ok((Algebra::new(field, &dense, one, labels.clone())?, None))
        }
        AlgebraDoc::GroupAlgebra { group } => {
            let g = build_group(group, &format!("{path}.group"))?;
            let t = twisted_group_algebra(field, &g, &Cocycle::trivial(field, &g))?;
            Ok((t.algebra, Some(t.group_basis)))
        }
        AlgebraDoc::TwistedGroupAlgebra { group, cocycle } => {
            let g = build_group(group, &format!("{path}.group"))?;
            let mut rows = Vec::with_capacity(cocycle.len());
            for (i, row) in cocycle.iter().enumerate() {
                rows.push(parse_scalars(field, row, &format!("{path}.cocycle[{i}]"))?);
            }
            let lam = Cocycle::new(field, &g, rows).map_err(|e| match e {
                Error::InvalidCocycle { triple, location } => Error::InvalidCocycle {
                    triple,
                    location: format!("{path}.cocycle: {location}"),
                },
                other => other,
            })?;
            let t = twisted_group_algebra(field, &g, &lam)?;
            Ok((t.algebra, Some(t.group_basis)))
        }
        AlgebraDoc::Matrix { n } => Ok((matrix_algebra(field, *n)?, None)),
        AlgebraDoc::Triangular { n } => Ok((triangular_algebra(field, *n)?, None)),
        AlgebraDoc::DirectSum { summands } => {
            if summands.len() < 2 {
                return Err(Error::Schema {
                    path: format!("{path}.summands"),
                    message: "a direct sum needs at least two summands".into(),
                });
            }
            let mut acc = build_algebra(field, &summands[0], &format!("{path}.summands[0]"))?.0;
            for (i, s) in summands.iter().enumerate().skip(1) {
                let next = build_algebra(field, s, &format!("{path}.summands[{i}]"))?.0;
                acc = direct_sum(&acc, &next)?;
            }
            Ok((acc, None))
        }
    }
}

fn field_json(field: &Field) -> Value {
    let spec = field.spec();
    match spec.kind {
        FieldKind::Rationals => json!({"kind": "rationals"}),
        FieldKind::PrimeField => json!({"kind": "prime-field", "p": spec.characteristic}),
        FieldKind::ExtensionField => json!({
            "kind": "extension-field",
            "p": spec.characteristic,
            "degree": spec.degree,
            "modulus": spec.modulus,
        }),
    }
}

/// A structure-constant description of `alg` that loads back to an equal
/// algebra.
pub fn describe(alg: &Algebra, elements: &BTreeMap<String, AlgElement>) -> Value {
    let f = alg.field();
    let n = alg.dim();
    let constants: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        Value::Array(
                            (0..n)
                                .map(|k| f.to_json(&alg.structure_constant(i, j, k)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let elements: Map<String, Value> = elements.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
    json!({
        "$schema": DESCRIPTION_SCHEMA_ID,
        "field": field_json(f),
        "algebra": {
            "kind": "structure_constants",
            "dim": n,
            "constants": constants,
            "one": alg.coords_to_json(alg.one_coords()),
            "labels": alg.labels(),
        },
        "elements": elements,
    })
}

pub fn field_summary(field: &Field) -> Value {
    field_json(field)
}
