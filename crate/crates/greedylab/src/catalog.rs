//! Named bases: a built-in collection plus user catalogs loaded from JSON.
//!
//! A catalog file is a JSON array of entries:
//!
//! ```json
//! [
//!   {
//!     "id": "my-basis",
//!     "description": "optional free text",
//!     "dim": 2,
//!     "p": 1.0,
//!     "norm": { "family": "lp", "q": 1 },
//!     "basis": { "constructor": "custom",
//!                "matrix": [["1", "0"], ["1", "1"]] }
//!   }
//! ]
//! ```
//!
//! `norm.family` is one of `lp` (with `q` a positive number or `"inf"`),
//! `weighted-lp` (with `q` and `weights`), `summing`, or `max-tail`.
//! `basis.constructor` is `canonical`, `summing`, `difference`, or `custom`;
//! only `custom` takes a `matrix`, whose **rows** list each basis vector's
//! ambient coordinates as exact rationals (`"3"`, `"-1/2"`). The built-in
//! entries are always available; file entries extend them and must not
//! reuse an id.

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::linalg::{format_ratio, parse_ratio, Ratio64};
use crate::space::{NormDescriptor, QuasiNormedSpace};
use serde::Deserialize;
use std::path::Path;

/// How an entry's basis vectors are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisSpec {
    Canonical,
    Summing,
    Difference,
    /// Explicit vectors: `matrix[n][k]` is ambient coordinate `k+1` of
    /// basis vector `n+1`.
    Custom(Vec<Vec<Ratio64>>),
}

impl BasisSpec {
    pub fn constructor_name(&self) -> &'static str {
        match self {
            BasisSpec::Canonical => "canonical",
            BasisSpec::Summing => "summing",
            BasisSpec::Difference => "difference",
            BasisSpec::Custom(_) => "custom",
        }
    }
}

/// One named basis with the space it lives in.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub dim: usize,
    pub p: f64,
    pub norm: NormDescriptor,
    pub basis_spec: BasisSpec,
}

impl CatalogEntry {
    /// Constructs the basis, inverting the coordinate matrix exactly.
    pub fn build(&self) -> Result<Basis> {
        let space = QuasiNormedSpace::new(self.dim, self.p, self.norm.clone())?;
        match &self.basis_spec {
            BasisSpec::Canonical => Basis::canonical(space),
            BasisSpec::Summing => {
                Basis::from_columns(space, Basis::summing_columns(self.dim))
            }
            BasisSpec::Difference => {
                Basis::from_columns(space, Basis::difference_columns(self.dim))
            }
            BasisSpec::Custom(rows) => Basis::from_columns(space, rows.clone()),
        }
    }

    /// Short label for the ambient norm, e.g. `lp(inf)`.
    pub fn norm_label(&self) -> String {
        match &self.norm {
            NormDescriptor::Lp { q } => {
                if q.is_infinite() {
                    "lp(inf)".to_string()
                } else {
                    format!("lp({q})")
                }
            }
            NormDescriptor::WeightedLp { q, .. } => format!("weighted-lp({q})"),
            NormDescriptor::Summing => "summing".to_string(),
            NormDescriptor::MaxTail => "max-tail".to_string(),
            NormDescriptor::Composite { q, .. } => format!("composite({q})"),
        }
    }
}

/// The 25 built-in entries: five families at dimensions 2 through 6.
pub fn builtin() -> Vec<CatalogEntry> {
    let mut out = Vec::with_capacity(25);
    for dim in 2..=6usize {
        out.push(CatalogEntry {
            id: format!("l1-{dim}"),
            description: format!("canonical unit vectors in l1, dimension {dim}"),
            dim,
            p: 1.0,
            norm: NormDescriptor::Lp { q: 1.0 },
            basis_spec: BasisSpec::Canonical,
        });
    }
    for dim in 2..=6usize {
        out.push(CatalogEntry {
            id: format!("l2-{dim}"),
            description: format!("canonical unit vectors in l2, dimension {dim}"),
            dim,
            p: 1.0,
            norm: NormDescriptor::Lp { q: 2.0 },
            basis_spec: BasisSpec::Canonical,
        });
    }
    for dim in 2..=6usize {
        out.push(CatalogEntry {
            id: format!("lhalf-{dim}"),
            description: format!(
                "canonical unit vectors in the p-Banach space l(1/2), dimension {dim}"
            ),
            dim,
            p: 0.5,
            norm: NormDescriptor::Lp { q: 0.5 },
            basis_spec: BasisSpec::Canonical,
        });
    }
    for dim in 2..=6usize {
        out.push(CatalogEntry {
            id: format!("summing-{dim}"),
            description: format!(
                "summing basis x_n = e_1 + ... + e_n under the sup norm, dimension {dim}"
            ),
            dim,
            p: 1.0,
            norm: NormDescriptor::Lp { q: f64::INFINITY },
            basis_spec: BasisSpec::Summing,
        });
    }
    for dim in 2..=6usize {
        out.push(CatalogEntry {
            id: format!("difference-{dim}"),
            description: format!(
                "difference basis x_1 = e_1, x_n = e_n - e_(n-1) in l1, dimension {dim}"
            ),
            dim,
            p: 1.0,
            norm: NormDescriptor::Lp { q: 1.0 },
            basis_spec: BasisSpec::Difference,
        });
    }
    out
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    #[serde(default)]
    description: Option<String>,
    dim: usize,
    p: f64,
    norm: RawNorm,
    basis: RawBasis,
}

#[derive(Deserialize)]
struct RawNorm {
    family: String,
    #[serde(default)]
    q: Option<serde_json::Value>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawBasis {
    constructor: String,
    #[serde(default)]
    matrix: Option<Vec<Vec<String>>>,
}

fn parse_q(q: &Option<serde_json::Value>, origin: &str, id: &str) -> Result<f64> {
    match q {
        Some(serde_json::Value::Number(n)) => n.as_f64().ok_or_else(|| Error::Parse {
            path: origin.to_string(),
            detail: format!("entry `{id}`: norm.q is not a finite number"),
        }),
        Some(serde_json::Value::String(s)) if s == "inf" => Ok(f64::INFINITY),
        Some(other) => Err(Error::Parse {
            path: origin.to_string(),
            detail: format!("entry `{id}`: norm.q must be a number or \"inf\", got {other}"),
        }),
        None => Err(Error::Parse {
            path: origin.to_string(),
            detail: format!("entry `{id}`: norm.q is required for this family"),
        }),
    }
}

fn convert_entry(raw: RawEntry, origin: &str) -> Result<CatalogEntry> {
    let id = raw.id.clone();
    let norm = match raw.norm.family.as_str() {
        "lp" => NormDescriptor::Lp { q: parse_q(&raw.norm.q, origin, &id)? },
        "weighted-lp" => NormDescriptor::WeightedLp {
            q: parse_q(&raw.norm.q, origin, &id)?,
            weights: raw.norm.weights.clone().ok_or_else(|| Error::Parse {
                path: origin.to_string(),
                detail: format!("entry `{id}`: weighted-lp requires norm.weights"),
            })?,
        },
        "summing" => NormDescriptor::Summing,
        "max-tail" => NormDescriptor::MaxTail,
        other => {
            return Err(Error::Parse {
                path: origin.to_string(),
                detail: format!("entry `{id}`: unknown norm family `{other}`"),
            });
        }
    };
    let basis_spec = match raw.basis.constructor.as_str() {
        "canonical" => BasisSpec::Canonical,
        "summing" => BasisSpec::Summing,
        "difference" => BasisSpec::Difference,
        "custom" => {
            let rows = raw.basis.matrix.as_ref().ok_or_else(|| Error::Parse {
                path: origin.to_string(),
                detail: format!("entry `{id}`: custom constructor requires basis.matrix"),
            })?;
            if rows.len() != raw.dim {
                return Err(Error::Parse {
                    path: origin.to_string(),
                    detail: format!(
                        "entry `{id}`: matrix has {} rows, expected {}",
                        rows.len(),
                        raw.dim
                    ),
                });
            }
            let mut parsed = Vec::with_capacity(rows.len());
            for (r, row) in rows.iter().enumerate() {
                if row.len() != raw.dim {
                    return Err(Error::Parse {
                        path: origin.to_string(),
                        detail: format!(
                            "entry `{id}`: matrix row {} has {} entries, expected {}",
                            r + 1,
                            row.len(),
                            raw.dim
                        ),
                    });
                }
                let mut prow = Vec::with_capacity(row.len());
                for (c, cell) in row.iter().enumerate() {
                    let ratio = parse_ratio(cell).ok_or_else(|| Error::Parse {
                        path: origin.to_string(),
                        detail: format!(
                            "entry `{id}`: matrix row {} column {}: `{cell}` is not a rational",
                            r + 1,
                            c + 1
                        ),
                    })?;
                    prow.push(ratio);
                }
                parsed.push(prow);
            }
            BasisSpec::Custom(parsed)
        }
        other => {
            return Err(Error::Parse {
                path: origin.to_string(),
                detail: format!("entry `{id}`: unknown basis constructor `{other}`"),
            });
        }
    };
    let entry = CatalogEntry {
        id: id.clone(),
        description: raw.description.unwrap_or_default(),
        dim: raw.dim,
        p: raw.p,
        norm,
        basis_spec,
    };
    // Semantic validation: the entry must actually produce a basis.
    entry.build().map_err(|e| Error::Validation { id, reason: e.to_string() })?;
    Ok(entry)
}

/// Parses catalog JSON. An empty (or whitespace-only) source is an empty
/// catalog. `origin` names the source in error messages.
pub fn parse_catalog(source: &str, origin: &str) -> Result<Vec<CatalogEntry>> {
    if source.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<RawEntry> = serde_json::from_str(source).map_err(|e| Error::Parse {
        path: origin.to_string(),
        detail: e.to_string(),
    })?;
    let mut out = Vec::with_capacity(raw.len());
    for entry in raw {
        out.push(convert_entry(entry, origin)?);
    }
    Ok(out)
}

/// Loads the built-in catalog plus, optionally, a user file. Ids must be
/// globally unique.
pub fn load_catalog(path: Option<&Path>) -> Result<Vec<CatalogEntry>> {
    let mut entries = builtin();
    if let Some(path) = path {
        let source = std::fs::read_to_string(path)?;
        let extra = parse_catalog(&source, &path.display().to_string())?;
        entries.extend(extra);
    }
    let mut seen = std::collections::HashSet::new();
    for e in &entries {
        if !seen.insert(e.id.clone()) {
            return Err(Error::DuplicateId(e.id.clone()));
        }
    }
    Ok(entries)
}

/// Finds an entry by id.
pub fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownBasis(id.to_string()))
}

/// Renders a matrix of exact rationals back to strings (row-major), used
/// when echoing custom entries.
pub fn format_matrix(rows: &[Vec<Ratio64>]) -> Vec<Vec<String>> {
    rows.iter().map(|row| row.iter().map(format_ratio).collect()).collect()
}
