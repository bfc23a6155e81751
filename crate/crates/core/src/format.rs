//! The algebra file format: JSON with a sparse product list and exact
//! scalars encoded as strings ("3", "-2/7", residues for prime fields), so
//! no numeric-type ambiguity can creep in across implementations.
//!
//! Saving is canonical: products are sorted lexicographically and scalars
//! are rendered in lowest terms, so save-then-load is the identity and
//! load-then-save normalizes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, HomAlgebra, LinearMap};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Scalar { path: String, source: FieldError },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("duplicate product entry at ({0}, {1}, {2})")]
    DuplicateProduct(usize, usize, usize),
    #[error("alpha matrix is {rows}x{cols}, expected {dim}x{dim}")]
    AlphaShape { rows: usize, cols: usize, dim: usize },
    #[error("unit vector has {found} coordinates, expected {dim}")]
    UnitLength { found: usize, dim: usize },
}

/// The on-disk shape: everything optional except field and dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// Sparse products [i, j, k, value]; omitted entries are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<(usize, usize, usize, String)>,
    /// Dense row-major twisting matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

/// A validated in-memory object: an algebra, optionally a twisting map and
/// a designated unit.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub alpha: Option<LinearMap>,
    pub unit: Option<Element>,
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

impl LoadedAlgebra {
    pub fn hom_algebra(&self) -> Option<HomAlgebra> {
        self.alpha
            .clone()
            .map(|alpha| HomAlgebra::new(self.algebra.clone(), alpha).expect("validated on load"))
    }
}

fn parse_scalar(field: FieldSpec, s: &str, path: impl Fn() -> String) -> Result<Scalar, FormatError> {
    field.parse_scalar(s).map_err(|source| FormatError::Scalar {
        path: path(),
        source,
    })
}

/// Validates a parsed file into exact objects.
pub fn validate(file: &AlgebraFile) -> Result<LoadedAlgebra, FormatError> {
    let field = file.field;
    let dim = file.dim;

    let mut products = Vec::with_capacity(file.products.len());
    let mut seen = std::collections::HashSet::new();
    for (idx, (i, j, k, value)) in file.products.iter().enumerate() {
        if !seen.insert((*i, *j, *k)) {
            return Err(FormatError::DuplicateProduct(*i, *j, *k));
        }
        let value = parse_scalar(field, value, || format!("products[{idx}]"))?;
        products.push((*i, *j, *k, value));
    }
    let mut algebra = Algebra::from_products(field, dim, &products)?;
    if let Some(names) = &file.basis {
        algebra = algebra.with_basis_names(names.clone())?;
    }

    let alpha = match &file.alpha {
        None => None,
        Some(rows) => {
            let cols = rows.first().map(Vec::len).unwrap_or(0);
            if rows.len() != dim || rows.iter().any(|r| r.len() != cols) || cols != dim {
                return Err(FormatError::AlphaShape {
                    rows: rows.len(),
                    cols,
                    dim,
                });
            }
            let mut entries = Vec::with_capacity(dim * dim);
            for (r, row) in rows.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    entries.push(parse_scalar(field, v, || format!("alpha[{r}][{c}]"))?);
                }
            }
            Some(LinearMap::new(Matrix::new(field, dim, dim, entries)?)?)
        }
    };

    let unit = match &file.unit {
        None => None,
        Some(coords) => {
            if coords.len() != dim {
                return Err(FormatError::UnitLength {
                    found: coords.len(),
                    dim,
                });
            }
            let mut entries = Vec::with_capacity(dim);
            for (i, v) in coords.iter().enumerate() {
                entries.push(parse_scalar(field, v, || format!("unit[{i}]"))?);
            }
            Some(Element::new(Vector::new(field, entries)?))
        }
    };

    Ok(LoadedAlgebra {
        algebra,
        alpha,
        unit,
        metadata: file.metadata.clone(),
    })
}

/// Renders the loaded object back to its canonical file form.
pub fn to_file(loaded: &LoadedAlgebra) -> AlgebraFile {
    let a = &loaded.algebra;
    AlgebraFile {
        field: a.field(),
        dim: a.dim(),
        basis: a.basis_names().map(<[String]>::to_vec),
        products: a
            .nonzero_products()
            .into_iter()
            .map(|(i, j, k, v)| (i, j, k, v.to_string()))
            .collect(),
        alpha: loaded.alpha.as_ref().map(|m| {
            (0..m.dim())
                .map(|r| {
                    (0..m.dim())
                        .map(|c| m.matrix().get(r, c).to_string())
                        .collect()
                })
                .collect()
        }),
        unit: loaded
            .unit
            .as_ref()
            .map(|u| u.coords().entries().iter().map(Scalar::to_string).collect()),
        metadata: loaded.metadata.clone(),
    }
}

pub fn parse_str(s: &str) -> Result<LoadedAlgebra, FormatError> {
    let file: AlgebraFile = serde_json::from_str(s)?;
    validate(&file)
}

pub fn to_string_pretty(loaded: &LoadedAlgebra) -> String {
    serde_json::to_string_pretty(&to_file(loaded)).expect("file form always serializes")
}

pub fn load(path: impl AsRef<Path>) -> Result<LoadedAlgebra, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text)
}

pub fn save(loaded: &LoadedAlgebra, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let path = path.as_ref();
    std::fs::write(path, to_string_pretty(loaded) + "\n").map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn minimal_file_loads_as_plain_algebra() {
        let loaded = parse_str(r#"{"field": "Q", "dim": 2}"#).unwrap();
        assert_eq!(loaded.algebra.dim(), 2);
        assert!(loaded.alpha.is_none());
        assert!(loaded.algebra.nonzero_products().is_empty());
    }

    #[test]
    fn gf_file_with_products_and_alpha() {
        let text = r#"{
            "field": {"GF": 5},
            "dim": 2,
            "products": [[0, 0, 1, "3"]],
            "alpha": [["1", "1"], ["0", "1"]],
            "unit": ["1", "0"]
        }"#;
        let loaded = parse_str(text).unwrap();
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(loaded.algebra.sc(0, 0, 1), &f.from_i64(3));
        assert!(loaded.alpha.is_some());
        assert_eq!(loaded.unit, Some(Element::from_i64(f, &[1, 0])));
    }

    #[test]
    fn values_normalize_on_save() {
        let loaded =
            parse_str(r#"{"field": "Q", "dim": 1, "products": [[0, 0, 0, "2/4"]]}"#).unwrap();
        let file = to_file(&loaded);
        assert_eq!(file.products, vec![(0, 0, 0, "1/2".to_string())]);
    }

    #[test]
    fn save_load_round_trip_is_identity() {
        let text = r#"{
            "field": "Q",
            "dim": 2,
            "basis": ["e1", "e2"],
            "products": [[0, 0, 1, "1"]],
            "alpha": [["1", "1"], ["0", "1"]],
            "metadata": {"note": "example"}
        }"#;
        let loaded = parse_str(text).unwrap();
        let rendered = to_string_pretty(&loaded);
        let reloaded = parse_str(&rendered).unwrap();
        assert_eq!(loaded, reloaded);
        assert_eq!(rendered, to_string_pretty(&reloaded));
    }

    #[test]
    fn named_validation_errors() {
        // wrong alpha shape
        let err = parse_str(
            r#"{"field": "Q", "dim": 2, "alpha": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FormatError::AlphaShape {
                rows: 3,
                cols: 3,
                dim: 2
            }
        ));
        // bad scalar with path context
        let err =
            parse_str(r#"{"field": "Q", "dim": 1, "products": [[0, 0, 0, "1/0"]]}"#).unwrap_err();
        assert!(err.to_string().contains("products[0]"));
        // out-of-range index
        let err =
            parse_str(r#"{"field": "Q", "dim": 1, "products": [[0, 3, 0, "1"]]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Algebra(_)));
        // duplicate entry
        let err = parse_str(
            r#"{"field": "Q", "dim": 1, "products": [[0, 0, 0, "1"], [0, 0, 0, "2"]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, FormatError::DuplicateProduct(0, 0, 0)));
        // non-prime modulus
        assert!(parse_str(r#"{"field": {"GF": 6}, "dim": 1}"#).is_err());
        // zero dimension
        let err = parse_str(r#"{"field": "Q", "dim": 0}"#).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Algebra(AlgebraError::ZeroDimension)
        ));
    }

    #[test]
    fn file_io_round_trip() {
        let dir = std::env::temp_dir().join("homalg-format-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("algebra.json");
        let loaded =
            parse_str(r#"{"field": "Q", "dim": 2, "products": [[0, 0, 1, "1"]]}"#).unwrap();
        save(&loaded, &path).unwrap();
        let reloaded = load(&path).unwrap();
        assert_eq!(loaded, reloaded);
        let _ = q();
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
