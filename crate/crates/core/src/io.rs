//! JSON file formats shared by the library, the fixtures, and the
//! command-line tool. Every loader reports errors with the offending path
//! (and, for expression entries, the tensor position).
//!
//! Bialgebra files:
//! ```json
//! { "field": {"kind": "prime", "p": 5},
//!   "dim": 2,
//!   "mul":   [[["0", "1"], ["c", "0"]], ...],
//!   "comul": [[["1", "0"], ["0", "0"]], ...] }
//! ```
//! `mul[i][j][k]` and `comul[i][j][k]` hold scalar-expression strings over
//! the declared field; `comul` is optional (algebra-only files).
//!
//! Quandle files: `{"order": n, "table": [[...]]}` with 0-indexed entries.
//! Diagram files: `{"pd": [[a, b, c, d], ...]}` with 1-based edge labels.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::knot::{self, Diagram, KnotError};
use crate::quandle::CayleyTable;
use crate::scalar::{parse_scalar, FieldDescriptor, Scalar, ScalarError};
use crate::tensor::{Algebra, Bialgebra, Coalgebra, TensorError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {at}: {source}")]
    Expr {
        path: String,
        at: String,
        #[source]
        source: ScalarError,
    },
    #[error("{path}: {at}: expected {expected} entries, got {got}")]
    Shape { path: String, at: String, expected: usize, got: usize },
    #[error("{path}: {source}")]
    Tensor {
        path: String,
        #[source]
        source: TensorError,
    },
    #[error("{path}: {source}")]
    Knot {
        path: String,
        #[source]
        source: KnotError,
    },
}

/// An algebra with an optional comultiplication, as read from a file.
#[derive(Clone, Debug)]
pub struct LoadedBialgebra {
    pub algebra: Algebra,
    pub coalgebra: Option<Coalgebra>,
}

impl LoadedBialgebra {
    /// Pairs the two halves; `None` for algebra-only files.
    pub fn bialgebra(&self) -> Option<Result<Bialgebra, TensorError>> {
        self.coalgebra
            .as_ref()
            .map(|c| Bialgebra::new(self.algebra.clone(), c.clone()))
    }
}

#[derive(Deserialize)]
struct RawBialgebra {
    field: FieldDescriptor,
    dim: usize,
    mul: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    comul: Option<Vec<Vec<Vec<String>>>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json { path: display, source })
}

/// Flattens a nested expression tensor, parsing each entry over `field`.
fn parse_tensor(
    path: &Path,
    name: &str,
    field: &FieldDescriptor,
    dim: usize,
    nested: &[Vec<Vec<String>>],
) -> Result<Vec<Scalar>, IoError> {
    let display = path.display().to_string();
    if nested.len() != dim {
        return Err(IoError::Shape {
            path: display,
            at: name.to_string(),
            expected: dim,
            got: nested.len(),
        });
    }
    let mut flat = Vec::with_capacity(dim * dim * dim);
    for (i, plane) in nested.iter().enumerate() {
        if plane.len() != dim {
            return Err(IoError::Shape {
                path: display,
                at: format!("{name}[{i}]"),
                expected: dim,
                got: plane.len(),
            });
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != dim {
                return Err(IoError::Shape {
                    path: display,
                    at: format!("{name}[{i}][{j}]"),
                    expected: dim,
                    got: row.len(),
                });
            }
            for (k, expr) in row.iter().enumerate() {
                let scalar = parse_scalar(expr, field).map_err(|source| IoError::Expr {
                    path: display.clone(),
                    at: format!("{name}[{i}][{j}][{k}]"),
                    source,
                })?;
                flat.push(scalar);
            }
        }
    }
    Ok(flat)
}

/// Reads a bialgebra (or algebra-only) file.
pub fn load_bialgebra(path: &Path) -> Result<LoadedBialgebra, IoError> {
    let raw: RawBialgebra = read_json(path)?;
    let display = path.display().to_string();
    let mul = parse_tensor(path, "mul", &raw.field, raw.dim, &raw.mul)?;
    let algebra = Algebra::new(raw.field.clone(), raw.dim, mul)
        .map_err(|source| IoError::Tensor { path: display.clone(), source })?;
    let coalgebra = match &raw.comul {
        Some(nested) => {
            let comul = parse_tensor(path, "comul", &raw.field, raw.dim, nested)?;
            Some(
                Coalgebra::new(raw.field.clone(), raw.dim, comul)
                    .map_err(|source| IoError::Tensor { path: display, source })?,
            )
        }
        None => None,
    };
    Ok(LoadedBialgebra { algebra, coalgebra })
}

/// Reads a quandle file; the table is validated on deserialization.
pub fn load_quandle(path: &Path) -> Result<CayleyTable, IoError> {
    read_json(path)
}

#[derive(Deserialize)]
struct RawDiagram {
    pd: Vec<Vec<usize>>,
}

/// Reads and validates a PD-code file.
pub fn load_diagram(path: &Path) -> Result<Diagram, IoError> {
    let raw: RawDiagram = read_json(path)?;
    knot::parse_pd(&raw.pd).map_err(|source| IoError::Knot {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
        let path = std::env::temp_dir().join(format!("sdbialg-io-{}-{name}", std::process::id()));
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn loads_a_parametric_bialgebra() {
        let path = temp_file(
            "param.json",
            r#"{
              "field": {"kind": "params", "vars": ["c"]},
              "dim": 2,
              "mul": [[["1", "0"], ["0", "1"]], [["c", "0"], ["0", "c"]]],
              "comul": [[["1", "0"], ["0", "0"]], [["0", "1"], ["0", "0"]]]
            }"#,
        );
        let loaded = load_bialgebra(&path).unwrap();
        assert_eq!(loaded.algebra.dim(), 2);
        let b = loaded.bialgebra().unwrap().unwrap();
        assert!(crate::axioms::check_consistency(&b).verdict);
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn algebra_only_files_have_no_coalgebra() {
        let path = temp_file(
            "alg.json",
            r#"{
              "field": {"kind": "prime", "p": 3},
              "dim": 1,
              "mul": [[["2"]]]
            }"#,
        );
        let loaded = load_bialgebra(&path).unwrap();
        assert!(loaded.coalgebra.is_none());
        assert!(loaded.bialgebra().is_none());
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn errors_name_the_path_and_position() {
        let path = temp_file(
            "bad-expr.json",
            r#"{
              "field": {"kind": "prime", "p": 3},
              "dim": 1,
              "mul": [[["w"]]]
            }"#,
        );
        let err = load_bialgebra(&path).unwrap_err().to_string();
        assert!(err.contains("bad-expr.json"), "{err}");
        assert!(err.contains("mul[0][0][0]"), "{err}");
        fs::remove_file(path).unwrap();

        let path = temp_file(
            "bad-shape.json",
            r#"{
              "field": {"kind": "rational"},
              "dim": 2,
              "mul": [[["0", "0"], ["0", "0"]]]
            }"#,
        );
        let err = load_bialgebra(&path).unwrap_err().to_string();
        assert!(err.contains("expected 2 entries, got 1"), "{err}");
        fs::remove_file(path).unwrap();

        let err = load_quandle(Path::new("/nonexistent/q.json")).unwrap_err().to_string();
        assert!(err.contains("/nonexistent/q.json"), "{err}");
    }

    #[test]
    fn rejects_non_prime_moduli_in_field_descriptors() {
        let path = temp_file(
            "bad-field.json",
            r#"{
              "field": {"kind": "prime", "p": 4},
              "dim": 1,
              "mul": [[["1"]]]
            }"#,
        );
        let err = load_bialgebra(&path).unwrap_err().to_string();
        assert!(err.contains("4"), "{err}");
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn loads_quandles_and_diagrams() {
        let path = temp_file("quandle.json", r#"{"order": 2, "table": [[0, 0], [1, 1]]}"#);
        let q = load_quandle(&path).unwrap();
        assert_eq!(q, crate::quandle::trivial_quandle(2));
        fs::remove_file(path).unwrap();

        let path = temp_file("diagram.json", r#"{"pd": [[1, 2, 2, 1]]}"#);
        let d = load_diagram(&path).unwrap();
        assert_eq!(d.component_count(), 1);
        fs::remove_file(path).unwrap();

        let path = temp_file("bad-pd.json", r#"{"pd": [[1, 2, 3]]}"#);
        let err = load_diagram(&path).unwrap_err().to_string();
        assert!(err.contains("expected 4"), "{err}");
        fs::remove_file(path).unwrap();
    }
}
