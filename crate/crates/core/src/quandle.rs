//! Finite magmas given by Cayley tables, quandle axioms, and the passage to
//! magma rings with their idempotent structure.

use serde::{Deserialize, Serialize};

use crate::axioms::{self, AxiomError, CheckReport, Witness};
use crate::scalar::{FieldDescriptor, Scalar};
use crate::tensor::{Algebra, Element, TensorError};

/// Errors from table construction and subset extraction.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuandleError {
    #[error("row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, got: usize },
    #[error("entry {value} at ({x}, {y}) is out of range for order {order}")]
    EntryOutOfRange { x: usize, y: usize, value: usize, order: usize },
    #[error("subset elements at positions {0} and {1} coincide")]
    DuplicateElement(usize, usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A finite magma: `table[x][y]` is `x * y`, with 0-indexed elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct CayleyTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for CayleyTable {
    type Error = QuandleError;

    fn try_from(raw: RawTable) -> Result<Self, QuandleError> {
        if raw.table.len() != raw.order {
            return Err(QuandleError::NotSquare {
                row: 0,
                expected: raw.order,
                got: raw.table.len(),
            });
        }
        CayleyTable::new(raw.table)
    }
}

impl CayleyTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<CayleyTable, QuandleError> {
        let order = table.len();
        for (x, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(QuandleError::NotSquare { row: x, expected: order, got: row.len() });
            }
            for (y, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(QuandleError::EntryOutOfRange { x, y, value, order });
                }
            }
        }
        Ok(CayleyTable { order, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x * y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// `x * y = x` for all x, y.
pub fn trivial_quandle(n: usize) -> CayleyTable {
    CayleyTable::new((0..n).map(|x| vec![x; n]).collect()).expect("valid table")
}

/// `x * y = 2y - x mod n`.
pub fn dihedral_quandle(n: usize) -> CayleyTable {
    CayleyTable::new(
        (0..n)
            .map(|x| (0..n).map(|y| (2 * y % n + n - x) % n).collect())
            .collect(),
    )
    .expect("valid table")
}

/// Idempotence `x * x = x` on every element.
fn q1_witnesses(t: &CayleyTable) -> Vec<Witness> {
    (0..t.order())
        .filter(|&x| t.op(x, x) != x)
        .map(|x| Witness {
            at: vec!["Q1".to_string(), format!("x = {x}")],
            lhs: t.op(x, x).to_string(),
            rhs: x.to_string(),
        })
        .collect()
}

/// Right translations bijective.
fn q2_witnesses(t: &CayleyTable) -> Vec<Witness> {
    let n = t.order();
    let mut witnesses = Vec::new();
    for y in 0..n {
        let mut preimage = vec![None; n];
        for x in 0..n {
            let v = t.op(x, y);
            if let Some(prev) = preimage[v] {
                witnesses.push(Witness {
                    at: vec![
                        "Q2".to_string(),
                        format!("y = {y}"),
                        format!("x = {prev}"),
                        format!("x' = {x}"),
                    ],
                    lhs: v.to_string(),
                    rhs: v.to_string(),
                });
            } else {
                preimage[v] = Some(x);
            }
        }
    }
    witnesses
}

/// Right self-distributivity `(x*y)*z = (x*z)*(y*z)` on all triples.
fn q3_witnesses(t: &CayleyTable) -> Vec<Witness> {
    let n = t.order();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = t.op(t.op(x, y), z);
                let rhs = t.op(t.op(x, z), t.op(y, z));
                if lhs != rhs {
                    witnesses.push(Witness {
                        at: vec![
                            "Q3".to_string(),
                            format!("x = {x}"),
                            format!("y = {y}"),
                            format!("z = {z}"),
                        ],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    witnesses
}

/// All three quandle axioms.
pub fn is_quandle(t: &CayleyTable) -> CheckReport {
    let mut witnesses = q1_witnesses(t);
    witnesses.extend(q2_witnesses(t));
    witnesses.extend(q3_witnesses(t));
    CheckReport::from_witnesses(witnesses)
}

/// Rack axioms only (Q2 and Q3); idempotence not required.
pub fn is_rack(t: &CayleyTable) -> CheckReport {
    let mut witnesses = q2_witnesses(t);
    witnesses.extend(q3_witnesses(t));
    CheckReport::from_witnesses(witnesses)
}

/// The magma ring `k[T]`: basis elements multiply through the table.
pub fn quandle_ring(t: &CayleyTable, field: &FieldDescriptor) -> Algebra {
    let n = t.order();
    Algebra::from_fn(field.clone(), n, |i, j, k| {
        if t.op(i, j) == k {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    })
}

/// Sum of the coefficients.
pub fn augmentation(u: &Element) -> Scalar {
    let mut acc = Scalar::zero(u.field());
    for c in u.coeffs() {
        acc = acc.add(c).expect("same field");
    }
    acc
}

/// The elements `e_x - e_basepoint` for `x != basepoint`: a basis of the
/// kernel of the augmentation.
pub fn augmentation_ideal_basis(
    n: usize,
    basepoint: usize,
    field: &FieldDescriptor,
) -> Vec<Element> {
    assert!(basepoint < n, "basepoint out of range");
    (0..n)
        .filter(|&x| x != basepoint)
        .map(|x| {
            Element::basis(field, n, x)
                .sub(&Element::basis(field, n, basepoint))
                .expect("same space")
        })
        .collect()
}

/// Result of closing a subset under the (possibly reversed) product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    Closed(CayleyTable),
    /// `left * right` (indices into the subset) landed outside the subset.
    NotClosed { left: usize, right: usize, product: Element },
}

/// Interprets a list of pairwise-distinct elements as a magma under
/// `u_i * u_j = u_i u_j` (or `u_j u_i` when `opposite`), returning its Cayley
/// table when the set is closed.
pub fn subset_magma(
    a: &Algebra,
    subset: &[Element],
    opposite: bool,
) -> Result<ClosureOutcome, QuandleError> {
    for i in 0..subset.len() {
        for j in (i + 1)..subset.len() {
            if subset[i] == subset[j] {
                return Err(QuandleError::DuplicateElement(i, j));
            }
        }
    }
    let n = subset.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, u) in subset.iter().enumerate() {
        for (j, v) in subset.iter().enumerate() {
            let product = if opposite {
                a.multiply(v, u)?
            } else {
                a.multiply(u, v)?
            };
            match subset.iter().position(|w| w == &product) {
                Some(k) => table[i][j] = k,
                None => {
                    return Ok(ClosureOutcome::NotClosed { left: i, right: j, product });
                }
            }
        }
    }
    Ok(ClosureOutcome::Closed(CayleyTable::new(table).expect("valid table")))
}

/// One product orientation inside [`IdempotentQuandleReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_pair: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<CayleyTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_quandle: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_rack: Option<CheckReport>,
}

/// Idempotents of a prime-field algebra and the magma structure of the
/// nonzero ones, under both product orientations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentQuandleReport {
    pub idempotents: Vec<String>,
    pub nonzero_idempotents: Vec<String>,
    pub direct: OrientationReport,
    pub opposite: OrientationReport,
}

fn orientation_report(a: &Algebra, subset: &[Element], opposite: bool) -> OrientationReport {
    match subset_magma(a, subset, opposite).expect("distinct idempotents") {
        ClosureOutcome::Closed(table) => OrientationReport {
            closed: true,
            offending_pair: None,
            is_quandle: Some(is_quandle(&table)),
            is_rack: Some(is_rack(&table)),
            table: Some(table),
        },
        ClosureOutcome::NotClosed { left, right, product } => OrientationReport {
            closed: false,
            offending_pair: Some([
                subset[left].render(),
                subset[right].render(),
                product.render(),
            ]),
            table: None,
            is_quandle: None,
            is_rack: None,
        },
    }
}

/// Extracts all idempotents, drops zero, and reports whether the remainder
/// closes into a magma (and which axioms it satisfies) for both orientations
/// of the product.
pub fn idempotent_quandle_report(a: &Algebra) -> Result<IdempotentQuandleReport, AxiomError> {
    let idempotents = axioms::find_idempotents(a)?;
    let nonzero: Vec<Element> = idempotents.iter().filter(|u| !u.is_zero()).cloned().collect();
    Ok(IdempotentQuandleReport {
        idempotents: idempotents.iter().map(Element::render).collect(),
        nonzero_idempotents: nonzero.iter().map(Element::render).collect(),
        direct: orientation_report(a, &nonzero, false),
        opposite: orientation_report(a, &nonzero, true),
    })
}
