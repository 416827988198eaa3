//! The catalog of parametric solution families: for each of the five
//! comultiplication types, the multiplication tables (with parameters and
//! excluded loci) that satisfy consistency and self-distributivity.
//!
//! Basis convention: `e1 = x`, `e2 = y`. Multiplication entries are listed
//! row-major as the coefficients of `e1, e2` in `x*x, x*y, y*x, y*y`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{parse_scalar, FieldDescriptor, Scalar, ScalarError};
use crate::tensor::{Algebra, Bialgebra, Coalgebra, TensorError};

/// One of the five comultiplication tensors, numbered as printed:
/// 1: `x -> x@x, y -> x@y`; 2: `x -> x@x, y -> y@x`; 3: `x -> x@x, y -> 0`;
/// 4: `x -> 0, y -> y@y`; 5: zero.
pub fn comultiplication_tensor(comul_type: u8, field: &FieldDescriptor) -> Coalgebra {
    let ones: &[(usize, usize, usize)] = match comul_type {
        1 => &[(0, 0, 0), (1, 0, 1)],
        2 => &[(0, 0, 0), (1, 1, 0)],
        3 => &[(0, 0, 0)],
        4 => &[(1, 1, 1)],
        5 => &[],
        other => panic!("comultiplication type {other} out of range 1..=5"),
    };
    Coalgebra::from_fn(field.clone(), 2, |i, j, k| {
        if ones.contains(&(i, j, k)) {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    })
}

/// Errors from instantiating a family at a parameter point.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InstantiateError {
    #[error("assignment lies on the excluded locus: {expr} = 0")]
    ExcludedLocus { expr: String },
    #[error("family is undefined at this point ({expr}): {source}")]
    Undefined { expr: String, source: ScalarError },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A parametric multiplication table paired with its comultiplication type.
///
/// Instances at admissible parameter points are consistency- and
/// self-distributivity-checked by the audit machinery; the catalog itself
/// just records the formulas.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDescriptor {
    label: String,
    comul_type: u8,
    params: Vec<String>,
    /// Eight expressions, flattened row-major in `(i, j, k)`.
    mul: Vec<String>,
    /// Expressions that must evaluate to something nonzero.
    excluded: Vec<String>,
}

fn fam(
    label: &str,
    comul_type: u8,
    params: &[&str],
    mul: [&str; 8],
    excluded: &[&str],
) -> FamilyDescriptor {
    FamilyDescriptor {
        label: label.to_string(),
        comul_type,
        params: params.iter().map(|s| s.to_string()).collect(),
        mul: mul.iter().map(|s| s.to_string()).collect(),
        excluded: excluded.iter().map(|s| s.to_string()).collect(),
    }
}

impl FamilyDescriptor {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn comul_type(&self) -> u8 {
        self.comul_type
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn mul_exprs(&self) -> &[String] {
        &self.mul
    }

    pub fn excluded(&self) -> &[String] {
        &self.excluded
    }

    /// The coefficient field of the symbolic form: rational functions in the
    /// parameters, or the rationals for parameter-free families.
    pub fn param_field(&self) -> FieldDescriptor {
        if self.params.is_empty() {
            FieldDescriptor::rational()
        } else {
            FieldDescriptor::params(self.params.clone()).expect("catalog parameter names are valid")
        }
    }

    /// The family over its own parameter field (the generic point).
    pub fn symbolic(&self) -> Bialgebra {
        let field = self.param_field();
        let mul = self
            .mul
            .iter()
            .map(|e| parse_scalar(e, &field).expect("catalog expression parses"))
            .collect();
        let algebra = Algebra::new(field.clone(), 2, mul).expect("catalog tensor is well-formed");
        Bialgebra::new(algebra, comultiplication_tensor(self.comul_type, &field))
            .expect("matching dimensions")
    }

    /// Evaluates the family at a parameter point over `target`.
    ///
    /// The assignment must cover every parameter with scalars from `target`.
    /// Points on an excluded locus are rejected, as are points where a
    /// coefficient is undefined (a denominator vanishes, or a rational
    /// coefficient has no image in the target field).
    pub fn instantiate(
        &self,
        assignment: &BTreeMap<String, Scalar>,
        target: &FieldDescriptor,
    ) -> Result<Bialgebra, InstantiateError> {
        let field = self.param_field();
        let eval = |expr: &str| -> Result<Scalar, InstantiateError> {
            let undefined = |source: ScalarError| match source {
                ScalarError::Pole | ScalarError::CoefficientDenominator { .. } => {
                    InstantiateError::Undefined { expr: expr.to_string(), source }
                }
                other => InstantiateError::Scalar(other),
            };
            if self.params.is_empty() {
                // Constant family: the expressions live directly in the target.
                parse_scalar(expr, target).map_err(undefined)
            } else {
                parse_scalar(expr, &field)?.evaluate(assignment, target).map_err(undefined)
            }
        };
        for expr in &self.excluded {
            if eval(expr)?.is_zero() {
                return Err(InstantiateError::ExcludedLocus { expr: expr.clone() });
            }
        }
        let mul = self.mul.iter().map(|e| eval(e)).collect::<Result<Vec<_>, _>>()?;
        let algebra = Algebra::new(target.clone(), 2, mul)?;
        Ok(Bialgebra::new(algebra, comultiplication_tensor(self.comul_type, target))?)
    }

    /// All parameter points over `GF(p)` where the family instantiates,
    /// paired with the instances, in ascending lexicographic order of the
    /// parameter values.
    pub fn admissible_points(
        &self,
        p: u64,
    ) -> Result<Vec<(BTreeMap<String, Scalar>, Bialgebra)>, InstantiateError> {
        let target = FieldDescriptor::prime(p).expect("p is prime");
        let k = self.params.len();
        let mut out = Vec::new();
        let mut digits = vec![0u64; k];
        loop {
            let assignment: BTreeMap<String, Scalar> = self
                .params
                .iter()
                .zip(&digits)
                .map(|(name, &v)| (name.clone(), Scalar::from_integer(v as i64, &target)))
                .collect();
            match self.instantiate(&assignment, &target) {
                Ok(instance) => out.push((assignment, instance)),
                Err(InstantiateError::ExcludedLocus { .. })
                | Err(InstantiateError::Undefined { .. }) => {}
                Err(other) => return Err(other),
            }
            // Next point: increment from the last parameter.
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

/// The families recorded for one comultiplication type.
pub fn family_catalog(comul_type: u8) -> Vec<FamilyDescriptor> {
    match comul_type {
        1 => vec![
            fam("t1-a", 1, &[], ["0"; 8], &[]),
            fam("t1-b", 1, &["c"], ["1", "0", "0", "0", "0", "c", "0", "0"], &[]),
            fam("t1-c", 1, &[], ["1", "0", "0", "1", "0", "0", "0", "0"], &[]),
            fam("t1-d", 1, &["c"], ["1", "0", "0", "1", "c", "0", "0", "c"], &[]),
            fam(
                "t1-e",
                1,
                &["c", "d"],
                ["1", "0", "0", "1", "c", "-1", "d", "0"],
                &[],
            ),
            fam("t1-f", 1, &["d"], ["1", "0", "0", "1", "0", "-1", "d", "0"], &[]),
            fam("t1-g", 1, &["c"], ["1", "0", "0", "1", "0", "c", "0", "0"], &[]),
            fam(
                "t1-h",
                1,
                &["c"],
                ["1", "0", "c", "0", "c", "0", "c^2", "0"],
                &[],
            ),
            fam(
                "t1-k",
                1,
                &["c"],
                ["1", "0", "c/2", "0", "c", "-1", "(c^2)/2", "-c/2"],
                &[],
            ),
            fam(
                "t1-l",
                1,
                &["c1", "c2"],
                [
                    "1",
                    "0",
                    "0",
                    "1",
                    "c1",
                    "c2",
                    "(-(c1^2)*c2)/((1-c2)^2)",
                    "(c1*(c2+1))/(1-c2)",
                ],
                &["1-c2"],
            ),
        ],
        2 => vec![
            fam("t2-a", 2, &[], ["0"; 8], &[]),
            fam("t2-b", 2, &["c"], ["1", "0", "0", "0", "0", "c", "0", "0"], &[]),
            fam(
                "t2-c",
                2,
                &["c"],
                ["1", "0", "c", "0", "c", "0", "c^2", "0"],
                &[],
            ),
            fam("t2-d", 2, &["b"], ["1", "0", "0", "b", "0", "1", "0", "0"], &[]),
            fam(
                "t2-e",
                2,
                &["c1", "c2"],
                [
                    "1",
                    "0",
                    "c1/(1-c2)",
                    "0",
                    "c1",
                    "c2",
                    "(c1^2)/(1-c2)",
                    "(c1*c2)/(1-c2)",
                ],
                &["1-c2"],
            ),
        ],
        3 => vec![
            fam("t3-a", 3, &["b"], ["0", "0", "0", "b", "0", "0", "0", "0"], &[]),
            fam("t3-b", 3, &["c"], ["1", "0", "0", "0", "0", "c", "0", "0"], &[]),
        ],
        4 => vec![
            fam("t4-a", 4, &["b"], ["0", "0", "0", "0", "b", "0", "0", "0"], &[]),
            fam("t4-b", 4, &["c"], ["0", "0", "c", "0", "0", "0", "0", "1"], &[]),
        ],
        5 => vec![
            fam("t5-a", 5, &["c"], ["0", "0", "0", "0", "c", "0", "0", "0"], &[]),
            fam("t5-b", 5, &["b"], ["0", "0", "0", "b", "0", "0", "0", "0"], &[]),
            fam(
                "t5-c",
                5,
                &["c", "d"],
                ["0", "0", "0", "0", "c", "0", "d", "0"],
                &["d"],
            ),
            fam(
                "t5-d",
                5,
                &["d1", "d2"],
                ["0", "0", "-d2", "(-(d2^2))/d1", "0", "0", "d1", "d2"],
                &["d1"],
            ),
            fam(
                "t5-e",
                5,
                &["a", "b"],
                ["0", "a", "0", "b", "0", "0", "0", "0"],
                &["a"],
            ),
            fam(
                "t5-f",
                5,
                &["a1", "a2"],
                ["a1", "a2", "0", "0", "(-(a1^2))/a2", "-a1", "0", "0"],
                &["a2"],
            ),
            fam(
                "t5-g",
                5,
                &["a1", "d1", "d2"],
                [
                    "a1",
                    "(a1*d2)/d1",
                    "-d2",
                    "(-(d2^2))/d1",
                    "(-(a1*d1))/d2",
                    "-a1",
                    "d1",
                    "d2",
                ],
                &["d1", "d2"],
            ),
        ],
        other => panic!("comultiplication type {other} out of range 1..=5"),
    }
}

/// All families across the five comultiplication types.
pub fn full_catalog() -> Vec<FamilyDescriptor> {
    (1..=5).flat_map(family_catalog).collect()
}
