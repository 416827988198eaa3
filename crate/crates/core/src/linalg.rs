//! Exact Gaussian elimination over any of the scalar fields.
//!
//! Division happens only by pivots that were tested nonzero, so every step is
//! exact; there is no tolerance anywhere.

use crate::scalar::{FieldDescriptor, Scalar};

/// Row-reduces the augmented system `rows * x = rhs` and returns one solution,
/// or None when the system is inconsistent. Free variables are set to zero.
pub(crate) fn solve_linear(
    field: &FieldDescriptor,
    mut rows: Vec<Vec<Scalar>>,
    mut rhs: Vec<Scalar>,
    unknowns: usize,
) -> Option<Vec<Scalar>> {
    debug_assert_eq!(rows.len(), rhs.len());
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut next_row = 0;
    for col in 0..unknowns {
        let Some(p) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        rhs.swap(next_row, p);
        let inv = rows[next_row][col].inv().expect("pivot is nonzero");
        for c in col..unknowns {
            rows[next_row][c] = rows[next_row][c].mul(&inv).expect("same field");
        }
        rhs[next_row] = rhs[next_row].mul(&inv).expect("same field");
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..unknowns {
                    let delta = rows[next_row][c].mul(&factor).expect("same field");
                    rows[r][c] = rows[r][c].sub(&delta).expect("same field");
                }
                let delta = rhs[next_row].mul(&factor).expect("same field");
                rhs[r] = rhs[r].sub(&delta).expect("same field");
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }
    // Zero rows with nonzero right-hand side mean inconsistency.
    for r in next_row..rows.len() {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut solution = vec![Scalar::zero(field); unknowns];
    for col in 0..unknowns {
        if let Some(r) = pivot_of_col[col] {
            solution[col] = rhs[r].clone();
        }
    }
    Some(solution)
}

/// Inverse of a square matrix, or None when singular.
pub(crate) fn invert(field: &FieldDescriptor, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one(field)
                    } else {
                        Scalar::zero(field)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot_inv = a[col][col].inv().expect("pivot is nonzero");
        for c in 0..n {
            a[col][c] = a[col][c].mul(&pivot_inv).expect("same field");
            inv[col][c] = inv[col][c].mul(&pivot_inv).expect("same field");
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = a[col][c].mul(&factor).expect("same field");
                    a[r][c] = a[r][c].sub(&da).expect("same field");
                    let di = inv[col][c].mul(&factor).expect("same field");
                    inv[r][c] = inv[r][c].sub(&di).expect("same field");
                }
            }
        }
    }
    Some(inv)
}

/// Matrix product `a * b` for square matrices over `field`.
#[cfg(test)]
pub(crate) fn mat_mul(
    field: &FieldDescriptor,
    a: &[Vec<Scalar>],
    b: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Scalar::zero(field);
                    for (k, b_row) in b.iter().enumerate() {
                        let t = a[i][k].mul(&b_row[j]).expect("same field");
                        acc = acc.add(&t).expect("same field");
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n, &FieldDescriptor::rational())
    }

    #[test]
    fn invert_round_trips() {
        let f = FieldDescriptor::rational();
        let m = vec![vec![q(1), q(0)], vec![q(1), q(-1)]];
        let inv = invert(&f, &m).unwrap();
        let prod = mat_mul(&f, &m, &inv);
        assert_eq!(prod, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(invert(&f, &singular).is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = FieldDescriptor::rational();
        // x + y = 1, x + y = 2 has no solution.
        let rows = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve_linear(&f, rows, vec![q(1), q(2)], 2).is_none());
        // x + y = 2 alone: underdetermined, free variable pinned to zero.
        let rows = vec![vec![q(1), q(1)]];
        let s = solve_linear(&f, rows, vec![q(2)], 2).unwrap();
        assert_eq!(s, vec![q(2), q(0)]);
    }
}
