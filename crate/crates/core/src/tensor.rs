//! Algebras and coalgebras as dense structure-constant tensors.
//!
//! An algebra stores `mul[i][j][k]` with `e_i e_j = sum_k mul[i][j][k] e_k`;
//! a coalgebra stores `comul[i][j][k]` with `delta(e_i) = sum_{j,k}
//! comul[i][j][k] e_j (x) e_k`. Dimensions stay small (2 for the
//! classification work, the quandle order for magma rings), so dense `n^3`
//! vectors beat any sparse representation.

use std::fmt;

use crate::linalg;
use crate::scalar::{FieldDescriptor, Scalar, ScalarError};

/// Errors from tensor construction and basis changes.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("tensor has {got} entries, expected {expected}")]
    BadTensorLength { expected: usize, got: usize },
    #[error("basis-change matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn check_entries(
    field: &FieldDescriptor,
    expected: usize,
    entries: &[Scalar],
) -> Result<(), TensorError> {
    if entries.len() != expected {
        return Err(TensorError::BadTensorLength { expected, got: entries.len() });
    }
    for s in entries {
        if &s.field() != field {
            return Err(TensorError::FieldMismatch(
                field.to_string(),
                s.field().to_string(),
            ));
        }
    }
    Ok(())
}

/// Validates a square basis-change matrix and returns its inverse.
fn checked_inverse(
    field: &FieldDescriptor,
    dim: usize,
    g: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>, TensorError> {
    if g.len() != dim {
        return Err(TensorError::DimensionMismatch { expected: dim, got: g.len() });
    }
    for row in g {
        check_entries(field, dim, row)?;
    }
    linalg::invert(field, g).ok_or(TensorError::SingularMatrix)
}

/// A finite-dimensional (not necessarily unital or associative) algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldDescriptor,
    dim: usize,
    mul: Vec<Scalar>,
}

impl Algebra {
    /// `mul` is the flattened tensor, row-major in `(i, j, k)`.
    pub fn new(field: FieldDescriptor, dim: usize, mul: Vec<Scalar>) -> Result<Algebra, TensorError> {
        check_entries(&field, dim * dim * dim, &mul)?;
        Ok(Algebra { field, dim, mul })
    }

    /// Builds the tensor entry by entry.
    pub fn from_fn(
        field: FieldDescriptor,
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> Scalar,
    ) -> Algebra {
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    mul.push(f(i, j, k));
                }
            }
        }
        Algebra { field, dim, mul }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.mul
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(&self.field, self.dim, i)
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(&self.field, self.dim)
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, TensorError> {
        self.compatible(a)?;
        self.compatible(b)?;
        let mut out = vec![Scalar::zero(&self.field); self.dim];
        for i in 0..self.dim {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let ab = a.coeffs[i].mul(&b.coeffs[j])?;
                for (k, out_k) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *out_k = out_k.add(&ab.mul(c)?)?;
                    }
                }
            }
        }
        Ok(Element { field: self.field.clone(), coeffs: out })
    }

    /// The same vector space with the flipped product `a ∘ b = b a`.
    pub fn opposite(&self) -> Algebra {
        Algebra::from_fn(self.field.clone(), self.dim, |i, j, k| {
            self.structure_constant(j, i, k).clone()
        })
    }

    /// The coalgebra with the transposed tensor: `comul[k][i][j] = mul[i][j][k]`.
    pub fn dualize(&self) -> Coalgebra {
        Coalgebra::from_fn(self.field.clone(), self.dim, |k, i, j| {
            self.structure_constant(i, j, k).clone()
        })
    }

    /// Rewrites the structure constants in the basis whose vectors are the
    /// rows of `g`, expressed in the old basis. Acting by `g` and then by `h`
    /// equals acting by the matrix product `h * g`.
    ///
    /// With `g = [[1, 0], [1, -1]]` over the rationals the new basis is
    /// `t = t1`, `tau = t1 - t2`; applied to the magma ring of the
    /// two-element trivial quandle (`t_i t_j = t_i`) this produces the table
    /// `t t = t`, `t tau = 0`, `tau t = tau`, `tau tau = 0`.
    pub fn change_basis(&self, g: &[Vec<Scalar>]) -> Result<Algebra, TensorError> {
        let ginv = checked_inverse(&self.field, self.dim, g)?;
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                // Product of the new basis vectors i and j, in old coordinates.
                let mut prod = vec![Scalar::zero(&self.field); n];
                for a in 0..n {
                    if g[i][a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if g[j][b].is_zero() {
                            continue;
                        }
                        let gg = g[i][a].mul(&g[j][b])?;
                        for (k, p) in prod.iter_mut().enumerate() {
                            let c = self.structure_constant(a, b, k);
                            if !c.is_zero() {
                                *p = p.add(&gg.mul(c)?)?;
                            }
                        }
                    }
                }
                // Convert back to new coordinates through the inverse.
                for l in 0..n {
                    let mut acc = Scalar::zero(&self.field);
                    for (k, p) in prod.iter().enumerate() {
                        if !p.is_zero() {
                            acc = acc.add(&p.mul(&ginv[k][l])?)?;
                        }
                    }
                    out.push(acc);
                }
            }
        }
        Algebra::new(self.field.clone(), n, out)
    }

    fn compatible(&self, e: &Element) -> Result<(), TensorError> {
        if e.coeffs.len() != self.dim {
            return Err(TensorError::DimensionMismatch { expected: self.dim, got: e.coeffs.len() });
        }
        if e.field != self.field {
            return Err(TensorError::FieldMismatch(
                self.field.to_string(),
                e.field.to_string(),
            ));
        }
        Ok(())
    }
}

/// A finite-dimensional coalgebra (comultiplication only; no counit assumed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    field: FieldDescriptor,
    dim: usize,
    comul: Vec<Scalar>,
}

impl Coalgebra {
    /// `comul` is the flattened tensor, row-major in `(i, j, k)`.
    pub fn new(
        field: FieldDescriptor,
        dim: usize,
        comul: Vec<Scalar>,
    ) -> Result<Coalgebra, TensorError> {
        check_entries(&field, dim * dim * dim, &comul)?;
        Ok(Coalgebra { field, dim, comul })
    }

    pub fn from_fn(
        field: FieldDescriptor,
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> Scalar,
    ) -> Coalgebra {
        let mut comul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    comul.push(f(i, j, k));
                }
            }
        }
        Coalgebra { field, dim, comul }
    }

    /// The group-like comultiplication `delta(e_i) = e_i (x) e_i`.
    pub fn group_like(field: FieldDescriptor, dim: usize) -> Coalgebra {
        Coalgebra::from_fn(field.clone(), dim, |i, j, k| {
            if i == j && j == k {
                Scalar::one(&field)
            } else {
                Scalar::zero(&field)
            }
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `e_j (x) e_k` in `delta(e_i)`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.comul[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.comul
    }

    /// Linear extension of the comultiplication.
    pub fn comultiply(&self, a: &Element) -> Result<SweedlerTerms, TensorError> {
        if a.coeffs.len() != self.dim {
            return Err(TensorError::DimensionMismatch { expected: self.dim, got: a.coeffs.len() });
        }
        if a.field != self.field {
            return Err(TensorError::FieldMismatch(
                self.field.to_string(),
                a.field.to_string(),
            ));
        }
        let mut acc = SweedlerAccumulator::new(&self.field, self.dim);
        for i in 0..self.dim {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        acc.add(j, k, &a.coeffs[i].mul(c)?)?;
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// The algebra with the transposed tensor: `mul[i][j][k] = comul[k][i][j]`.
    /// Inverse of [`Algebra::dualize`].
    pub fn dualize(&self) -> Algebra {
        Algebra::from_fn(self.field.clone(), self.dim, |i, j, k| {
            self.structure_constant(k, i, j).clone()
        })
    }

    /// Swaps the two output legs of the comultiplication.
    pub fn opposite(&self) -> Coalgebra {
        Coalgebra::from_fn(self.field.clone(), self.dim, |i, j, k| {
            self.structure_constant(i, k, j).clone()
        })
    }

    /// Same convention as [`Algebra::change_basis`]: rows of `g` are the new
    /// basis vectors in old coordinates.
    pub fn change_basis(&self, g: &[Vec<Scalar>]) -> Result<Coalgebra, TensorError> {
        let ginv = checked_inverse(&self.field, self.dim, g)?;
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            // delta of the new basis vector i, in old (x) old coordinates.
            let mut dense = vec![Scalar::zero(&self.field); n * n];
            for a in 0..n {
                if g[i][a].is_zero() {
                    continue;
                }
                for j in 0..n {
                    for k in 0..n {
                        let c = self.structure_constant(a, j, k);
                        if !c.is_zero() {
                            let t = g[i][a].mul(c)?;
                            dense[j * n + k] = dense[j * n + k].add(&t)?;
                        }
                    }
                }
            }
            // Both legs back through the inverse.
            for l in 0..n {
                for m in 0..n {
                    let mut acc = Scalar::zero(&self.field);
                    for j in 0..n {
                        for k in 0..n {
                            let d = &dense[j * n + k];
                            if !d.is_zero() {
                                acc = acc.add(&d.mul(&ginv[j][l])?.mul(&ginv[k][m])?)?;
                            }
                        }
                    }
                    out.push(acc);
                }
            }
        }
        Coalgebra::new(self.field.clone(), n, out)
    }
}

/// An algebra and a coalgebra on the same space. No compatibility is assumed
/// at construction; the axiom checks decide that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    algebra: Algebra,
    coalgebra: Coalgebra,
}

impl Bialgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra) -> Result<Bialgebra, TensorError> {
        if algebra.dim != coalgebra.dim {
            return Err(TensorError::DimensionMismatch {
                expected: algebra.dim,
                got: coalgebra.dim,
            });
        }
        if algebra.field != coalgebra.field {
            return Err(TensorError::FieldMismatch(
                algebra.field.to_string(),
                coalgebra.field.to_string(),
            ));
        }
        Ok(Bialgebra { algebra, coalgebra })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Applies the same basis change to both structures.
    pub fn change_basis(&self, g: &[Vec<Scalar>]) -> Result<Bialgebra, TensorError> {
        Ok(Bialgebra {
            algebra: self.algebra.change_basis(g)?,
            coalgebra: self.coalgebra.change_basis(g)?,
        })
    }
}

/// A vector in the underlying space, as coefficients over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: FieldDescriptor,
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(field: FieldDescriptor, coeffs: Vec<Scalar>) -> Result<Element, TensorError> {
        check_entries(&field, coeffs.len(), &coeffs)?;
        Ok(Element { field, coeffs })
    }

    pub fn zero(field: &FieldDescriptor, dim: usize) -> Element {
        Element { field: field.clone(), coeffs: vec![Scalar::zero(field); dim] }
    }

    pub fn basis(field: &FieldDescriptor, dim: usize, i: usize) -> Element {
        let mut e = Element::zero(field, dim);
        e.coeffs[i] = Scalar::one(field);
        e
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Result<Element, TensorError> {
        if self.dim() != other.dim() {
            return Err(TensorError::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(Element { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, TensorError> {
        if self.dim() != other.dim() {
            return Err(TensorError::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Element { field: self.field.clone(), coeffs })
    }

    pub fn scale(&self, factor: &Scalar) -> Result<Element, TensorError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(factor))
            .collect::<Result<_, _>>()?;
        Ok(Element { field: self.field.clone(), coeffs })
    }

    /// Renders as a sum over the basis, e.g. `e1 + 2*e2`; zero renders as `0`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(render_scaled(c, &format!("e{}", i + 1)));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_scaled(c: &Scalar, basis: &str) -> String {
    if c.is_one() {
        basis.to_string()
    } else {
        let r = c.render();
        if r.contains(' ') || r.contains('/') {
            format!("({r})*{basis}")
        } else {
            format!("{r}*{basis}")
        }
    }
}

/// A normalized element of the tensor square: sorted unique `(left, right)`
/// basis pairs with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweedlerTerms {
    field: FieldDescriptor,
    dim: usize,
    terms: Vec<(Scalar, usize, usize)>,
}

impl SweedlerTerms {
    pub fn zero(field: &FieldDescriptor, dim: usize) -> SweedlerTerms {
        SweedlerTerms { field: field.clone(), dim, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms as `(coefficient, left index, right index)`, sorted by the pair.
    pub fn terms(&self) -> &[(Scalar, usize, usize)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Componentwise product in the tensor square of the given algebra:
    /// `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul_componentwise(
        &self,
        other: &SweedlerTerms,
        algebra: &Algebra,
    ) -> Result<SweedlerTerms, TensorError> {
        let n = algebra.dim();
        let mut acc = SweedlerAccumulator::new(algebra.field(), n);
        for (ca, la, ra) in &self.terms {
            for (cb, lb, rb) in &other.terms {
                let coeff = ca.mul(cb)?;
                for l in 0..n {
                    let left = algebra.structure_constant(*la, *lb, l);
                    if left.is_zero() {
                        continue;
                    }
                    let cl = coeff.mul(left)?;
                    for r in 0..n {
                        let right = algebra.structure_constant(*ra, *rb, r);
                        if !right.is_zero() {
                            acc.add(l, r, &cl.mul(right)?)?;
                        }
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// Renders as a sum of `e_i⊗e_j` terms; zero renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(c, l, r)| render_scaled(c, &format!("e{}⊗e{}", l + 1, r + 1)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SweedlerTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Builds normalized Sweedler terms from unordered contributions.
pub(crate) struct SweedlerAccumulator {
    field: FieldDescriptor,
    dim: usize,
    dense: Vec<Scalar>,
}

impl SweedlerAccumulator {
    pub(crate) fn new(field: &FieldDescriptor, dim: usize) -> SweedlerAccumulator {
        SweedlerAccumulator {
            field: field.clone(),
            dim,
            dense: vec![Scalar::zero(field); dim * dim],
        }
    }

    pub(crate) fn add(&mut self, l: usize, r: usize, c: &Scalar) -> Result<(), ScalarError> {
        let slot = &mut self.dense[l * self.dim + r];
        *slot = slot.add(c)?;
        Ok(())
    }

    pub(crate) fn finish(self) -> SweedlerTerms {
        let mut terms = Vec::new();
        for l in 0..self.dim {
            for r in 0..self.dim {
                let c = &self.dense[l * self.dim + r];
                if !c.is_zero() {
                    terms.push((c.clone(), l, r));
                }
            }
        }
        SweedlerTerms { field: self.field, dim: self.dim, terms }
    }
}
