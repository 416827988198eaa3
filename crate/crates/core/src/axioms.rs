//! Identity checks over structure constants, with rendered counterexamples.
//!
//! Multilinear identities (associativity, coassociativity, compatibility of
//! product and coproduct, the self-distributive law with comultiplied third
//! argument, cube-zero) are checked on basis tuples only; linearity makes that
//! sufficient. The pointwise self-distributive law `(uv)w = (uw)(vw)` is
//! quadratic in `w`, so it is checked by enumerating all elements, which is
//! only possible over a prime field.
//!
//! Throughout, juxtaposition in the self-distributive identity means the
//! algebra product in the written order: `(ab)c = sum (a c1)(b c2)` where
//! `delta(c) = sum c1 (x) c2`.

use serde::Serialize;

use crate::linalg;
use crate::scalar::{FieldDescriptor, Scalar};
use crate::tensor::{Algebra, Bialgebra, Coalgebra, Element};

/// A failed identity instance with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Where the failure happened (basis names, elements, or axiom labels).
    pub at: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a check. `verdict` is false exactly when `witnesses` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn from_witnesses(witnesses: Vec<Witness>) -> CheckReport {
        CheckReport { verdict: witnesses.is_empty(), witnesses }
    }

    pub fn pass() -> CheckReport {
        CheckReport { verdict: true, witnesses: Vec::new() }
    }
}

/// Errors from checks that require an enumerable field.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("this check requires a prime field, got {0}")]
    RequiresPrimeField(String),
}

/// Caps the witness lists of element-enumeration checks; the verdict itself
/// is decided by the first failure.
const ENUMERATED_WITNESS_CAP: usize = 20;

fn basis_name(i: usize) -> String {
    format!("e{}", i + 1)
}

/// `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
pub fn check_associativity(a: &Algebra) -> CheckReport {
    let n = a.dim();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ei = a.basis_element(i);
                let ej = a.basis_element(j);
                let ek = a.basis_element(k);
                let lhs = a
                    .multiply(&a.multiply(&ei, &ej).expect("same space"), &ek)
                    .expect("same space");
                let rhs = a
                    .multiply(&ei, &a.multiply(&ej, &ek).expect("same space"))
                    .expect("same space");
                if lhs != rhs {
                    witnesses.push(Witness {
                        at: vec![basis_name(i), basis_name(j), basis_name(k)],
                        lhs: lhs.render(),
                        rhs: rhs.render(),
                    });
                }
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Dense vector over basis triples `e_i (x) e_j (x) e_k`.
fn triple_render(dense: &[Scalar], n: usize) -> String {
    let mut parts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = &dense[(i * n + j) * n + k];
                if c.is_zero() {
                    continue;
                }
                let basis = format!("e{}⊗e{}⊗e{}", i + 1, j + 1, k + 1);
                if c.is_one() {
                    parts.push(basis);
                } else {
                    parts.push(format!("{}*{}", c.render(), basis));
                }
            }
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// `(delta (x) id) delta = (id (x) delta) delta` on all basis vectors.
pub fn check_coassociativity(c: &Coalgebra) -> CheckReport {
    let n = c.dim();
    let field = c.field();
    let mut witnesses = Vec::new();
    for i in 0..n {
        let mut left = vec![Scalar::zero(field); n * n * n];
        let mut right = vec![Scalar::zero(field); n * n * n];
        for j in 0..n {
            for k in 0..n {
                let d = c.structure_constant(i, j, k);
                if d.is_zero() {
                    continue;
                }
                for l in 0..n {
                    for m in 0..n {
                        // delta applied to the left leg.
                        let dl = c.structure_constant(j, l, m);
                        if !dl.is_zero() {
                            let slot = &mut left[(l * n + m) * n + k];
                            *slot = slot.add(&d.mul(dl).expect("same field")).expect("same field");
                        }
                        // delta applied to the right leg.
                        let dr = c.structure_constant(k, l, m);
                        if !dr.is_zero() {
                            let slot = &mut right[(j * n + l) * n + m];
                            *slot = slot.add(&d.mul(dr).expect("same field")).expect("same field");
                        }
                    }
                }
            }
        }
        if left != right {
            witnesses.push(Witness {
                at: vec![basis_name(i)],
                lhs: triple_render(&left, n),
                rhs: triple_render(&right, n),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// `tau . delta = delta` on all basis vectors.
pub fn check_cocommutativity(c: &Coalgebra) -> CheckReport {
    let n = c.dim();
    let opposite = c.opposite();
    let mut witnesses = Vec::new();
    for i in 0..n {
        let d = c
            .comultiply(&Element::basis(c.field(), n, i))
            .expect("same space");
        let flipped = opposite
            .comultiply(&Element::basis(c.field(), n, i))
            .expect("same space");
        if d != flipped {
            witnesses.push(Witness {
                at: vec![basis_name(i)],
                lhs: flipped.render(),
                rhs: d.render(),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Solves `(eps (x) id) delta = id = (id (x) eps) delta` exactly. The
/// functional is returned through its values on the basis.
pub fn find_counit(c: &Coalgebra) -> Option<Element> {
    let n = c.dim();
    let field = c.field();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for k in 0..n {
            // sum_j comul[i][j][k] eps_j = [i == k]
            let row = (0..n)
                .map(|j| c.structure_constant(i, j, k).clone())
                .collect();
            rows.push(row);
            rhs.push(delta(field, i, k));
        }
    }
    for i in 0..n {
        for j in 0..n {
            // sum_k comul[i][j][k] eps_k = [i == j]
            let row = (0..n)
                .map(|k| c.structure_constant(i, j, k).clone())
                .collect();
            rows.push(row);
            rhs.push(delta(field, i, j));
        }
    }
    let values = linalg::solve_linear(field, rows, rhs, n)?;
    Some(Element::new(field.clone(), values).expect("validated entries"))
}

/// Solves `u e_i = e_i = e_i u` exactly for a two-sided unit.
pub fn find_unit(a: &Algebra) -> Option<Element> {
    let n = a.dim();
    let field = a.field();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for k in 0..n {
            // sum_j u_j mul[j][i][k] = [i == k]
            let row = (0..n)
                .map(|j| a.structure_constant(j, i, k).clone())
                .collect();
            rows.push(row);
            rhs.push(delta(field, i, k));
            // sum_j u_j mul[i][j][k] = [i == k]
            let row = (0..n)
                .map(|j| a.structure_constant(i, j, k).clone())
                .collect();
            rows.push(row);
            rhs.push(delta(field, i, k));
        }
    }
    let values = linalg::solve_linear(field, rows, rhs, n)?;
    Some(Element::new(field.clone(), values).expect("validated entries"))
}

fn delta(field: &FieldDescriptor, i: usize, j: usize) -> Scalar {
    if i == j {
        Scalar::one(field)
    } else {
        Scalar::zero(field)
    }
}

/// `delta(e_i e_j) = delta(e_i) delta(e_j)` on all basis pairs, with the
/// componentwise product on the tensor square.
pub fn check_consistency(b: &Bialgebra) -> CheckReport {
    let n = b.dim();
    let a = b.algebra();
    let c = b.coalgebra();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let prod = a
                .multiply(&a.basis_element(i), &a.basis_element(j))
                .expect("same space");
            let lhs = c.comultiply(&prod).expect("same space");
            let di = c.comultiply(&a.basis_element(i)).expect("same space");
            let dj = c.comultiply(&a.basis_element(j)).expect("same space");
            let rhs = di.mul_componentwise(&dj, a).expect("same space");
            if lhs != rhs {
                witnesses.push(Witness {
                    at: vec![basis_name(i), basis_name(j)],
                    lhs: lhs.render(),
                    rhs: rhs.render(),
                });
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// The self-distributive law with comultiplied third argument:
/// `(e_i e_j) e_k = sum (e_i k1)(e_j k2)` over `delta(e_k) = sum k1 (x) k2`,
/// on all basis triples.
pub fn check_sd_bialgebra(b: &Bialgebra) -> CheckReport {
    let n = b.dim();
    let a = b.algebra();
    let c = b.coalgebra();
    let mut witnesses = Vec::new();
    for k in 0..n {
        let dk = c.comultiply(&a.basis_element(k)).expect("same space");
        for i in 0..n {
            for j in 0..n {
                let ei = a.basis_element(i);
                let ej = a.basis_element(j);
                let lhs = a
                    .multiply(&a.multiply(&ei, &ej).expect("same space"), &a.basis_element(k))
                    .expect("same space");
                let mut rhs = a.zero_element();
                for (coeff, l, r) in dk.terms() {
                    let left = a.multiply(&ei, &a.basis_element(*l)).expect("same space");
                    let right = a.multiply(&ej, &a.basis_element(*r)).expect("same space");
                    let prod = a.multiply(&left, &right).expect("same space");
                    rhs = rhs
                        .add(&prod.scale(coeff).expect("same field"))
                        .expect("same space");
                }
                if lhs != rhs {
                    witnesses.push(Witness {
                        at: vec![basis_name(i), basis_name(j), basis_name(k)],
                        lhs: lhs.render(),
                        rhs: rhs.render(),
                    });
                }
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// `(e_i e_j) e_k = 0` on all basis triples (equivalently `A^2 A = 0`).
pub fn check_cube_zero(a: &Algebra) -> CheckReport {
    let n = a.dim();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = a
                    .multiply(
                        &a.multiply(&a.basis_element(i), &a.basis_element(j)).expect("same space"),
                        &a.basis_element(k),
                    )
                    .expect("same space");
                if !lhs.is_zero() {
                    witnesses.push(Witness {
                        at: vec![basis_name(i), basis_name(j), basis_name(k)],
                        lhs: lhs.render(),
                        rhs: "0".to_string(),
                    });
                }
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

fn require_prime(field: &FieldDescriptor) -> Result<u64, AxiomError> {
    match field {
        FieldDescriptor::Prime { p } => Ok(*p),
        other => Err(AxiomError::RequiresPrimeField(other.to_string())),
    }
}

/// All `p^dim` elements of an algebra over GF(p), in ascending lexicographic
/// order of the coefficient vectors.
pub fn enumerate_elements(field: &FieldDescriptor, dim: usize) -> Result<Vec<Element>, AxiomError> {
    let p = require_prime(field)?;
    let count = (p as usize).checked_pow(dim as u32).expect("element count fits usize");
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let mut coeffs = Vec::with_capacity(dim);
        let mut rest = index;
        for pos in 0..dim {
            let power = (p as usize).pow((dim - 1 - pos) as u32);
            let digit = (rest / power) as u64;
            rest %= power;
            coeffs.push(Scalar::Prime { p, residue: digit });
        }
        out.push(Element::new(field.clone(), coeffs).expect("validated entries"));
    }
    Ok(out)
}

/// The pointwise self-distributive law `(uv)w = (uw)(vw)` over all element
/// triples of a prime-field algebra. Witness list capped; verdict exact.
pub fn check_sd_algebra_pointwise(a: &Algebra) -> Result<CheckReport, AxiomError> {
    let elements = enumerate_elements(a.field(), a.dim())?;
    let mut witnesses = Vec::new();
    'outer: for u in &elements {
        for v in &elements {
            let uv = a.multiply(u, v).expect("same space");
            for w in &elements {
                let lhs = a.multiply(&uv, w).expect("same space");
                let uw = a.multiply(u, w).expect("same space");
                let vw = a.multiply(v, w).expect("same space");
                let rhs = a.multiply(&uw, &vw).expect("same space");
                if lhs != rhs {
                    witnesses.push(Witness {
                        at: vec![u.render(), v.render(), w.render()],
                        lhs: lhs.render(),
                        rhs: rhs.render(),
                    });
                    if witnesses.len() >= ENUMERATED_WITNESS_CAP {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}

/// All idempotents (`u u = u`, zero included) of a prime-field algebra, in
/// enumeration order.
pub fn find_idempotents(a: &Algebra) -> Result<Vec<Element>, AxiomError> {
    let elements = enumerate_elements(a.field(), a.dim())?;
    Ok(elements
        .into_iter()
        .filter(|u| &a.multiply(u, u).expect("same space") == u)
        .collect())
}

/// Checks `u u = u` symbolically; on failure the witness carries the residual
/// `u u - u`.
pub fn verify_idempotent_family(a: &Algebra, u: &Element) -> Result<CheckReport, crate::tensor::TensorError> {
    let uu = a.multiply(u, u)?;
    if &uu == u {
        return Ok(CheckReport::pass());
    }
    let residual = uu.sub(u)?;
    Ok(CheckReport::from_witnesses(vec![Witness {
        at: vec![format!("u = {}", u.render()), format!("residual = {}", residual.render())],
        lhs: uu.render(),
        rhs: u.render(),
    }]))
}

/// Rack axioms on the whole carrier of a prime-field algebra: every right
/// translation bijective (Q2) and the pointwise self-distributive law (Q3).
pub fn is_rack_carrier(a: &Algebra) -> Result<CheckReport, AxiomError> {
    let elements = enumerate_elements(a.field(), a.dim())?;
    let mut witnesses = Vec::new();
    // Q2: for each y, z -> z y is injective (hence bijective).
    'q2: for y in &elements {
        let mut seen: std::collections::BTreeMap<Vec<u64>, &Element> = Default::default();
        for z in &elements {
            let zy = a.multiply(z, y).expect("same space");
            let key: Vec<u64> = zy
                .coeffs()
                .iter()
                .map(|c| c.as_residue().expect("prime scalar"))
                .collect();
            if let Some(prev) = seen.get(&key) {
                witnesses.push(Witness {
                    at: vec![
                        "Q2".to_string(),
                        format!("y = {}", y.render()),
                        format!("z = {}", prev.render()),
                        format!("z' = {}", z.render()),
                    ],
                    lhs: zy.render(),
                    rhs: zy.render(),
                });
                if witnesses.len() >= ENUMERATED_WITNESS_CAP {
                    break 'q2;
                }
                continue 'q2;
            }
            seen.insert(key, z);
        }
    }
    // Q3: pointwise self-distributivity.
    if witnesses.len() < ENUMERATED_WITNESS_CAP {
        let sd = check_sd_algebra_pointwise(a)?;
        for w in sd.witnesses {
            let mut at = vec!["Q3".to_string()];
            at.extend(w.at);
            witnesses.push(Witness { at, lhs: w.lhs, rhs: w.rhs });
            if witnesses.len() >= ENUMERATED_WITNESS_CAP {
                break;
            }
        }
    }
    Ok(CheckReport::from_witnesses(witnesses))
}
