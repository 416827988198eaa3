//! Classification of two-dimensional structures over small prime fields:
//! canonical forms under basis change, exhaustive enumerations, and
//! completeness audits of the family catalog.
//!
//! Everything here works on flattened residue tensors (`[u64; 8]`, row-major
//! in `(i, j, k)`) with hand-rolled mod-p arithmetic, so the `p^8` scans stay
//! fast. The generic scalar-based checks in [`crate::axioms`] provide the
//! independent slow route; the two are cross-checked in the test suites.

pub mod families;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::scalar::FieldDescriptor;
use crate::tensor::{Algebra, Coalgebra};

pub use families::{
    comultiplication_tensor, family_catalog, full_catalog, FamilyDescriptor, InstantiateError,
};

/// Primes for which the exhaustive scans are supported.
pub const SUPPORTED_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("requires a prime field, got {0}")]
    RequiresPrimeField(String),
    #[error("requires dimension 2, got {0}")]
    WrongDimension(usize),
    #[error("p = {p} is not supported: the search space has {estimate} points (supported primes: 2, 3, 5)")]
    PrimeTooLarge { p: u64, estimate: u128 },
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
}

/// A tensor as nested arrays `[i][j][k]`, the shape used in JSON reports.
pub type NestedTensor = Vec<Vec<Vec<u64>>>;

/// Nests a flat row-major dimension-2 tensor.
pub fn nest_tensor(flat: &[u64]) -> NestedTensor {
    assert_eq!(flat.len(), 8);
    (0..2)
        .map(|i| (0..2).map(|j| (0..2).map(|k| flat[idx(i, j, k)]).collect()).collect())
        .collect()
}

fn ser_tensor<S: Serializer>(flat: &Vec<u64>, s: S) -> Result<S::Ok, S::Error> {
    nest_tensor(flat).serialize(s)
}

fn ser_opt_tensor<S: Serializer>(flat: &Option<Vec<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match flat {
        Some(t) => nest_tensor(t).serialize(s),
        None => s.serialize_none(),
    }
}

fn idx(i: usize, j: usize, k: usize) -> usize {
    4 * i + 2 * j + k
}

/// Extracts the flat residue tensor of a dimension-2 structure over GF(p).
fn residue_tensor(
    field: &FieldDescriptor,
    dim: usize,
    tensor: &[crate::scalar::Scalar],
) -> Result<(Vec<u64>, u64), ClassifyError> {
    let p = match field {
        FieldDescriptor::Prime { p } => *p,
        other => return Err(ClassifyError::RequiresPrimeField(other.to_string())),
    };
    if dim != 2 {
        return Err(ClassifyError::WrongDimension(dim));
    }
    let flat = tensor
        .iter()
        .map(|s| s.as_residue().expect("prime-field scalar"))
        .collect();
    Ok((flat, p))
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn negm(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

fn invm(a: u64, p: u64) -> u64 {
    // p is tiny; scan for the inverse.
    (1..p).find(|&b| mulm(a, b, p) == 1).expect("nonzero residue")
}

/// 2x2 inverse mod p; `None` when singular. Matrices are `[m00, m01, m10, m11]`.
fn inv2(m: &[u64; 4], p: u64) -> Option<[u64; 4]> {
    let det = (mulm(m[0], m[3], p) + p - mulm(m[1], m[2], p)) % p;
    if det == 0 {
        return None;
    }
    let d = invm(det, p);
    Some([
        mulm(m[3], d, p),
        mulm(negm(m[1], p), d, p),
        mulm(negm(m[2], p), d, p),
        mulm(m[0], d, p),
    ])
}

/// All invertible 2x2 matrices over GF(p), paired with their inverses, in
/// ascending lexicographic order of entries.
fn gl2(p: u64) -> Vec<([u64; 4], [u64; 4])> {
    let mut out = Vec::new();
    for m00 in 0..p {
        for m01 in 0..p {
            for m10 in 0..p {
                for m11 in 0..p {
                    let m = [m00, m01, m10, m11];
                    if let Some(mi) = inv2(&m, p) {
                        out.push((m, mi));
                    }
                }
            }
        }
    }
    out
}

/// Multiplication tensor in the basis whose vectors are the rows of `g`:
/// `c'[i][j][l] = sum g[i][a] g[j][b] c[a][b][k] gi[k][l]`.
fn transform_mul(c: &[u64], g: &[u64; 4], gi: &[u64; 4], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; 8];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                let mut acc = 0;
                for a in 0..2 {
                    if g[2 * i + a] == 0 {
                        continue;
                    }
                    for b in 0..2 {
                        if g[2 * j + b] == 0 {
                            continue;
                        }
                        let gg = mulm(g[2 * i + a], g[2 * j + b], p);
                        for k in 0..2 {
                            acc = addm(acc, mulm(gg, mulm(c[idx(a, b, k)], gi[2 * k + l], p), p), p);
                        }
                    }
                }
                out[idx(i, j, l)] = acc;
            }
        }
    }
    out
}

/// Comultiplication tensor under the same basis change: the input leg goes
/// through `g`, both output legs through the inverse.
fn transform_comul(d: &[u64], g: &[u64; 4], gi: &[u64; 4], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; 8];
    for i in 0..2 {
        for l in 0..2 {
            for m in 0..2 {
                let mut acc = 0;
                for a in 0..2 {
                    if g[2 * i + a] == 0 {
                        continue;
                    }
                    for j in 0..2 {
                        for k in 0..2 {
                            let t = mulm(
                                d[idx(a, j, k)],
                                mulm(gi[2 * j + l], gi[2 * k + m], p),
                                p,
                            );
                            acc = addm(acc, mulm(g[2 * i + a], t, p), p);
                        }
                    }
                }
                out[idx(i, l, m)] = acc;
            }
        }
    }
    out
}

fn canonical_with(
    flat: &[u64],
    group: &[([u64; 4], [u64; 4])],
    p: u64,
    comul: bool,
) -> Vec<u64> {
    let mut best = flat.to_vec();
    for (g, gi) in group {
        let t = if comul {
            transform_comul(flat, g, gi, p)
        } else {
            transform_mul(flat, g, gi, p)
        };
        if t < best {
            best = t;
        }
    }
    best
}

fn check_canonical_cost(p: u64) -> Result<(), ClassifyError> {
    let group_size = (p * p - 1) as u128 * (p * p - p) as u128;
    if group_size > 1_000_000 {
        return Err(ClassifyError::PrimeTooLarge { p, estimate: group_size });
    }
    Ok(())
}

/// Lexicographically smallest flat tensor in the basis-change orbit of the
/// multiplication. Two algebras over the same GF(p) are isomorphic exactly
/// when their canonical forms coincide.
pub fn canonical_form_algebra(a: &Algebra) -> Result<Vec<u64>, ClassifyError> {
    let (flat, p) = residue_tensor(a.field(), a.dim(), a.tensor())?;
    check_canonical_cost(p)?;
    Ok(canonical_with(&flat, &gl2(p), p, false))
}

/// Canonical form of a comultiplication tensor, same convention.
pub fn canonical_form_coalgebra(c: &Coalgebra) -> Result<Vec<u64>, ClassifyError> {
    let (flat, p) = residue_tensor(c.field(), c.dim(), c.tensor())?;
    check_canonical_cost(p)?;
    Ok(canonical_with(&flat, &gl2(p), p, true))
}

/// The five pairwise non-isomorphic associative multiplications without a
/// two-sided unit, as reference tables (index is the 1-based case number):
/// 1: `x^2 = x, yx = y`; 2: `x^2 = x, xy = y`; 3: `x^2 = x`; 4: `x^2 = y`;
/// 5: zero.
pub fn reference_multiplications(field: &FieldDescriptor) -> Vec<Algebra> {
    let tables: [&[(usize, usize, usize)]; 5] = [
        &[(0, 0, 0), (1, 0, 1)],
        &[(0, 0, 0), (0, 1, 1)],
        &[(0, 0, 0)],
        &[(0, 0, 1)],
        &[],
    ];
    tables
        .iter()
        .map(|ones| {
            Algebra::from_fn(field.clone(), 2, |i, j, k| {
                if ones.contains(&(i, j, k)) {
                    crate::scalar::Scalar::one(field)
                } else {
                    crate::scalar::Scalar::zero(field)
                }
            })
        })
        .collect()
}

/// Which reference case (1..=5) the algebra is isomorphic to, if any.
pub fn match_reference_multiplication(a: &Algebra) -> Result<Option<u8>, ClassifyError> {
    let canon = canonical_form_algebra(a)?;
    for (i, r) in reference_multiplications(a.field()).iter().enumerate() {
        if canonical_form_algebra(r)? == canon {
            return Ok(Some(i as u8 + 1));
        }
    }
    Ok(None)
}

fn check_scan_prime(p: u64) -> Result<(), ClassifyError> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(ClassifyError::PrimeTooLarge { p, estimate: (p as u128).pow(8) });
    }
    Ok(())
}

/// Advances a little-endian-in-the-last-digit base-p counter; false on wrap.
fn next_tensor(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn assoc_holds(c: &[u64], p: u64) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    let mut lhs = 0;
                    let mut rhs = 0;
                    for l in 0..2 {
                        lhs = addm(lhs, mulm(c[idx(i, j, l)], c[idx(l, k, m)], p), p);
                        rhs = addm(rhs, mulm(c[idx(j, k, l)], c[idx(i, l, m)], p), p);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn has_two_sided_unit(c: &[u64], p: u64) -> bool {
    for u0 in 0..p {
        'unit: for u1 in 0..p {
            let u = [u0, u1];
            for i in 0..2 {
                for k in 0..2 {
                    let want = u64::from(i == k);
                    let mut left = 0;
                    let mut right = 0;
                    for (j, uj) in u.iter().enumerate() {
                        left = addm(left, mulm(*uj, c[idx(j, i, k)], p), p);
                        right = addm(right, mulm(*uj, c[idx(i, j, k)], p), p);
                    }
                    if left != want || right != want {
                        continue 'unit;
                    }
                }
            }
            return true;
        }
    }
    false
}

/// `delta(e_i e_j) = delta(e_i) delta(e_j)` with the componentwise product.
fn consistency_holds(c: &[u64], d: &[u64], p: u64) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    let mut lhs = 0;
                    for k in 0..2 {
                        lhs = addm(lhs, mulm(c[idx(i, j, k)], d[idx(k, u, v)], p), p);
                    }
                    let mut rhs = 0;
                    for a in 0..2 {
                        for b in 0..2 {
                            let dab = d[idx(i, a, b)];
                            if dab == 0 {
                                continue;
                            }
                            for s in 0..2 {
                                for t in 0..2 {
                                    let dst = d[idx(j, s, t)];
                                    if dst == 0 {
                                        continue;
                                    }
                                    let prod = mulm(c[idx(a, s, u)], c[idx(b, t, v)], p);
                                    rhs = addm(rhs, mulm(mulm(dab, dst, p), prod, p), p);
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `(e_i e_j) e_k = sum (e_i k1)(e_j k2)` over `delta(e_k) = k1 (x) k2`.
fn sd_holds(c: &[u64], d: &[u64], p: u64) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    let mut lhs = 0;
                    for l in 0..2 {
                        lhs = addm(lhs, mulm(c[idx(i, j, l)], c[idx(l, k, m)], p), p);
                    }
                    let mut rhs = 0;
                    for a in 0..2 {
                        for b in 0..2 {
                            let dk = d[idx(k, a, b)];
                            if dk == 0 {
                                continue;
                            }
                            let mut inner = 0;
                            for u in 0..2 {
                                let cia = c[idx(i, a, u)];
                                if cia == 0 {
                                    continue;
                                }
                                for v in 0..2 {
                                    let prod = mulm(c[idx(j, b, v)], c[idx(u, v, m)], p);
                                    inner = addm(inner, mulm(cia, prod, p), p);
                                }
                            }
                            rhs = addm(rhs, mulm(dk, inner, p), p);
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Bilinear product of coefficient vectors through a flat residue tensor.
fn mul_vec(c: &[u64], u: &[u64; 2], v: &[u64; 2], p: u64) -> [u64; 2] {
    let mut out = [0u64; 2];
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            let uv = mulm(ui, vj, p);
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = addm(*slot, mulm(uv, c[idx(i, j, k)], p), p);
            }
        }
    }
    out
}

/// Pointwise right self-distributivity `(uv)w = (uw)(vw)` over every element
/// triple of GF(p)^2, on a flat residue tensor.
pub fn pointwise_sd_residues(c: &[u64], p: u64) -> bool {
    let mut elements = Vec::with_capacity((p * p) as usize);
    for a in 0..p {
        for b in 0..p {
            elements.push([a, b]);
        }
    }
    for u in &elements {
        for v in &elements {
            let uv = mul_vec(c, u, v, p);
            for w in &elements {
                let lhs = mul_vec(c, &uv, w, p);
                let uw = mul_vec(c, u, w, p);
                let vw = mul_vec(c, v, w, p);
                if lhs != mul_vec(c, &uw, &vw, p) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(e_i e_j) e_k = 0` on every basis triple of a flat residue tensor.
pub fn cube_zero_residues(c: &[u64], p: u64) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    let mut acc = 0;
                    for l in 0..2 {
                        acc = addm(acc, mulm(c[idx(i, j, l)], c[idx(l, k, m)], p), p);
                    }
                    if acc != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// One isomorphism class found by [`enumerate_associative_nonunital`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalClass {
    #[serde(serialize_with = "ser_tensor")]
    pub canonical: Vec<u64>,
    /// The smallest member tensor in scan order.
    #[serde(serialize_with = "ser_tensor")]
    pub representative: Vec<u64>,
    /// Number of tensors in the class (its orbit size).
    pub size: usize,
    /// Reference case (1..=5) with the same canonical form, if any.
    pub matches_case: Option<u8>,
}

/// Scans all `p^8` multiplication tensors over GF(p) and groups the
/// associative ones without a two-sided unit into isomorphism classes.
pub fn enumerate_associative_nonunital(p: u64) -> Result<Vec<CanonicalClass>, ClassifyError> {
    check_scan_prime(p)?;
    let group = gl2(p);
    let mut classes: BTreeMap<Vec<u64>, (Vec<u64>, usize)> = BTreeMap::new();
    let mut c = vec![0u64; 8];
    loop {
        if assoc_holds(&c, p) && !has_two_sided_unit(&c, p) {
            let canon = canonical_with(&c, &group, p, false);
            let entry = classes.entry(canon).or_insert_with(|| (c.clone(), 0));
            entry.1 += 1;
        }
        if !next_tensor(&mut c, p) {
            break;
        }
    }
    let field = FieldDescriptor::prime(p).expect("supported prime");
    let reference: Vec<Vec<u64>> = reference_multiplications(&field)
        .iter()
        .map(|r| canonical_form_algebra(r))
        .collect::<Result<_, _>>()?;
    Ok(classes
        .into_iter()
        .map(|(canonical, (representative, size))| {
            let matches_case = reference
                .iter()
                .position(|r| r == &canonical)
                .map(|i| i as u8 + 1);
            CanonicalClass { canonical, representative, size, matches_case }
        })
        .collect())
}

/// Flat residue tensor of one of the five printed comultiplications.
fn comul_residues(comul_type: u8) -> Vec<u64> {
    let mut d = vec![0u64; 8];
    let ones: &[(usize, usize, usize)] = match comul_type {
        1 => &[(0, 0, 0), (1, 0, 1)],
        2 => &[(0, 0, 0), (1, 1, 0)],
        3 => &[(0, 0, 0)],
        4 => &[(1, 1, 1)],
        5 => &[],
        other => panic!("comultiplication type {other} out of range 1..=5"),
    };
    for &(i, j, k) in ones {
        d[idx(i, j, k)] = 1;
    }
    d
}

/// All multiplication tensors over GF(p) that make the given printed
/// comultiplication a consistent self-distributive bialgebra, in ascending
/// lexicographic order.
pub fn enumerate_sd_multiplications(
    comul_type: u8,
    p: u64,
) -> Result<Vec<Vec<u64>>, ClassifyError> {
    check_scan_prime(p)?;
    let d = comul_residues(comul_type);
    let mut out = Vec::new();
    let mut c = vec![0u64; 8];
    loop {
        if consistency_holds(&c, &d, p) && sd_holds(&c, &d, p) {
            out.push(c.clone());
        }
        if !next_tensor(&mut c, p) {
            break;
        }
    }
    Ok(out)
}

/// Comparison of the exhaustive solution set against the family catalog.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    #[serde(rename = "type")]
    pub comul_type: u8,
    pub p: u64,
    /// Every admissible family instance satisfies the axioms.
    pub sound: bool,
    /// Solutions not reached by any family instance.
    pub missing_from_families: Vec<NestedTensor>,
    /// Number of admissible (family, parameter point) pairs.
    pub family_instances: usize,
    /// Number of solution tensors found by the scan.
    pub solutions: usize,
    /// Family instances that fail the axioms (empty when sound).
    pub unsound_instances: Vec<NestedTensor>,
}

/// Runs the full scan for one comultiplication type and checks the family
/// catalog against it in both directions.
pub fn verify_family_completeness(comul_type: u8, p: u64) -> Result<AuditReport, ClassifyError> {
    let solutions = enumerate_sd_multiplications(comul_type, p)?;
    let solution_set: BTreeSet<&[u64]> = solutions.iter().map(Vec::as_slice).collect();
    let mut instance_tensors: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut family_instances = 0usize;
    for family in family_catalog(comul_type) {
        for (_, instance) in family.admissible_points(p)? {
            let (flat, _) = residue_tensor(
                instance.algebra().field(),
                instance.algebra().dim(),
                instance.algebra().tensor(),
            )?;
            family_instances += 1;
            instance_tensors.insert(flat);
        }
    }
    let unsound_instances: Vec<NestedTensor> = instance_tensors
        .iter()
        .filter(|t| !solution_set.contains(t.as_slice()))
        .map(|t| nest_tensor(t))
        .collect();
    let missing_from_families: Vec<NestedTensor> = solutions
        .iter()
        .filter(|t| !instance_tensors.contains(*t))
        .map(|t| nest_tensor(t))
        .collect();
    Ok(AuditReport {
        comul_type,
        p,
        sound: unsound_instances.is_empty(),
        missing_from_families,
        family_instances,
        solutions: solutions.len(),
        unsound_instances,
    })
}

/// The literal transpose of one reference multiplication, compared against
/// the printed comultiplication types.
#[derive(Clone, Debug, Serialize)]
pub struct DualCase {
    pub case: u8,
    /// `dual[k][i][j] = mul[i][j][k]`.
    #[serde(serialize_with = "ser_tensor")]
    pub dual: Vec<u64>,
    /// Printed type with the same canonical form, smallest first, if any.
    pub matches_printed_type: Option<u8>,
    /// The dual rewritten in the swapped basis, recorded when no printed
    /// type matches.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_tensor")]
    pub basis_swapped: Option<Vec<u64>>,
}

/// How dualizing the five reference multiplications relates to the five
/// printed comultiplication types over GF(p).
#[derive(Clone, Debug, Serialize)]
pub struct DualizationReport {
    pub p: u64,
    pub cases: Vec<DualCase>,
    /// Pairs of printed types that are themselves basis-change equivalent.
    pub equivalent_printed_types: Vec<[u8; 2]>,
}

pub fn dualization_report(p: u64) -> Result<DualizationReport, ClassifyError> {
    check_scan_prime(p)?;
    let group = gl2(p);
    let printed: Vec<Vec<u64>> = (1..=5)
        .map(|t| canonical_with(&comul_residues(t), &group, p, true))
        .collect();
    let field = FieldDescriptor::prime(p).expect("supported prime");
    let mut cases = Vec::new();
    for (index, reference) in reference_multiplications(&field).iter().enumerate() {
        let (mul, _) = residue_tensor(reference.field(), reference.dim(), reference.tensor())?;
        let mut dual = vec![0u64; 8];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    dual[idx(k, i, j)] = mul[idx(i, j, k)];
                }
            }
        }
        let canon = canonical_with(&dual, &group, p, true);
        let matches_printed_type =
            printed.iter().position(|t| t == &canon).map(|i| i as u8 + 1);
        let basis_swapped = if matches_printed_type.is_none() {
            let swap = [0, 1, 1, 0];
            Some(transform_comul(&dual, &swap, &swap, p))
        } else {
            None
        };
        cases.push(DualCase {
            case: index as u8 + 1,
            dual,
            matches_printed_type,
            basis_swapped,
        });
    }
    let mut equivalent_printed_types = Vec::new();
    for s in 0..5 {
        for t in (s + 1)..5 {
            if printed[s] == printed[t] {
                equivalent_printed_types.push([s as u8 + 1, t as u8 + 1]);
            }
        }
    }
    Ok(DualizationReport { p, cases, equivalent_printed_types })
}
