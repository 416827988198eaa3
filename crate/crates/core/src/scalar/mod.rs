//! Exact scalar domains: big rationals, prime-field residues, and rational
//! functions in declared parameters. No floating point anywhere.
//!
//! Rational functions are kept reduced (numerator and denominator coprime) and
//! the denominator is scaled to leading coefficient 1 under the graded-lex
//! order of the declared variables, so structural equality is mathematical
//! equality.

mod parse;
mod poly;

pub use parse::parse_scalar;
pub use poly::{gcd as poly_gcd, Monomial, Polynomial};

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Errors from scalar construction, arithmetic, parsing, and evaluation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator evaluates to zero")]
    Pole,
    #[error("coefficient denominator {denominator} vanishes modulo {p}")]
    CoefficientDenominator { denominator: String, p: u64 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("scalar is not from a params field")]
    NotParametric,
}

/// Which exact field the scalars live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[serde(try_from = "RawFieldDescriptor")]
pub enum FieldDescriptor {
    /// Arbitrary-precision rationals.
    Rational,
    /// Integers modulo a prime `p`.
    Prime { p: u64 },
    /// Rational functions over the rationals in the declared variables.
    Params { vars: Vec<String> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawFieldDescriptor {
    Rational,
    Prime { p: u64 },
    Params { vars: Vec<String> },
}

impl TryFrom<RawFieldDescriptor> for FieldDescriptor {
    type Error = ScalarError;

    fn try_from(raw: RawFieldDescriptor) -> Result<Self, ScalarError> {
        match raw {
            RawFieldDescriptor::Rational => Ok(FieldDescriptor::Rational),
            RawFieldDescriptor::Prime { p } => FieldDescriptor::prime(p),
            RawFieldDescriptor::Params { vars } => FieldDescriptor::params(vars),
        }
    }
}

impl FieldDescriptor {
    pub fn rational() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    /// Prime field of order `p`. Primality is checked here.
    pub fn prime(p: u64) -> Result<FieldDescriptor, ScalarError> {
        if is_prime(p) {
            Ok(FieldDescriptor::Prime { p })
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// Rational-function field in the given variables. Names must be distinct
    /// and match `[a-z][a-z0-9]*`.
    pub fn params(vars: Vec<String>) -> Result<FieldDescriptor, ScalarError> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_variable_name(v) {
                return Err(ScalarError::BadVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(ScalarError::DuplicateVariable(v.clone()));
            }
        }
        Ok(FieldDescriptor::Params { vars })
    }

    /// Variable list for params fields, empty otherwise.
    pub fn vars(&self) -> &[String] {
        match self {
            FieldDescriptor::Params { vars } => vars,
            _ => &[],
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "GF({p})"),
            FieldDescriptor::Params { vars } => write!(f, "Q({})", vars.join(", ")),
        }
    }
}

pub(crate) fn valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

/// Reduced ratio of polynomials in the declared variables. The denominator is
/// nonzero with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    vars: Vec<String>,
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    fn normalized(
        vars: Vec<String>,
        num: Polynomial,
        den: Polynomial,
    ) -> Result<RationalFunction, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(vars.len()),
                den: Polynomial::one(vars.len()),
                vars,
            });
        }
        let g = poly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().1.clone().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
            vars,
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }
}

/// A value in one of the three supported field kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, residue: u64 },
    RationalFunction(Box<RationalFunction>),
}

/// Binary operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two scalars of the same field.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

impl Scalar {
    pub fn zero(field: &FieldDescriptor) -> Scalar {
        match field {
            FieldDescriptor::Rational => Scalar::Rational(BigRational::zero()),
            FieldDescriptor::Prime { p } => Scalar::Prime { p: *p, residue: 0 },
            FieldDescriptor::Params { vars } => Scalar::RationalFunction(Box::new(RationalFunction {
                vars: vars.clone(),
                num: Polynomial::zero(vars.len()),
                den: Polynomial::one(vars.len()),
            })),
        }
    }

    pub fn one(field: &FieldDescriptor) -> Scalar {
        Scalar::from_integer(1, field)
    }

    pub fn from_integer(n: i64, field: &FieldDescriptor) -> Scalar {
        Scalar::from_bigint(&BigInt::from(n), field)
    }

    pub fn from_bigint(n: &BigInt, field: &FieldDescriptor) -> Scalar {
        match field {
            FieldDescriptor::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::Prime { p } => Scalar::Prime { p: *p, residue: bigint_mod(n, *p) },
            FieldDescriptor::Params { vars } => {
                Scalar::RationalFunction(Box::new(RationalFunction {
                    vars: vars.clone(),
                    num: Polynomial::constant(
                        BigRational::from_integer(n.clone()),
                        vars.len(),
                    ),
                    den: Polynomial::one(vars.len()),
                }))
            }
        }
    }

    /// The variable `name` as a scalar of a params field.
    pub fn variable(name: &str, field: &FieldDescriptor) -> Result<Scalar, ScalarError> {
        match field {
            FieldDescriptor::Params { vars } => {
                let index = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
                Ok(Scalar::RationalFunction(Box::new(RationalFunction {
                    vars: vars.clone(),
                    num: Polynomial::variable(index, vars.len()),
                    den: Polynomial::one(vars.len()),
                })))
            }
            _ => Err(ScalarError::UnknownVariable(name.to_string())),
        }
    }

    /// The descriptor of the field this scalar belongs to.
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rational,
            Scalar::Prime { p, .. } => FieldDescriptor::Prime { p: *p },
            Scalar::RationalFunction(rf) => FieldDescriptor::Params { vars: rf.vars.clone() },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
            Scalar::RationalFunction(rf) => rf.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
            Scalar::RationalFunction(rf) => {
                rf.den.as_constant().map_or(false, |c| c.is_one())
                    && rf.num.as_constant().map_or(false, |c| c.is_one())
            }
        }
    }

    /// Numerator and denominator when this is a params-field scalar.
    pub fn as_rational_function(&self) -> Option<&RationalFunction> {
        match self {
            Scalar::RationalFunction(rf) => Some(rf),
            _ => None,
        }
    }

    /// Residue when this is a prime-field scalar.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime { residue, .. } => Some(*residue),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime { p, residue: a }, Scalar::Prime { p: q, residue: b }) if p == q => {
                Ok(Scalar::Prime { p: *p, residue: addmod(*a, *b, *p) })
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) if a.vars == b.vars => {
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                Ok(Scalar::RationalFunction(Box::new(RationalFunction::normalized(
                    a.vars.clone(),
                    num,
                    den,
                )?)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a.clone()),
            Scalar::Prime { p, residue } => Scalar::Prime { p: *p, residue: (*p - *residue) % *p },
            Scalar::RationalFunction(a) => Scalar::RationalFunction(Box::new(RationalFunction {
                vars: a.vars.clone(),
                num: a.num.neg(),
                den: a.den.clone(),
            })),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime { p, residue: a }, Scalar::Prime { p: q, residue: b }) if p == q => {
                Ok(Scalar::Prime { p: *p, residue: mulmod(*a, *b, *p) })
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) if a.vars == b.vars => {
                Ok(Scalar::RationalFunction(Box::new(RationalFunction::normalized(
                    a.vars.clone(),
                    a.num.mul(&b.num),
                    a.den.mul(&b.den),
                )?)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                if b.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a / b))
                }
            }
            (Scalar::Prime { p, residue: a }, Scalar::Prime { p: q, residue: b }) if p == q => {
                if *b == 0 {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Prime { p: *p, residue: mulmod(*a, invmod(*b, *p), *p) })
                }
            }
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) if a.vars == b.vars => {
                if b.num.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::RationalFunction(Box::new(RationalFunction::normalized(
                    a.vars.clone(),
                    a.num.mul(&b.den),
                    a.den.mul(&b.num),
                )?)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        Scalar::one(&self.field()).div(self)
    }

    /// Nonnegative integer power; `x^0 = 1`.
    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Prime { p, residue } => Scalar::Prime { p: *p, residue: powmod(*residue, exp.into(), *p) },
            _ => {
                let mut out = Scalar::one(&self.field());
                for _ in 0..exp {
                    out = out.mul(self).expect("same field");
                }
                out
            }
        }
    }

    /// Substitutes target-field scalars for every declared variable of a
    /// params-field scalar. The assignment must cover the variable set exactly;
    /// a vanishing denominator is a pole.
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<String, Scalar>,
        target: &FieldDescriptor,
    ) -> Result<Scalar, ScalarError> {
        let rf = match self {
            Scalar::RationalFunction(rf) => rf,
            _ => return Err(ScalarError::NotParametric),
        };
        for key in assignment.keys() {
            if !rf.vars.contains(key) {
                return Err(ScalarError::UnknownVariable(key.clone()));
            }
        }
        let mut values = Vec::with_capacity(rf.vars.len());
        for v in &rf.vars {
            let value = assignment
                .get(v)
                .ok_or_else(|| ScalarError::MissingAssignment(v.clone()))?;
            if &value.field() != target {
                return Err(ScalarError::FieldMismatch(
                    value.field().to_string(),
                    target.to_string(),
                ));
            }
            values.push(value.clone());
        }
        let num = rf.num.eval(&values, target)?;
        let den = rf.den.eval(&values, target)?;
        if den.is_zero() {
            return Err(ScalarError::Pole);
        }
        num.div(&den)
    }

    /// Canonical text form; parses back to the same scalar.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    format!("-{}", poly::render_rational(&q.abs()))
                } else {
                    poly::render_rational(q)
                }
            }
            Scalar::Prime { residue, .. } => residue.to_string(),
            Scalar::RationalFunction(rf) => {
                if rf.den.as_constant().map_or(false, |c| c.is_one()) {
                    rf.num.render(&rf.vars)
                } else {
                    format!("({})/({})", rf.num.render(&rf.vars), rf.den.render(&rf.vars))
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Maps a rational coefficient into the target field. In a prime field this
/// fails when the denominator is divisible by p.
pub(crate) fn rational_to_field(
    q: &BigRational,
    target: &FieldDescriptor,
) -> Result<Scalar, ScalarError> {
    match target {
        FieldDescriptor::Rational => Ok(Scalar::Rational(q.clone())),
        FieldDescriptor::Prime { p } => {
            let den = bigint_mod(q.denom(), *p);
            if den == 0 {
                return Err(ScalarError::CoefficientDenominator {
                    denominator: q.denom().to_string(),
                    p: *p,
                });
            }
            let num = bigint_mod(q.numer(), *p);
            Ok(Scalar::Prime { p: *p, residue: mulmod(num, invmod(den, *p), *p) })
        }
        FieldDescriptor::Params { vars } => {
            Ok(Scalar::RationalFunction(Box::new(RationalFunction {
                vars: vars.clone(),
                num: Polynomial::constant(q.clone(), vars.len()),
                den: Polynomial::one(vars.len()),
            })))
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(p)) as u64
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod p.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(vars: &[&str]) -> FieldDescriptor {
        FieldDescriptor::params(vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn descriptor_construction_validates() {
        assert!(FieldDescriptor::prime(5).is_ok());
        assert_eq!(FieldDescriptor::prime(6), Err(ScalarError::NotPrime(6)));
        assert!(FieldDescriptor::params(vec!["c1".into(), "c2".into()]).is_ok());
        assert!(matches!(
            FieldDescriptor::params(vec!["C1".into()]),
            Err(ScalarError::BadVariableName(_))
        ));
        assert!(matches!(
            FieldDescriptor::params(vec!["c".into(), "c".into()]),
            Err(ScalarError::DuplicateVariable(_))
        ));
    }

    #[test]
    fn descriptor_deserialization_validates() {
        let ok: FieldDescriptor = serde_json::from_str(r#"{"kind":"prime","p":5}"#).unwrap();
        assert_eq!(ok, FieldDescriptor::Prime { p: 5 });
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"kind":"prime","p":4}"#).is_err());
        let rt: FieldDescriptor = serde_json::from_str(r#"{"kind":"rational"}"#).unwrap();
        assert_eq!(rt, FieldDescriptor::Rational);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldDescriptor::prime(5).unwrap();
        let a = Scalar::from_integer(7, &f);
        assert_eq!(a.as_residue(), Some(2));
        let b = Scalar::from_integer(4, &f);
        assert_eq!(a.add(&b).unwrap().as_residue(), Some(1));
        assert_eq!(a.div(&b).unwrap().as_residue(), Some(3)); // 2 * 4^{-1} = 2*4 = 8 = 3
        assert_eq!(
            a.div(&Scalar::zero(&f)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let a = Scalar::from_integer(1, &FieldDescriptor::rational());
        let b = Scalar::from_integer(1, &FieldDescriptor::prime(3).unwrap());
        assert!(matches!(a.add(&b), Err(ScalarError::FieldMismatch(_, _))));
    }

    #[test]
    fn rational_function_normalization() {
        // 1 / (1 - c2): canonical form has monic denominator c2 - 1.
        let f = params(&["c2"]);
        let one = Scalar::one(&f);
        let c2 = Scalar::variable("c2", &f).unwrap();
        let r = one.div(&one.sub(&c2).unwrap()).unwrap();
        assert_eq!(r.render(), "(-1)/(c2 - 1)");
        // Round trip.
        assert_eq!(parse_scalar(&r.render(), &f).unwrap(), r);
    }

    #[test]
    fn evaluate_into_prime_field() {
        // (-c1^2*c2)/(1-c2)^2 at c1=1, c2=2 over GF(5): -2/1 = 3.
        let f = params(&["c1", "c2"]);
        let s = parse_scalar("(-(c1^2)*c2)/((1-c2)^2)", &f).unwrap();
        let gf5 = FieldDescriptor::prime(5).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("c1".to_string(), Scalar::from_integer(1, &gf5));
        asg.insert("c2".to_string(), Scalar::from_integer(2, &gf5));
        assert_eq!(s.evaluate(&asg, &gf5).unwrap().as_residue(), Some(3));
    }

    #[test]
    fn evaluate_reports_poles() {
        let f = params(&["c2"]);
        let s = parse_scalar("1/(1-c2)", &f).unwrap();
        let gf3 = FieldDescriptor::prime(3).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("c2".to_string(), Scalar::from_integer(1, &gf3));
        assert_eq!(s.evaluate(&asg, &gf3), Err(ScalarError::Pole));
    }

    #[test]
    fn evaluate_reports_coefficient_denominators() {
        // c/2 has coefficient denominator 2, which vanishes over GF(2).
        let f = params(&["c"]);
        let s = parse_scalar("c/2", &f).unwrap();
        let gf2 = FieldDescriptor::prime(2).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("c".to_string(), Scalar::from_integer(1, &gf2));
        assert!(matches!(
            s.evaluate(&asg, &gf2),
            Err(ScalarError::CoefficientDenominator { .. })
        ));
    }

    #[test]
    fn evaluate_into_params_target() {
        // Renaming c to a across params fields.
        let src = params(&["c"]);
        let dst = params(&["a", "c"]);
        let s = parse_scalar("c^2 + 1", &src).unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("c".to_string(), Scalar::variable("a", &dst).unwrap());
        let out = s.evaluate(&asg, &dst).unwrap();
        assert_eq!(out, parse_scalar("a^2 + 1", &dst).unwrap());
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "n = {n}");
        }
    }
}
