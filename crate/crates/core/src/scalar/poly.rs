//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a map keyed by exponent vectors ordered graded-lexicographically
//! (total degree first, then the declared variable order, earlier variables more
//! significant). The leading term of a nonzero polynomial is the maximal key.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exponent vector of a single term. Length always equals the owning
/// polynomial's variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(value: BigRational, nvars: usize) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), value);
        }
        p
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(BigRational::one(), nvars)
    }

    /// The polynomial consisting of the single variable at `index`.
    pub fn variable(index: usize, nvars: usize) -> Polynomial {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial(exps), BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(coefficient) when the polynomial has no variable content.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * factor;
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Leading (grlex-maximal) term of a nonzero polynomial.
    pub fn leading(&self) -> (&Monomial, &BigRational) {
        self.terms.iter().next_back().expect("leading term of zero polynomial")
    }

    /// Scales a nonzero polynomial so its leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        let lc = self.leading().1.clone();
        self.scale(&lc.recip())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Highest variable index with positive degree, if any.
    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    /// Coefficient of `X_var^deg`, as a polynomial with the `var` exponent zeroed.
    fn coefficient_in(&self, var: usize, deg: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == deg {
                let mut e = m.0.clone();
                e[var] = 0;
                out.insert_term(Monomial(e), c.clone());
            }
        }
        out
    }

    fn mul_var_power(&self, var: usize, deg: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[var] += deg;
            out.insert_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or None when the division leaves a
    /// remainder. The divisor must be nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut q = Polynomial::zero(self.nvars);
        let mut r = self.clone();
        let (dm, dc) = {
            let (m, c) = divisor.leading();
            (m.clone(), c.clone())
        };
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let mut t = Polynomial::zero(self.nvars);
            t.insert_term(qm, qc);
            r = r.sub(&t.mul(divisor));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to `var`.
    /// `divisor` must have positive degree in `var`.
    fn pseudo_rem(&self, divisor: &Polynomial, var: usize) -> Polynomial {
        let dg = divisor.degree_in(var);
        debug_assert!(dg > 0);
        let lc_g = divisor.coefficient_in(var, dg);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(var);
            if dr < dg {
                break;
            }
            let lc_r = r.coefficient_in(var, dr);
            r = r
                .mul(&lc_g)
                .sub(&divisor.mul(&lc_r).mul_var_power(var, dr - dg));
        }
        r
    }

    /// Content (gcd of the coefficients with respect to `var`) and primitive part.
    fn content_primitive(&self, var: usize) -> (Polynomial, Polynomial) {
        let mut content = Polynomial::zero(self.nvars);
        for d in 0..=self.degree_in(var) {
            let c = self.coefficient_in(var, d);
            if !c.is_zero() {
                content = gcd(&content, &c);
            }
        }
        let pp = self
            .div_exact(&content)
            .expect("content must divide the polynomial");
        (content, pp)
    }

    /// Evaluates the polynomial at `values` (one per variable) using the scalar
    /// arithmetic of the target field.
    pub fn eval(
        &self,
        values: &[super::Scalar],
        target: &super::FieldDescriptor,
    ) -> Result<super::Scalar, super::ScalarError> {
        let mut acc = super::Scalar::zero(target);
        for (m, c) in &self.terms {
            let mut term = super::rational_to_field(c, target)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&values[i].pow(e))?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Renders in the scalar-expression grammar: terms in descending grlex
    /// order, explicit `*` between factors, `^` for powers above one.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_constant() {
                factors.push(render_rational(&mag));
            } else {
                if !mag.is_one() {
                    factors.push(render_rational(&mag));
                }
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(vars[i].clone()),
                        _ => factors.push(format!("{}^{}", vars[i], e)),
                    }
                }
            }
            // A leading "-" binds to the first atom only, so "-c^2" would
            // re-parse as (-c)^2. Parenthesise the offending power.
            if idx == 0 && negative && factors[0].contains('^') {
                factors[0] = format!("({})", factors[0]);
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Greatest common divisor, normalised monic (leading coefficient 1).
/// `gcd(0, 0)` is the zero polynomial.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars, b.nvars);
    if a.is_zero() {
        return if b.is_zero() { b.clone() } else { b.monic() };
    }
    if b.is_zero() {
        return a.monic();
    }
    gcd_nonzero(a, b).monic()
}

/// Primitive-PRS gcd of two nonzero polynomials, up to a unit.
fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let main = match a.highest_var().into_iter().chain(b.highest_var()).max() {
        Some(v) => v,
        None => return Polynomial::one(a.nvars),
    };
    let (ca, pa) = a.content_primitive(main);
    let (cb, pb) = b.content_primitive(main);
    let cont = gcd_nonzero(&ca, &cb);
    let (mut f, mut g) = if pa.degree_in(main) >= pb.degree_in(main) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.degree_in(main) == 0 {
            // Primitive and free of the main variable: a unit.
            return cont;
        }
        let r = f.pseudo_rem(&g, main);
        if r.is_zero() {
            return cont.mul(&g);
        }
        let (_, pp) = r.content_primitive(main);
        f = g;
        g = pp.monic();
    }
}
