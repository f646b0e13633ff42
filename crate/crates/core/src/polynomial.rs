//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in canonical form: no stored coefficient is ever zero, so
//! structural equality is polynomial equality.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Result of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Mixed,
}

/// Integer linear form `c_1 x_1 + ... + c_r x_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::from(self)
    }
}

impl From<&LinearForm> for SparsePoly {
    fn from(form: &LinearForm) -> Self {
        let n = form.coeffs.len();
        let mut p = SparsePoly::zero(n);
        for (i, &c) in form.coeffs.iter().enumerate() {
            if c != 0 {
                let mut exp = vec![0; n];
                exp[i] = 1;
                p.terms.insert(exp, BigRational::from_integer(c.into()));
            }
        }
        p
    }
}

fn total_degree(exp: &[u32]) -> u32 {
    exp.iter().sum()
}

/// Graded order: larger total degree first, then lexicographically larger first.
fn grlex_desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    total_degree(b).cmp(&total_degree(a)).then_with(|| b.cmp(a))
}

impl SparsePoly {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigRational::one())
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The variable `x_{i+1}` (indices are zero-based).
    pub fn var(num_vars: usize, i: usize) -> Result<Self> {
        if i >= num_vars {
            return Err(Error::VariableOutOfRange { index: i, num_vars });
        }
        let mut exp = vec![0; num_vars];
        exp[i] = 1;
        Ok(Self::from_terms(num_vars, [(exp, BigRational::one())]))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and pruning zeros.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(num_vars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), num_vars, "exponent vector length");
            p.add_term(exp, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigRational {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Adds `c * x^exp` in place.
    pub fn add_term(&mut self, exp: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &SparsePoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(other)?;
        let mut out = SparsePoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// In-place addition; panics on a variable-count mismatch.
    pub fn add_assign_poly(&mut self, other: &SparsePoly) {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        for (exp, c) in &other.terms {
            self.add_term(exp.clone(), c.clone());
        }
    }

    pub fn scale(&self, factor: &BigRational) -> SparsePoly {
        if factor.is_zero() {
            return SparsePoly::zero(self.num_vars);
        }
        SparsePoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_{i+1}` (zero-based index).
    pub fn partial_derivative(&self, i: usize) -> Result<SparsePoly> {
        if i >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                num_vars: self.num_vars,
            });
        }
        let mut out = SparsePoly::zero(self.num_vars);
        for (exp, c) in &self.terms {
            let k = exp[i];
            if k == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[i] -= 1;
            out.add_term(e, c * BigRational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Applies `d/dx_{i_1} ... d/dx_{i_k}` for the given (zero-based) indices.
    pub fn derivative_by(&self, indices: &[usize]) -> Result<SparsePoly> {
        let mut p = self.clone();
        for &i in indices {
            p = p.partial_derivative(i)?;
        }
        Ok(p)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(exp) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Floating-point evaluation, for numeric spot checks only.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.num_vars);
        self.terms
            .iter()
            .map(|(exp, c)| {
                let mut term = c.to_f64().unwrap_or(f64::NAN);
                for (x, &k) in point.iter().zip(exp) {
                    term *= x.powi(k as i32);
                }
                term
            })
            .sum()
    }

    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|e| total_degree(e));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|x| x == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Mixed
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Terms sorted in descending graded-lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_desc(a.0, b.0));
        terms
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial JSON is always serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self))
            .expect("polynomial JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolyJson =
            serde_json::from_str(text).map_err(|e| Error::PolyFormat(e.to_string()))?;
        raw.try_into()
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let raw = PolyJson::deserialize(value).map_err(|e| Error::PolyFormat(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (exp, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.num_vars)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        self.scale(&-BigRational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    num: String,
    den: String,
}

impl From<&SparsePoly> for PolyJson {
    fn from(p: &SparsePoly) -> Self {
        PolyJson {
            vars: p.num_vars,
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(exp, c)| TermJson {
                    exp: exp.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for SparsePoly {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<Self> {
        let mut p = SparsePoly::zero(raw.vars);
        for term in raw.terms {
            if term.exp.len() != raw.vars {
                return Err(Error::PolyFormat(format!(
                    "exponent {:?} has length {}, expected {}",
                    term.exp,
                    term.exp.len(),
                    raw.vars
                )));
            }
            let num: BigInt = term
                .num
                .trim()
                .parse()
                .map_err(|_| Error::PolyFormat(format!("bad numerator {:?}", term.num)))?;
            let den: BigInt = term
                .den
                .trim()
                .parse()
                .map_err(|_| Error::PolyFormat(format!("bad denominator {:?}", term.den)))?;
            if den.is_zero() {
                return Err(Error::PolyFormat("zero denominator".into()));
            }
            p.add_term(term.exp, BigRational::new(num, den));
        }
        Ok(p)
    }
}
