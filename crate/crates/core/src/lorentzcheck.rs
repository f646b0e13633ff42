//! Exact Lorentzian test for homogeneous polynomials with nonnegative
//! coefficients.
//!
//! A degree `d` polynomial `h` is accepted when its coefficients are
//! nonnegative, its support is M-convex and every quadratic form
//! `∂_{i_1} ⋯ ∂_{i_{d-2}} h` has at most one positive eigenvalue. Partial
//! derivatives commute, so only multisets `{i_1, ..., i_{d-2}}` are visited.
//! Eigenvalue signs are read off exactly through Sylvester's law of inertia.
//!
//! Conventions: the zero polynomial is Lorentzian, and for `d < 2` the
//! quadratic condition is vacuous.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polynomial::{Homogeneity, Monomial, SparsePoly};
use crate::{Error, Result};

/// Witness that the exchange axiom fails: `alpha_i > beta_i` and no `j` with
/// `alpha_j < beta_j` keeps both exchanged points in the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MConvexViolation {
    pub alpha: Monomial,
    pub beta: Monomial,
    /// Zero-based coordinate index `i`.
    pub index: usize,
}

impl MConvexViolation {
    /// Re-checks the violation against a support set.
    pub fn confirms(&self, support: &BTreeSet<Monomial>) -> bool {
        let (a, b, i) = (&self.alpha, &self.beta, self.index);
        support.contains(a)
            && support.contains(b)
            && i < a.len()
            && a[i] > b[i]
            && find_exchange(a, b, i, |m| support.contains(m)).is_none()
    }
}

impl fmt::Display for MConvexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={:?} beta={:?} i={}: no exchange index j",
            self.alpha,
            self.beta,
            self.index + 1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MConvexReport {
    pub verdict: bool,
    pub violation: Option<MConvexViolation>,
}

fn find_exchange(
    alpha: &[u32],
    beta: &[u32],
    i: usize,
    contains: impl Fn(&Monomial) -> bool,
) -> Option<usize> {
    (0..alpha.len()).find(|&j| {
        if alpha[j] >= beta[j] {
            return false;
        }
        let mut a = alpha.to_vec();
        a[i] -= 1;
        a[j] += 1;
        let mut b = beta.to_vec();
        b[j] -= 1;
        b[i] += 1;
        contains(&a) && contains(&b)
    })
}

/// Exhaustive test of the symmetric exchange axiom. The empty set and
/// singletons are M-convex.
pub fn check_mconvex<'a, I>(support: I) -> Result<MConvexReport>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    let points: BTreeSet<&Monomial> = support.into_iter().collect();
    let mut lengths = points.iter().map(|m| m.len());
    if let Some(n) = lengths.next() {
        if let Some(other) = lengths.find(|&l| l != n) {
            return Err(Error::MixedLengths(n, other));
        }
    }
    let lookup: HashSet<&Monomial> = points.iter().copied().collect();
    // Largest points first, so `{(2,0), (0,2)}` reports alpha = (2,0).
    for &alpha in points.iter().rev() {
        for &beta in points.iter().rev() {
            for i in 0..alpha.len() {
                if alpha[i] > beta[i]
                    && find_exchange(alpha, beta, i, |m| lookup.contains(m)).is_none()
                {
                    return Ok(MConvexReport {
                        verdict: false,
                        violation: Some(MConvexViolation {
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            index: i,
                        }),
                    });
                }
            }
        }
    }
    Ok(MConvexReport {
        verdict: true,
        violation: None,
    })
}

/// Counts of positive, negative and zero eigenvalues of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Symmetric coefficient matrix `A` with `q = x^T A x`.
pub fn quadratic_form_matrix(q: &SparsePoly) -> Result<Vec<Vec<BigRational>>> {
    let n = q.num_vars();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    match q.homogeneity() {
        Homogeneity::Zero | Homogeneity::Homogeneous(0) | Homogeneity::Homogeneous(1) => {
            return Ok(a)
        }
        Homogeneity::Homogeneous(2) => {}
        Homogeneity::Homogeneous(d) => {
            return Err(Error::NotQuadratic(format!("homogeneous of degree {d}")))
        }
        Homogeneity::Mixed => return Err(Error::NotQuadratic("not homogeneous".into())),
    }
    let two = BigRational::from_integer(2.into());
    for (exp, c) in q.terms() {
        let idx: Vec<usize> = exp
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            a[i][i] = c.clone();
        } else {
            let half = c / &two;
            a[i][j] = half.clone();
            a[j][i] = half;
        }
    }
    Ok(a)
}

/// Inertia of a symmetric rational matrix by symmetric congruence: pivot on a
/// nonzero diagonal entry when one exists, otherwise on a 2×2 block
/// `[[0, a], [a, 0]]`, which contributes one positive and one negative sign.
pub fn symmetric_inertia(matrix: &[Vec<BigRational>]) -> Inertia {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia::new(0, 0, 0);

    loop {
        if active.is_empty() {
            break;
        }
        if let Some(pos) = active.iter().position(|&k| !a[k][k].is_zero()) {
            let k = active.remove(pos);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            for &i in &active {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for &j in &active {
                    if !a[k][j].is_zero() {
                        let delta = &factor * &a[k][j];
                        a[i][j] -= delta;
                    }
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(p, &k)| {
            active[p + 1..]
                .iter()
                .find(|&&l| !a[k][l].is_zero())
                .map(|&l| (k, l))
        });
        let Some((k, l)) = pair else {
            inertia.zero += active.len();
            break;
        };
        active.retain(|&x| x != k && x != l);
        inertia.positive += 1;
        inertia.negative += 1;
        // Schur complement with B^{-1} = [[0, 1/b], [1/b, 0]].
        let b = a[k][l].clone();
        for &i in &active {
            for &j in &active {
                let t = &a[i][k] * &a[l][j] + &a[i][l] * &a[k][j];
                if !t.is_zero() {
                    a[i][j] -= t / &b;
                }
            }
        }
    }
    inertia
}

/// Exact inertia of a quadratic form. Forms of degree below two are the zero
/// form in all variables.
pub fn quadratic_inertia(q: &SparsePoly) -> Result<Inertia> {
    Ok(symmetric_inertia(&quadratic_form_matrix(q)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    NegativeCoefficient,
    NotHomogeneous,
    SupportNotMConvex,
    BadSignature,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::NegativeCoefficient => "negative-coefficient",
            Reason::NotHomogeneous => "not-homogeneous",
            Reason::SupportNotMConvex => "support-not-M-convex",
            Reason::BadSignature => "bad-signature",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LorentzianCertificate {
    NegativeCoefficient {
        exponent: Monomial,
        /// Reduced fraction, e.g. `"-3/2"`.
        coefficient: String,
    },
    NotHomogeneous {
        first: Monomial,
        second: Monomial,
    },
    SupportNotMConvex(MConvexViolation),
    BadSignature {
        /// Zero-based variable indices of the derivative multiset.
        derivative: Vec<usize>,
        inertia: Inertia,
    },
}

impl LorentzianCertificate {
    /// Replays the certificate against `p`; true when the failure reproduces.
    pub fn replay(&self, p: &SparsePoly) -> bool {
        match self {
            LorentzianCertificate::NegativeCoefficient {
                exponent,
                coefficient,
            } => {
                let c = p.coefficient(exponent);
                c.is_negative() && c.to_string() == *coefficient
            }
            LorentzianCertificate::NotHomogeneous { first, second } => {
                let deg = |m: &Monomial| m.iter().sum::<u32>();
                !p.coefficient(first).is_zero()
                    && !p.coefficient(second).is_zero()
                    && deg(first) != deg(second)
            }
            LorentzianCertificate::SupportNotMConvex(violation) => violation.confirms(&p.support()),
            LorentzianCertificate::BadSignature {
                derivative,
                inertia,
            } => p
                .derivative_by(derivative)
                .and_then(|q| quadratic_inertia(&q))
                .is_ok_and(|got| got == *inertia && got.positive > 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorentzianReport {
    pub verdict: bool,
    /// Total degree of the polynomial (0 for the zero polynomial).
    pub degree: u32,
    pub reason: Option<Reason>,
    pub certificate: Option<LorentzianCertificate>,
    /// Derivative multisets examined, including a failing one.
    pub forms_checked: u64,
}

/// Multisets of size `size` from `0..n`, as sorted index lists in
/// lexicographic order.
pub fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(n, size, i, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 && size > 0 {
        return out;
    }
    go(n, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Decides the Lorentzian property, checking coefficient signs, homogeneity,
/// M-convexity of the support and then every derivative quadratic form, and
/// stopping at the first failure.
pub fn is_lorentzian(p: &SparsePoly) -> LorentzianReport {
    let degree = p.total_degree().unwrap_or(0);
    let fail = |reason, certificate, forms_checked| LorentzianReport {
        verdict: false,
        degree,
        reason: Some(reason),
        certificate: Some(certificate),
        forms_checked,
    };

    if let Some((exp, c)) = p.terms().iter().find(|(_, c)| c.is_negative()) {
        return fail(
            Reason::NegativeCoefficient,
            LorentzianCertificate::NegativeCoefficient {
                exponent: exp.clone(),
                coefficient: c.to_string(),
            },
            0,
        );
    }

    if p.homogeneity() == Homogeneity::Mixed {
        let mut exps = p.terms().keys();
        let first = exps.next().expect("mixed polynomial has terms").clone();
        let d0: u32 = first.iter().sum();
        let second = exps
            .find(|e| e.iter().sum::<u32>() != d0)
            .expect("mixed polynomial has two degrees")
            .clone();
        return fail(
            Reason::NotHomogeneous,
            LorentzianCertificate::NotHomogeneous { first, second },
            0,
        );
    }

    let support = p.support();
    let mconvex = check_mconvex(&support).expect("exponents share the variable count");
    if let Some(violation) = mconvex.violation {
        return fail(
            Reason::SupportNotMConvex,
            LorentzianCertificate::SupportNotMConvex(violation),
            0,
        );
    }

    if degree < 2 {
        return LorentzianReport {
            verdict: true,
            degree,
            reason: None,
            certificate: None,
            forms_checked: 0,
        };
    }

    let sets = multisets(p.num_vars(), degree as usize - 2);
    let inertia_of = |m: &Vec<usize>| {
        let q = p.derivative_by(m).expect("indices are in range");
        quadratic_inertia(&q).expect("derivative of a homogeneous form is quadratic")
    };
    let failing = sets
        .par_iter()
        .position_first(|m| inertia_of(m).positive > 1);
    match failing {
        Some(pos) => {
            let derivative = sets[pos].clone();
            let inertia = inertia_of(&derivative);
            fail(
                Reason::BadSignature,
                LorentzianCertificate::BadSignature {
                    derivative,
                    inertia,
                },
                pos as u64 + 1,
            )
        }
        None => LorentzianReport {
            verdict: true,
            degree,
            reason: None,
            certificate: None,
            forms_checked: sets.len() as u64,
        },
    }
}

/// Second-difference threshold for `t ↦ log p(x + t v)`.
pub const SPOT_CHECK_TOLERANCE: f64 = 1e-9;
/// Step `t` used in the second difference.
pub const SPOT_CHECK_STEP: f64 = 1e-4;

/// Numerical log-concavity probe on the positive orthant.
///
/// For each sample, draws a random derivative cascade `∂_{i_1} ⋯ ∂_{i_k} p`
/// (`k = 0` included), a point `x` in `[0.1, 1]^n` and a unit direction `v`,
/// and flags a violation when `f(h) - 2 f(0) + f(-h)` exceeds
/// [`SPOT_CHECK_TOLERANCE`], where `f(t) = log q(x + t v)` and
/// `h = SPOT_CHECK_STEP`. Returns `false` on the first violation. This is a
/// test aid; the exact verdict comes from [`is_lorentzian`].
pub fn log_concavity_spot_check(p: &SparsePoly, samples: usize, seed: u64) -> Result<bool> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    if !p.has_nonnegative_coefficients() {
        return Err(Error::InvalidArgument(
            "log-concavity spot check needs nonnegative coefficients".into(),
        ));
    }
    let n = p.num_vars();
    let degree = p.total_degree().unwrap_or(0) as usize;
    if p.is_zero() || n == 0 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let k = rng.gen_range(0..=degree);
        let cascade: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..=1.0)).collect();
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        v.iter_mut().for_each(|c| *c /= norm);

        let q = p.derivative_by(&cascade)?;
        if q.is_zero() {
            continue;
        }
        let f = |t: f64| {
            let point: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + t * b).collect();
            q.evaluate_f64(&point).ln()
        };
        let h = SPOT_CHECK_STEP;
        let second = f(h) - 2.0 * f(0.0) + f(-h);
        if second > SPOT_CHECK_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}
