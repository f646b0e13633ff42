//! Postnikov–Stanley polynomials `D_u^w` and λ-degrees of Richardson
//! varieties.
//!
//! Two independent routes compute `D_u^w`:
//!
//! * [`ps_by_chains`] enumerates the saturated chains of `[u, w]` and sums the
//!   products of their Chevalley multiplicities.
//! * [`ps_by_chevalley`] multiplies the Schubert class `σ_u` by the symbolic
//!   divisor class `λ̄` exactly `l(w) - l(u)` times using the Chevalley formula
//!   and reads off the coefficient of `σ_w`.
//!
//! Both divide by `(l(w) - l(u))!` once at the end. The weight `λ` is always the
//! coordinate vector `(x_1, ..., x_r)` in the fundamental-weight basis, so
//! `x_i = (λ, α_i^∨)`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::polynomial::{LinearForm, SparsePoly};
use crate::weylgroup::{BruhatInterval, ElementId, WeylGroup};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ChainEnumeration,
    ChevalleyRecursion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsResult {
    pub u: ElementId,
    pub w: ElementId,
    pub poly: SparsePoly,
    pub chain_count: BigUint,
    pub method: Method,
    /// False when `u` is not below `w`; `poly` is then zero.
    pub comparable: bool,
}

impl PsResult {
    /// `l(w) - l(u)` when comparable.
    pub fn degree(&self, group: &WeylGroup) -> Option<usize> {
        self.comparable
            .then(|| group.length(self.w) - group.length(self.u))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn inverse_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

fn zero_result(group: &WeylGroup, u: ElementId, w: ElementId, method: Method) -> PsResult {
    PsResult {
        u,
        w,
        poly: SparsePoly::zero(group.rank()),
        chain_count: BigUint::zero(),
        method,
        comparable: false,
    }
}

/// `D_u^w` as `1/l! * sum over saturated chains C of m_C`.
pub fn ps_by_chains(group: &WeylGroup, u: ElementId, w: ElementId) -> Result<PsResult> {
    let interval = group.interval(u, w)?;
    Ok(ps_from_interval(group, &interval))
}

/// Chain-enumeration route on an interval that has already been built.
pub fn ps_from_interval(group: &WeylGroup, interval: &BruhatInterval) -> PsResult {
    let (u, w) = (interval.bottom(), interval.top());
    if interval.is_empty() {
        return zero_result(group, u, w, Method::ChainEnumeration);
    }
    let r = group.rank();
    let mut total = SparsePoly::zero(r);
    let mut count = BigUint::zero();
    // Depth-first over chains, sharing the product of each common prefix.
    let mut stack: Vec<(ElementId, SparsePoly)> = vec![(u, SparsePoly::one(r))];
    while let Some((v, prefix)) = stack.pop() {
        if v == w {
            total.add_assign_poly(&prefix);
            count += 1u32;
            continue;
        }
        for edge in interval.edges_from(v) {
            let next = &prefix * &edge.multiplicity.to_poly();
            stack.push((edge.upper, next));
        }
    }
    let ell = group.length(w) - group.length(u);
    PsResult {
        u,
        w,
        poly: total.scale(&inverse_factorial(ell)),
        chain_count: count,
        method: Method::ChainEnumeration,
        comparable: true,
    }
}

/// An element of `H^*(G/B)` with polynomial coefficients in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomClass {
    num_vars: usize,
    coefficients: BTreeMap<ElementId, SparsePoly>,
}

impl CohomClass {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            coefficients: BTreeMap::new(),
        }
    }

    /// The Schubert class `σ_u`.
    pub fn schubert(num_vars: usize, u: ElementId) -> Self {
        Self {
            num_vars,
            coefficients: BTreeMap::from([(u, SparsePoly::one(num_vars))]),
        }
    }

    pub fn coefficients(&self) -> &BTreeMap<ElementId, SparsePoly> {
        &self.coefficients
    }

    pub fn coefficient(&self, w: ElementId) -> SparsePoly {
        self.coefficients
            .get(&w)
            .cloned()
            .unwrap_or_else(|| SparsePoly::zero(self.num_vars))
    }

    pub fn add_term(&mut self, w: ElementId, p: &SparsePoly) {
        if p.is_zero() {
            return;
        }
        let slot = self
            .coefficients
            .entry(w)
            .or_insert_with(|| SparsePoly::zero(self.num_vars));
        slot.add_assign_poly(p);
        if slot.is_zero() {
            self.coefficients.remove(&w);
        }
    }

    /// `λ̄ · self` by the Chevalley formula
    /// `λ̄ σ_v = Σ (λ, α^∨) σ_{v s_α}` over positive roots with
    /// `l(v s_α) = l(v) + 1`. When `keep` is given, terms outside it are dropped.
    pub fn times_lambda(&self, group: &WeylGroup, keep: Option<&HashSet<ElementId>>) -> Self {
        let system = group.system();
        let forms: Vec<SparsePoly> = system
            .positive_roots()
            .iter()
            .map(|root| {
                let coeffs = system
                    .chevalley_coefficients(&root.coords)
                    .expect("positive root of its own system");
                LinearForm::new(coeffs).to_poly()
            })
            .collect();
        let mut out = CohomClass::zero(self.num_vars);
        for (&v, p) in &self.coefficients {
            let target = group.length(v) + 1;
            for (k, form) in forms.iter().enumerate() {
                let next = group.right_mul_reflection(v, k);
                if group.length(next) != target {
                    continue;
                }
                if keep.is_some_and(|set| !set.contains(&next)) {
                    continue;
                }
                out.add_term(next, &(p * form));
            }
        }
        out
    }
}

/// Chain counts via the same recursion with every multiplicity set to 1.
fn count_by_recursion(
    group: &WeylGroup,
    u: ElementId,
    steps: usize,
    keep: &HashSet<ElementId>,
) -> BTreeMap<ElementId, BigUint> {
    let mut counts = BTreeMap::from([(u, BigUint::one())]);
    for _ in 0..steps {
        let mut next: BTreeMap<ElementId, BigUint> = BTreeMap::new();
        for (&v, c) in &counts {
            let target = group.length(v) + 1;
            for k in 0..group.system().positive_roots().len() {
                let up = group.right_mul_reflection(v, k);
                if group.length(up) == target && keep.contains(&up) {
                    *next.entry(up).or_default() += c;
                }
            }
        }
        counts = next;
    }
    counts
}

/// `D_u^w` as the coefficient of `σ_w` in `λ̄^l σ_u / l!`.
pub fn ps_by_chevalley(group: &WeylGroup, u: ElementId, w: ElementId) -> Result<PsResult> {
    group.check(u)?;
    group.check(w)?;
    let (lu, lw) = (group.length(u), group.length(w));
    if lu > lw {
        return Ok(zero_result(group, u, w, Method::ChevalleyRecursion));
    }
    let ell = lw - lu;
    // Only elements below w can contribute to the coefficient of σ_w.
    let below_w = group.down_set(w, lu);
    if !below_w.contains(&u) {
        return Ok(zero_result(group, u, w, Method::ChevalleyRecursion));
    }
    let mut class = CohomClass::schubert(group.rank(), u);
    for _ in 0..ell {
        class = class.times_lambda(group, Some(&below_w));
    }
    let counts = count_by_recursion(group, u, ell, &below_w);
    Ok(PsResult {
        u,
        w,
        poly: class.coefficient(w).scale(&inverse_factorial(ell)),
        chain_count: counts.get(&w).cloned().unwrap_or_default(),
        method: Method::ChevalleyRecursion,
        comparable: true,
    })
}

/// Every `D_u^{w'}` with `l(w') = l(u) + ell`, from one Chevalley sweep.
/// Empty when `ell` exceeds `l(w_0) - l(u)`.
pub fn interval_distribution(
    group: &WeylGroup,
    u: ElementId,
    ell: usize,
) -> Result<BTreeMap<ElementId, SparsePoly>> {
    group.check(u)?;
    if group.length(u) + ell > group.length(group.longest_element()) {
        return Ok(BTreeMap::new());
    }
    let mut class = CohomClass::schubert(group.rank(), u);
    for _ in 0..ell {
        class = class.times_lambda(group, None);
    }
    let scale = inverse_factorial(ell);
    Ok(class
        .coefficients
        .into_iter()
        .map(|(v, p)| (v, p.scale(&scale)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichardsonDegree {
    /// `(l(w) - l(u))! · D_u^w(λ)`; zero for an empty variety.
    pub value: BigRational,
    /// Set when `u` is not below `w`, so `R_u^w` is empty.
    pub empty_variety: bool,
}

impl RichardsonDegree {
    pub fn as_integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }
}

/// λ-degree of the Richardson variety `R_u^w` for a dominant weight `λ`
/// given in the fundamental-weight basis.
pub fn richardson_degree(
    group: &WeylGroup,
    u: ElementId,
    w: ElementId,
    lambda: &[i64],
) -> Result<RichardsonDegree> {
    if lambda.len() != group.rank() {
        return Err(Error::DimensionMismatch {
            expected: group.rank(),
            got: lambda.len(),
        });
    }
    if let Some((index, &value)) = lambda.iter().enumerate().find(|(_, &x)| x < 0) {
        return Err(Error::NotDominant { index, value });
    }
    let ps = ps_by_chains(group, u, w)?;
    degree_from_result(group, &ps, lambda)
}

/// Evaluates `(l(w) - l(u))! · D_u^w(λ)` for an already computed `D_u^w`.
pub fn degree_from_result(
    group: &WeylGroup,
    ps: &PsResult,
    lambda: &[i64],
) -> Result<RichardsonDegree> {
    if !ps.comparable {
        return Ok(RichardsonDegree {
            value: BigRational::zero(),
            empty_variety: true,
        });
    }
    let point: Vec<BigRational> = lambda
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    let ell = group.length(ps.w) - group.length(ps.u);
    let value = ps.poly.evaluate(&point)? * BigRational::from_integer(factorial(ell));
    Ok(RichardsonDegree {
        value,
        empty_variety: false,
    })
}
