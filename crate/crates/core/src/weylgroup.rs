//! Finite Weyl groups as integer matrices on the root lattice, with the strong
//! Bruhat order, intervals and saturated chains.
//!
//! Elements are stored once in a [`WeylGroup`] and referred to by
//! [`ElementId`]. The action of `w` is the matrix of `w` on the simple-root
//! basis, so `w = s_{i_1} ... s_{i_k}` has matrix `S_{i_1} ... S_{i_k}` and the
//! right multiplication `u s_alpha` is the matrix product `U R_alpha`.
//!
//! Element syntax accepted by [`WeylGroup::parse_element`]:
//!
//! * `word:1,2,1` is `s_1 s_2 s_1` (1-based Bourbaki indices, left to right);
//!   `word:` and `id` denote the identity.
//! * `perm:213` is one-line notation in type `A_n` (a permutation of
//!   `1..=n+1`; use commas, `perm:2,1,3`, when `n+1 > 9`). Right
//!   multiplication by `s_i` swaps positions `i` and `i+1`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::lattice::IntMatrix;
use crate::polynomial::LinearForm;
use crate::rootsystem::{CartanDatum, CartanType, RootSystem};
use crate::{Error, Result};

/// Default refusal threshold for group generation.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// Handle to an element of a [`WeylGroup`]. Identifiers are assigned in
/// breadth-first order from the identity, so `ElementId(0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    action: IntMatrix,
    length: usize,
}

impl WeylElement {
    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

/// A Bruhat cover `lower ⋖ upper = lower * s_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverEdge {
    pub lower: ElementId,
    pub upper: ElementId,
    /// Index of `alpha` in [`RootSystem::positive_roots`].
    pub root: usize,
    /// Chevalley multiplicity `(lambda, alpha^vee)` as a linear form in the
    /// `x_i = (lambda, alpha_i^vee)`.
    pub multiplicity: LinearForm,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    system: RootSystem,
    elements: Vec<WeylElement>,
    lookup: HashMap<IntMatrix, ElementId>,
    /// `right_simple[v][i]` is `v * s_{i+1}`.
    right_simple: Vec<Vec<ElementId>>,
    longest: ElementId,
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().sum::<i64>() < 0
}

impl WeylGroup {
    pub fn generate(system: RootSystem) -> Result<Self> {
        Self::generate_with_cap(system, DEFAULT_ORDER_CAP)
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::generate(RootSystem::from_label(label)?)
    }

    /// Like [`WeylGroup::from_label`], but the cap is checked before the root
    /// system is built, so absurd ranks fail fast.
    pub fn from_label_with_cap(label: &str, cap: usize) -> Result<Self> {
        let datum = CartanDatum::parse(label)?;
        check_order(&datum, cap)?;
        Self::generate_with_cap(RootSystem::new(datum), cap)
    }

    /// Breadth-first generation from the identity through right
    /// multiplication by simple reflections. Refuses groups larger than `cap`.
    pub fn generate_with_cap(system: RootSystem, cap: usize) -> Result<Self> {
        let order = check_order(system.datum(), cap)?;
        let r = system.rank();
        let identity = IntMatrix::identity(r);
        let mut matrices = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, ElementId(0))]);
        let mut right_simple: Vec<Vec<ElementId>> = Vec::new();
        let mut cursor = 0;
        while cursor < matrices.len() {
            let mut row = Vec::with_capacity(r);
            for i in 0..r {
                let product = matrices[cursor].mul(system.simple_reflection(i));
                let next = match lookup.get(&product) {
                    Some(&id) => id,
                    None => {
                        let id = ElementId(matrices.len());
                        if id.0 >= cap {
                            return Err(Error::GroupTooLarge {
                                system: system.label(),
                                order,
                                cap,
                            });
                        }
                        lookup.insert(product.clone(), id);
                        matrices.push(product);
                        id
                    }
                };
                row.push(next);
            }
            right_simple.push(row);
            cursor += 1;
        }

        let elements: Vec<WeylElement> = matrices
            .into_iter()
            .map(|action| {
                let length = system
                    .positive_roots()
                    .iter()
                    .filter(|root| is_negative(&action.apply(&root.coords)))
                    .count();
                WeylElement { action, length }
            })
            .collect();
        let longest = elements
            .iter()
            .enumerate()
            .max_by_key(|(_, e)| e.length)
            .map(|(k, _)| ElementId(k))
            .expect("group is nonempty");

        Ok(Self {
            system,
            elements,
            lookup,
            right_simple,
            longest,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn element(&self, id: ElementId) -> &WeylElement {
        &self.elements[id.0]
    }

    pub fn contains(&self, id: ElementId) -> bool {
        id.0 < self.elements.len()
    }

    pub fn check(&self, id: ElementId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::NotInGroup(id.0))
        }
    }

    pub fn length(&self, id: ElementId) -> usize {
        self.elements[id.0].length
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> ElementId {
        self.longest
    }

    pub fn lookup(&self, action: &IntMatrix) -> Option<ElementId> {
        self.lookup.get(action).copied()
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let product = self.elements[a.0].action.mul(&self.elements[b.0].action);
        self.lookup(&product)
            .expect("group is closed under multiplication")
    }

    /// `v * s_{i+1}` for a zero-based simple index `i`.
    pub fn right_mul_simple(&self, v: ElementId, i: usize) -> ElementId {
        self.right_simple[v.0][i]
    }

    /// `v * s_alpha` for the positive root with index `root`.
    pub fn right_mul_reflection(&self, v: ElementId, root: usize) -> ElementId {
        let product = self.elements[v.0].action.mul(self.system.reflection(root));
        self.lookup(&product)
            .expect("group is closed under multiplication")
    }

    pub fn inverse(&self, v: ElementId) -> ElementId {
        let word = self.reduced_word(v);
        self.word_product(word.iter().rev().map(|&i| i - 1))
    }

    fn word_product(&self, zero_based: impl Iterator<Item = usize>) -> ElementId {
        zero_based.fold(self.identity(), |acc, i| self.right_mul_simple(acc, i))
    }

    /// The element `s_{i_1} ... s_{i_k}` for 1-based indices.
    pub fn from_word(&self, word: &[usize]) -> Result<ElementId> {
        let r = self.rank();
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i > r) {
            return Err(Error::ElementParse {
                input: format!("{word:?}"),
                reason: format!("generator index {bad} outside 1..={r}"),
            });
        }
        Ok(self.word_product(word.iter().map(|&i| i - 1)))
    }

    /// Type A only: the element with one-line notation `perm` (values 1-based).
    pub fn from_permutation(&self, perm: &[usize]) -> Result<ElementId> {
        let n = self.rank() + 1;
        let fail = |reason: String| Error::ElementParse {
            input: format!("{perm:?}"),
            reason,
        };
        if self.system.datum().kind != CartanType::A {
            return Err(fail(format!(
                "one-line notation is only available in type A, not {}",
                self.system.label()
            )));
        }
        if perm.len() != n {
            return Err(fail(format!("expected a permutation of 1..={n}")));
        }
        let mut seen = vec![false; n + 1];
        for &v in perm {
            if v == 0 || v > n || seen[v] {
                return Err(fail(format!("expected a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        // Bubble sort: w s_{a_1} ... s_{a_k} = id, hence w = s_{a_k} ... s_{a_1}.
        let mut p = perm.to_vec();
        let mut swaps = Vec::new();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n - 1 {
                if p[i] > p[i + 1] {
                    p.swap(i, i + 1);
                    swaps.push(i);
                    changed = true;
                }
            }
        }
        Ok(self.word_product(swaps.into_iter().rev()))
    }

    /// One-line notation of a type A element.
    pub fn to_permutation(&self, v: ElementId) -> Option<Vec<usize>> {
        if self.system.datum().kind != CartanType::A {
            return None;
        }
        let mut p: Vec<usize> = (1..=self.rank() + 1).collect();
        for i in self.reduced_word(v) {
            p.swap(i - 1, i);
        }
        Some(p)
    }

    /// A reduced word (1-based indices), built from right descents.
    pub fn reduced_word(&self, v: ElementId) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(v));
        let mut current = v;
        while self.length(current) > 0 {
            let i = (0..self.rank())
                .find(|&i| self.length(self.right_mul_simple(current, i)) < self.length(current))
                .expect("nonidentity element has a right descent");
            word.push(i + 1);
            current = self.right_mul_simple(current, i);
        }
        word.reverse();
        word
    }

    /// Parses `word:...`, `perm:...` or `id`.
    pub fn parse_element(&self, input: &str) -> Result<ElementId> {
        let s = input.trim();
        let fail = |reason: &str| Error::ElementParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.eq_ignore_ascii_case("id") || s.eq_ignore_ascii_case("e") {
            return Ok(self.identity());
        }
        if let Some(rest) = s.strip_prefix("word:") {
            let word = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.trim_start_matches('s').parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| fail("generator indices must be positive integers"))?;
            return self.from_word(&word).map_err(|e| match e {
                Error::ElementParse { reason, .. } => fail(&reason),
                other => other,
            });
        }
        if let Some(rest) = s.strip_prefix("perm:") {
            let rest = rest.trim();
            let perm: Vec<usize> = if rest.contains(',') {
                rest.split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| fail("permutation entries must be positive integers"))?
            } else {
                rest.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| fail("permutation entries must be digits"))?
            };
            return self.from_permutation(&perm).map_err(|e| match e {
                Error::ElementParse { reason, .. } => fail(&reason),
                other => other,
            });
        }
        Err(fail("expected 'word:i,j,...', 'perm:...' (type A) or 'id'"))
    }

    /// Canonical text form: `perm:...` in type A, `word:...` otherwise.
    pub fn format_element(&self, v: ElementId) -> String {
        if let Some(p) = self.to_permutation(v) {
            let sep = if p.len() > 9 { "," } else { "" };
            let body: Vec<String> = p.iter().map(usize::to_string).collect();
            return format!("perm:{}", body.join(sep));
        }
        if self.length(v) == 0 {
            return "id".to_string();
        }
        let body: Vec<String> = self.reduced_word(v).iter().map(usize::to_string).collect();
        format!("word:{}", body.join(","))
    }

    fn edge(&self, lower: ElementId, upper: ElementId, root: usize) -> CoverEdge {
        CoverEdge {
            lower,
            upper,
            root,
            multiplicity: LinearForm::new(self.system.positive_roots()[root].coroot_coords.clone()),
        }
    }

    /// All covers `v ⋖ v s_alpha`, one per positive root with
    /// `l(v s_alpha) = l(v) + 1`, in root order.
    pub fn covers(&self, v: ElementId) -> Result<Vec<CoverEdge>> {
        self.check(v)?;
        Ok(self.covers_unchecked(v))
    }

    fn covers_unchecked(&self, v: ElementId) -> Vec<CoverEdge> {
        let target = self.length(v) + 1;
        (0..self.system.positive_roots().len())
            .filter_map(|k| {
                let upper = self.right_mul_reflection(v, k);
                (self.length(upper) == target).then(|| self.edge(v, upper, k))
            })
            .collect()
    }

    /// All covers `v s_alpha ⋖ v`.
    pub fn lower_covers(&self, v: ElementId) -> Result<Vec<CoverEdge>> {
        self.check(v)?;
        Ok(self.lower_covers_unchecked(v))
    }

    fn lower_covers_unchecked(&self, v: ElementId) -> Vec<CoverEdge> {
        let Some(target) = self.length(v).checked_sub(1) else {
            return Vec::new();
        };
        (0..self.system.positive_roots().len())
            .filter_map(|k| {
                let lower = self.right_mul_reflection(v, k);
                (self.length(lower) == target).then(|| self.edge(lower, v, k))
            })
            .collect()
    }

    /// `{v : v >= u, l(v) <= max_length}` by reachability through covers.
    pub fn up_set(&self, u: ElementId, max_length: usize) -> HashSet<ElementId> {
        let mut seen = HashSet::from([u]);
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            if self.length(v) >= max_length {
                continue;
            }
            for edge in self.covers_unchecked(v) {
                if seen.insert(edge.upper) {
                    queue.push_back(edge.upper);
                }
            }
        }
        seen
    }

    /// `{v : v <= w, l(v) >= min_length}`.
    pub fn down_set(&self, w: ElementId, min_length: usize) -> HashSet<ElementId> {
        let mut seen = HashSet::from([w]);
        let mut queue = VecDeque::from([w]);
        while let Some(v) = queue.pop_front() {
            if self.length(v) <= min_length {
                continue;
            }
            for edge in self.lower_covers_unchecked(v) {
                if seen.insert(edge.lower) {
                    queue.push_back(edge.lower);
                }
            }
        }
        seen
    }

    /// Strong Bruhat order, decided by upward reachability through covers.
    pub fn bruhat_leq(&self, u: ElementId, w: ElementId) -> bool {
        let (lu, lw) = (self.length(u), self.length(w));
        if lu > lw {
            return false;
        }
        if lu == lw {
            return u == w;
        }
        let mut seen = HashSet::from([u]);
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            if self.length(v) + 1 == lw {
                if self.covers_unchecked(v).iter().any(|e| e.upper == w) {
                    return true;
                }
                continue;
            }
            for edge in self.covers_unchecked(v) {
                if seen.insert(edge.upper) {
                    queue.push_back(edge.upper);
                }
            }
        }
        false
    }

    /// The interval `[u, w]` as the intersection of the up-set of `u` and the
    /// down-set of `w`. Returns an empty interval when `u` is not below `w`.
    pub fn interval(&self, u: ElementId, w: ElementId) -> Result<BruhatInterval> {
        self.check(u)?;
        self.check(w)?;
        let (lu, lw) = (self.length(u), self.length(w));
        if lu > lw {
            return Ok(BruhatInterval::empty(u, w));
        }
        let up = self.up_set(u, lw);
        if !up.contains(&w) {
            return Ok(BruhatInterval::empty(u, w));
        }
        let down = self.down_set(w, lu);
        let mut elements: Vec<ElementId> = up.intersection(&down).copied().collect();
        elements.sort_by_key(|&v| (self.length(v), v));

        let position: HashMap<ElementId, usize> =
            elements.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut strata = vec![Vec::new(); lw - lu + 1];
        for &v in &elements {
            strata[self.length(v) - lu].push(v);
        }
        let mut edges = Vec::new();
        let mut up_edges = vec![Vec::new(); elements.len()];
        for (k, &v) in elements.iter().enumerate() {
            if v == w {
                continue;
            }
            for edge in self.covers_unchecked(v) {
                if position.contains_key(&edge.upper) {
                    up_edges[k].push(edges.len());
                    edges.push(edge);
                }
            }
        }
        Ok(BruhatInterval {
            bottom: u,
            top: w,
            elements,
            strata,
            edges,
            position,
            up_edges,
        })
    }
}

/// The Bruhat interval `[u, w]` with its labelled cover edges.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    bottom: ElementId,
    top: ElementId,
    elements: Vec<ElementId>,
    strata: Vec<Vec<ElementId>>,
    edges: Vec<CoverEdge>,
    position: HashMap<ElementId, usize>,
    up_edges: Vec<Vec<usize>>,
}

impl BruhatInterval {
    fn empty(bottom: ElementId, top: ElementId) -> Self {
        Self {
            bottom,
            top,
            elements: Vec::new(),
            strata: Vec::new(),
            edges: Vec::new(),
            position: HashMap::new(),
            up_edges: Vec::new(),
        }
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    /// True when `bottom` is not below `top`.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements sorted by length.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    /// `strata()[k]` holds the elements of length `l(bottom) + k`.
    pub fn strata(&self) -> &[Vec<ElementId>] {
        &self.strata
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn contains(&self, v: ElementId) -> bool {
        self.position.contains_key(&v)
    }

    /// Edges leaving `v` upwards inside the interval.
    pub fn edges_from(&self, v: ElementId) -> impl Iterator<Item = &CoverEdge> + '_ {
        self.position
            .get(&v)
            .map(|&k| self.up_edges[k].as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&e| &self.edges[e])
    }

    /// Streams every saturated chain from bottom to top exactly once, as the
    /// sequence of its cover edges.
    pub fn saturated_chains(&self) -> SaturatedChains<'_> {
        SaturatedChains {
            interval: self,
            stack: Vec::new(),
            path: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Number of saturated chains, by path counting over the strata.
    pub fn count_chains(&self) -> BigUint {
        if self.is_empty() {
            return BigUint::zero();
        }
        let mut counts = vec![BigUint::zero(); self.elements.len()];
        let top = self.position[&self.top];
        counts[top] = BigUint::one();
        for k in (0..self.elements.len()).rev() {
            if k == top {
                continue;
            }
            let mut total = BigUint::zero();
            for &e in &self.up_edges[k] {
                total += &counts[self.position[&self.edges[e].upper]];
            }
            counts[k] = total;
        }
        counts[self.position[&self.bottom]].clone()
    }
}

/// Depth-first iterator over the saturated chains of a [`BruhatInterval`].
pub struct SaturatedChains<'a> {
    interval: &'a BruhatInterval,
    /// `(local element index, next edge to try)`.
    stack: Vec<(usize, usize)>,
    path: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> Iterator for SaturatedChains<'a> {
    type Item = Vec<&'a CoverEdge>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let iv = self.interval;
        if !self.started {
            self.started = true;
            if iv.is_empty() {
                self.done = true;
                return None;
            }
            if iv.bottom == iv.top {
                self.done = true;
                return Some(Vec::new());
            }
            self.stack.push((iv.position[&iv.bottom], 0));
        }
        while let Some((node, next)) = self.stack.last_mut() {
            let out = &iv.up_edges[*node];
            if *next < out.len() {
                let e = out[*next];
                *next += 1;
                self.path.push(e);
                let upper = iv.edges[e].upper;
                if upper == iv.top {
                    let chain = self.path.iter().map(|&k| &iv.edges[k]).collect();
                    self.path.pop();
                    return Some(chain);
                }
                self.stack.push((iv.position[&upper], 0));
            } else {
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.path.pop();
                }
            }
        }
        self.done = true;
        None
    }
}

fn check_order(datum: &CartanDatum, cap: usize) -> Result<u128> {
    let order = datum.kind.weyl_group_order(datum.rank);
    if order > cap as u128 {
        return Err(Error::GroupTooLarge {
            system: datum.label(),
            order,
            cap,
        });
    }
    Ok(order)
}
