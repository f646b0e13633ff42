//! Independent oracles for the Weyl group and chain machinery.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use psl_core::pscalc::factorial;
use psl_core::{ps_by_chains, ElementId, SparsePoly, WeylGroup};

/// Type A by brute force on permutations: covers are `u -> u t_{ij}` with the
/// inversion count rising by one, weighted by `x_i + ... + x_{j-1}`.
struct PermOracle {
    n: usize,
}

impl PermOracle {
    fn inversions(p: &[usize]) -> usize {
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    fn covers(&self, u: &[usize]) -> Vec<(Vec<usize>, Vec<i64>)> {
        let l = Self::inversions(u);
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mut v = u.to_vec();
                v.swap(i, j);
                if Self::inversions(&v) == l + 1 {
                    let mut form = vec![0i64; self.n - 1];
                    form[i..j].iter_mut().for_each(|c| *c = 1);
                    out.push((v, form));
                }
            }
        }
        out
    }

    /// Sum of chain weights (not yet divided by the factorial) and the count.
    fn chain_sum(&self, u: &[usize], w: &[usize]) -> (SparsePoly, usize) {
        let r = self.n - 1;
        let mut total = SparsePoly::zero(r);
        let mut count = 0;
        let target = Self::inversions(w);
        let mut stack = vec![(u.to_vec(), SparsePoly::one(r))];
        while let Some((v, weight)) = stack.pop() {
            if v == w {
                total.add_assign_poly(&weight);
                count += 1;
                continue;
            }
            if Self::inversions(&v) >= target {
                continue;
            }
            for (next, form) in self.covers(&v) {
                let lin = SparsePoly::from_terms(
                    r,
                    form.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| {
                            let mut e = vec![0u32; r];
                            e[i] = 1;
                            (e, BigRational::from_integer(c.into()))
                        }),
                );
                stack.push((next, &weight * &lin));
            }
        }
        (total, count)
    }
}

fn all_pairs(g: &WeylGroup) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    g.ids().flat_map(move |u| g.ids().map(move |w| (u, w)))
}

#[test]
fn chain_sums_match_permutation_oracle() {
    for (label, n) in [("A1", 2), ("A2", 3), ("A3", 4)] {
        let g = WeylGroup::from_label(label).unwrap();
        let oracle = PermOracle { n };
        for (u, w) in all_pairs(&g) {
            let pu = g.to_permutation(u).unwrap();
            let pw = g.to_permutation(w).unwrap();
            let (sum, count) = oracle.chain_sum(&pu, &pw);
            let result = ps_by_chains(&g, u, w).unwrap();
            assert_eq!(
                result.chain_count,
                BigUint::from(count),
                "{label} {pu:?} {pw:?}"
            );
            if count == 0 {
                assert!(result.poly.is_zero());
                continue;
            }
            let ell = g.length(w) - g.length(u);
            let expected = sum.scale(&BigRational::new(One::one(), factorial(ell)));
            assert_eq!(result.poly, expected, "{label} {pu:?} {pw:?}");
        }
    }
}

#[test]
fn a2_hand_enumerated_chain_weights() {
    // Chains of [123, 321] read off the Hasse diagram by hand:
    // x1*x2*x1, x1*(x1+x2)*x2, x2*x1*x2, x2*(x1+x2)*x1.
    let x1 = SparsePoly::var(2, 0).unwrap();
    let x2 = SparsePoly::var(2, 1).unwrap();
    let s = &x1 + &x2;
    let chains = [
        &(&x1 * &x2) * &x1,
        &(&x1 * &s) * &x2,
        &(&x2 * &x1) * &x2,
        &(&x2 * &s) * &x1,
    ];
    let mut total = SparsePoly::zero(2);
    chains.iter().for_each(|c| total.add_assign_poly(c));
    let expected = total.scale(&BigRational::new(1.into(), 6.into()));
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(expected, (&(&x1 * &x2) * &s).scale(&half));

    let g = WeylGroup::from_label("A2").unwrap();
    let result = ps_by_chains(&g, g.identity(), g.longest_element()).unwrap();
    assert_eq!(result.poly, expected);
    assert_eq!(result.chain_count, BigUint::from(4u32));
}

/// Subword property: `u <= w` iff some subword of a reduced word of `w` is a
/// word for `u`.
fn subword_leq(g: &WeylGroup, u: ElementId, w: ElementId) -> bool {
    let word = g.reduced_word(w);
    let mut reachable: HashSet<ElementId> = HashSet::from([g.identity()]);
    for &i in &word {
        let step: Vec<ElementId> = reachable
            .iter()
            .map(|&v| g.right_mul_simple(v, i - 1))
            .collect();
        reachable.extend(step);
    }
    reachable.contains(&u)
}

#[test]
fn bruhat_order_matches_subword_property() {
    for label in ["A2", "A3", "B2", "B3", "G2", "C3"] {
        let g = WeylGroup::from_label(label).unwrap();
        for (u, w) in all_pairs(&g) {
            assert_eq!(g.bruhat_leq(u, w), subword_leq(&g, u, w), "{label}");
        }
    }
}

#[test]
fn comparable_pair_counts() {
    for (label, expected) in [("A1", 3), ("A2", 19)] {
        let g = WeylGroup::from_label(label).unwrap();
        let count = all_pairs(&g).filter(|&(u, w)| g.bruhat_leq(u, w)).count();
        assert_eq!(count, expected, "{label}");
    }
}

#[test]
fn length_equals_cayley_depth() {
    for label in ["A3", "B3", "C3", "D4", "F4", "G2"] {
        let g = WeylGroup::from_label(label).unwrap();
        let mut depth: HashMap<ElementId, usize> = HashMap::from([(g.identity(), 0)]);
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..g.rank() {
                let next = g.right_mul_simple(v, i);
                if !depth.contains_key(&next) {
                    depth.insert(next, depth[&v] + 1);
                    queue.push_back(next);
                }
            }
        }
        assert_eq!(depth.len(), g.order());
        for v in g.ids() {
            assert_eq!(g.length(v), depth[&v], "{label}");
        }
        let w0 = g.longest_element();
        assert_eq!(g.length(w0), g.system().positive_roots().len());
        for root in g.system().positive_roots() {
            let image = g.element(w0).action().apply(&root.coords);
            assert!(image.iter().all(|&c| c <= 0));
        }
    }
}

#[test]
fn poincare_polynomials_are_palindromic() {
    for label in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2"] {
        let g = WeylGroup::from_label(label).unwrap();
        let top = g.length(g.longest_element());
        let mut counts = vec![0usize; top + 1];
        g.ids().for_each(|v| counts[g.length(v)] += 1);
        let reversed: Vec<usize> = counts.iter().rev().copied().collect();
        assert_eq!(counts, reversed, "{label}");
        assert_eq!(counts.iter().sum::<usize>(), g.order());
    }
}

#[test]
fn cover_edges_are_reflections() {
    for label in ["A3", "B3", "G2"] {
        let g = WeylGroup::from_label(label).unwrap();
        let reflections: Vec<_> = (0..g.system().positive_roots().len())
            .map(|k| g.system().reflection(k).clone())
            .collect();
        for v in g.ids() {
            for edge in g.covers(v).unwrap() {
                assert_eq!(g.length(edge.upper), g.length(edge.lower) + 1);
                let quotient = g.multiply(g.inverse(edge.lower), edge.upper);
                let action = g.element(quotient).action();
                let matches: Vec<usize> = reflections
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| *m == action)
                    .map(|(k, _)| k)
                    .collect();
                assert_eq!(matches, vec![edge.root]);
                assert_eq!(
                    edge.multiplicity.coeffs,
                    g.system()
                        .chevalley_coefficients(&g.system().positive_roots()[edge.root].coords)
                        .unwrap()
                );
            }
        }
    }
}

#[test]
fn intervals_are_graded_and_counted_consistently() {
    for label in ["A3", "B2", "G2"] {
        let g = WeylGroup::from_label(label).unwrap();
        for (u, w) in all_pairs(&g) {
            let iv = g.interval(u, w).unwrap();
            if !g.bruhat_leq(u, w) {
                assert!(iv.is_empty());
                continue;
            }
            let ell = g.length(w) - g.length(u);
            assert!(iv.contains(u) && iv.contains(w));
            assert_eq!(iv.strata().len(), ell + 1);
            assert!(iv.strata().iter().all(|s| !s.is_empty()));
            let mut on_chain: HashSet<ElementId> = HashSet::from([u]);
            let mut streamed = 0usize;
            for chain in iv.saturated_chains() {
                assert_eq!(chain.len(), ell);
                on_chain.extend(chain.iter().map(|e| e.upper));
                streamed += 1;
            }
            assert_eq!(BigUint::from(streamed), iv.count_chains());
            assert_eq!(on_chain.len(), iv.elements().len());
        }
    }
}

#[test]
fn chain_counts_dominate_concatenations() {
    let g = WeylGroup::from_label("B3").unwrap();
    let mut counts: BTreeMap<(ElementId, ElementId), BigUint> = BTreeMap::new();
    for (u, w) in all_pairs(&g) {
        counts.insert((u, w), g.interval(u, w).unwrap().count_chains());
    }
    for (&(u, w), total) in &counts {
        if total.is_zero() {
            continue;
        }
        for v in g.interval(u, w).unwrap().elements() {
            let product = &counts[&(u, *v)] * &counts[&(*v, w)];
            assert!(total >= &product);
        }
    }
}
