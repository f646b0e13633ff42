//! Finite crystallographic root systems in exact arithmetic.
//!
//! Simple roots follow the Bourbaki numbering:
//!
//! ```text
//! A_n   1 - 2 - ... - n
//! B_n   1 - 2 - ... - (n-1) => n        (alpha_n short)
//! C_n   1 - 2 - ... - (n-1) <= n        (alpha_n long)
//! D_n   1 - 2 - ... - (n-2) < (n-1), n
//! E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
//! F_4   1 - 2 => 3 - 4                  (alpha_1, alpha_2 long)
//! G_2   1 <= 2                          (alpha_1 short, alpha_2 long)
//! ```
//!
//! The Cartan matrix entry `a_ij` is `(alpha_j, alpha_i^vee)`, so the simple
//! reflection `s_i` sends `alpha_j` to `alpha_j - a_ij alpha_i`. The invariant
//! form is normalised so that short roots have `(alpha, alpha) = 2`; the
//! symmetrizer `d_i = (alpha_i, alpha_i) / 2` then gives `(alpha_i, alpha_j) =
//! d_i a_ij`.
//!
//! In type A_2 this makes `alpha_1 + alpha_2` carry the Chevalley coefficients
//! `(1, 1)`, i.e. the linear form `x1 + x2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::lattice::IntMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    /// Number of positive roots of the irreducible system of this type.
    pub fn positive_root_count(self, rank: usize) -> usize {
        let n = rank;
        match (self, n) {
            (CartanType::A, _) => n * (n + 1) / 2,
            (CartanType::B | CartanType::C, _) => n * n,
            (CartanType::D, _) => n * (n - 1),
            (CartanType::E, 6) => 36,
            (CartanType::E, 7) => 63,
            (CartanType::E, _) => 120,
            (CartanType::F, _) => 24,
            (CartanType::G, _) => 6,
        }
    }

    /// Order of the Weyl group, computed from the classical product formulas.
    pub fn weyl_group_order(self, rank: usize) -> u128 {
        let n = rank as u128;
        let fact = |k: u128| (1..=k).fold(1u128, u128::saturating_mul);
        let pow2 = |k: u128| if k < 127 { 1u128 << k } else { u128::MAX };
        match (self, rank) {
            (CartanType::A, _) => fact(n + 1),
            (CartanType::B | CartanType::C, _) => pow2(n).saturating_mul(fact(n)),
            (CartanType::D, _) => pow2(n - 1).saturating_mul(fact(n)),
            (CartanType::E, 6) => 51_840,
            (CartanType::E, 7) => 2_903_040,
            (CartanType::E, _) => 696_729_600,
            (CartanType::F, _) => 1_152,
            (CartanType::G, _) => 12,
        }
    }
}

/// Cartan matrix plus symmetrizers for an irreducible finite type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub kind: CartanType,
    pub rank: usize,
    /// `cartan_matrix[i][j] = (alpha_j, alpha_i^vee)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// `symmetrizers[i] = (alpha_i, alpha_i) / 2`.
    pub symmetrizers: Vec<i64>,
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        if !kind.is_valid_rank(rank) {
            return Err(Error::InvalidType(format!(
                "{}{rank} is not a finite type; expected A(n>=1), B/C(n>=2), D(n>=4), E6-E8, F4 or G2",
                kind.letter()
            )));
        }
        let n = rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, a_ij: i64, a_ji: i64| {
            a[i][j] = a_ij;
            a[j][i] = a_ji;
        };
        let mut symmetrizers = vec![1i64; n];
        match kind {
            CartanType::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, -1);
                }
            }
            CartanType::B => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 2, n - 1, -1, -2);
                symmetrizers = vec![2; n];
                symmetrizers[n - 1] = 1;
            }
            CartanType::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 2, n - 1, -2, -1);
                symmetrizers[n - 1] = 2;
            }
            CartanType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            CartanType::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
                symmetrizers = vec![2, 2, 1, 1];
            }
            CartanType::G => {
                link(0, 1, -3, -1);
                symmetrizers = vec![1, 3];
            }
        }
        Ok(Self {
            kind,
            rank,
            cartan_matrix: a,
            symmetrizers,
        })
    }

    /// Parses labels such as `"A3"`, `"b2"` or `"G2"`.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let kind = chars
            .next()
            .and_then(CartanType::from_letter)
            .ok_or_else(|| Error::InvalidType(label.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(label.to_string()))?;
        Self::new(kind, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank)
    }

    /// Invariant inner product of two vectors in the simple-root basis.
    pub fn inner_product(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter()
            .zip(&self.cartan_matrix)
            .zip(&self.symmetrizers)
            .filter(|((&xi, _), _)| xi != 0)
            .map(|((&xi, row), &d)| {
                let row_total: i64 = row.iter().zip(y).map(|(a, yj)| a * yj).sum();
                xi * d * row_total
            })
            .sum()
    }

    /// `(v, alpha_i^vee)` for `v` in the simple-root basis.
    fn pair_with_simple_coroot(&self, v: &[i64], i: usize) -> i64 {
        (0..self.rank)
            .map(|j| v[j] * self.cartan_matrix[i][j])
            .sum()
    }
}

impl FromStr for CartanDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

/// A root in the simple-root basis together with its coroot in the
/// simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn negate(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
            coroot_coords: self.coroot_coords.iter().map(|c| -c).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: CartanDatum,
    positive_roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    reflections: Vec<IntMatrix>,
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Self {
        let r = datum.rank;
        let simple: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect();

        // Closure of the simple roots under simple reflections, keeping the
        // positive part.
        let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let k = datum.pair_with_simple_coroot(&beta, i);
                if k == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= k;
                if image.iter().all(|&c| c >= 0) && seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }

        let mut coords: Vec<Vec<i64>> = seen.into_iter().collect();
        coords.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });

        let positive_roots: Vec<Root> = coords
            .into_iter()
            .map(|c| {
                let norm = datum.inner_product(&c, &c);
                let coroot_coords = c
                    .iter()
                    .zip(&datum.symmetrizers)
                    .map(|(&ci, &di)| {
                        let num = ci * 2 * di;
                        debug_assert_eq!(num % norm, 0, "coroot coefficient must be integral");
                        num / norm
                    })
                    .collect();
                Root {
                    coords: c,
                    coroot_coords,
                }
            })
            .collect();

        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, root)| (root.coords.clone(), k))
            .collect();

        let reflections = positive_roots
            .iter()
            .map(|root| reflection_matrix(&datum, root))
            .collect();

        Self {
            datum,
            positive_roots,
            index,
            reflections,
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(CartanDatum::parse(label)?))
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn label(&self) -> String {
        self.datum.label()
    }

    /// Positive roots ordered by height; the first `rank` entries are the
    /// simple roots `alpha_1, ..., alpha_r`.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    /// Index of a positive root given its coordinates.
    pub fn positive_root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Looks up a root (of either sign) by its simple-root coordinates.
    pub fn root(&self, coords: &[i64]) -> Result<Root> {
        if let Some(k) = self.positive_root_index(coords) {
            return Ok(self.positive_roots[k].clone());
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        match self.positive_root_index(&neg) {
            Some(k) => Ok(self.positive_roots[k].negate()),
            None => Err(self.not_a_root(coords)),
        }
    }

    /// Reflection matrix of the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> &IntMatrix {
        &self.reflections[k]
    }

    pub fn simple_reflection(&self, i: usize) -> &IntMatrix {
        &self.reflections[i]
    }

    /// Coefficients `c` of `alpha^vee = sum c_i alpha_i^vee`, so that the
    /// Chevalley multiplicity `(lambda, alpha^vee)` is `sum c_i x_i`.
    pub fn chevalley_coefficients(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        if alpha.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: alpha.len(),
            });
        }
        self.positive_root_index(alpha)
            .map(|k| self.positive_roots[k].coroot_coords.clone())
            .ok_or_else(|| self.not_a_root(alpha))
    }

    /// `s_alpha(v) = v - (v, alpha^vee) alpha`, with `v` in the simple-root
    /// basis.
    pub fn reflect(&self, alpha: &Root, v: &[BigRational]) -> Result<Vec<BigRational>> {
        let r = self.rank();
        if v.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: v.len(),
            });
        }
        if alpha.coords.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: alpha.coords.len(),
            });
        }
        let root = self.root(&alpha.coords)?;
        let a = &self.datum.cartan_matrix;
        let mut pairing = BigRational::zero();
        for (j, vj) in v.iter().enumerate() {
            let coeff: i64 = (0..r).map(|i| root.coroot_coords[i] * a[i][j]).sum();
            if coeff != 0 {
                pairing += vj * BigRational::from_integer(coeff.into());
            }
        }
        Ok(v.iter()
            .zip(&root.coords)
            .map(|(vj, &aj)| vj - &pairing * BigRational::from_integer(aj.into()))
            .collect())
    }

    fn not_a_root(&self, coords: &[i64]) -> Error {
        Error::NotARoot {
            system: self.label(),
            coords: coords.to_vec(),
        }
    }
}

fn reflection_matrix(datum: &CartanDatum, root: &Root) -> IntMatrix {
    let r = datum.rank;
    let a = &datum.cartan_matrix;
    // Column j holds s_alpha(alpha_j) = alpha_j - (alpha_j, alpha^vee) alpha.
    let pairings: Vec<i64> = (0..r)
        .map(|j| (0..r).map(|i| root.coroot_coords[i] * a[i][j]).sum())
        .collect();
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|j| i64::from(k == j) - pairings[j] * root.coords[k])
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    const SMALL_TYPES: &[&str] = &[
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "E7", "E8",
        "F4", "G2",
    ];

    #[test]
    fn a2_roots() {
        let rs = RootSystem::from_label("A2").unwrap();
        let coords: Vec<_> = rs
            .positive_roots()
            .iter()
            .map(|r| r.coords.clone())
            .collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.chevalley_coefficients(&[1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn a1_reflection_is_minus_one() {
        let rs = RootSystem::from_label("A1").unwrap();
        assert_eq!(rs.positive_roots().len(), 1);
        assert_eq!(rs.reflection(0).rows(), vec![vec![-1]]);
    }

    #[test]
    fn g2_roots_and_coroots() {
        let rs = RootSystem::from_label("G2").unwrap();
        assert_eq!(rs.positive_roots().len(), 6);
        let highest = rs.positive_roots().last().unwrap();
        assert_eq!(highest.coords, vec![3, 2]);
        // alpha^vee = 2 alpha / (alpha, alpha) with (alpha, alpha) = 6 for long roots.
        assert_eq!(highest.coroot_coords, vec![1, 2]);
        // The highest coroot comes from the highest short root 2a1 + a2.
        assert_eq!(rs.chevalley_coefficients(&[2, 1]).unwrap(), vec![2, 3]);
        let max_coroot = rs
            .positive_roots()
            .iter()
            .map(|r| r.coroot_coords.clone())
            .max_by_key(|c| c.iter().sum::<i64>())
            .unwrap();
        assert_eq!(max_coroot, vec![2, 3]);
    }

    #[test]
    fn simple_coroot_is_unit_vector() {
        for label in SMALL_TYPES {
            let rs = RootSystem::from_label(label).unwrap();
            for i in 0..rs.rank() {
                let mut e = vec![0; rs.rank()];
                e[i] = 1;
                assert_eq!(rs.chevalley_coefficients(&e).unwrap(), e, "{label}");
            }
        }
    }

    #[test]
    fn classical_root_counts() {
        for label in SMALL_TYPES {
            let datum = CartanDatum::parse(label).unwrap();
            let expected = datum.kind.positive_root_count(datum.rank);
            let rs = RootSystem::new(datum);
            assert_eq!(rs.positive_roots().len(), expected, "{label}");
        }
    }

    #[test]
    fn cartan_datum_invariants() {
        for label in SMALL_TYPES {
            let d = CartanDatum::parse(label).unwrap();
            for i in 0..d.rank {
                assert_eq!(d.cartan_matrix[i][i], 2);
                for j in 0..d.rank {
                    if i != j {
                        assert!(d.cartan_matrix[i][j] <= 0);
                        assert_eq!(d.cartan_matrix[i][j] == 0, d.cartan_matrix[j][i] == 0);
                    }
                    assert_eq!(
                        d.symmetrizers[i] * d.cartan_matrix[i][j],
                        d.symmetrizers[j] * d.cartan_matrix[j][i],
                        "{label}"
                    );
                }
            }
        }
    }

    #[test]
    fn coroots_nonnegative_and_simply_laced_match() {
        for label in SMALL_TYPES {
            let rs = RootSystem::from_label(label).unwrap();
            let simply_laced = matches!(
                rs.datum().kind,
                CartanType::A | CartanType::D | CartanType::E
            );
            for root in rs.positive_roots() {
                assert!(root.coroot_coords.iter().all(|&c| c >= 0));
                assert!(root.coroot_coords.iter().any(|&c| c > 0));
                if simply_laced {
                    assert_eq!(root.coroot_coords, root.coords);
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions_permuting_roots() {
        for label in ["A3", "B3", "C3", "D4", "F4", "G2"] {
            let rs = RootSystem::from_label(label).unwrap();
            let r = rs.rank();
            let all: HashSet<Vec<i64>> = rs
                .positive_roots()
                .iter()
                .flat_map(|root| [root.coords.clone(), root.negate().coords])
                .collect();
            for k in 0..rs.positive_roots().len() {
                let m = rs.reflection(k);
                assert_eq!(m.mul(m), IntMatrix::identity(r), "{label}");
                for v in &all {
                    assert!(all.contains(&m.apply(v)), "{label}");
                }
                let alpha = &rs.positive_roots()[k].coords;
                let image: Vec<i64> = m.apply(alpha);
                assert_eq!(image, alpha.iter().map(|c| -c).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let rs = RootSystem::from_label("A2").unwrap();
        let a1 = rs.root(&[1, 0]).unwrap();
        assert_eq!(rs.reflect(&a1, &qv(&[1, 0])).unwrap(), qv(&[-1, 0]));
        assert_eq!(rs.reflect(&a1, &qv(&[0, 1])).unwrap(), qv(&[1, 1]));
        let v = vec![BigRational::new(3.into(), 7.into()), q(-2)];
        let once = rs.reflect(&a1, &v).unwrap();
        assert_eq!(rs.reflect(&a1, &once).unwrap(), v);
        // Reflecting in a negative root is the same reflection.
        assert_eq!(rs.reflect(&a1.negate(), &v).unwrap(), once);
    }

    #[test]
    fn reflect_rejects_bad_input() {
        let rs = RootSystem::from_label("B2").unwrap();
        let a1 = rs.root(&[1, 0]).unwrap();
        assert!(matches!(
            rs.reflect(&a1, &qv(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        let fake = Root {
            coords: vec![2, 1],
            coroot_coords: vec![1, 1],
        };
        assert!(matches!(
            rs.reflect(&fake, &qv(&[1, 0])),
            Err(Error::NotARoot { .. })
        ));
        assert!(rs.chevalley_coefficients(&[2, 1]).is_err());
        assert!(rs.chevalley_coefficients(&[-1, 0]).is_err());
    }

    #[test]
    fn parse_labels() {
        assert_eq!(CartanDatum::parse("a3").unwrap().label(), "A3");
        assert_eq!(CartanDatum::parse(" G2 ").unwrap().label(), "G2");
        for bad in [
            "", "A0", "B1", "D3", "E5", "E9", "F3", "G3", "X2", "A", "Aq",
        ] {
            assert!(CartanDatum::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn b2_bourbaki_numbering() {
        let rs = RootSystem::from_label("B2").unwrap();
        let coords: Vec<_> = rs
            .positive_roots()
            .iter()
            .map(|r| r.coords.clone())
            .collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        // a1 + a2 is short (e1) and a1 + 2a2 is long (e1 + e2).
        assert_eq!(rs.chevalley_coefficients(&[1, 1]).unwrap(), vec![2, 1]);
        assert_eq!(rs.chevalley_coefficients(&[1, 2]).unwrap(), vec![1, 1]);
    }
}
