//! Root systems of simple Lie algebras with exact arithmetic.
//!
//! Weights are stored in fundamental-weight coordinates, so dominance is a sign
//! check and the simple reflection `s_i` subtracts `lambda_i` times the `i`-th
//! column of the Cartan matrix. The invariant form is normalized so that the
//! highest root has squared length 2.

mod cartan;
mod centralizer;
mod weight;

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use cartan::{cartan_matrix, Family};
pub use centralizer::{centralizer_root_data, AffineRoot, CentralizerData};
pub use weight::Weight;

use crate::error::{Error, Result};
use crate::exact;
use crate::rational::{self, q, Q};

/// Element of the Weyl group given by a word in simple reflections.
///
/// The word `[i_1, ..., i_m]` denotes `s_{i_1} ... s_{i_m}`; it acts on a
/// weight right to left. Words need not be reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn simple(i: usize) -> Self {
        WeylElement { word: vec![i] }
    }

    pub fn from_word(word: Vec<usize>) -> Self {
        WeylElement { word }
    }

    /// Length parity; the sign of the element is `(-1)^parity`.
    pub fn parity(&self) -> u8 {
        (self.word.len() % 2) as u8
    }

    pub fn sign(&self) -> i64 {
        if self.parity() == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Wall {
    /// `<xi, alpha_i> = 0`.
    Simple(usize),
    /// `<alpha_0, xi> = 1`.
    Affine,
}

/// Position of a point relative to the closed fundamental alcove.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlcovePosition {
    Interior,
    /// On the boundary; lists every wall that is met.
    Face(Vec<Wall>),
    /// Outside; lists every violated inequality.
    Outside(Vec<Wall>),
}

impl AlcovePosition {
    pub fn in_closed_alcove(&self) -> bool {
        !matches!(self, AlcovePosition::Outside(_))
    }
}

/// Root datum of a simple Lie algebra.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// `cartan_matrix[i][j] = <alpha_i^vee, alpha_j>`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple roots in fundamental coordinates.
    pub simple_roots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
    /// Positive roots in fundamental coordinates, ordered by height.
    pub positive_roots: Vec<Weight>,
    /// Positive roots in simple-root coordinates, parallel to `positive_roots`.
    pub positive_roots_simple: Vec<Vec<i64>>,
    pub highest_root: Weight,
    pub rho: Weight,
    #[serde(with = "rational::mat")]
    pub quadratic_form: Vec<Vec<Q>>,
    pub dual_coxeter: i64,
    /// `|alpha_i|^2` for the simple roots.
    #[serde(with = "rational::vec")]
    pub simple_root_norms: Vec<Q>,
    #[serde(skip)]
    inverse_cartan: Vec<Vec<Q>>,
    #[serde(skip)]
    root_index: HashMap<Vec<i64>, usize>,
}

/// Constructs the root datum of type `(family, rank)`.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(family, rank)?;
    let n = rank;

    // symmetrizer d_i = |alpha_i|^2 / 2, propagated along the Dynkin diagram
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(q(1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                let di = d[i].unwrap();
                d[j] = Some(di * q(cartan[i][j]) / q(cartan[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let dmax = *d.iter().max().unwrap();
    let d: Vec<Q> = d.iter().map(|x| x / dmax).collect();

    let cartan_q: Vec<Vec<Q>> = cartan
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let inv = exact::inverse(&cartan_q).expect("Cartan matrix is invertible");
    let quadratic_form: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|l| inv[i][l] * d[i]).collect())
        .collect();

    // positive roots by the root-string recursion
    let to_fund = |c: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum())
            .collect()
    };
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut index: HashMap<Vec<i64>, usize> =
        roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let beta = roots[cursor].clone();
        let fund = to_fund(&beta);
        for i in 0..n {
            // p = max { p : beta - p alpha_i is a root }
            let mut p = 0i64;
            loop {
                let mut c = beta.clone();
                c[i] -= p + 1;
                if index.contains_key(&c) {
                    p += 1;
                } else {
                    break;
                }
            }
            let qq = p - fund[i];
            if qq > 0 {
                let mut c = beta.clone();
                c[i] += 1;
                if !index.contains_key(&c) {
                    index.insert(c.clone(), roots.len());
                    roots.push(c);
                }
            }
        }
        cursor += 1;
    }
    roots.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
    let index: HashMap<Vec<i64>, usize> =
        roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

    let positive_roots: Vec<Weight> = roots.iter().map(|c| Weight::from_ints(&to_fund(c))).collect();
    let highest_root = positive_roots.last().unwrap().clone();
    let simple_roots: Vec<Weight> = (0..n).map(|i| positive_roots[i].clone()).collect();
    let fundamental_weights = (0..n).map(|i| Weight::fundamental(n, i)).collect();
    let rho = Weight::from_ints(&vec![1; n]);
    let simple_root_norms = d.iter().map(|x| x * q(2)).collect();

    let mut rs = RootSystem {
        family,
        rank,
        cartan_matrix: cartan,
        simple_roots,
        fundamental_weights,
        positive_roots,
        positive_roots_simple: roots,
        highest_root,
        rho,
        quadratic_form,
        dual_coxeter: 0,
        simple_root_norms,
        inverse_cartan: inv,
        root_index: index,
    };
    let hv = q(1) + rs.ip(&rs.rho, &rs.highest_root);
    rs.dual_coxeter = rational::to_int(&hv).expect("dual Coxeter number is an integer");
    debug_assert_eq!(rs.ip(&rs.highest_root, &rs.highest_root), q(2));
    Ok(rs)
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        build_root_system(family, rank)
    }

    /// Parses names such as `A2`, `e8`, `G2`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        let (f, r) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
        let family: Family = f.parse().map_err(|e| match e {
            Error::InvalidType { family, reason, .. } => Error::InvalidType {
                family,
                rank: r.parse().unwrap_or(0),
                reason,
            },
            e => e,
        })?;
        let rank: usize = r.parse().map_err(|_| Error::InvalidType {
            family: f.to_string(),
            rank: 0,
            reason: format!("bad rank {r:?}"),
        })?;
        build_root_system(family, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Invariant inner product on weights (no rank checks).
    pub fn ip(&self, a: &Weight, b: &Weight) -> Q {
        let f = &self.quadratic_form;
        let mut s = Q::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                s += ai * f[i][j] * bj;
            }
        }
        s
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Q> {
        a.check_rank(self.rank)?;
        b.check_rank(self.rank)?;
        Ok(self.ip(a, b))
    }

    pub fn norm2(&self, a: &Weight) -> Q {
        self.ip(a, a)
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| -r));
        all
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// Index into `positive_roots` of a root given in simple coordinates.
    pub fn positive_root_index_simple(&self, c: &[i64]) -> Option<usize> {
        self.root_index.get(c).copied()
    }

    /// Index into `positive_roots` of a positive root in fundamental coordinates.
    pub fn positive_root_index(&self, w: &Weight) -> Option<usize> {
        let c = self.simple_coords(w)?;
        let c = c.iter().map(rational::to_int).collect::<Option<Vec<_>>>()?;
        self.positive_root_index_simple(&c)
    }

    /// Coordinates of `w` in the basis of simple roots.
    pub fn simple_coords(&self, w: &Weight) -> Option<Vec<Q>> {
        if w.rank() != self.rank {
            return None;
        }
        Some(exact::mat_vec(&self.inverse_cartan, &w.coords))
    }

    pub fn is_in_root_lattice(&self, w: &Weight) -> bool {
        w.rank() == self.rank
            && self
                .simple_coords(w)
                .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Simple coroots `2 alpha_i / |alpha_i|^2`, seen as weights via the form.
    pub fn simple_coroots(&self) -> Vec<Weight> {
        self.simple_roots
            .iter()
            .zip(&self.simple_root_norms)
            .map(|(a, n)| a.scale(q(2) / n))
            .collect()
    }

    /// Membership in the coroot lattice, the translation lattice of the
    /// affine Weyl group of the simply connected group.
    pub fn is_in_coroot_lattice(&self, w: &Weight) -> bool {
        w.rank() == self.rank
            && self.simple_coords(w).is_some_and(|c| {
                c.iter()
                    .zip(&self.simple_root_norms)
                    .all(|(x, n)| (x * n / q(2)).is_integer())
            })
    }

    /// `alpha^vee` pairing `2 <w, alpha> / <alpha, alpha>`.
    pub fn coroot_pairing(&self, w: &Weight, alpha: &Weight) -> Q {
        q(2) * self.ip(w, alpha) / self.ip(alpha, alpha)
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = w.coords[i];
        if c.is_zero() {
            return w.clone();
        }
        let coords = w
            .coords
            .iter()
            .enumerate()
            .map(|(j, x)| x - c * q(self.cartan_matrix[j][i]))
            .collect();
        Weight { coords }
    }

    /// Reflection in an arbitrary root.
    pub fn reflect_root(&self, alpha: &Weight, w: &Weight) -> Weight {
        let c = self.coroot_pairing(w, alpha);
        w - &alpha.scale(c)
    }

    pub fn weyl_apply(&self, g: &WeylElement, w: &Weight) -> Weight {
        g.word.iter().rev().fold(w.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Orbit of `w` under the Weyl group, sorted.
    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([w.clone()]);
        let mut stack = vec![w.clone()];
        while let Some(x) = stack.pop() {
            for i in 0..self.rank {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Dominant weight in the orbit of `w` and the element carrying `w` to it.
    /// Always reflects at the lowest-index negative coordinate.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, WeylElement) {
        let mut x = w.clone();
        let mut applied = Vec::new();
        while let Some(i) = x.coords.iter().position(|c| c.is_negative()) {
            x = self.reflect(i, &x);
            applied.push(i);
        }
        applied.reverse();
        (x, WeylElement::from_word(applied))
    }

    /// Every element of the Weyl group as a reduced word (via the orbit of rho).
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let mut out = vec![WeylElement::identity()];
        let mut seen = BTreeSet::from([self.rho.clone()]);
        let mut frontier = vec![(self.rho.clone(), WeylElement::identity())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (x, g) in &frontier {
                for i in 0..self.rank {
                    let y = self.reflect(i, x);
                    if seen.insert(y.clone()) {
                        let h = WeylElement::simple(i).compose(g);
                        out.push(h.clone());
                        next.push((y, h));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// A word for the reflection in the positive root with index `idx`.
    pub fn reflection_word(&self, idx: usize) -> WeylElement {
        // s_{s_j gamma} = s_j s_gamma s_j, walking down from the root to a simple one
        let mut beta = self.positive_roots[idx].clone();
        let mut prefix = Vec::new();
        loop {
            if let Some(i) = self.simple_roots.iter().position(|a| *a == beta) {
                let mut word = prefix.clone();
                word.push(i);
                word.extend(prefix.iter().rev());
                return WeylElement::from_word(word);
            }
            let j = (0..self.rank)
                .find(|&j| beta.coords[j].is_positive())
                .expect("positive root pairs positively with some simple coroot");
            beta = self.reflect(j, &beta);
            prefix.push(j);
        }
    }

    /// `<alpha_0, xi>`.
    pub fn level_of(&self, w: &Weight) -> Q {
        self.ip(&self.highest_root, w)
    }

    pub fn alcove_membership(&self, xi: &Weight) -> AlcovePosition {
        let mut met = Vec::new();
        let mut violated = Vec::new();
        for (i, c) in xi.coords.iter().enumerate() {
            if c.is_zero() {
                met.push(Wall::Simple(i));
            } else if c.is_negative() {
                violated.push(Wall::Simple(i));
            }
        }
        let l = self.level_of(xi);
        if l == q(1) {
            met.push(Wall::Affine);
        } else if l > q(1) {
            violated.push(Wall::Affine);
        }
        if !violated.is_empty() {
            AlcovePosition::Outside(violated)
        } else if met.is_empty() {
            AlcovePosition::Interior
        } else {
            AlcovePosition::Face(met)
        }
    }

    /// Comarks `a_i^vee` of the highest coroot; `h^vee = 1 + sum a_i^vee`.
    pub fn comarks(&self) -> Vec<Q> {
        let marks = self.positive_roots_simple.last().unwrap();
        marks
            .iter()
            .zip(&self.simple_root_norms)
            .map(|(&a, n)| q(a) * n / q(2))
            .collect()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        w.check_rank(self.rank)
    }

    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        w.rank() == self.rank && w.is_integral() && w.is_dominant()
    }

    pub fn require_dominant_integral(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_integral() || !w.is_dominant() {
            return Err(Error::NotDominantIntegral(w.to_string()));
        }
        Ok(())
    }

    /// `w` has a non-negative pairing with every positive root.
    pub fn is_positive_root_sum(&self, w: &Weight) -> bool {
        self.simple_coords(w)
            .is_some_and(|c| c.iter().all(|x| x.is_integer() && !x.is_negative()))
    }
}

#[cfg(test)]
mod tests;
