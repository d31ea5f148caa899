//! Characters, Weyl dimensions, equal-rank branching and weight
//! multiplicities of positive-energy representations.

mod affine_mult;
pub mod matrices;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use affine_mult::{affine_weight_multiplicities, AffineWeightMultiset};

use crate::affine::{aip, AffineWeight};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::rootsys::{CentralizerData, RootSystem, Weight};

/// Map from weights to multiplicities. Multiplicities are signed so that
/// virtual characters such as `ch S^+ - ch S^-` fit the same type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiset {
    pub entries: BTreeMap<Weight, i64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        WeightMultiset::default()
    }

    pub fn singleton(w: Weight) -> Self {
        let mut m = WeightMultiset::new();
        m.add(w, 1);
        m
    }

    pub fn add(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.entries.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn total_mass(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.entries.iter()
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, ma) in &self.entries {
            for (b, mb) in &other.entries {
                *acc.entry(a + b).or_insert(0) += ma * mb;
            }
        }
        acc.retain(|_, v| *v != 0);
        WeightMultiset { entries: acc }
    }

    pub fn shifted(&self, by: &Weight) -> WeightMultiset {
        WeightMultiset {
            entries: self.entries.iter().map(|(w, m)| (w + by, *m)).collect(),
        }
    }

    pub fn dual(&self) -> WeightMultiset {
        WeightMultiset {
            entries: self.entries.iter().map(|(w, m)| (-w, *m)).collect(),
        }
    }

    pub(crate) fn to_graded(&self) -> BTreeMap<AffineWeight, i64> {
        self.entries
            .iter()
            .map(|(w, m)| (AffineWeight::new(q(0), w.clone(), q(0)), *m))
            .collect()
    }
}

impl FromIterator<(Weight, i64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut m = WeightMultiset::new();
        for (w, c) in iter {
            *m.entries.entry(w).or_insert(0) += c;
        }
        m.entries.retain(|_, v| *v != 0);
        m
    }
}

/// Root data of an equal-rank reductive subalgebra, written with affine
/// vectors so that loop roots `e_alpha z^n` fit alongside finite ones. The
/// root `e_alpha z^n` is stored as the level-0 vector `(-n, alpha, 0)`.
#[derive(Debug, Clone)]
pub struct SubgroupRoots {
    pub positive: Vec<AffineWeight>,
    pub simple: Vec<AffineWeight>,
    /// Level-0 vector `(0, rho_H, 0)`.
    pub rho: AffineWeight,
    /// Pairs `(rho_H - w rho_H, sign w)` for every `w` in the Weyl group of H.
    pub weyl_shifts: Vec<(AffineWeight, i64)>,
}

impl SubgroupRoots {
    fn build(rs: &RootSystem, positive: Vec<AffineWeight>, simple: Vec<AffineWeight>) -> Self {
        let mut rho_lam = Weight::zero(rs.rank);
        let mut rho_m = Q::zero();
        for r in &positive {
            rho_lam += &r.lam;
            rho_m += r.m;
        }
        let half = q(1) / q(2);
        let rho = AffineWeight::new(rho_m * half, rho_lam.scale(half), q(0));
        let mut shifts = vec![(AffineWeight::new(q(0), Weight::zero(rs.rank), q(0)), 1)];
        let mut seen: HashSet<AffineWeight> = HashSet::from([rho.clone()]);
        let mut frontier = vec![(rho.clone(), 1i64)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (v, s) in &frontier {
                for r in &simple {
                    let w = reflect(rs, r, v);
                    if seen.insert(w.clone()) {
                        shifts.push((rho.sub(&w), -s));
                        next.push((w, -s));
                    }
                }
            }
            frontier = next;
        }
        SubgroupRoots {
            positive,
            simple,
            rho,
            weyl_shifts: shifts,
        }
    }

    /// The full finite Lie algebra.
    pub fn full(rs: &RootSystem) -> Self {
        let pos = rs
            .positive_roots
            .iter()
            .map(|a| AffineWeight::new(q(0), a.clone(), q(0)))
            .collect();
        let simple = rs
            .simple_roots
            .iter()
            .map(|a| AffineWeight::new(q(0), a.clone(), q(0)))
            .collect();
        SubgroupRoots::build(rs, pos, simple)
    }

    pub fn from_centralizer(rs: &RootSystem, cz: &CentralizerData) -> Self {
        let conv = |r: &crate::rootsys::AffineRoot| AffineWeight::new(q(-r.n), r.alpha.clone(), q(0));
        let pos = cz.positive.iter().map(conv).collect();
        let simple = cz.simple.iter().map(conv).collect();
        SubgroupRoots::build(rs, pos, simple)
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_shifts.len()
    }

    /// Dominant for every simple root of H.
    pub fn is_dominant(&self, rs: &RootSystem, v: &AffineWeight) -> bool {
        self.simple.iter().all(|r| !aip(rs, v, r).is_negative())
    }

    /// Dimension of the H-irrep with highest weight `nu`.
    pub fn weyl_dim(&self, rs: &RootSystem, nu: &AffineWeight) -> i64 {
        let top = nu.add(&self.rho);
        let mut d = Q::one();
        for b in &self.positive {
            d *= aip(rs, &top, b) / aip(rs, &self.rho, b);
        }
        d.to_integer()
    }

    /// Weights of the H-irrep with highest weight `nu` (Freudenthal).
    pub fn irrep(&self, rs: &RootSystem, nu: &AffineWeight) -> BTreeMap<AffineWeight, i64> {
        freudenthal(rs, &self.positive, &self.simple, &self.rho, nu)
    }
}

fn reflect(rs: &RootSystem, r: &AffineWeight, v: &AffineWeight) -> AffineWeight {
    let c = q(2) * aip(rs, v, r) / aip(rs, r, r);
    if c.is_zero() {
        v.clone()
    } else {
        v.sub(&r.scale(c))
    }
}

/// Freudenthal's recursion for the irreducible of highest weight `top` of the
/// reductive algebra with the given roots, over the affine form.
pub(crate) fn freudenthal(
    rs: &RootSystem,
    positive: &[AffineWeight],
    simple: &[AffineWeight],
    rho: &AffineWeight,
    top: &AffineWeight,
) -> BTreeMap<AffineWeight, i64> {
    let norm = |v: &AffineWeight| aip(rs, v, v);
    let top_rho = norm(&top.add(rho));
    let depth = |v: &AffineWeight| aip(rs, &top.sub(v), rho);
    // collect candidates reachable by subtracting simple roots inside the ball
    let mut cands: Vec<AffineWeight> = vec![top.clone()];
    let mut seen: HashSet<AffineWeight> = HashSet::from([top.clone()]);
    let mut i = 0;
    while i < cands.len() {
        let v = cands[i].clone();
        for s in simple {
            let w = v.sub(s);
            if !seen.contains(&w) && norm(&w.add(rho)) < top_rho {
                seen.insert(w.clone());
                cands.push(w);
            }
        }
        i += 1;
    }
    cands.sort_by(|a, b| depth(a).cmp(&depth(b)).then_with(|| a.cmp(b)));
    let mut mult: HashMap<AffineWeight, i64> = HashMap::new();
    mult.insert(top.clone(), 1);
    for v in cands.iter().skip(1) {
        let mut rhs = Q::zero();
        for b in positive {
            // the string leaves the ball once and for all
            let mut w = v.add(b);
            while norm(&w.add(rho)) <= top_rho {
                if let Some(&m) = mult.get(&w) {
                    rhs += aip(rs, &w, b) * q(m);
                }
                w = w.add(b);
            }
        }
        let denom = top_rho - norm(&v.add(rho));
        let m = q(2) * rhs / denom;
        debug_assert!(m.is_integer(), "Freudenthal produced {m} at {v}");
        let m = m.to_integer();
        if m != 0 {
            mult.insert(v.clone(), m);
        }
    }
    mult.into_iter().collect()
}

/// Weight multiset of the irreducible `W_lambda`.
pub fn irrep_weights(rs: &RootSystem, lam: &Weight) -> Result<WeightMultiset> {
    rs.require_dominant_integral(lam)?;
    let h = SubgroupRoots::full(rs);
    let top = AffineWeight::new(q(0), lam.clone(), q(0));
    Ok(h.irrep(rs, &top)
        .into_iter()
        .map(|(w, m)| (w.lam, m))
        .collect())
}

/// Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    rs.require_dominant_integral(lam)?;
    let top = lam + &rs.rho;
    let mut d = Q::one();
    for a in &rs.positive_roots {
        d *= rs.ip(&top, a) / rs.ip(&rs.rho, a);
    }
    Ok(d.to_integer() as u64)
}

/// Equal-rank branching of a graded character to H-isotypic multiplicities.
///
/// `m_nu = sum_w sign(w) chi(nu + rho_H - w rho_H)` over H-dominant `nu` in
/// the support. This only reads energies at or below that of `nu`, so it is
/// exact on characters truncated at `max_energy`. The reconstruction
/// `sum_nu m_nu ch_H(nu) = chi` is checked up to `max_energy`; a mismatch, or
/// a negative multiplicity when `signed` is false, is reported as
/// [`Error::NotSymmetrizable`].
pub fn branch_graded(
    rs: &RootSystem,
    h: &SubgroupRoots,
    chi: &BTreeMap<AffineWeight, i64>,
    max_energy: Option<Q>,
    signed: bool,
) -> Result<BTreeMap<AffineWeight, i64>> {
    let mut out = BTreeMap::new();
    for nu in chi.keys() {
        if !h.is_dominant(rs, nu) {
            continue;
        }
        let m: i64 = h
            .weyl_shifts
            .iter()
            .map(|(s, sign)| sign * chi.get(&nu.add(s)).copied().unwrap_or(0))
            .sum();
        if m == 0 {
            continue;
        }
        if m < 0 && !signed {
            return Err(Error::NotSymmetrizable(format!(
                "negative multiplicity {m} at {nu}"
            )));
        }
        out.insert(nu.clone(), m);
    }
    let within = |v: &AffineWeight| max_energy.is_none_or(|e| v.m <= e);
    let mut rebuilt: BTreeMap<AffineWeight, i64> = BTreeMap::new();
    for (nu, m) in &out {
        if h.positive.is_empty() {
            *rebuilt.entry(nu.clone()).or_insert(0) += m;
            continue;
        }
        for (w, c) in h.irrep(rs, nu) {
            if within(&w) {
                *rebuilt.entry(w).or_insert(0) += m * c;
            }
        }
    }
    rebuilt.retain(|_, v| *v != 0);
    let expected: BTreeMap<AffineWeight, i64> = chi
        .iter()
        .filter(|(w, c)| within(w) && **c != 0)
        .map(|(w, c)| (w.clone(), *c))
        .collect();
    if rebuilt != expected {
        let bad = expected
            .iter()
            .find(|(w, c)| rebuilt.get(*w) != Some(*c))
            .map(|(w, _)| w.to_string())
            .or_else(|| rebuilt.keys().find(|w| !expected.contains_key(*w)).map(|w| w.to_string()))
            .unwrap_or_default();
        return Err(Error::NotSymmetrizable(format!(
            "reconstruction from isotypic components fails at {bad}"
        )));
    }
    Ok(out)
}

/// Branching of a finite character to an equal-rank subalgebra of finite type.
pub fn branch_equal_rank(
    rs: &RootSystem,
    cz: &CentralizerData,
    chi: &WeightMultiset,
) -> Result<BTreeMap<Weight, i64>> {
    cz.require_finite()?;
    let h = SubgroupRoots::from_centralizer(rs, cz);
    let signed = chi.entries.values().any(|&m| m < 0);
    let out = branch_graded(rs, &h, &chi.to_graded(), None, signed)?;
    Ok(out.into_iter().map(|(k, v)| (k.lam, v)).collect())
}
