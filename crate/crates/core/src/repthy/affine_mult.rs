//! Weight multiplicities of integrable highest-weight modules of the affine
//! algebra, truncated in energy.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::irrep_weights;
use crate::affine::{require_level_alcove, AffineWeight};
use crate::error::Result;
use crate::rational::{q, to_f64, Q};
use crate::rootsys::{RootSystem, Weight};

/// Multiplicities of `(energy n, finite weight mu)` in `V_lambda` at level
/// `level`, for `n <= truncation`. The highest weight sits at energy 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWeightMultiset {
    pub entries: BTreeMap<(i64, Weight), i64>,
    pub level: i64,
    pub truncation: u32,
}

impl AffineWeightMultiset {
    pub fn get(&self, n: i64, mu: &Weight) -> i64 {
        self.entries.get(&(n, mu.clone())).copied().unwrap_or(0)
    }

    /// Total dimension of the energy-`n` layer.
    pub fn layer_dim(&self, n: i64) -> i64 {
        self.entries
            .range((n, Weight::zero(0))..)
            .take_while(|((e, _), _)| *e == n)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn layer(&self, n: i64) -> impl Iterator<Item = (&Weight, &i64)> {
        self.entries
            .iter()
            .filter(move |((e, _), _)| *e == n)
            .map(|((_, w), m)| (w, m))
    }

    /// Entries as affine weights `(n, mu, level)`.
    pub fn graded(&self) -> BTreeMap<AffineWeight, i64> {
        self.entries
            .iter()
            .map(|((n, w), m)| (AffineWeight::new(q(*n), w.clone(), q(self.level)), *m))
            .collect()
    }
}

/// Dominant integral weights congruent to `lam` mod the root lattice with
/// `|mu + rho|^2 < bound`.
fn dominant_in_ball(rs: &RootSystem, lam: &Weight, bound: Q) -> Vec<Weight> {
    let f = &rs.quadratic_form;
    // dominant mu has |mu|^2 >= c_i^2 F_ii since F has non-negative entries
    let caps: Vec<i64> = (0..rs.rank)
        .map(|i| (to_f64(&bound) / to_f64(&f[i][i])).sqrt().floor() as i64 + 1)
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank];
    loop {
        let w = Weight::from_ints(&cur);
        if rs.norm2(&(&w + &rs.rho)) < bound && rs.is_in_root_lattice(&(lam - &w)) {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == rs.rank {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= caps[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Affine Freudenthal recursion, layer by layer in energy.
///
/// Positive roots of the affine algebra are the finite positive roots at
/// energy 0, the real roots `(-j, alpha, 0)` for `j >= 1`, and the imaginary
/// roots `(-j, 0, 0)` of multiplicity `rank`. Only dominant weights are
/// computed; the rest follow from finite Weyl invariance within a layer.
pub fn affine_weight_multiplicities(
    rs: &RootSystem,
    lam: &Weight,
    k: i64,
    n_max: u32,
) -> Result<AffineWeightMultiset> {
    require_level_alcove(rs, lam, k)?;
    let kq = q(k);
    let kh = q(k + rs.dual_coxeter);
    let top = rs.norm2(&(lam + &rs.rho));
    let roots = rs.roots();
    let rank = rs.rank as i64;

    // dominant multiplicities per (n, mu)
    let mut dom: HashMap<(i64, Weight), i64> = HashMap::new();
    let lookup = |dom: &HashMap<(i64, Weight), i64>, n: i64, mu: &Weight| -> i64 {
        if n < 0 {
            return 0;
        }
        let (d, _) = rs.dominant_representative(mu);
        dom.get(&(n, d)).copied().unwrap_or(0)
    };

    for (mu, m) in irrep_weights(rs, lam)?.iter() {
        if mu.is_dominant() {
            dom.insert((0, mu.clone()), *m);
        }
    }

    for n in 1..=n_max as i64 {
        let nq = q(n);
        let bound = top + q(2) * nq * kh;
        let mut layer = dominant_in_ball(rs, lam, bound);
        // higher weights first within the layer
        layer.sort_by(|a, b| rs.ip(b, &rs.rho).cmp(&rs.ip(a, &rs.rho)).then_with(|| a.cmp(b)));
        for mu in layer {
            let lhs = top - (rs.norm2(&(&mu + &rs.rho)) - q(2) * nq * kh);
            let in_ball = |e: i64, w: &Weight| rs.norm2(&(w + &rs.rho)) - q(2) * q(e) * kh <= top;
            let mut rhs = Q::zero();
            // finite positive roots, same energy
            for a in &rs.positive_roots {
                let mut w = &mu + a;
                while in_ball(n, &w) {
                    let c = lookup(&dom, n, &w);
                    if c != 0 {
                        rhs += rs.ip(&w, a) * q(c);
                    }
                    w = &w + a;
                }
            }
            for j in 1..=n {
                // real roots (-j, alpha, 0) pair with (n - tj, w, k) to <w, alpha> + jk
                for a in &roots {
                    let mut t = 1;
                    while n - t * j >= 0 {
                        let w = &mu + &a.scale(q(t));
                        let c = lookup(&dom, n - t * j, &w);
                        if c != 0 {
                            rhs += (rs.ip(&w, a) + q(j) * kq) * q(c);
                        }
                        t += 1;
                    }
                }
                // imaginary roots (-j, 0, 0) with multiplicity rank
                let mut t = 1;
                while n - t * j >= 0 {
                    let c = lookup(&dom, n - t * j, &mu);
                    if c != 0 {
                        rhs += q(rank) * q(j) * kq * q(c);
                    }
                    t += 1;
                }
            }
            let m = q(2) * rhs / lhs;
            debug_assert!(m.is_integer(), "affine Freudenthal gave {m} at ({n}, {mu})");
            let m = m.to_integer();
            if m != 0 {
                dom.insert((n, mu), m);
            }
        }
    }

    let mut entries = BTreeMap::new();
    for ((n, mu), m) in &dom {
        for w in rs.weyl_orbit(mu) {
            entries.insert((*n, w), *m);
        }
    }
    Ok(AffineWeightMultiset {
        entries,
        level: k,
        truncation: n_max,
    })
}
