//! Root data of the centralizer of a point of the closed alcove.
//!
//! The centralizer of `xi` in the loop algebra is spanned by the Cartan
//! subalgebra together with the modes `e_alpha z^n` for which
//! `n = -<alpha, xi>` is an integer.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AlcovePosition, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::rational::q;

/// Loop root `e_alpha z^n`; `root` indexes `RootSystem::roots()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub n: i64,
    pub alpha: Weight,
    pub root: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralizerData {
    pub xi: Weight,
    /// Every pair `(n, alpha)` with `n = -<alpha, xi>` integral.
    pub roots: Vec<AffineRoot>,
    /// Pairs with `n > 0`, or `n = 0` and `alpha > 0`.
    pub positive: Vec<AffineRoot>,
    /// Positive pairs that are not a sum of two positive pairs.
    pub simple: Vec<AffineRoot>,
    /// Half the sum of the finite parts of the positive pairs.
    pub rho_sigma: Weight,
    /// All pairs sit at `n = 0`, so the centralizer lies inside the finite algebra.
    pub finite: bool,
}

impl CentralizerData {
    pub fn rank(&self) -> usize {
        self.xi.rank()
    }

    pub fn contains(&self, n: i64, root: usize) -> bool {
        self.roots.iter().any(|r| r.n == n && r.root == root)
    }

    /// `true` when the centralizer is the whole finite algebra.
    pub fn is_full(&self, rs: &RootSystem) -> bool {
        self.finite && self.roots.len() == 2 * rs.num_positive_roots()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    /// Requires the centralizer to be a subalgebra of the finite algebra.
    pub fn require_finite(&self) -> Result<()> {
        if self.finite {
            Ok(())
        } else {
            Err(Error::NotFiniteSubalgebra(format!(
                "centralizer of {} contains loop modes",
                self.xi
            )))
        }
    }

    /// Indices (into `RootSystem::positive_roots`) of positive roots of the
    /// finite algebra that lie in the centralizer. Meaningful for finite type.
    pub fn finite_positive_indices(&self) -> Vec<usize> {
        self.positive
            .iter()
            .filter(|r| r.n == 0)
            .map(|r| r.root)
            .collect()
    }
}

/// Centralizer data at `xi`, which must lie in the closed alcove.
pub fn centralizer_root_data(rs: &RootSystem, xi: &Weight) -> Result<CentralizerData> {
    rs.check_weight(xi)?;
    if let AlcovePosition::Outside(_) = rs.alcove_membership(xi) {
        return Err(Error::OutsideAlcove(xi.to_string()));
    }
    let npos = rs.num_positive_roots();
    let mut roots = Vec::new();
    for (idx, alpha) in rs.roots().into_iter().enumerate() {
        let p = -rs.ip(&alpha, xi);
        if p.is_integer() {
            roots.push(AffineRoot {
                n: p.to_integer(),
                alpha,
                root: idx,
            });
        }
    }
    let positive: Vec<AffineRoot> = roots
        .iter()
        .filter(|r| r.n > 0 || (r.n == 0 && r.root < npos))
        .cloned()
        .collect();
    let sums: BTreeSet<(i64, Weight)> = positive
        .iter()
        .flat_map(|a| {
            positive
                .iter()
                .map(move |b| (a.n + b.n, &a.alpha + &b.alpha))
        })
        .collect();
    let simple = positive
        .iter()
        .filter(|r| !sums.contains(&(r.n, r.alpha.clone())))
        .cloned()
        .collect();
    let mut rho_sigma = Weight::zero(rs.rank);
    for r in &positive {
        rho_sigma += &r.alpha;
    }
    let rho_sigma = rho_sigma.scale(q(1) / q(2));
    let finite = roots.iter().all(|r| r.n.is_zero());
    Ok(CentralizerData {
        xi: xi.clone(),
        roots,
        positive,
        simple,
        rho_sigma,
        finite,
    })
}
