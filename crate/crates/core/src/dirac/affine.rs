//! Spectrum of the loop-group Dirac operator on `V_lambda ⊗ S_p` truncated in
//! energy, and the quantization of conjugacy classes read off its kernel.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::affine::{level_k_alcove, require_level_alcove, AffineWeight};
use crate::error::{Error, Result};
use crate::rational::{self, q, Q};
use crate::repthy::{affine_weight_multiplicities, branch_graded, SubgroupRoots};
use crate::rootsys::{centralizer_root_data, CentralizerData, RootSystem, Weight};
use crate::spinor::{spinor_character, Polarization};

/// An H-isotypic component of `V_lambda ⊗ S_p` at energy `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicComponent {
    pub n: i64,
    pub nu: Weight,
    pub m_even: i64,
    pub m_odd: i64,
    /// Eigenvalue of `D^2`: `|lambda+rho|^2 - |nu+rho_H|^2 + 2n(k+h)`.
    #[serde(with = "rational")]
    pub d2: Q,
}

impl IsotypicComponent {
    pub fn index(&self) -> i64 {
        self.m_even - self.m_odd
    }
}

/// H-isotypic decomposition of `V_lambda ⊗ S_p` up to energy `n_max`, with
/// the `D^2` eigenvalue on each component. Sorted by `(n, nu)`.
pub fn affine_isotypic_spectrum(
    rs: &RootSystem,
    cz: &CentralizerData,
    lam: &Weight,
    k: i64,
    n_max: u32,
) -> Result<Vec<IsotypicComponent>> {
    let v = affine_weight_multiplicities(rs, lam, k, n_max)?;
    let s = spinor_character(rs, Polarization::Relative(cz), n_max);
    let total = k + rs.dual_coxeter;
    let mut chars: [BTreeMap<AffineWeight, i64>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for ((e1, w1), m1) in &v.entries {
        for ((e2, w2), par) in &s {
            let e = e1 + e2;
            if e > n_max as i64 {
                continue;
            }
            let key = AffineWeight::new(q(e), w1 + w2, q(total));
            for p in 0..2 {
                if par[p] != 0 {
                    *chars[p].entry(key.clone()).or_insert(0) += m1 * par[p];
                }
            }
        }
    }
    let h = SubgroupRoots::from_centralizer(rs, cz);
    let cap = Some(q(n_max as i64));
    let even = branch_graded(rs, &h, &chars[0], cap, false)?;
    let odd = branch_graded(rs, &h, &chars[1], cap, false)?;
    let mut comps: BTreeMap<(i64, Weight), [i64; 2]> = BTreeMap::new();
    for (p, part) in [even, odd].into_iter().enumerate() {
        for (nu, m) in part {
            comps.entry((nu.m.to_integer(), nu.lam)).or_insert([0, 0])[p] += m;
        }
    }
    let top = rs.norm2(&(lam + &rs.rho));
    Ok(comps
        .into_iter()
        .map(|((n, nu), [me, mo])| {
            let d2 = top - rs.norm2(&(&nu + &cz.rho_sigma)) + q(2 * n * total);
            IsotypicComponent {
                n,
                nu,
                m_even: me,
                m_odd: mo,
                d2,
            }
        })
        .collect())
}

/// Energy at which `nu` can be a kernel type of `V_lambda ⊗ S_p`, if any.
pub fn kernel_energy(rs: &RootSystem, cz: &CentralizerData, lam: &Weight, k: i64, nu: &Weight) -> Option<i64> {
    let num = rs.norm2(&(nu + &cz.rho_sigma)) - rs.norm2(&(lam + &rs.rho));
    let n = num / q(2 * (k + rs.dual_coxeter));
    (n.is_integer() && !n.is_negative()).then(|| n.to_integer())
}

/// Integer vector indexed by the level-`k` alcove.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexVector {
    pub level: i64,
    pub weights: Vec<Weight>,
    pub entries: Vec<i64>,
}

impl IndexVector {
    /// The weight carrying the single entry `1`, if the vector is a basis vector.
    pub fn basis_weight(&self) -> Option<&Weight> {
        let nz: Vec<usize> = (0..self.entries.len()).filter(|&i| self.entries[i] != 0).collect();
        match nz.as_slice() {
            [i] if self.entries[*i] == 1 => Some(&self.weights[*i]),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaEvidence {
    pub lambda: Weight,
    /// Energy of the target type when it can lie in the kernel.
    pub n: Option<i64>,
    pub m_even: i64,
    pub m_odd: i64,
    /// Every kernel component with energy at most the truncation.
    pub kernel: Vec<IsotypicComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantizeReport {
    pub eta: Weight,
    pub level: i64,
    pub truncation: u32,
    /// The H-type `rho - rho_H + eta` at level `k + h` whose kernel
    /// multiplicities form the index vector.
    pub target: Weight,
    pub index: IndexVector,
    pub evidence: Vec<LambdaEvidence>,
}

/// Point `eta / k` of the alcove; the origin at level 0.
pub fn class_point(rs: &RootSystem, eta: &Weight, k: i64) -> Result<Weight> {
    rs.check_weight(eta)?;
    if k < 0 {
        return Err(Error::NonPositiveLevel(k.to_string()));
    }
    let bad = || Error::NonIntegralClass {
        eta: eta.to_string(),
        level: k,
    };
    if !eta.is_integral() {
        return Err(bad());
    }
    require_level_alcove(rs, eta, k).map_err(|_| bad())?;
    Ok(if k == 0 { eta.clone() } else { eta.scale(q(1) / q(k)) })
}

/// Quantization of the conjugacy class through `exp(eta / k)`: for every
/// `lambda` of the level-`k` alcove, the signed multiplicity of the
/// one-dimensional H-type `rho - rho_H + eta` in the kernel of the Dirac
/// operator on `V_lambda ⊗ S_p`, computed with energy truncation `n_max`.
pub fn quantize_conjugacy_class(rs: &RootSystem, eta: &Weight, k: i64, n_max: u32) -> Result<QuantizeReport> {
    let xi = class_point(rs, eta, k)?;
    let cz = centralizer_root_data(rs, &xi)?;
    let h = SubgroupRoots::from_centralizer(rs, &cz);
    let total = k + rs.dual_coxeter;
    let target = &(&rs.rho - &cz.rho_sigma) + eta;
    let target_hat = AffineWeight::new(q(0), target.clone(), q(total));
    if !h.is_dominant(rs, &target_hat) || h.weyl_dim(rs, &target_hat) != 1 {
        return Err(Error::ConventionBreach(format!(
            "target type {target} is not a one-dimensional character of the centralizer"
        )));
    }
    let alcove = level_k_alcove(rs, k);
    let energies: Vec<Option<i64>> = alcove
        .iter()
        .map(|lam| kernel_energy(rs, &cz, lam, k, &target))
        .collect();
    let required = energies.iter().flatten().copied().max().unwrap_or(0);
    if required > n_max as i64 {
        return Err(Error::InsufficientTruncation {
            given: n_max,
            required: required as u32,
        });
    }
    let mut evidence = Vec::new();
    let mut entries = Vec::new();
    for (lam, n) in alcove.iter().zip(&energies) {
        let kernel: Vec<IsotypicComponent> = affine_isotypic_spectrum(rs, &cz, lam, k, n_max)?
            .into_iter()
            .filter(|c| c.d2.is_zero())
            .collect();
        let (me, mo) = kernel
            .iter()
            .find(|c| Some(c.n) == *n && c.nu == target)
            .map_or((0, 0), |c| (c.m_even, c.m_odd));
        entries.push(me - mo);
        evidence.push(LambdaEvidence {
            lambda: lam.clone(),
            n: *n,
            m_even: me,
            m_odd: mo,
            kernel,
        });
    }
    Ok(QuantizeReport {
        eta: eta.clone(),
        level: k,
        truncation: n_max,
        target,
        index: IndexVector {
            level: k,
            weights: alcove,
            entries,
        },
        evidence,
    })
}
